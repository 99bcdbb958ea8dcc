#pragma once

#include <rabinato/formula.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rabinato
{
  /// Syntax error, with the 0-based offset of the offending input character.
  class parse_error : public std::runtime_error
  {
  public:
    parse_error(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position)
    {
    }
    std::size_t position() const { return position_; }

  private:
    std::size_t position_;
  };

  /// Parse an LTL formula and bring it into negation normal form.
  ///
  /// Grammar, loosest binding first: `<->`, `->` (right associative), `|`,
  /// `&`, `U` (right associative), then the prefix operators `!`, `X`, `F`,
  /// `G`. Atoms match [a-z][a-zA-Z0-9_]*; constants are tt, ff, true, false.
  /// Negations are pushed to the literals; a negated until has no dual in the
  /// supported fragment and is rejected.
  formula parse(formula_factory& ff, std::string_view text);
}
