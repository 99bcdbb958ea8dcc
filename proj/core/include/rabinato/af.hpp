#pragma once

#include <rabinato/alphabet.hpp>
#include <rabinato/formula.hpp>

#include <cstddef>
#include <vector>

namespace rabinato
{
  enum class step_mode : std::uint32_t
  {
    /// The plain derivative "after": what remains to hold after reading a letter.
    plain,
    /// As plain, but G-rooted subformulae are left untouched.
    freeze_g,
    /// As plain, but suffix-invariant temporal subformulae are left
    /// untouched; their truth is settled by the acceptance condition.
    freeze_invariant,
  };

  formula af(formula_factory& ff, formula f, letter nu);
  formula af_g(formula_factory& ff, formula f, letter nu);
  formula step(formula_factory& ff, formula f, letter nu, step_mode mode);

  /// Derivative after a finite word.
  formula af(formula_factory& ff, formula f, const std::vector<letter>& word);

  /// States reachable from f by repeated steps over sigma, breadth first,
  /// f first. Throws resource_error beyond cap states.
  std::vector<formula> reach(formula_factory& ff, formula f, const alphabet& sigma,
                             step_mode mode, std::size_t cap = 1000000);
}
