#pragma once

#include <rabinato/automaton.hpp>

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rabinato
{
  /// Product term over AP indices: letter x satisfies it iff
  /// (x & mask) == value.
  struct cube
  {
    std::uint32_t mask;
    std::uint32_t value;
    bool operator==(const cube&) const = default;
  };

  /// Small sum of prime implicants covering exactly the given letter indices.
  std::vector<cube> cover_letters(const std::vector<std::uint32_t>& letters, std::size_t nvars);

  /// Outgoing edges of a state after merging letters with the same
  /// successor and the same acceptance marks.
  struct edge
  {
    std::uint32_t src;
    std::uint32_t dst;
    std::vector<std::uint32_t> marks;
    std::vector<std::uint32_t> letters;
  };
  std::vector<edge> group_edges(const explicit_automaton& a);

  std::string emit_hoa(const explicit_automaton& a, std::string_view name = {});
  std::string emit_dot(const explicit_automaton& a, std::string_view name = {});

  /// Reads the HOA subset produced by emit_hoa back into an automaton.
  /// Throws std::runtime_error on malformed input.
  explicit_automaton read_hoa(std::string_view text);

  struct automaton_stats
  {
    std::size_t states = 0;
    std::size_t transitions = 0;  // merged edges, as in the HOA output
    std::size_t disjuncts = 0;
    std::size_t acceptance_sets = 0;
  };
  automaton_stats stats(const explicit_automaton& a);
}
