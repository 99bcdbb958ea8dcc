#pragma once

#include <rabinato/automaton.hpp>
#include <rabinato/mojmir.hpp>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace rabinato
{
  /// Ranked Mojmir states ordered by seniority: element k has rank k + 1,
  /// so the oldest token comes first. Sinks are never ranked.
  using ranking = std::vector<std::uint32_t>;

  /// Move every ranked token; on collisions the older token survives, tokens
  /// entering sinks vanish, and a fresh token is placed on the initial state
  /// if it is not occupied.
  ranking rank_step(const mojmir_automaton& m, const ranking& r, std::size_t letter_index);

  /// Deterministic Rabin automaton over the reachable rankings of the
  /// Mojmir automaton of the G-subformula g. Ranking 0 is the initial one.
  struct slave_automaton
  {
    formula g;
    mojmir_automaton mojmir;
    std::vector<ranking> rankings;
    std::vector<std::uint32_t> delta;  // ranking * letters + letter index
    std::uint32_t max_rank = 0;

    std::size_t letter_count() const { return mojmir.sigma.size(); }
    std::size_t transition_count() const { return delta.size(); }
    std::uint32_t next(std::uint32_t r, std::size_t l) const { return delta[r * letter_count() + l]; }
  };

  /// Throws std::invalid_argument unless g is G-rooted.
  slave_automaton build_slave(formula_factory& ff, formula g, const alphabet& sigma,
                              std::size_t cap = 1000000);

  /// Transition sets of the Rabin pairs for one choice of accepting Mojmir
  /// states. succeed[j-1] and buy[j-1] hold the sets for rank j.
  struct slave_acceptance
  {
    transition_set fail;
    std::vector<transition_set> succeed;
    std::vector<transition_set> buy;
  };

  slave_acceptance apply_acceptance(const slave_automaton& s, const std::vector<bool>& accepting);

  /// Conjunction of the states holding a token of rank j or younger.
  formula rank_formula(formula_factory& ff, const slave_automaton& s, std::uint32_t ranking_id,
                       std::uint32_t j);

  std::string ranking_name(const formula_factory& ff, const slave_automaton& s,
                           std::uint32_t ranking_id);

  /// The slave as a standalone automaton whose pair j-1 is
  /// (fail | buy(j), succeed(j)).
  explicit_automaton to_explicit(const formula_factory& ff, const slave_automaton& s,
                                 const slave_acceptance& acc);
}
