#pragma once

#include <rabinato/automaton.hpp>
#include <rabinato/formula.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace rabinato
{
  /// The ultimately periodic word prefix . loop^omega. loop is nonempty.
  struct lasso
  {
    std::vector<letter> prefix;
    std::vector<letter> loop;
  };

  /// Truth of f at each position 0 .. |prefix|+|loop|-1 of w; the last
  /// position is followed by position |prefix|. Computed directly from the
  /// semantics with fixpoints on the loop, independently of af.
  std::vector<bool> eval_positions(formula f, const lasso& w);
  bool eval_ltl(formula f, const lasso& w);

  /// Transitions taken infinitely often by the run of a on w.
  transition_set run_loop(const explicit_automaton& a, const lasso& w);

  /// Index of the first acceptance pair satisfied by the run on w, if any.
  /// For a slave automaton the index plus one is the rank of w.
  std::optional<std::size_t> accepting_pair(const explicit_automaton& a, const lasso& w);
  bool accepts(const explicit_automaton& a, const lasso& w);

  struct random_formula_options
  {
    std::size_t max_nodes = 12;
    std::vector<std::string> atoms{"a", "b", "c"};
    bool allow_g = true;
  };

  /// Random formula of at most max_nodes syntax nodes. Until and G are
  /// drawn more often than the other connectives to exercise nesting.
  formula random_formula(formula_factory& ff, std::mt19937_64& rng,
                         const random_formula_options& opts);
  formula random_formula(formula_factory& ff, std::uint64_t seed,
                         const random_formula_options& opts);

  lasso random_lasso(std::mt19937_64& rng, std::size_t max_prefix, std::size_t max_period,
                     const std::vector<std::uint32_t>& atom_ids);
  lasso random_lasso(std::uint64_t seed, std::size_t max_prefix, std::size_t max_period,
                     const std::vector<std::uint32_t>& atom_ids);
}
