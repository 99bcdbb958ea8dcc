#pragma once

#include <rabinato/af.hpp>
#include <rabinato/automaton.hpp>
#include <rabinato/slave.hpp>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace rabinato
{
  struct build_options
  {
    /// Drop a slave from product states whose master can no longer be
    /// influenced by its G-subformula.
    bool relevance = true;
    /// Leave suffix-invariant temporal subformulae (FG.., GF.., and
    /// combinations) untouched in the master and let the guess decide them.
    bool freeze_invariant = true;
    std::size_t state_cap = 1000000;
    std::size_t disjunct_cap = 10000;
  };

  /// Master transition system: formulae reachable by af from the input.
  struct master_system
  {
    alphabet sigma;
    std::vector<formula> states;  // state 0 is the input
    std::vector<std::uint32_t> delta;
  };

  master_system build_master(formula_factory& ff, formula phi, const alphabet& sigma,
                             step_mode mode, std::size_t cap = 1000000);

  /// tracked[s][i]: whether slave i must run in master state s. A slave is
  /// tracked if its G-subformula is relevant to s or to a state reachable
  /// from s, or if it lies below another tracked G-subformula.
  std::vector<std::vector<bool>> relevance_policy(formula_factory& ff, const master_system& m,
                                                  const std::vector<formula>& gs);

  /// Whether master state `state` is co-Buchi accepting for the guess:
  /// guess[i] is a G-subformula believed to hold eventually forever and
  /// rank_formulas[i] what its slave vouches for. all_gs lists every
  /// G-subformula so the others can be assumed false.
  bool master_f_set(formula_factory& ff, formula state, const std::vector<formula>& guess,
                    const std::vector<formula>& rank_formulas, const std::vector<formula>& all_gs,
                    bool freeze_invariant);

  /// Truth value of a suffix-invariant formula under a guess of the
  /// G-subformulae that eventually hold forever.
  bool invariant_value(formula f, const std::vector<formula>& guess);

  struct gdra
  {
    explicit_automaton aut;
    std::vector<formula> gs;            // G-subformulae, innermost first
    std::vector<slave_automaton> slaves;
    master_system master;
    std::vector<std::vector<bool>> tracked;          // per master state
    std::vector<std::uint32_t> state_master;          // per product state
    std::vector<std::vector<std::int32_t>> state_rankings;  // -1 if untracked

    /// Guess and rank choice each acceptance pair came from.
    struct pair_tag
    {
      std::vector<std::uint32_t> guess;  // indices into gs
      std::vector<std::uint32_t> ranks;  // parallel to guess
    };
    std::vector<pair_tag> tags;
  };

  gdra build_gdra(formula_factory& ff, formula phi, const build_options& opts = {});

  /// Product of the slaves of FG theta alone, accepting exactly the words
  /// that satisfy FG theta. `fg` must have the shape F(G theta).
  explicit_automaton build_fg_product(formula_factory& ff, formula fg,
                                      const build_options& opts = {});
}
