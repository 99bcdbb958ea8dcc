#pragma once

#include <rabinato/alphabet.hpp>
#include <rabinato/formula.hpp>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace rabinato
{
  /// Deterministic transition structure over the formulae reachable from psi
  /// by af_g. State 0 is psi. Which states accept depends on a guess of the
  /// G-subformulae that hold eventually forever; see accepting_states.
  struct mojmir_automaton
  {
    formula psi;
    alphabet sigma;
    std::vector<formula> states;
    std::vector<std::uint32_t> delta;  // state * |sigma| + letter index
    std::vector<bool> sink;

    std::size_t size() const { return states.size(); }
    std::uint32_t succ(std::uint32_t q, std::size_t l) const { return delta[q * sigma.size() + l]; }
  };

  mojmir_automaton build_mojmir(formula_factory& ff, formula psi, const alphabet& sigma,
                                std::size_t cap = 1000000);

  /// States propositionally implied by the conjunction of the guessed G-formulae.
  std::vector<bool> accepting_states(formula_factory& ff, const mojmir_automaton& m,
                                     const std::vector<formula>& guess);
}
