#include <rabinato/af.hpp>
#include <rabinato/mojmir.hpp>

#include <unordered_map>

namespace rabinato
{
  mojmir_automaton
  build_mojmir(formula_factory& ff, formula psi, const alphabet& sigma, std::size_t cap)
  {
    mojmir_automaton m;
    m.psi = psi;
    m.sigma = sigma;
    m.states = reach(ff, psi, sigma, step_mode::freeze_g, cap);
    std::unordered_map<formula, std::uint32_t> index;
    for (std::uint32_t i = 0; i < m.states.size(); ++i)
      index.emplace(m.states[i], i);
    const std::size_t n = sigma.size();
    m.delta.resize(m.states.size() * n);
    m.sink.assign(m.states.size(), false);
    for (std::uint32_t q = 0; q < m.states.size(); ++q)
      {
        bool self_loops = true;
        for (std::size_t l = 0; l < n; ++l)
          {
            std::uint32_t t = index.at(af_g(ff, m.states[q], sigma.at(l)));
            m.delta[q * n + l] = t;
            self_loops = self_loops && t == q;
          }
        m.sink[q] = q != 0 && self_loops;
      }
    return m;
  }

  std::vector<bool>
  accepting_states(formula_factory& ff, const mojmir_automaton& m,
                   const std::vector<formula>& guess)
  {
    bdd_manager& b = ff.bdd();
    bdd_manager::ref ante = bdd_manager::true_ref;
    for (formula g : guess)
      ante = b.land(ante, g.key());
    std::vector<bool> acc(m.size());
    for (std::size_t q = 0; q < m.size(); ++q)
      acc[q] = prop_entails(ff, ante, m.states[q]);
    return acc;
  }
}
