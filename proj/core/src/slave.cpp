#include <rabinato/slave.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>

namespace rabinato
{
  ranking
  rank_step(const mojmir_automaton& m, const ranking& r, std::size_t letter_index)
  {
    ranking out;
    out.reserve(r.size() + 1);
    for (std::uint32_t q : r)
      {
        std::uint32_t t = m.succ(q, letter_index);
        if (m.sink[t] || std::find(out.begin(), out.end(), t) != out.end())
          continue;
        out.push_back(t);
      }
    if (std::find(out.begin(), out.end(), 0u) == out.end())
      out.push_back(0);
    return out;
  }

  slave_automaton
  build_slave(formula_factory& ff, formula g, const alphabet& sigma, std::size_t cap)
  {
    if (!g || !g.is(kind::always))
      throw std::invalid_argument("build_slave expects a G-rooted formula");
    slave_automaton s;
    s.g = g;
    s.mojmir = build_mojmir(ff, g.child(), sigma, cap);
    const std::size_t n = sigma.size();
    std::map<ranking, std::uint32_t> index;
    s.rankings.push_back({0});
    index.emplace(s.rankings[0], 0);
    for (std::size_t i = 0; i < s.rankings.size(); ++i)
      for (std::size_t l = 0; l < n; ++l)
        {
          ranking next = rank_step(s.mojmir, s.rankings[i], l);
          auto [it, inserted] = index.try_emplace(next, static_cast<std::uint32_t>(s.rankings.size()));
          if (inserted)
            {
              if (s.rankings.size() >= cap)
                throw resource_error("state cap of " + std::to_string(cap) + " exceeded");
              s.rankings.push_back(std::move(next));
            }
          s.delta.push_back(it->second);
        }
    for (const auto& r : s.rankings)
      s.max_rank = std::max(s.max_rank, static_cast<std::uint32_t>(r.size()));
    return s;
  }

  slave_acceptance
  apply_acceptance(const slave_automaton& s, const std::vector<bool>& accepting)
  {
    const auto& m = s.mojmir;
    const std::size_t n = s.letter_count();
    const std::size_t total = s.transition_count();
    slave_acceptance acc;
    acc.fail = transition_set(total);
    acc.succeed.assign(s.max_rank, transition_set(total));
    acc.buy.assign(s.max_rank, transition_set(total));

    for (std::size_t ri = 0; ri < s.rankings.size(); ++ri)
      {
        const ranking& r = s.rankings[ri];
        for (std::size_t l = 0; l < n; ++l)
          {
            std::size_t t = ri * n + l;
            // Smallest rank whose token is bought: it merges with another
            // ranked token or with the fresh token on the initial state,
            // outside the accepting states. buy(j) then holds for every j
            // above that rank.
            std::uint32_t min_bought = ~0u;
            for (std::size_t k = 0; k < r.size(); ++k)
              {
                std::uint32_t d = m.succ(r[k], l);
                std::uint32_t rank = static_cast<std::uint32_t>(k + 1);
                if (m.sink[d] && !accepting[d])
                  acc.fail.set(t);
                // A token counts as succeeding when it enters the accepting
                // set, or is born inside it on the initial state. A token
                // resting in an accepting non-sink would otherwise succeed
                // forever and mask infinitely many younger tokens that never do.
                if (accepting[d] && (!accepting[r[k]] || r[k] == 0))
                  acc.succeed[k].set(t);
                if (accepting[d])
                  continue;
                bool bought = d == 0;
                for (std::size_t k2 = 0; k2 < r.size() && !bought; ++k2)
                  bought = k2 != k && m.succ(r[k2], l) == d;
                if (bought)
                  min_bought = std::min(min_bought, rank);
              }
            for (std::uint32_t j = min_bought + 1; j <= s.max_rank && min_bought != ~0u; ++j)
              acc.buy[j - 1].set(t);
          }
      }
    return acc;
  }

  formula
  rank_formula(formula_factory& ff, const slave_automaton& s, std::uint32_t ranking_id,
               std::uint32_t j)
  {
    const ranking& r = s.rankings[ranking_id];
    formula out = ff.tt();
    for (std::size_t k = j == 0 ? 0 : j - 1; k < r.size(); ++k)
      out = ff.land(out, s.mojmir.states[r[k]]);
    return out;
  }

  std::string
  ranking_name(const formula_factory& ff, const slave_automaton& s, std::uint32_t ranking_id)
  {
    const ranking& r = s.rankings[ranking_id];
    std::string out = "(";
    bool first = true;
    for (std::uint32_t q = 0; q < s.mojmir.size(); ++q)
      {
        if (s.mojmir.sink[q])
          continue;
        if (!first)
          out += ',';
        first = false;
        auto it = std::find(r.begin(), r.end(), q);
        out += it == r.end() ? "_" : std::to_string(it - r.begin() + 1);
      }
    (void)ff;
    return out + ")";
  }

  explicit_automaton
  to_explicit(const formula_factory& ff, const slave_automaton& s, const slave_acceptance& acc)
  {
    explicit_automaton a;
    for (std::uint32_t atom : s.mojmir.sigma.atoms())
      {
        a.ap.push_back(ff.atom_name(atom));
        a.ap_atoms.push_back(atom);
      }
    for (std::uint32_t r = 0; r < s.rankings.size(); ++r)
      a.state_names.push_back(ranking_name(ff, s, r));
    a.successor = s.delta;
    for (std::uint32_t j = 0; j < s.max_rank; ++j)
      {
        gen_rabin_pair p;
        p.fin = acc.fail;
        p.fin |= acc.buy[j];
        p.infs.push_back(acc.succeed[j]);
        a.acceptance.pairs.push_back(std::move(p));
      }
    return a;
  }
}
