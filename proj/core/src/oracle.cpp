#include <rabinato/oracle.hpp>

#include <map>
#include <stdexcept>
#include <unordered_map>

namespace rabinato
{
  std::vector<bool>
  eval_positions(formula f, const lasso& w)
  {
    if (w.loop.empty())
      throw std::invalid_argument("lasso loop must be nonempty");
    const std::size_t m = w.prefix.size();
    const std::size_t n = m + w.loop.size();
    auto succ = [&](std::size_t i) { return i + 1 < n ? i + 1 : m; };
    auto at = [&](std::size_t i) { return i < m ? w.prefix[i] : w.loop[i - m]; };

    std::unordered_map<const formula_node*, std::vector<bool>> val;
    for (formula g : subformulas(f))
      {
        std::vector<bool> v(n);
        auto child = [&](formula c) -> const std::vector<bool>& { return val.at(c.node()); };
        // Backward sweeps of v[i] = base[i] || (keep[i] && v[succ(i)]) from
        // the given start until stable; covers F, G and U.
        auto fixpoint = [&](auto update) {
          bool changed = true;
          while (changed)
            {
              changed = false;
              for (std::size_t i = n; i-- > 0;)
                {
                  bool x = update(i);
                  if (x != v[i])
                    {
                      v[i] = x;
                      changed = true;
                    }
                }
            }
        };
        switch (g.op())
          {
          case kind::tt:
            v.assign(n, true);
            break;
          case kind::ff:
            break;
          case kind::atom:
          case kind::neg_atom:
            for (std::size_t i = 0; i < n; ++i)
              v[i] = (at(i) >> g.atom() & 1) == g.is(kind::atom);
            break;
          case kind::conj:
          case kind::disj:
            for (std::size_t i = 0; i < n; ++i)
              v[i] = g.is(kind::conj) ? child(g.left())[i] && child(g.right())[i]
                                      : child(g.left())[i] || child(g.right())[i];
            break;
          case kind::next:
            for (std::size_t i = 0; i < n; ++i)
              v[i] = child(g.child())[succ(i)];
            break;
          case kind::eventually:
            {
              const auto& c = child(g.child());
              fixpoint([&](std::size_t i) { return c[i] || v[succ(i)]; });
              break;
            }
          case kind::always:
            {
              const auto& c = child(g.child());
              v.assign(n, true);
              fixpoint([&](std::size_t i) { return c[i] && v[succ(i)]; });
              break;
            }
          case kind::until:
            {
              const auto& l = child(g.left());
              const auto& r = child(g.right());
              fixpoint([&](std::size_t i) { return r[i] || (l[i] && v[succ(i)]); });
              break;
            }
          }
        val.emplace(g.node(), std::move(v));
      }
    return val.at(f.node());
  }

  bool
  eval_ltl(formula f, const lasso& w)
  {
    return eval_positions(f, w)[0];
  }

  namespace
  {
    std::size_t
    project(const explicit_automaton& a, letter nu)
    {
      std::size_t i = 0;
      for (std::size_t k = 0; k < a.ap_atoms.size(); ++k)
        if (nu >> a.ap_atoms[k] & 1)
          i |= std::size_t(1) << k;
      return i;
    }
  }

  transition_set
  run_loop(const explicit_automaton& a, const lasso& w)
  {
    if (w.loop.empty())
      throw std::invalid_argument("lasso loop must be nonempty");
    const std::size_t letters = a.letter_count();
    std::uint32_t s = a.initial;
    for (letter nu : w.prefix)
      s = a.next(s, project(a, nu));

    // Start state of each pass through the loop; the run is periodic once a
    // start state repeats.
    std::map<std::uint32_t, std::size_t> first_pass;
    std::vector<std::vector<std::size_t>> passes;
    while (first_pass.emplace(s, passes.size()).second)
      {
        std::vector<std::size_t> taken;
        for (letter nu : w.loop)
          {
            std::size_t l = project(a, nu);
            taken.push_back(s * letters + l);
            s = a.next(s, l);
          }
        passes.push_back(std::move(taken));
      }
    transition_set out(a.transition_count());
    for (std::size_t p = first_pass.at(s); p < passes.size(); ++p)
      for (std::size_t t : passes[p])
        out.set(t);
    return out;
  }

  std::optional<std::size_t>
  accepting_pair(const explicit_automaton& a, const lasso& w)
  {
    transition_set inf = run_loop(a, w);
    for (std::size_t i = 0; i < a.acceptance.pairs.size(); ++i)
      {
        const auto& p = a.acceptance.pairs[i];
        if (inf.intersects(p.fin))
          continue;
        bool ok = true;
        for (const auto& s : p.infs)
          ok = ok && inf.intersects(s);
        if (ok)
          return i;
      }
    return std::nullopt;
  }

  bool
  accepts(const explicit_automaton& a, const lasso& w)
  {
    return accepting_pair(a, w).has_value();
  }

  namespace
  {
    formula
    gen(formula_factory& ff, std::mt19937_64& rng, std::size_t budget,
        const random_formula_options& opts)
    {
      auto pick = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
      };
      if (budget <= 1)
        {
          // Mostly literals, occasionally a constant.
          std::size_t r = pick(0, 19);
          if (r == 0)
            return ff.tt();
          if (r == 1)
            return ff.ff();
          const std::string& name = opts.atoms[pick(0, opts.atoms.size() - 1)];
          return r < 13 ? ff.atom(name) : ff.neg_atom(name);
        }
      // Weights: X F G & | U
      std::vector<double> w{2, 2, opts.allow_g ? 3.0 : 0.0, 2, 2, 3};
      if (budget == 2)
        w[3] = w[4] = w[5] = 0;
      std::discrete_distribution<int> op(w.begin(), w.end());
      int o = op(rng);
      if (o <= 2)
        {
          formula c = gen(ff, rng, budget - 1, opts);
          return o == 0 ? ff.next(c) : o == 1 ? ff.eventually(c) : ff.always(c);
        }
      std::size_t left = pick(1, budget - 2);
      formula l = gen(ff, rng, left, opts);
      formula r = gen(ff, rng, budget - 1 - left, opts);
      return o == 3 ? ff.land(l, r) : o == 4 ? ff.lor(l, r) : ff.until(l, r);
    }
  }

  formula
  random_formula(formula_factory& ff, std::mt19937_64& rng, const random_formula_options& opts)
  {
    if (opts.max_nodes == 0 || opts.atoms.empty())
      throw std::invalid_argument("random_formula needs max_nodes >= 1 and an atom");
    std::size_t size = std::uniform_int_distribution<std::size_t>(1, opts.max_nodes)(rng);
    return gen(ff, rng, size, opts);
  }

  formula
  random_formula(formula_factory& ff, std::uint64_t seed, const random_formula_options& opts)
  {
    std::mt19937_64 rng(seed);
    return random_formula(ff, rng, opts);
  }

  lasso
  random_lasso(std::mt19937_64& rng, std::size_t max_prefix, std::size_t max_period,
               const std::vector<std::uint32_t>& atom_ids)
  {
    if (max_period == 0)
      throw std::invalid_argument("random_lasso needs max_period >= 1");
    auto letter_gen = [&] {
      letter nu = 0;
      for (std::uint32_t id : atom_ids)
        if (rng() & 1)
          nu |= letter(1) << id;
      return nu;
    };
    lasso w;
    std::size_t m = std::uniform_int_distribution<std::size_t>(0, max_prefix)(rng);
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_period)(rng);
    for (std::size_t i = 0; i < m; ++i)
      w.prefix.push_back(letter_gen());
    for (std::size_t i = 0; i < n; ++i)
      w.loop.push_back(letter_gen());
    return w;
  }

  lasso
  random_lasso(std::uint64_t seed, std::size_t max_prefix, std::size_t max_period,
               const std::vector<std::uint32_t>& atom_ids)
  {
    std::mt19937_64 rng(seed);
    return random_lasso(rng, max_prefix, max_period, atom_ids);
  }
}
