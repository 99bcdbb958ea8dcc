#include <rabinato/composer.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

namespace rabinato
{
  master_system
  build_master(formula_factory& ff, formula phi, const alphabet& sigma, step_mode mode,
               std::size_t cap)
  {
    master_system m;
    m.sigma = sigma;
    m.states = reach(ff, phi, sigma, mode, cap);
    std::unordered_map<formula, std::uint32_t> index;
    for (std::uint32_t i = 0; i < m.states.size(); ++i)
      index.emplace(m.states[i], i);
    m.delta.reserve(m.states.size() * sigma.size());
    for (formula s : m.states)
      for (std::size_t l = 0; l < sigma.size(); ++l)
        m.delta.push_back(index.at(step(ff, s, sigma.at(l), mode)));
    return m;
  }

  std::vector<std::vector<bool>>
  relevance_policy(formula_factory& ff, const master_system& m, const std::vector<formula>& gs)
  {
    const std::size_t n = m.states.size();
    const std::size_t k = gs.size();
    std::vector<std::vector<bool>> tracked(n, std::vector<bool>(k, false));
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t i = 0; i < k; ++i)
        tracked[s][i] = substitute(ff, m.states[s], gs[i], true)
                        != substitute(ff, m.states[s], gs[i], false);

    // below[i]: indices of the G-subformulae strictly inside gs[i].
    std::vector<std::vector<std::size_t>> below(k);
    for (std::size_t i = 0; i < k; ++i)
      for (formula g : g_subformulas(gs[i].child()))
        below[i].push_back(static_cast<std::size_t>(std::find(gs.begin(), gs.end(), g) - gs.begin()));

    // Close under successors (a slave needed later must run from the start)
    // and under subformulae (a slave's acceptance consults inner guesses).
    const std::size_t letters = m.sigma.size();
    bool changed = true;
    while (changed)
      {
        changed = false;
        for (std::size_t s = 0; s < n; ++s)
          {
            for (std::size_t l = 0; l < letters; ++l)
              {
                const auto& succ = tracked[m.delta[s * letters + l]];
                for (std::size_t i = 0; i < k; ++i)
                  if (succ[i] && !tracked[s][i])
                    tracked[s][i] = changed = true;
              }
            for (std::size_t i = k; i-- > 0;)
              if (tracked[s][i])
                for (std::size_t j : below[i])
                  if (!tracked[s][j])
                    tracked[s][j] = changed = true;
          }
      }
    return tracked;
  }

  bool
  invariant_value(formula f, const std::vector<formula>& guess)
  {
    auto guessed = [&](formula g) { return std::find(guess.begin(), guess.end(), g) != guess.end(); };
    switch (f.op())
      {
      case kind::tt:
        return true;
      case kind::ff:
        return false;
      case kind::conj:
        return invariant_value(f.left(), guess) && invariant_value(f.right(), guess);
      case kind::disj:
        return invariant_value(f.left(), guess) || invariant_value(f.right(), guess);
      case kind::always:
        return guessed(f);
      case kind::eventually:
        if (f.child().is(kind::always))
          return guessed(f.child());
        return invariant_value(f.child(), guess);
      case kind::next:
        return invariant_value(f.child(), guess);
      case kind::until:
        return invariant_value(f.right(), guess);
      default:
        return false;
      }
  }

  bool
  master_f_set(formula_factory& ff, formula state, const std::vector<formula>& guess,
               const std::vector<formula>& rank_formulas, const std::vector<formula>& all_gs,
               bool freeze_invariant)
  {
    bdd_manager& b = ff.bdd();
    bdd_manager::ref ante = bdd_manager::true_ref;
    for (std::size_t i = 0; i < guess.size(); ++i)
      ante = b.land(ante, b.land(guess[i].key(), rank_formulas[i].key()));
    for (formula g : all_gs)
      if (std::find(guess.begin(), guess.end(), g) == guess.end())
        ante = b.land(ante, b.lnot(g.key()));
    bdd_manager::ref cons = state.key();

    if (freeze_invariant)
      {
        std::vector<std::uint32_t> vars = b.support(ante);
        auto cv = b.support(cons);
        vars.insert(vars.end(), cv.begin(), cv.end());
        std::sort(vars.begin(), vars.end());
        vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
        for (std::uint32_t v : vars)
          {
            const auto& info = ff.var(v);
            if (info.is_atom || !info.modal.suffix_invariant())
              continue;
            bool value = invariant_value(info.modal, guess);
            ante = b.restrict(ante, v, value);
            cons = b.restrict(cons, v, value);
          }
      }
    return b.implies(ante, cons);
  }

  namespace
  {
    struct vector_hash
    {
      std::size_t operator()(const std::vector<std::int32_t>& v) const noexcept
      {
        std::size_t h = v.size();
        for (auto x : v)
          h = h * 0x100000001b3ull ^ std::hash<std::int32_t>()(x);
        return h;
      }
    };

    // Number of (guess, rank) combinations, saturating at limit + 1.
    std::size_t
    combination_count(const std::vector<slave_automaton>& slaves, std::uint64_t required_mask,
                      std::size_t limit)
    {
      const std::size_t k = slaves.size();
      std::size_t total = 0;
      for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << k); ++mask)
        {
          if ((mask & required_mask) != required_mask)
            continue;
          std::size_t prod = 1;
          for (std::size_t i = 0; i < k && prod <= limit; ++i)
            if (mask >> i & 1)
              prod *= slaves[i].max_rank;
          total += std::min(prod, limit + 1);
          if (total > limit)
            return limit + 1;
        }
      return total;
    }

    // Calls f(mask, ranks) for every guess containing required_mask and
    // every rank vector (ranks[i] meaningful only for i in mask).
    template <class F>
    void
    for_each_guess(const std::vector<slave_automaton>& slaves, std::uint64_t required_mask, F f)
    {
      const std::size_t k = slaves.size();
      for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << k); ++mask)
        {
          if ((mask & required_mask) != required_mask)
            continue;
          std::vector<std::uint32_t> ranks(k, 0);
          for (std::size_t i = 0; i < k; ++i)
            if (mask >> i & 1)
              ranks[i] = 1;
          while (true)
            {
              f(mask, ranks);
              std::size_t i = 0;
              for (; i < k; ++i)
                {
                  if (!(mask >> i & 1))
                    continue;
                  if (ranks[i] < slaves[i].max_rank)
                    {
                      ++ranks[i];
                      break;
                    }
                  ranks[i] = 1;
                }
              if (i == k)
                break;
            }
        }
    }

    void
    check_guess_space(std::size_t k, const std::vector<slave_automaton>& slaves,
                      std::uint64_t required_mask, std::size_t cap)
    {
      if (k >= 63 || combination_count(slaves, required_mask, cap) > cap)
        throw resource_error("disjunct cap of " + std::to_string(cap) + " exceeded");
    }

    // Inner G-subformula indices of each slave, as bitmasks over gs.
    std::vector<std::uint64_t>
    inner_masks(const std::vector<formula>& gs)
    {
      std::vector<std::uint64_t> masks(gs.size(), 0);
      for (std::size_t i = 0; i < gs.size(); ++i)
        for (formula g : g_subformulas(gs[i].child()))
          {
            auto j = std::find(gs.begin(), gs.end(), g) - gs.begin();
            masks[i] |= std::uint64_t(1) << j;
          }
      return masks;
    }

    class acceptance_cache
    {
    public:
      acceptance_cache(formula_factory& ff, const std::vector<formula>& gs,
                       const std::vector<slave_automaton>& slaves)
        : ff_(ff), gs_(gs), slaves_(slaves), inner_(inner_masks(gs))
      {
      }

      const slave_acceptance&
      get(std::size_t i, std::uint64_t guess_mask)
      {
        std::uint64_t sub = guess_mask & inner_[i];
        auto key = std::make_pair(i, sub);
        auto it = cache_.find(key);
        if (it != cache_.end())
          return it->second;
        std::vector<formula> guess;
        for (std::size_t j = 0; j < gs_.size(); ++j)
          if (sub >> j & 1)
            guess.push_back(gs_[j]);
        auto acc = accepting_states(ff_, slaves_[i].mojmir, guess);
        return cache_.emplace(key, apply_acceptance(slaves_[i], acc)).first->second;
      }

    private:
      formula_factory& ff_;
      const std::vector<formula>& gs_;
      const std::vector<slave_automaton>& slaves_;
      std::vector<std::uint64_t> inner_;
      std::map<std::pair<std::size_t, std::uint64_t>, slave_acceptance> cache_;
    };

    void
    fill_ap(const formula_factory& ff, const alphabet& sigma, explicit_automaton& a)
    {
      for (std::uint32_t atom : sigma.atoms())
        {
          a.ap.push_back(ff.atom_name(atom));
          a.ap_atoms.push_back(atom);
        }
    }

    // Adds pair p unless it can never be satisfied or duplicates another.
    bool
    keep_pair(const gen_rabin_pair& p, std::set<gen_rabin_pair>& seen)
    {
      if (p.fin.all())
        return false;
      for (const auto& inf : p.infs)
        if (inf.none())
          return false;
      return seen.insert(p).second;
    }
  }

  gdra
  build_gdra(formula_factory& ff, formula phi, const build_options& opts)
  {
    gdra out;
    alphabet sigma = alphabet::of(ff, phi);
    const std::size_t letters = sigma.size();
    out.gs = g_subformulas(phi);
    const std::size_t k = out.gs.size();
    step_mode mode = opts.freeze_invariant ? step_mode::freeze_invariant : step_mode::plain;

    out.master = build_master(ff, phi, sigma, mode, opts.state_cap);
    for (formula g : out.gs)
      out.slaves.push_back(build_slave(ff, g, sigma, opts.state_cap));
    check_guess_space(k, out.slaves, 0, opts.disjunct_cap);

    if (opts.relevance)
      out.tracked = relevance_policy(ff, out.master, out.gs);
    else
      out.tracked.assign(out.master.states.size(), std::vector<bool>(k, true));

    // Reachable product of master and tracked slaves.
    std::unordered_map<std::vector<std::int32_t>, std::uint32_t, vector_hash> index;
    auto intern = [&](std::vector<std::int32_t> key) {
      auto [it, inserted] = index.try_emplace(key, static_cast<std::uint32_t>(out.state_master.size()));
      if (inserted)
        {
          if (out.state_master.size() >= opts.state_cap)
            throw resource_error("state cap of " + std::to_string(opts.state_cap) + " exceeded");
          out.state_master.push_back(static_cast<std::uint32_t>(key[0]));
          out.state_rankings.emplace_back(key.begin() + 1, key.end());
        }
      return it->second;
    };
    {
      std::vector<std::int32_t> init(k + 1, -1);
      init[0] = 0;
      for (std::size_t i = 0; i < k; ++i)
        if (out.tracked[0][i])
          init[i + 1] = 0;
      intern(std::move(init));
    }
    explicit_automaton& a = out.aut;
    fill_ap(ff, sigma, a);
    for (std::size_t s = 0; s < out.state_master.size(); ++s)
      for (std::size_t l = 0; l < letters; ++l)
        {
          std::uint32_t m = out.state_master[s];
          std::uint32_t m2 = out.master.delta[m * letters + l];
          std::vector<std::int32_t> key(k + 1, -1);
          key[0] = static_cast<std::int32_t>(m2);
          for (std::size_t i = 0; i < k; ++i)
            if (out.tracked[m2][i])
              key[i + 1] = static_cast<std::int32_t>(
                out.slaves[i].next(static_cast<std::uint32_t>(out.state_rankings[s][i]), l));
          a.successor.push_back(intern(std::move(key)));
        }

    const std::size_t nstates = out.state_master.size();
    for (std::size_t s = 0; s < nstates; ++s)
      {
        std::string name = ff.to_string(out.master.states[out.state_master[s]]);
        for (std::size_t i = 0; i < k; ++i)
          if (out.state_rankings[s][i] >= 0)
            name += " ; " + ff.to_string(out.gs[i]) + " "
                    + ranking_name(ff, out.slaves[i], static_cast<std::uint32_t>(out.state_rankings[s][i]));
        a.state_names.push_back(std::move(name));
      }

    // Acceptance: one generalized Rabin pair per (guess, ranks).
    const std::size_t total = a.transition_count();
    acceptance_cache slave_acc(ff, out.gs, out.slaves);
    std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, formula> rf_cache;
    auto rank_f = [&](std::size_t i, std::int32_t r, std::uint32_t j) {
      auto key = std::make_tuple(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(r), j);
      auto it = rf_cache.find(key);
      if (it == rf_cache.end())
        it = rf_cache.emplace(key, rank_formula(ff, out.slaves[i], static_cast<std::uint32_t>(r), j)).first;
      return it->second;
    };
    std::map<std::vector<std::uint32_t>, bool> f_cache;
    std::set<gen_rabin_pair> seen;

    for_each_guess(out.slaves, 0, [&](std::uint64_t mask, const std::vector<std::uint32_t>& ranks) {
      std::vector<std::size_t> members;
      std::vector<formula> guess;
      for (std::size_t i = 0; i < k; ++i)
        if (mask >> i & 1)
          {
            members.push_back(i);
            guess.push_back(out.gs[i]);
          }
      gen_rabin_pair p;
      p.fin = transition_set(total);
      p.infs.assign(members.size(), transition_set(total));
      std::vector<const slave_acceptance*> accs;
      for (std::size_t i : members)
        accs.push_back(&slave_acc.get(i, mask));

      for (std::size_t s = 0; s < nstates; ++s)
        {
          const auto& rk = out.state_rankings[s];
          bool master_ok = std::all_of(members.begin(), members.end(),
                                       [&](std::size_t i) { return rk[i] >= 0; });
          if (master_ok)
            {
              std::vector<std::uint32_t> key{out.state_master[s], static_cast<std::uint32_t>(mask),
                                             static_cast<std::uint32_t>(mask >> 32)};
              std::vector<formula> rfs;
              for (std::size_t i : members)
                {
                  formula f = rank_f(i, rk[i], ranks[i]);
                  rfs.push_back(f);
                  key.push_back(f.id());
                }
              auto it = f_cache.find(key);
              if (it == f_cache.end())
                it = f_cache.emplace(key, master_f_set(ff, out.master.states[out.state_master[s]], guess,
                                                       rfs, out.gs, opts.freeze_invariant)).first;
              master_ok = it->second;
            }
          for (std::size_t l = 0; l < letters; ++l)
            {
              std::size_t t = s * letters + l;
              if (!master_ok)
                p.fin.set(t);
              for (std::size_t x = 0; x < members.size(); ++x)
                {
                  std::size_t i = members[x];
                  if (rk[i] < 0)
                    continue;
                  std::size_t st = static_cast<std::size_t>(rk[i]) * letters + l;
                  std::uint32_t j = ranks[i];
                  if (accs[x]->fail.test(st) || accs[x]->buy[j - 1].test(st))
                    p.fin.set(t);
                  if (accs[x]->succeed[j - 1].test(st))
                    p.infs[x].set(t);
                }
            }
        }
      if (keep_pair(p, seen))
        {
          a.acceptance.pairs.push_back(std::move(p));
          gdra::pair_tag tag;
          for (std::size_t i : members)
            {
              tag.guess.push_back(static_cast<std::uint32_t>(i));
              tag.ranks.push_back(ranks[i]);
            }
          out.tags.push_back(std::move(tag));
        }
    });
    return out;
  }

  explicit_automaton
  build_fg_product(formula_factory& ff, formula fg, const build_options& opts)
  {
    if (!fg.is(kind::eventually) || !fg.child().is(kind::always))
      throw std::invalid_argument("expected a formula of the form F G theta");
    alphabet sigma = alphabet::of(ff, fg);
    const std::size_t letters = sigma.size();
    std::vector<formula> gs = g_subformulas(fg);
    const std::size_t k = gs.size();
    std::vector<slave_automaton> slaves;
    for (formula g : gs)
      slaves.push_back(build_slave(ff, g, sigma, opts.state_cap));
    // The outermost G-subformula is the last one; it must be guessed.
    const std::uint64_t required = std::uint64_t(1) << (k - 1);
    check_guess_space(k, slaves, required, opts.disjunct_cap);

    explicit_automaton a;
    fill_ap(ff, sigma, a);
    std::map<std::vector<std::uint32_t>, std::uint32_t> index;
    std::vector<std::vector<std::uint32_t>> states{std::vector<std::uint32_t>(k, 0)};
    index.emplace(states[0], 0);
    for (std::size_t s = 0; s < states.size(); ++s)
      for (std::size_t l = 0; l < letters; ++l)
        {
          std::vector<std::uint32_t> next(k);
          for (std::size_t i = 0; i < k; ++i)
            next[i] = slaves[i].next(states[s][i], l);
          auto [it, inserted] = index.try_emplace(next, static_cast<std::uint32_t>(states.size()));
          if (inserted)
            {
              if (states.size() >= opts.state_cap)
                throw resource_error("state cap of " + std::to_string(opts.state_cap) + " exceeded");
              states.push_back(next);
            }
          a.successor.push_back(it->second);
        }
    for (const auto& st : states)
      {
        std::string name;
        for (std::size_t i = 0; i < k; ++i)
          name += (i ? " ; " : "") + ff.to_string(gs[i]) + " " + ranking_name(ff, slaves[i], st[i]);
        a.state_names.push_back(std::move(name));
      }

    const std::size_t total = a.transition_count();
    acceptance_cache slave_acc(ff, gs, slaves);
    std::set<gen_rabin_pair> seen;
    for_each_guess(slaves, required, [&](std::uint64_t mask, const std::vector<std::uint32_t>& ranks) {
      gen_rabin_pair p;
      p.fin = transition_set(total);
      for (std::size_t i = 0; i < k; ++i)
        {
          if (!(mask >> i & 1))
            continue;
          const slave_acceptance& acc = slave_acc.get(i, mask);
          transition_set inf(total);
          std::uint32_t j = ranks[i];
          for (std::size_t s = 0; s < states.size(); ++s)
            for (std::size_t l = 0; l < letters; ++l)
              {
                std::size_t st = states[s][i] * letters + l;
                if (acc.fail.test(st) || acc.buy[j - 1].test(st))
                  p.fin.set(s * letters + l);
                if (acc.succeed[j - 1].test(st))
                  inf.set(s * letters + l);
              }
          p.infs.push_back(std::move(inf));
        }
      if (keep_pair(p, seen))
        a.acceptance.pairs.push_back(std::move(p));
    });
    return a;
  }
}
