#include <rabinato/bdd.hpp>

#include <algorithm>
#include <cassert>
#include <set>

namespace rabinato
{
  namespace
  {
    enum : int { op_and = 0, op_or = 1 };
  }

  bdd_manager::bdd_manager()
  {
    nodes_.push_back({terminal_var, 0, 0});
    nodes_.push_back({terminal_var, 1, 1});
  }

  bdd_manager::ref
  bdd_manager::make(std::uint32_t v, ref lo, ref hi)
  {
    if (lo == hi)
      return lo;
    std::pair<std::uint64_t, std::uint64_t> key{v, (std::uint64_t(lo) << 32) | hi};
    auto it = unique_.find(key);
    if (it != unique_.end())
      return it->second;
    ref r = static_cast<ref>(nodes_.size());
    nodes_.push_back({v, lo, hi});
    unique_.emplace(key, r);
    return r;
  }

  bdd_manager::ref
  bdd_manager::var(std::uint32_t v)
  {
    return make(v, false_ref, true_ref);
  }

  bdd_manager::ref
  bdd_manager::nvar(std::uint32_t v)
  {
    return make(v, true_ref, false_ref);
  }

  bdd_manager::ref
  bdd_manager::lnot(ref a)
  {
    if (a == false_ref)
      return true_ref;
    if (a == true_ref)
      return false_ref;
    if (auto it = not_cache_.find(a); it != not_cache_.end())
      return it->second;
    node n = nodes_[a];
    ref lo = lnot(n.lo);
    ref hi = lnot(n.hi);
    ref r = make(n.var, lo, hi);
    not_cache_.emplace(a, r);
    return r;
  }

  bdd_manager::ref
  bdd_manager::apply(int op, ref a, ref b)
  {
    if (op == op_and)
      {
        if (a == false_ref || b == false_ref)
          return false_ref;
        if (a == true_ref)
          return b;
        if (b == true_ref || a == b)
          return a;
      }
    else
      {
        if (a == true_ref || b == true_ref)
          return true_ref;
        if (a == false_ref)
          return b;
        if (b == false_ref || a == b)
          return a;
      }
    if (a > b)
      std::swap(a, b);
    std::pair<std::uint64_t, std::uint64_t> key{(std::uint64_t(a) << 1) | unsigned(op), b};
    if (auto it = apply_cache_.find(key); it != apply_cache_.end())
      return it->second;

    std::uint32_t va = top(a);
    std::uint32_t vb = top(b);
    std::uint32_t v = std::min(va, vb);
    ref a0 = va == v ? nodes_[a].lo : a;
    ref a1 = va == v ? nodes_[a].hi : a;
    ref b0 = vb == v ? nodes_[b].lo : b;
    ref b1 = vb == v ? nodes_[b].hi : b;
    ref lo = apply(op, a0, b0);
    ref hi = apply(op, a1, b1);
    ref r = make(v, lo, hi);
    apply_cache_.emplace(key, r);
    return r;
  }

  bdd_manager::ref
  bdd_manager::land(ref a, ref b)
  {
    return apply(op_and, a, b);
  }

  bdd_manager::ref
  bdd_manager::lor(ref a, ref b)
  {
    return apply(op_or, a, b);
  }

  bdd_manager::ref
  bdd_manager::restrict(ref f, std::uint32_t v, bool value)
  {
    if (f <= true_ref)
      return f;
    node n = nodes_[f];
    if (n.var > v)
      return f;
    if (n.var == v)
      return value ? n.hi : n.lo;
    // No memo: callers restrict small diagrams a handful of times.
    ref lo = restrict(n.lo, v, value);
    ref hi = restrict(n.hi, v, value);
    return make(n.var, lo, hi);
  }

  std::vector<std::uint32_t>
  bdd_manager::support(ref f) const
  {
    std::set<std::uint32_t> vars;
    std::vector<ref> stack{f};
    std::set<ref> seen;
    while (!stack.empty())
      {
        ref r = stack.back();
        stack.pop_back();
        if (r <= true_ref || !seen.insert(r).second)
          continue;
        vars.insert(nodes_[r].var);
        stack.push_back(nodes_[r].lo);
        stack.push_back(nodes_[r].hi);
      }
    return {vars.begin(), vars.end()};
  }

  // Minato-Morreale: returns (g, cover) with lower <= g <= upper and cover
  // an irredundant sum of products representing g.
  std::pair<bdd_manager::ref, std::vector<bdd_manager::cube>>
  bdd_manager::isop_rec(ref lower, ref upper)
  {
    if (lower == false_ref)
      return {false_ref, {}};
    if (upper == true_ref)
      return {true_ref, {cube{}}};
    std::pair<std::uint64_t, std::uint64_t> key{lower, upper};
    if (auto it = isop_cache_.find(key); it != isop_cache_.end())
      return it->second;

    std::uint32_t v = std::min(top(lower), top(upper));
    auto cof = [&](ref f, bool hi) {
      if (top(f) != v)
        return f;
      return hi ? nodes_[f].hi : nodes_[f].lo;
    };
    ref l0 = cof(lower, false), l1 = cof(lower, true);
    ref u0 = cof(upper, false), u1 = cof(upper, true);

    auto [g0, c0] = isop_rec(land(l0, lnot(u1)), u0);
    auto [g1, c1] = isop_rec(land(l1, lnot(u0)), u1);
    ref rest_lower = lor(land(l0, lnot(g0)), land(l1, lnot(g1)));
    auto [gs, cs] = isop_rec(rest_lower, land(u0, u1));

    std::vector<cube> cover;
    for (auto c : c0)
      {
        c.insert(c.begin(), literal{v, false});
        cover.push_back(std::move(c));
      }
    for (auto c : c1)
      {
        c.insert(c.begin(), literal{v, true});
        cover.push_back(std::move(c));
      }
    for (auto& c : cs)
      cover.push_back(c);

    ref g = lor(lor(land(nvar(v), g0), land(var(v), g1)), gs);
    auto result = std::make_pair(g, std::move(cover));
    isop_cache_.emplace(key, result);
    return result;
  }

  std::vector<bdd_manager::cube>
  bdd_manager::isop(ref f)
  {
    auto [g, cover] = isop_rec(f, f);
    assert(g == f);
    (void)g;
    return cover;
  }
}
