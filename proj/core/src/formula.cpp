#include <rabinato/formula.hpp>

#include <algorithm>
#include <cassert>
#include <iterator>
#include <unordered_set>

namespace rabinato
{
  namespace
  {
    std::vector<std::uint32_t>
    merge_support(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b)
    {
      std::vector<std::uint32_t> out;
      out.reserve(a.size() + b.size());
      std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
      return out;
    }

    std::size_t
    mix(std::size_t h, std::uint64_t v)
    {
      return h ^ (std::hash<std::uint64_t>()(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
    }
  }

  std::size_t
  formula_factory::node_key_hash::operator()(const node_key& k) const noexcept
  {
    std::size_t h = static_cast<std::size_t>(k.op);
    h = mix(h, k.atom);
    h = mix(h, k.left);
    return mix(h, k.right);
  }

  std::size_t
  formula_factory::step_key_hash::operator()(const step_key& k) const noexcept
  {
    std::size_t h = k.mode;
    h = mix(h, k.id);
    return mix(h, k.nu);
  }

  formula_factory::formula_factory()
  {
    tt_ = intern(kind::tt, 0, nullptr, nullptr, bdd_manager::true_ref, {});
    ff_ = intern(kind::ff, 0, nullptr, nullptr, bdd_manager::false_ref, {});
    representative_.emplace(bdd_manager::true_ref, tt_);
    representative_.emplace(bdd_manager::false_ref, ff_);
  }

  const formula_node*
  formula_factory::intern(kind op, std::uint32_t atom, const formula_node* l,
                          const formula_node* r, bdd_manager::ref key,
                          std::vector<std::uint32_t> support)
  {
    node_key nk{op, atom, l ? l->id : ~0u, r ? r->id : ~0u};
    if (auto it = table_.find(nk); it != table_.end())
      return it->second;

    formula_node n{};
    n.op = op;
    n.atom = atom;
    n.left = l;
    n.right = r;
    n.id = static_cast<std::uint32_t>(nodes_.size());
    n.key = key;
    n.support = std::move(support);
    n.size = 1 + (l ? l->size : 0) + (r ? r->size : 0);
    n.g_free = op != kind::always && (!l || l->g_free) && (!r || r->g_free);
    switch (op)
      {
      case kind::tt:
      case kind::ff:
        n.invariant = true;
        break;
      case kind::atom:
      case kind::neg_atom:
        n.invariant = false;
        break;
      case kind::conj:
      case kind::disj:
        n.invariant = l->invariant && r->invariant;
        break;
      case kind::next:
        n.invariant = l->invariant;
        break;
      case kind::eventually:
        n.invariant = l->op == kind::always || l->invariant;
        break;
      case kind::always:
        n.invariant = l->op == kind::eventually || l->invariant;
        break;
      case kind::until:
        n.invariant = r->invariant;
        break;
      }
    nodes_.push_back(std::move(n));
    const formula_node* p = &nodes_.back();
    table_.emplace(nk, p);
    return p;
  }

  std::uint32_t
  formula_factory::atom_id(std::string_view name)
  {
    std::string s(name);
    if (auto it = atom_ids_.find(s); it != atom_ids_.end())
      return it->second;
    if (atom_names_.size() >= 64)
      throw resource_error("more than 64 atomic propositions");
    auto id = static_cast<std::uint32_t>(atom_names_.size());
    atom_names_.push_back(s);
    atom_ids_.emplace(std::move(s), id);
    auto v = static_cast<std::uint32_t>(vars_.size());
    vars_.push_back({true, id, formula()});
    atom_var_.push_back(v);
    return id;
  }

  formula
  formula_factory::literal(std::uint32_t atom_id, bool positive)
  {
    std::uint32_t v = atom_var_.at(atom_id);
    bdd_manager::ref key = positive ? bdd_.var(v) : bdd_.nvar(v);
    const formula_node* n =
      intern(positive ? kind::atom : kind::neg_atom, atom_id, nullptr, nullptr, key, {v});
    auto [it, inserted] = representative_.try_emplace(key, n);
    return formula(it->second);
  }

  formula
  formula_factory::atom(std::string_view name)
  {
    return literal(atom_id(name), true);
  }

  formula
  formula_factory::neg_atom(std::string_view name)
  {
    return literal(atom_id(name), false);
  }

  const formula_node*
  formula_factory::raw_boolean(kind op, const formula_node* a, const formula_node* b)
  {
    bdd_manager::ref key = op == kind::conj ? bdd_.land(a->key, b->key) : bdd_.lor(a->key, b->key);
    const formula_node* n = intern(op, 0, a, b, key, merge_support(a->support, b->support));
    representative_.try_emplace(key, n);
    return n;
  }

  // The syntactic combination of the operands mentions variables the function
  // does not depend on; rebuild the representative from an irredundant cover
  // so that it mentions exactly the support.
  formula
  formula_factory::from_cover(bdd_manager::ref key)
  {
    auto cover = bdd_.isop(key);
    const formula_node* sum = nullptr;
    for (const auto& c : cover)
      {
        const formula_node* prod = nullptr;
        for (const auto& lit : c)
          {
            const var_info& vi = vars_[lit.var];
            const formula_node* l;
            if (vi.is_atom)
              l = literal(vi.atom, lit.positive).node();
            else
              {
                // Formulae in negation normal form are monotone in their
                // modal subformulae, so primes never negate them.
                assert(lit.positive);
                l = vi.modal.node();
              }
            prod = prod ? raw_boolean(kind::conj, prod, l) : l;
          }
        if (!prod)
          prod = tt_;
        sum = sum ? raw_boolean(kind::disj, sum, prod) : prod;
      }
    assert(sum && sum->key == key);
    representative_.try_emplace(key, sum);
    return formula(representative_.at(key));
  }

  formula
  formula_factory::canonical_boolean(kind op, formula a, formula b)
  {
    bdd_manager::ref key = op == kind::conj ? bdd_.land(a.key(), b.key()) : bdd_.lor(a.key(), b.key());
    if (auto it = representative_.find(key); it != representative_.end())
      return formula(it->second);
    auto support = merge_support(a.node()->support, b.node()->support);
    if (support != bdd_.support(key))
      return from_cover(key);
    const formula_node* n = intern(op, 0, a.node(), b.node(), key, std::move(support));
    representative_.emplace(key, n);
    return formula(n);
  }

  formula
  formula_factory::land(formula a, formula b)
  {
    return canonical_boolean(kind::conj, a, b);
  }

  formula
  formula_factory::lor(formula a, formula b)
  {
    return canonical_boolean(kind::disj, a, b);
  }

  formula
  formula_factory::land(const std::vector<formula>& fs)
  {
    formula r = tt();
    for (formula f : fs)
      r = land(r, f);
    return r;
  }

  formula
  formula_factory::lor(const std::vector<formula>& fs)
  {
    formula r = ff();
    for (formula f : fs)
      r = lor(r, f);
    return r;
  }

  formula
  formula_factory::modal(kind op, formula a, formula b)
  {
    // Children must be representatives, otherwise equivalent operands would
    // yield distinct modal atoms.
    a = formula(representative_.at(a.key()));
    if (b)
      b = formula(representative_.at(b.key()));
    node_key nk{op, 0, a.id(), b ? b.id() : ~0u};
    if (auto it = table_.find(nk); it != table_.end())
      return formula(it->second);
    auto v = static_cast<std::uint32_t>(vars_.size());
    bdd_manager::ref key = bdd_.var(v);
    const formula_node* n = intern(op, 0, a.node(), b ? b.node() : nullptr, key, {v});
    vars_.push_back({false, 0, formula(n)});
    modal_var_.emplace(n->id, v);
    representative_.emplace(key, n);
    return formula(n);
  }

  formula
  formula_factory::next(formula a)
  {
    if (a.is_constant())
      return a;
    return modal(kind::next, a, formula());
  }

  formula
  formula_factory::eventually(formula a)
  {
    if (a.is_constant())
      return a;
    return modal(kind::eventually, a, formula());
  }

  formula
  formula_factory::always(formula a)
  {
    if (a.is_constant())
      return a;
    return modal(kind::always, a, formula());
  }

  formula
  formula_factory::until(formula a, formula b)
  {
    if (b.is_constant() || a.is_ff() || a.key() == b.key())
      return formula(representative_.at(b.key()));
    if (a.is_tt())
      return eventually(b);
    return modal(kind::until, a, b);
  }

  std::uint32_t
  formula_factory::var_of_modal(formula m) const
  {
    return modal_var_.at(m.id());
  }

  std::vector<std::uint32_t>
  formula_factory::atoms_of(formula f) const
  {
    std::vector<std::uint32_t> ids;
    for (formula g : subformulas(f))
      if (g.is_literal())
        ids.push_back(g.atom());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    std::sort(ids.begin(), ids.end(), [this](std::uint32_t x, std::uint32_t y) {
      return atom_names_[x] < atom_names_[y];
    });
    return ids;
  }

  formula*
  formula_factory::find_step(const step_key& k)
  {
    auto it = steps_.find(k);
    return it == steps_.end() ? nullptr : &it->second;
  }

  void
  formula_factory::store_step(const step_key& k, formula f)
  {
    steps_.emplace(k, f);
  }

  namespace
  {
    int
    precedence(formula f)
    {
      switch (f.op())
        {
        case kind::disj:
          return 1;
        case kind::conj:
          return 2;
        case kind::until:
          return 3;
        case kind::next:
        case kind::eventually:
        case kind::always:
          return 4;
        default:
          return 5;
        }
    }

    void
    print(const formula_factory& fac, formula f, int context, std::string& out)
    {
      bool parens = precedence(f) < context;
      if (parens)
        out += '(';
      switch (f.op())
        {
        case kind::tt:
          out += "tt";
          break;
        case kind::ff:
          out += "ff";
          break;
        case kind::atom:
          out += fac.atom_name(f.atom());
          break;
        case kind::neg_atom:
          out += '!';
          out += fac.atom_name(f.atom());
          break;
        case kind::conj:
          print(fac, f.left(), 2, out);
          out += " & ";
          print(fac, f.right(), 2, out);
          break;
        case kind::disj:
          print(fac, f.left(), 1, out);
          out += " | ";
          print(fac, f.right(), 1, out);
          break;
        case kind::next:
        case kind::eventually:
        case kind::always:
          out += f.is(kind::next) ? 'X' : f.is(kind::eventually) ? 'F' : 'G';
          print(fac, f.child(), 4, out);
          break;
        case kind::until:
          print(fac, f.left(), 4, out);
          out += " U ";
          print(fac, f.right(), 3, out);
          break;
        }
      if (parens)
        out += ')';
    }
  }

  std::string
  formula_factory::to_string(formula f) const
  {
    std::string out;
    print(*this, f, 0, out);
    return out;
  }

  bool
  prop_entails(formula_factory& ff, formula antecedent, formula consequent)
  {
    return ff.bdd().implies(antecedent.key(), consequent.key());
  }

  bool
  prop_entails(formula_factory& ff, bdd_manager::ref antecedent, formula consequent)
  {
    return ff.bdd().implies(antecedent, consequent.key());
  }

  namespace
  {
    formula
    substitute_rec(formula_factory& ff, formula f, formula target, bool value,
                   std::unordered_map<formula, formula>& memo)
    {
      if (f == target)
        return ff.constant(value);
      if (f.is_constant() || f.is_literal())
        return f;
      if (auto it = memo.find(f); it != memo.end())
        return it->second;
      formula r;
      switch (f.op())
        {
        case kind::conj:
          r = ff.land(substitute_rec(ff, f.left(), target, value, memo),
                      substitute_rec(ff, f.right(), target, value, memo));
          break;
        case kind::disj:
          r = ff.lor(substitute_rec(ff, f.left(), target, value, memo),
                     substitute_rec(ff, f.right(), target, value, memo));
          break;
        case kind::next:
          r = ff.next(substitute_rec(ff, f.child(), target, value, memo));
          break;
        case kind::eventually:
          r = ff.eventually(substitute_rec(ff, f.child(), target, value, memo));
          break;
        case kind::always:
          r = ff.always(substitute_rec(ff, f.child(), target, value, memo));
          break;
        case kind::until:
          r = ff.until(substitute_rec(ff, f.left(), target, value, memo),
                       substitute_rec(ff, f.right(), target, value, memo));
          break;
        default:
          r = f;
        }
      memo.emplace(f, r);
      return r;
    }
  }

  formula
  substitute(formula_factory& ff, formula f, formula target, bool value)
  {
    std::unordered_map<formula, formula> memo;
    return substitute_rec(ff, f, target, value, memo);
  }

  std::vector<formula>
  subformulas(formula f)
  {
    std::vector<formula> out;
    std::unordered_set<const formula_node*> seen;
    // Iterative post-order; formulae can be deep after many unfoldings.
    std::vector<std::pair<const formula_node*, bool>> stack{{f.node(), false}};
    while (!stack.empty())
      {
        auto [n, expanded] = stack.back();
        stack.pop_back();
        if (expanded)
          {
            out.emplace_back(n);
            continue;
          }
        if (!seen.insert(n).second)
          continue;
        stack.push_back({n, true});
        if (n->right)
          stack.push_back({n->right, false});
        if (n->left)
          stack.push_back({n->left, false});
      }
    return out;
  }

  std::vector<formula>
  g_subformulas(formula f)
  {
    std::vector<formula> out;
    for (formula g : subformulas(f))
      if (g.is(kind::always))
        out.push_back(g);
    return out;
  }
}
