#pragma once

#include <rabinato/bdd.hpp>

#include <cstdint>
#include <deque>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rabinato
{
  enum class kind : std::uint8_t
  {
    tt,
    ff,
    atom,
    neg_atom,
    conj,
    disj,
    next,
    eventually,
    always,
    until,
  };

  /// A letter: the set of atomic propositions that hold, as a bitmask
  /// over the atom ids of a formula_factory.
  using letter = std::uint64_t;

  /// Thrown when a construction exceeds a configured state or disjunct cap.
  class resource_error : public std::runtime_error
  {
  public:
    using std::runtime_error::runtime_error;
  };

  struct formula_node
  {
    kind op;
    std::uint32_t atom;          // atom id for atom / neg_atom
    const formula_node* left;    // only child of unary operators
    const formula_node* right;
    std::uint32_t id;
    bdd_manager::ref key;        // canonical key: BDD over propositional atoms
    std::vector<std::uint32_t> support;
    std::uint32_t size;          // number of AST nodes
    bool g_free;
    bool invariant;              // truth does not depend on any finite prefix
  };

  /// Handle on an interned formula in negation normal form. Handles produced
  /// by a formula_factory are canonical: two handles are equal iff the
  /// formulae are propositionally equivalent.
  class formula
  {
  public:
    formula() = default;
    explicit formula(const formula_node* n) : node_(n) {}

    kind op() const { return node_->op; }
    std::uint32_t atom() const { return node_->atom; }
    formula left() const { return formula(node_->left); }
    formula right() const { return formula(node_->right); }
    formula child() const { return formula(node_->left); }
    std::uint32_t id() const { return node_->id; }
    bdd_manager::ref key() const { return node_->key; }
    std::uint32_t size() const { return node_->size; }
    bool g_free() const { return node_->g_free; }
    bool suffix_invariant() const { return node_->invariant; }
    const formula_node* node() const { return node_; }

    bool is(kind k) const { return node_->op == k; }
    bool is_tt() const { return is(kind::tt); }
    bool is_ff() const { return is(kind::ff); }
    bool is_constant() const { return is_tt() || is_ff(); }
    bool is_literal() const { return is(kind::atom) || is(kind::neg_atom); }
    bool is_boolean() const { return is(kind::conj) || is(kind::disj); }
    bool is_modal() const
    {
      return is(kind::next) || is(kind::eventually) || is(kind::always) || is(kind::until);
    }

    explicit operator bool() const { return node_ != nullptr; }
    bool operator==(const formula& o) const { return node_ == o.node_; }
    bool operator<(const formula& o) const { return node_->id < o.node_->id; }

  private:
    const formula_node* node_ = nullptr;
  };

  /// Interning table for formulae. Every constructor returns the canonical
  /// representative of the propositional-equivalence class of its result.
  /// Not thread-safe: confine a factory to one thread.
  class formula_factory
  {
  public:
    formula_factory();
    formula_factory(const formula_factory&) = delete;
    formula_factory& operator=(const formula_factory&) = delete;

    formula tt() const { return formula(tt_); }
    formula ff() const { return formula(ff_); }
    formula constant(bool value) const { return value ? tt() : ff(); }
    formula atom(std::string_view name);
    formula neg_atom(std::string_view name);
    formula literal(std::uint32_t atom_id, bool positive);

    formula land(formula a, formula b);
    formula lor(formula a, formula b);
    formula land(const std::vector<formula>& fs);
    formula lor(const std::vector<formula>& fs);
    formula next(formula a);
    formula eventually(formula a);
    formula always(formula a);
    formula until(formula a, formula b);

    std::uint32_t atom_id(std::string_view name);
    const std::string& atom_name(std::uint32_t id) const { return atom_names_[id]; }
    std::size_t atom_count() const { return atom_names_.size(); }

    /// Atom ids occurring in f, sorted by atom name.
    std::vector<std::uint32_t> atoms_of(formula f) const;

    bdd_manager& bdd() { return bdd_; }

    /// BDD variable standing for a literal atom or a modal subformula.
    struct var_info
    {
      bool is_atom;
      std::uint32_t atom;   // valid when is_atom
      formula modal;        // valid otherwise
    };
    const var_info& var(std::uint32_t v) const { return vars_[v]; }
    std::uint32_t var_of_modal(formula modal) const;

    std::string to_string(formula f) const;

    /// Memo table used by the derivative functions, keyed by
    /// (mode, formula id, letter).
    struct step_key
    {
      std::uint32_t mode;
      std::uint32_t id;
      letter nu;
      bool operator==(const step_key&) const = default;
    };
    formula* find_step(const step_key& k);
    void store_step(const step_key& k, formula f);

  private:
    const formula_node* intern(kind op, std::uint32_t atom, const formula_node* l,
                               const formula_node* r, bdd_manager::ref key,
                               std::vector<std::uint32_t> support);
    formula canonical_boolean(kind op, formula a, formula b);
    formula modal(kind op, formula a, formula b);
    formula from_cover(bdd_manager::ref key);
    const formula_node* raw_boolean(kind op, const formula_node* a, const formula_node* b);

    struct node_key
    {
      kind op;
      std::uint32_t atom;
      std::uint32_t left;
      std::uint32_t right;
      bool operator==(const node_key&) const = default;
    };
    struct node_key_hash
    {
      std::size_t operator()(const node_key& k) const noexcept;
    };
    struct step_key_hash
    {
      std::size_t operator()(const step_key& k) const noexcept;
    };

    bdd_manager bdd_;
    std::deque<formula_node> nodes_;
    std::unordered_map<node_key, const formula_node*, node_key_hash> table_;
    std::unordered_map<bdd_manager::ref, const formula_node*> representative_;
    std::vector<std::string> atom_names_;
    std::unordered_map<std::string, std::uint32_t> atom_ids_;
    std::vector<std::uint32_t> atom_var_;
    std::vector<var_info> vars_;
    std::unordered_map<std::uint32_t, std::uint32_t> modal_var_;  // node id -> var
    std::unordered_map<step_key, formula, step_key_hash> steps_;
    const formula_node* tt_ = nullptr;
    const formula_node* ff_ = nullptr;
  };

  /// True iff antecedent -> consequent is a propositional tautology, with
  /// literals and modal subformulae treated as propositional variables.
  bool prop_entails(formula_factory& ff, formula antecedent, formula consequent);
  bool prop_entails(formula_factory& ff, bdd_manager::ref antecedent, formula consequent);

  /// Replace every occurrence of target (a G-subformula) by the constant
  /// value; descends under temporal operators.
  formula substitute(formula_factory& ff, formula f, formula target, bool value);

  /// G-subformulae of f, innermost first.
  std::vector<formula> g_subformulas(formula f);

  /// All subformulae of f (each distinct node once), children before parents.
  std::vector<formula> subformulas(formula f);
}

template <>
struct std::hash<rabinato::formula>
{
  std::size_t operator()(const rabinato::formula& f) const noexcept
  {
    return std::hash<const void*>()(f.node());
  }
};
