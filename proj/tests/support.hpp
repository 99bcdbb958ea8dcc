#pragma once

// Shared helpers for the test suites.

#include <rabinato/af.hpp>
#include <rabinato/alphabet.hpp>
#include <rabinato/formula.hpp>
#include <rabinato/parser.hpp>
#include <rabinato/slave.hpp>

#include <functional>
#include <set>
#include <string>

namespace rabinato::test
{
  /// Letter holding the single-character atoms listed ("ab" = {a, b}).
  inline letter
  letter_of(formula_factory& ff, std::string_view atoms)
  {
    letter nu = 0;
    for (char c : atoms)
      nu |= letter(1) << ff.atom_id(std::string(1, c));
    return nu;
  }

  /// Factory whose atoms a, b, c have ids 0, 1, 2.
  inline void
  seed_abc(formula_factory& ff)
  {
    ff.atom("a");
    ff.atom("b");
    ff.atom("c");
  }

  /// The eight transitions of the two-ranking slaves drawn for a | (b U c)
  /// and a & X (b U c), named t1..t8 by a guard over (a, b, c).
  struct named_transition
  {
    int number;
    std::uint32_t ranking;
    std::function<bool(bool, bool, bool)> guard;
  };

  inline std::vector<named_transition>
  disjunction_names()
  {
    return {
      {1, 0, [](bool a, bool, bool c) { return a || c; }},
      {2, 0, [](bool a, bool b, bool c) { return !a && !b && !c; }},
      {3, 0, [](bool a, bool b, bool c) { return !a && b && !c; }},
      {4, 1, [](bool a, bool b, bool c) { return a && b && !c; }},
      {5, 1, [](bool a, bool b, bool c) { return !a && b && !c; }},
      {6, 1, [](bool, bool, bool c) { return c; }},
      {7, 1, [](bool a, bool b, bool c) { return a && !b && !c; }},
      {8, 1, [](bool a, bool b, bool c) { return !a && !b && !c; }},
    };
  }

  inline std::vector<named_transition>
  conjunction_names()
  {
    return {
      {1, 0, [](bool a, bool, bool) { return !a; }},
      {2, 0, [](bool a, bool, bool) { return a; }},
      {3, 1, [](bool a, bool b, bool c) { return a && b && !c; }},
      {4, 1, [](bool a, bool, bool c) { return a && c; }},
      {5, 1, [](bool a, bool b, bool c) { return a && !b && !c; }},
      {6, 1, [](bool a, bool b, bool c) { return !a && b && !c; }},
      {7, 1, [](bool a, bool, bool c) { return !a && c; }},
      {8, 1, [](bool a, bool b, bool c) { return !a && !b && !c; }},
    };
  }

  /// Names of the transitions in `set`, for a slave built over alphabet {a,b,c}.
  inline std::set<int>
  names(const slave_automaton& s, const std::vector<named_transition>& ts,
        const transition_set& set)
  {
    std::set<int> out;
    for (const auto& nt : ts)
      for (std::size_t l = 0; l < s.letter_count(); ++l)
        if (nt.guard(l & 1, l >> 1 & 1, l >> 2 & 1) && set.test(nt.ranking * s.letter_count() + l))
          out.insert(nt.number);
    return out;
  }

  /// Id of the transition named `number` on the given letter index; throws
  /// if that letter is not covered by the name.
  inline std::size_t
  transition_id(const slave_automaton& s, const std::vector<named_transition>& ts, int number,
                std::size_t letter_index)
  {
    for (const auto& nt : ts)
      if (nt.number == number)
        {
          std::size_t l = letter_index;
          if (!nt.guard(l & 1, l >> 1 & 1, l >> 2 & 1))
            throw std::logic_error("letter not in transition");
          return nt.ranking * s.letter_count() + l;
        }
    throw std::logic_error("no such transition");
  }

  /// Negation of a formula without until, pushed to the literals. Returns
  /// an empty handle if f contains until.
  inline formula
  negate(formula_factory& ff, formula f)
  {
    switch (f.op())
      {
      case kind::tt:
        return ff.ff();
      case kind::ff:
        return ff.tt();
      case kind::atom:
        return ff.literal(f.atom(), false);
      case kind::neg_atom:
        return ff.literal(f.atom(), true);
      case kind::conj:
      case kind::disj:
        {
          formula l = negate(ff, f.left()), r = negate(ff, f.right());
          if (!l || !r)
            return {};
          return f.is(kind::conj) ? ff.lor(l, r) : ff.land(l, r);
        }
      case kind::next:
        {
          formula c = negate(ff, f.child());
          return c ? ff.next(c) : formula{};
        }
      case kind::eventually:
        {
          formula c = negate(ff, f.child());
          return c ? ff.always(c) : formula{};
        }
      case kind::always:
        {
          formula c = negate(ff, f.child());
          return c ? ff.eventually(c) : formula{};
        }
      case kind::until:
        return {};
      }
    return {};
  }

  inline bool
  contains_until(formula f)
  {
    for (formula g : subformulas(f))
      if (g.is(kind::until))
        return true;
    return false;
  }
}
