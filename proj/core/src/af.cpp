#include <rabinato/af.hpp>

#include <deque>
#include <unordered_set>

namespace rabinato
{
  formula
  step(formula_factory& ff, formula f, letter nu, step_mode mode)
  {
    switch (f.op())
      {
      case kind::tt:
      case kind::ff:
        return f;
      case kind::atom:
        return ff.constant(nu >> f.atom() & 1);
      case kind::neg_atom:
        return ff.constant(!(nu >> f.atom() & 1));
      default:
        break;
      }
    if (mode == step_mode::freeze_invariant && f.is_modal() && f.suffix_invariant())
      return f;
    if (mode == step_mode::freeze_g && f.is(kind::always))
      return f;

    formula_factory::step_key key{static_cast<std::uint32_t>(mode), f.id(), nu};
    if (formula* hit = ff.find_step(key))
      return *hit;

    formula r;
    switch (f.op())
      {
      case kind::conj:
        r = ff.land(step(ff, f.left(), nu, mode), step(ff, f.right(), nu, mode));
        break;
      case kind::disj:
        r = ff.lor(step(ff, f.left(), nu, mode), step(ff, f.right(), nu, mode));
        break;
      case kind::next:
        r = f.child();
        break;
      case kind::eventually:
        r = ff.lor(step(ff, f.child(), nu, mode), f);
        break;
      case kind::always:
        r = ff.land(step(ff, f.child(), nu, mode), f);
        break;
      case kind::until:
        r = ff.lor(step(ff, f.right(), nu, mode),
                   ff.land(step(ff, f.left(), nu, mode), f));
        break;
      default:
        r = f;
      }
    ff.store_step(key, r);
    return r;
  }

  formula
  af(formula_factory& ff, formula f, letter nu)
  {
    return step(ff, f, nu, step_mode::plain);
  }

  formula
  af_g(formula_factory& ff, formula f, letter nu)
  {
    return step(ff, f, nu, step_mode::freeze_g);
  }

  formula
  af(formula_factory& ff, formula f, const std::vector<letter>& word)
  {
    for (letter nu : word)
      f = af(ff, f, nu);
    return f;
  }

  std::vector<formula>
  reach(formula_factory& ff, formula f, const alphabet& sigma, step_mode mode, std::size_t cap)
  {
    std::vector<formula> states{f};
    std::unordered_set<formula> seen{f};
    for (std::size_t i = 0; i < states.size(); ++i)
      for (std::size_t l = 0; l < sigma.size(); ++l)
        {
          formula s = step(ff, states[i], sigma.at(l), mode);
          if (seen.insert(s).second)
            {
              if (states.size() >= cap)
                throw resource_error("state cap of " + std::to_string(cap) + " exceeded");
              states.push_back(s);
            }
        }
    return states;
  }
}
