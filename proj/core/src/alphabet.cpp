#include <rabinato/alphabet.hpp>

namespace rabinato
{
  alphabet::alphabet(std::vector<std::uint32_t> atoms) : atoms_(std::move(atoms))
  {
    if (atoms_.size() > max_atoms)
      throw resource_error("too many atomic propositions for an explicit alphabet ("
                           + std::to_string(atoms_.size()) + " > "
                           + std::to_string(max_atoms) + ")");
  }

  alphabet
  alphabet::of(const formula_factory& ff, formula f)
  {
    return alphabet(ff.atoms_of(f));
  }

  letter
  alphabet::at(std::size_t i) const
  {
    letter nu = 0;
    for (std::size_t k = 0; k < atoms_.size(); ++k)
      if (i >> k & 1)
        nu |= letter(1) << atoms_[k];
    return nu;
  }

  std::size_t
  alphabet::index_of(letter nu) const
  {
    std::size_t i = 0;
    for (std::size_t k = 0; k < atoms_.size(); ++k)
      if (nu >> atoms_[k] & 1)
        i |= std::size_t(1) << k;
    return i;
  }
}
