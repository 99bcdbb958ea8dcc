#pragma once

#include <rabinato/formula.hpp>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace rabinato
{
  /// The letters over a fixed list of atoms. Letter index i has bit k set iff
  /// atoms[k] holds; that is also the AP numbering used by the emitters.
  class alphabet
  {
  public:
    static constexpr std::size_t max_atoms = 20;

    alphabet() = default;
    explicit alphabet(std::vector<std::uint32_t> atoms);

    /// Atoms occurring in f, ordered by name.
    static alphabet of(const formula_factory& ff, formula f);

    const std::vector<std::uint32_t>& atoms() const { return atoms_; }
    std::size_t size() const { return std::size_t(1) << atoms_.size(); }

    /// Factory-level letter for index i.
    letter at(std::size_t i) const;
    /// Index of the projection of nu onto these atoms.
    std::size_t index_of(letter nu) const;

  private:
    std::vector<std::uint32_t> atoms_;
  };
}
