#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rabinato
{
  /// Reduced ordered binary decision diagrams over variables 0..n-1,
  /// ordered by index. Nodes are never collected; a manager lives as
  /// long as the formula factory that owns it.
  class bdd_manager
  {
  public:
    using ref = std::uint32_t;
    static constexpr ref false_ref = 0;
    static constexpr ref true_ref = 1;

    /// One literal of a cube: variable and polarity.
    struct literal
    {
      std::uint32_t var;
      bool positive;
      bool operator==(const literal&) const = default;
    };
    using cube = std::vector<literal>;

    bdd_manager();

    ref var(std::uint32_t v);
    ref nvar(std::uint32_t v);

    ref land(ref a, ref b);
    ref lor(ref a, ref b);
    ref lnot(ref a);

    /// Cofactor of f with variable v fixed to value.
    ref restrict(ref f, std::uint32_t v, bool value);

    bool implies(ref a, ref b) { return land(a, lnot(b)) == false_ref; }

    /// Variables f depends on, ascending.
    std::vector<std::uint32_t> support(ref f) const;

    /// Irredundant sum of products (Minato-Morreale).
    std::vector<cube> isop(ref f);

    std::size_t node_count() const { return nodes_.size(); }

  private:
    struct node
    {
      std::uint32_t var;
      ref lo;
      ref hi;
    };

    static constexpr std::uint32_t terminal_var = 0xffffffffu;

    ref make(std::uint32_t v, ref lo, ref hi);
    std::uint32_t top(ref f) const { return nodes_[f].var; }
    ref apply(int op, ref a, ref b);
    std::pair<ref, std::vector<cube>> isop_rec(ref lower, ref upper);

    struct pair_hash
    {
      std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& p) const noexcept
      {
        return std::hash<std::uint64_t>()(p.first * 0x9e3779b97f4a7c15ull ^ p.second);
      }
    };

    std::vector<node> nodes_;
    std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, ref, pair_hash> unique_;
    std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, ref, pair_hash> apply_cache_;
    std::unordered_map<ref, ref> not_cache_;
    std::unordered_map<std::pair<std::uint64_t, std::uint64_t>,
                       std::pair<ref, std::vector<cube>>, pair_hash> isop_cache_;
  };
}
