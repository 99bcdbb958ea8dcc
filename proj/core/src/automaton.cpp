#include <rabinato/automaton.hpp>

#include <algorithm>
#include <bit>
#include <functional>

namespace rabinato
{
  std::size_t
  transition_set::count() const
  {
    std::size_t c = 0;
    for (auto w : words_)
      c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool
  transition_set::none() const
  {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }

  bool
  transition_set::intersects(const transition_set& o) const
  {
    for (std::size_t i = 0; i < words_.size() && i < o.words_.size(); ++i)
      if (words_[i] & o.words_[i])
        return true;
    return false;
  }

  std::vector<std::size_t>
  transition_set::members() const
  {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < words_.size(); ++i)
      for (std::uint64_t w = words_[i]; w; w &= w - 1)
        out.push_back(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
    return out;
  }

  transition_set&
  transition_set::operator|=(const transition_set& o)
  {
    for (std::size_t i = 0; i < words_.size(); ++i)
      words_[i] |= o.words_[i];
    return *this;
  }

  bool
  transition_set::operator<(const transition_set& o) const
  {
    if (n_ != o.n_)
      return n_ < o.n_;
    return words_ < o.words_;
  }

  std::size_t
  transition_set::hash() const
  {
    std::size_t h = n_;
    for (auto w : words_)
      h = h * 0x100000001b3ull ^ std::hash<std::uint64_t>()(w);
    return h;
  }

  bool
  gen_rabin_pair::operator<(const gen_rabin_pair& o) const
  {
    if (!(fin == o.fin))
      return fin < o.fin;
    return infs < o.infs;
  }

  std::size_t
  gen_rabin_acceptance::set_count() const
  {
    std::size_t n = 0;
    for (const auto& p : pairs)
      n += 1 + p.infs.size();
    return n;
  }
}
