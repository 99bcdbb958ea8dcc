#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace rabinato
{
  /// Fixed-size set of transition ids.
  class transition_set
  {
  public:
    transition_set() = default;
    explicit transition_set(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    void set(std::size_t i) { words_[i / 64] |= std::uint64_t(1) << (i % 64); }
    bool test(std::size_t i) const { return words_[i / 64] >> (i % 64) & 1; }
    std::size_t count() const;
    bool none() const;
    bool all() const { return count() == n_; }
    bool intersects(const transition_set& o) const;
    std::vector<std::size_t> members() const;

    transition_set& operator|=(const transition_set& o);
    bool operator==(const transition_set& o) const = default;
    bool operator<(const transition_set& o) const;
    std::size_t hash() const;

  private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
  };

  /// One disjunct of a generalized Rabin condition: the run must visit fin
  /// finitely often and every set in infs infinitely often.
  struct gen_rabin_pair
  {
    transition_set fin;
    std::vector<transition_set> infs;
    bool operator==(const gen_rabin_pair&) const = default;
    bool operator<(const gen_rabin_pair& o) const;
  };

  /// Disjunction of generalized Rabin pairs. No pairs means "reject all".
  struct gen_rabin_acceptance
  {
    std::vector<gen_rabin_pair> pairs;
    /// Number of acceptance sets when each pair gets its own Fin set.
    std::size_t set_count() const;
  };

  /// Complete deterministic automaton with explicit transitions. The
  /// transition leaving state s on letter index l has id s * letter_count + l.
  struct explicit_automaton
  {
    std::vector<std::string> ap;          // AP k is bit k of a letter index
    std::vector<std::uint32_t> ap_atoms;  // factory atom ids, parallel to ap
    std::uint32_t initial = 0;
    std::vector<std::string> state_names;
    std::vector<std::uint32_t> successor;
    gen_rabin_acceptance acceptance;

    std::size_t state_count() const { return state_names.size(); }
    std::size_t letter_count() const { return std::size_t(1) << ap.size(); }
    std::size_t transition_count() const { return successor.size(); }
    std::uint32_t next(std::uint32_t s, std::size_t l) const
    {
      return successor[s * letter_count() + l];
    }
  };
}
