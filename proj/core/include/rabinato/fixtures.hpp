#pragma once

#include <rabinato/composer.hpp>

#include <string>
#include <vector>

namespace rabinato
{
  struct fixture_check
  {
    std::string group;   // state-count, state-count-approx, structure
    std::string name;
    bool passed = false;
    std::string detail;  // actual vs expected
    double millis = 0;
  };

  /// Reference automata with known sizes and acceptance sets.
  std::vector<fixture_check> run_fixtures(const build_options& opts = {});

  /// The expected state counts used by run_fixtures.
  struct state_count_fixture
  {
    const char* formula;
    std::size_t expected;
    bool exact;  // otherwise within a factor of two
  };
  const std::vector<state_count_fixture>& state_count_fixtures();
}
