#include <doctest.h>

#include "support.hpp"

#include <rabinato/composer.hpp>
#include <rabinato/io.hpp>
#include <rabinato/mojmir.hpp>
#include <rabinato/oracle.hpp>

#include <random>
#include <regex>
#include <sstream>

using namespace rabinato;
using namespace rabinato::test;

namespace
{
  std::size_t
  count_matches(const std::string& text, const std::regex& re)
  {
    return std::distance(std::sregex_iterator(text.begin(), text.end(), re), std::sregex_iterator());
  }

  explicit_automaton
  figure_one(formula_factory& ff)
  {
    seed_abc(ff);
    auto s = build_slave(ff, parse(ff, "G (a | (b U c))"), alphabet({0, 1, 2}));
    return to_explicit(ff, s, apply_acceptance(s, accepting_states(ff, s.mojmir, {})));
  }
}

TEST_SUITE("io")
{
  TEST_CASE("HOA header of a one-state automaton")
  {
    formula_factory ff;
    auto g = build_gdra(ff, parse(ff, "F G a | G F b"));
    std::string hoa = emit_hoa(g.aut, "F G a | G F b");
    CHECK(hoa.rfind("HOA: v1\n", 0) == 0);
    CHECK(hoa.find("States: 1\n") != std::string::npos);
    CHECK(hoa.find("Start: 0\n") != std::string::npos);
    CHECK(hoa.find("AP: 2 \"a\" \"b\"") != std::string::npos);
    CHECK(hoa.find("acc-name: generalized-Rabin") != std::string::npos);
    CHECK(hoa.find("--BODY--") != std::string::npos);
    CHECK(hoa.find("--END--") != std::string::npos);
  }

  TEST_CASE("HOA for tt and ff")
  {
    formula_factory ff;
    std::string t = emit_hoa(build_gdra(ff, ff.tt()).aut);
    CHECK(t.find("Acceptance: 1 Fin(0)\n") != std::string::npos);
    std::string f = emit_hoa(build_gdra(ff, ff.ff()).aut);
    CHECK(f.find("Acceptance: 0 f\n") != std::string::npos);
  }

  TEST_CASE("HOA round-trips through the reader")
  {
    std::mt19937_64 rng(107);
    random_formula_options opts;
    for (int i = 0; i < 200; ++i)
      {
        formula_factory ff;
        auto a = build_gdra(ff, random_formula(ff, rng, opts)).aut;
        std::string text = emit_hoa(a);
        auto back = read_hoa(text);
        CHECK(back.ap == a.ap);
        CHECK(back.initial == a.initial);
        CHECK(back.successor == a.successor);
        CHECK(back.acceptance.pairs == a.acceptance.pairs);
        CHECK(emit_hoa(back) == text);
      }
    CHECK_THROWS(read_hoa("HOA: v1\nStates: x\n"));
  }

  TEST_CASE("every edge mark is a declared acceptance set")
  {
    std::mt19937_64 rng(109);
    random_formula_options opts;
    const std::regex acc_line("Acceptance: (\\d+)");
    const std::regex marks("\\{([0-9 ]+)\\}");
    for (int i = 0; i < 200; ++i)
      {
        formula_factory ff;
        std::string hoa = emit_hoa(build_gdra(ff, random_formula(ff, rng, opts)).aut);
        std::smatch m;
        REQUIRE(std::regex_search(hoa, m, acc_line));
        int declared = std::stoi(m[1]);
        std::string body = hoa.substr(hoa.find("--BODY--"));
        for (auto it = std::sregex_iterator(body.begin(), body.end(), marks); it != std::sregex_iterator(); ++it)
          {
            std::istringstream in((*it)[1].str());
            int k;
            while (in >> k)
              CHECK(k < declared);
          }
      }
  }

  TEST_CASE("DOT output")
  {
    formula_factory ff;
    std::string one = emit_dot(build_gdra(ff, parse(ff, "F G a | G F b")).aut);
    const std::regex node("^\\s*\\d+ \\[", std::regex::multiline);
    CHECK(count_matches(one, node) == 1);

    formula_factory f1;
    std::string fig = emit_dot(figure_one(f1));
    CHECK(count_matches(fig, node) == 2);
    // Eight labeled edges t1..t8 between numbered nodes.
    CHECK(count_matches(fig, std::regex("\\d+ -> \\d+")) == 8);
    for (int t = 1; t <= 8; ++t)
      CHECK(fig.find("t" + std::to_string(t) + ":") != std::string::npos);
  }

  TEST_CASE("output is byte-identical across runs")
  {
    for (const char* text : {"G (a | F b)", "(G F a -> G F b) & (G F c -> G F d)"})
      {
        formula_factory f1, f2;
        auto a = build_gdra(f1, parse(f1, text)).aut;
        auto b = build_gdra(f2, parse(f2, text)).aut;
        CHECK(emit_hoa(a, text) == emit_hoa(b, text));
        CHECK(emit_dot(a, text) == emit_dot(b, text));
      }
  }

  TEST_CASE("letter covers are exact")
  {
    std::mt19937 rng(113);
    for (int i = 0; i < 500; ++i)
      {
        std::size_t nvars = rng() % 5;
        std::vector<std::uint32_t> letters;
        for (std::uint32_t x = 0; x < (1u << nvars); ++x)
          if (rng() & 1)
            letters.push_back(x);
        auto cover = cover_letters(letters, nvars);
        for (std::uint32_t x = 0; x < (1u << nvars); ++x)
          {
            bool in = std::find(letters.begin(), letters.end(), x) != letters.end();
            bool covered = false;
            for (auto c : cover)
              covered = covered || (x & c.mask) == c.value;
            CHECK(in == covered);
          }
        for (auto c : cover)
          CHECK((c.value & ~c.mask) == 0u);
      }
    CHECK(cover_letters({0, 1, 2, 3}, 2) == std::vector<cube>{{0, 0}});
    CHECK(cover_letters({}, 2).empty());
  }

  TEST_CASE("edges group letters by successor and marks")
  {
    formula_factory ff;
    auto a = figure_one(ff);
    auto edges = group_edges(a);
    std::size_t letters = 0;
    for (const auto& e : edges)
      letters += e.letters.size();
    CHECK(letters == a.transition_count());
    for (std::size_t i = 0; i < edges.size(); ++i)
      for (std::size_t j = i + 1; j < edges.size(); ++j)
        CHECK_FALSE((edges[i].src == edges[j].src && edges[i].dst == edges[j].dst
                     && edges[i].marks == edges[j].marks));
  }
}
