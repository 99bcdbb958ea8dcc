#include <rabinato/fixtures.hpp>
#include <rabinato/parser.hpp>

#include <algorithm>
#include <chrono>
#include <functional>
#include <set>

namespace rabinato
{
  const std::vector<state_count_fixture>&
  state_count_fixtures()
  {
    static const std::vector<state_count_fixture> rows{
      {"F G a | G F b", 1, true},
      {"(F G a | G F b) & (F G c | G F d)", 1, true},
      {"(G F a1 -> G F b1) & (G F a2 -> G F b2) & (G F a3 -> G F b3)", 1, true},
      {"(G F a1 -> G F a2) & (G F a2 -> G F a3)", 1, true},
      {"(G F a | F G b) & (G F c | F G (d | X e))", 2, true},
      {"G (a | F b)", 2, true},
      {"F a | G b", 3, true},
      {"F (a | b)", 2, true},
      {"G F (a | b)", 1, true},
      {"F G a & G F a", 1, true},
      {"F G a | F G b | G F c", 1, true},
      {"(X (G r | r U (r & s U p))) U (G r | r U (r & s))", 8, false},
      {"p U (q & X (r & F (s & X F (t & X F (u & X F v)))))", 13, false},
    };
    return rows;
  }

  namespace
  {
    using clock_type = std::chrono::steady_clock;

    double
    since(clock_type::time_point t0)
    {
      return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
    }

    std::string
    show(const std::set<int>& s)
    {
      std::string out = "{";
      for (int x : s)
        out += (out.size() > 1 ? "," : "") + std::string("t") + std::to_string(x);
      return out + "}";
    }

    // A named transition: the letters (over a, b, c) it covers from a
    // ranking. Numbering follows the usual drawing of these automata.
    struct named_transition
    {
      int number;
      std::uint32_t ranking;
      std::function<bool(bool, bool, bool)> guard;
    };

    struct slave_fixture
    {
      std::string title;
      std::string psi;
      std::vector<std::vector<std::string>> rankings;  // state formulae, oldest token first
      std::vector<named_transition> transitions;
      std::set<int> fail, succeed1, buy1, succeed2, buy2;
    };

    std::set<int>
    named(const slave_automaton& s, const std::vector<named_transition>& ts, const transition_set& set)
    {
      std::set<int> out;
      for (const auto& nt : ts)
        for (std::size_t l = 0; l < s.letter_count(); ++l)
          {
            letter nu = s.mojmir.sigma.at(l);
            bool a = nu & 1, b = nu >> 1 & 1, c = nu >> 2 & 1;
            if (nt.guard(a, b, c) && set.test(nt.ranking * s.letter_count() + l))
              out.insert(nt.number);
          }
      return out;
    }

    void
    check_slave(const slave_fixture& fx, std::vector<fixture_check>& out)
    {
      auto t0 = clock_type::now();
      formula_factory ff;
      // Fix atom ids so that bit 0/1/2 of a letter are a/b/c.
      ff.atom("a");
      ff.atom("b");
      ff.atom("c");
      formula psi = parse(ff, fx.psi);
      alphabet sigma({0, 1, 2});
      slave_automaton s = build_slave(ff, ff.always(psi), sigma);
      auto acc = apply_acceptance(s, accepting_states(ff, s.mojmir, {}));

      auto push = [&](std::string what, bool ok, std::string detail) {
        out.push_back({"structure", fx.title + ": " + what, ok, std::move(detail), since(t0)});
      };
      push("Mojmir states", s.mojmir.size() == 4, std::to_string(s.mojmir.size()) + " (expected 4)");
      std::vector<std::vector<formula>> want_rankings, got_rankings;
      for (const auto& r : fx.rankings)
        {
          want_rankings.emplace_back();
          for (const auto& text : r)
            want_rankings.back().push_back(parse(ff, text));
        }
      for (const auto& r : s.rankings)
        {
          got_rankings.emplace_back();
          for (auto q : r)
            got_rankings.back().push_back(s.mojmir.states[q]);
        }
      push("rankings", got_rankings == want_rankings,
           std::to_string(s.rankings.size()) + " reachable (expected " + std::to_string(fx.rankings.size()) + ")");

      // Transitions named t1..t8 must partition the transitions.
      std::set<std::pair<std::uint32_t, std::size_t>> covered;
      bool partition = true;
      for (const auto& nt : fx.transitions)
        for (std::size_t l = 0; l < s.letter_count(); ++l)
          {
            letter nu = s.mojmir.sigma.at(l);
            if (nt.guard(nu & 1, nu >> 1 & 1, nu >> 2 & 1))
              partition = covered.insert({nt.ranking, l}).second && partition;
          }
      partition = partition && covered.size() == s.transition_count();
      push("transition naming", partition, partition ? "t1..t8 partition the transitions" : "mismatch");

      auto cmp = [&](const char* what, const transition_set& actual, const std::set<int>& expected) {
        auto got = named(s, fx.transitions, actual);
        push(what, got == expected, show(got) + " (expected " + show(expected) + ")");
      };
      cmp("fail", acc.fail, fx.fail);
      cmp("succeed(1)", acc.succeed.at(0), fx.succeed1);
      cmp("buy(1)", acc.buy.at(0), fx.buy1);
      cmp("succeed(2)", acc.succeed.at(1), fx.succeed2);
      cmp("buy(2)", acc.buy.at(1), fx.buy2);
      // Only the union enters the Rabin pair P_2.
      transition_set fin2 = acc.fail;
      fin2 |= acc.buy.at(1);
      std::set<int> want = fx.fail;
      want.insert(fx.buy2.begin(), fx.buy2.end());
      cmp("fail | buy(2)", fin2, want);
    }
  }

  std::vector<fixture_check>
  run_fixtures(const build_options& opts)
  {
    std::vector<fixture_check> out;
    for (const auto& row : state_count_fixtures())
      {
        fixture_check c;
        c.group = row.exact ? "state-count" : "state-count-approx";
        c.name = row.formula;
        auto t0 = clock_type::now();
        try
          {
            formula_factory ff;
            gdra g = build_gdra(ff, parse(ff, row.formula), opts);
            std::size_t n = g.aut.state_count();
            c.passed = row.exact ? n == row.expected
                                 : n * 2 >= row.expected && n <= row.expected * 2;
            c.detail = std::to_string(n) + " states (expected "
                       + (row.exact ? "" : std::string("about ")) + std::to_string(row.expected) + ")";
          }
        catch (const std::exception& e)
          {
            c.detail = e.what();
          }
        c.millis = since(t0);
        out.push_back(std::move(c));
      }

    // Slave of G(a | b U c). Rankings: (1,_) = {psi:1}, (2,1) = {psi:2, bUc:1}.
    slave_fixture disj{
      "slave of a | (b U c)",
      "a | (b U c)",
      {{"a | (b U c)"}, {"b U c", "a | (b U c)"}},
      {
        {1, 0, [](bool a, bool, bool c) { return a || c; }},
        {2, 0, [](bool a, bool b, bool c) { return !a && !b && !c; }},
        {3, 0, [](bool a, bool b, bool c) { return !a && b && !c; }},
        {4, 1, [](bool a, bool b, bool c) { return a && b && !c; }},
        {5, 1, [](bool a, bool b, bool c) { return !a && b && !c; }},
        {6, 1, [](bool, bool, bool c) { return c; }},
        {7, 1, [](bool a, bool b, bool c) { return a && !b && !c; }},
        {8, 1, [](bool a, bool b, bool c) { return !a && !b && !c; }},
      },
      {2, 7, 8}, {1, 6}, {}, {4, 6, 7}, {5, 8}};
    check_slave(disj, out);

    slave_fixture conj{
      "slave of a & X (b U c)",
      "a & X (b U c)",
      {{"a & X (b U c)"}, {"b U c", "a & X (b U c)"}},
      {
        {1, 0, [](bool a, bool, bool) { return !a; }},
        {2, 0, [](bool a, bool, bool) { return a; }},
        {3, 1, [](bool a, bool b, bool c) { return a && b && !c; }},
        {4, 1, [](bool a, bool, bool c) { return a && c; }},
        {5, 1, [](bool a, bool b, bool c) { return a && !b && !c; }},
        {6, 1, [](bool a, bool b, bool c) { return !a && b && !c; }},
        {7, 1, [](bool a, bool, bool c) { return !a && c; }},
        {8, 1, [](bool a, bool b, bool c) { return !a && !b && !c; }},
      },
      {1, 5, 6, 7, 8}, {4, 7}, {}, {}, {3}};
    check_slave(conj, out);

    // Accepting Mojmir states of (G psi) U !a, psi = a & X !a, with and
    // without G psi guessed.
    {
      auto t0 = clock_type::now();
      formula_factory ff;
      formula phi = parse(ff, "(G (a & X !a)) U !a");
      formula gpsi = g_subformulas(phi).at(0);
      mojmir_automaton m = build_mojmir(ff, phi, alphabet::of(ff, phi));
      auto names = [&](const std::vector<bool>& acc) {
        std::set<std::string> s;
        for (std::size_t q = 0; q < m.size(); ++q)
          if (acc[q])
            s.insert(ff.to_string(m.states[q]));
        return s;
      };
      auto render = [](const std::set<std::string>& s) {
        std::string out = "{";
        for (const auto& x : s)
          out += (out.size() > 1 ? ", " : "") + x;
        return out + "}";
      };
      auto none = names(accepting_states(ff, m, {}));
      auto with = names(accepting_states(ff, m, {gpsi}));
      std::set<std::string> want_none{"tt"};
      std::set<std::string> want_with{"tt", ff.to_string(gpsi)};
      out.push_back({"structure", "accepting states of (G (a & X !a)) U !a, no guess",
                     none == want_none, render(none), since(t0)});
      out.push_back({"structure", "accepting states of (G (a & X !a)) U !a, G guessed",
                     with == want_with, render(with), since(t0)});
    }
    return out;
  }
}
