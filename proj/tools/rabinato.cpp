// Command-line front end: translate formulae, cross-check against the
// lasso oracle, and run the reference fixtures.

#include <rabinato/composer.hpp>
#include <rabinato/fixtures.hpp>
#include <rabinato/io.hpp>
#include <rabinato/oracle.hpp>
#include <rabinato/parser.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>

namespace
{
  enum exit_code : int
  {
    ok = 0,
    input_error = 1,
    cap_error = 2,
    disagreement = 3,
  };

  struct translate_args
  {
    std::string formula;
    std::string format = "hoa";
    bool no_relevance = false;
    bool plain_master = false;
    std::size_t state_cap = 1000000;
    std::size_t disjunct_cap = 10000;
  };

  struct xcheck_args
  {
    std::uint64_t seed = 1;
    std::size_t samples = 1000;
    std::size_t max_nodes = 12;
    std::size_t atoms = 3;
    bool no_relevance = false;
    bool plain_master = false;
  };

  rabinato::build_options
  options(bool no_relevance, bool plain_master)
  {
    rabinato::build_options o;
    o.relevance = !no_relevance;
    o.freeze_invariant = !plain_master;
    return o;
  }

  int
  run_translate(const translate_args& args)
  {
    rabinato::formula_factory ff;
    rabinato::formula phi = rabinato::parse(ff, args.formula);
    auto opts = options(args.no_relevance, args.plain_master);
    opts.state_cap = args.state_cap;
    opts.disjunct_cap = args.disjunct_cap;
    auto t0 = std::chrono::steady_clock::now();
    rabinato::gdra g = rabinato::build_gdra(ff, phi, opts);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    if (args.format == "hoa")
      std::cout << rabinato::emit_hoa(g.aut, ff.to_string(phi));
    else if (args.format == "dot")
      std::cout << rabinato::emit_dot(g.aut, ff.to_string(phi));
    else
      {
        auto st = rabinato::stats(g.aut);
        nlohmann::ordered_json j;
        j["states"] = st.states;
        j["transitions"] = st.transitions;
        j["disjuncts"] = st.disjuncts;
        j["acceptance_sets"] = st.acceptance_sets;
        j["build_ms"] = ms;
        std::cout << j.dump() << "\n";
      }
    return ok;
  }

  int
  run_xcheck(const xcheck_args& args)
  {
    if (args.atoms == 0 || args.atoms > 26 || args.max_nodes == 0)
      {
        std::cerr << "xcheck: need 1..26 atoms and at least one node\n";
        return input_error;
      }
    rabinato::random_formula_options fo;
    fo.max_nodes = args.max_nodes;
    fo.atoms.clear();
    for (std::size_t i = 0; i < args.atoms; ++i)
      fo.atoms.push_back(std::string(1, static_cast<char>('a' + i)));
    auto opts = options(args.no_relevance, args.plain_master);

    std::mt19937_64 rng(args.seed);
    std::size_t agree = 0;
    for (std::size_t i = 0; i < args.samples; ++i)
      {
        rabinato::formula_factory ff;
        std::vector<std::uint32_t> ids;
        for (const auto& a : fo.atoms)
          ids.push_back(ff.atom_id(a));
        rabinato::formula phi = rabinato::random_formula(ff, rng, fo);
        rabinato::lasso w = rabinato::random_lasso(rng, 4, 4, ids);
        rabinato::gdra g = rabinato::build_gdra(ff, phi, opts);
        bool expected = rabinato::eval_ltl(phi, w);
        bool actual = rabinato::accepts(g.aut, w);
        if (expected == actual)
          {
            ++agree;
            continue;
          }
        std::cerr << "disagreement on " << ff.to_string(phi) << ": oracle " << expected
                  << ", automaton " << actual << ", word ";
        for (auto nu : w.prefix)
          std::cerr << '{' << nu << '}';
        std::cerr << " (";
        for (auto nu : w.loop)
          std::cerr << '{' << nu << '}';
        std::cerr << ")^w\n";
      }
    std::cout << agree << "/" << args.samples << " agree\n";
    return agree == args.samples ? ok : disagreement;
  }

  int
  run_fixture_table()
  {
    auto checks = rabinato::run_fixtures();
    std::size_t width = 0;
    for (const auto& c : checks)
      width = std::max(width, c.name.size());
    bool all = true;
    for (const auto& c : checks)
      {
        all = all && c.passed;
        std::cout << (c.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(static_cast<int>(width))
                  << c.name << "  " << c.detail << "  [" << std::fixed << std::setprecision(1)
                  << c.millis << " ms]\n";
      }
    return all ? ok : disagreement;
  }
}

int
main(int argc, char** argv)
{
  CLI::App app{"LTL to deterministic generalized Rabin automata"};
  app.require_subcommand(1);

  translate_args targs;
  auto* translate = app.add_subcommand("translate", "Translate a formula");
  translate->add_option("formula", targs.formula, "LTL formula")->required();
  translate->add_option("--format", targs.format, "Output format")
    ->check(CLI::IsMember({"hoa", "dot", "stats"}));
  translate->add_flag("--no-relevance", targs.no_relevance, "Keep every slave in every state");
  translate->add_flag("--plain-master", targs.plain_master,
                      "Unfold suffix-invariant subformulae in the master");
  translate->add_option("--state-cap", targs.state_cap, "Maximum number of states");
  translate->add_option("--disjunct-cap", targs.disjunct_cap, "Maximum number of acceptance disjuncts");

  xcheck_args xargs;
  if (const char* env = std::getenv("RABINATO_SEED"))
    xargs.seed = std::strtoull(env, nullptr, 10);
  auto* xcheck = app.add_subcommand("xcheck", "Cross-check random formulae against the lasso oracle");
  xcheck->add_option("--seed", xargs.seed, "Random seed");
  xcheck->add_option("--samples", xargs.samples, "Number of (formula, word) pairs");
  xcheck->add_option("--max-nodes", xargs.max_nodes, "Maximum formula size");
  xcheck->add_option("--atoms", xargs.atoms, "Number of atomic propositions");
  xcheck->add_flag("--no-relevance", xargs.no_relevance, "Keep every slave in every state");
  xcheck->add_flag("--plain-master", xargs.plain_master,
                   "Unfold suffix-invariant subformulae in the master");

  auto* fixtures = app.add_subcommand("fixtures", "Check reference automata");

  try
    {
      app.parse(argc, argv);
    }
  catch (const CLI::ParseError& e)
    {
      int code = app.exit(e);
      return code == 0 ? ok : input_error;
    }

  try
    {
      if (*translate)
        return run_translate(targs);
      if (*xcheck)
        return run_xcheck(xargs);
      if (*fixtures)
        return run_fixture_table();
    }
  catch (const rabinato::parse_error& e)
    {
      std::cerr << "error: " << e.what() << "\n";
      return input_error;
    }
  catch (const rabinato::resource_error& e)
    {
      std::cerr << "error: " << e.what() << "\n";
      return cap_error;
    }
  return ok;
}
