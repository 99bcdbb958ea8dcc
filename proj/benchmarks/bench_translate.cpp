#include <benchmark/benchmark.h>

#include <rabinato/composer.hpp>
#include <rabinato/fixtures.hpp>
#include <rabinato/io.hpp>
#include <rabinato/oracle.hpp>
#include <rabinato/parser.hpp>

#include <random>

using namespace rabinato;

// Full translation of one reference formula, fresh factory per iteration.
static void
bm_translate(benchmark::State& state)
{
  const auto& row = state_count_fixtures().at(state.range(0));
  state.SetLabel(row.formula);
  std::size_t states = 0;
  for (auto _ : state)
    {
      formula_factory ff;
      auto g = build_gdra(ff, parse(ff, row.formula));
      states = g.aut.state_count();
      benchmark::DoNotOptimize(g);
    }
  state.counters["states"] = double(states);
}
BENCHMARK(bm_translate)->DenseRange(0, static_cast<int>(state_count_fixtures().size()) - 1);

static void
bm_translate_no_relevance(benchmark::State& state)
{
  const auto& row = state_count_fixtures().at(state.range(0));
  state.SetLabel(row.formula);
  build_options opts;
  opts.relevance = false;
  for (auto _ : state)
    {
      formula_factory ff;
      benchmark::DoNotOptimize(build_gdra(ff, parse(ff, row.formula), opts));
    }
}
BENCHMARK(bm_translate_no_relevance)->DenseRange(0, static_cast<int>(state_count_fixtures().size()) - 1);

// Translate plus oracle check for a batch of random formulae.
static void
bm_xcheck(benchmark::State& state)
{
  for (auto _ : state)
    {
      std::mt19937_64 rng(7);
      random_formula_options opts;
      int agree = 0;
      for (int i = 0; i < 100; ++i)
        {
          formula_factory ff;
          std::vector<std::uint32_t> ids{ff.atom_id("a"), ff.atom_id("b"), ff.atom_id("c")};
          formula phi = random_formula(ff, rng, opts);
          auto g = build_gdra(ff, phi);
          lasso w = random_lasso(rng, 4, 4, ids);
          agree += accepts(g.aut, w) == eval_ltl(phi, w);
        }
      benchmark::DoNotOptimize(agree);
    }
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(bm_xcheck);

static void
bm_emit_hoa(benchmark::State& state)
{
  formula_factory ff;
  auto g = build_gdra(ff, parse(ff, "(G F a -> G F b) & (G F c -> G F d) & (G F e -> G F f)"));
  for (auto _ : state)
    benchmark::DoNotOptimize(emit_hoa(g.aut));
}
BENCHMARK(bm_emit_hoa);

BENCHMARK_MAIN();
