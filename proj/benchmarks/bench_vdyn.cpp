#include <benchmark/benchmark.h>

#include <algorithm>

#include "vdyn/induced.hpp"

using namespace vdyn;

static void BM_Compose(benchmark::State& state) {
  Rng rng(1);
  const auto depth = static_cast<std::size_t>(state.range(0));
  const VElement f = v_random(depth, rng);
  const VElement g = v_random(depth, rng);
  for (auto _ : state) benchmark::DoNotOptimize(v_compose(g, f));
  state.counters["pairs"] = static_cast<double>(f.pairs().size() + g.pairs().size());
}
BENCHMARK(BM_Compose)->Arg(4)->Arg(8)->Arg(12);

static void BM_Invert(benchmark::State& state) {
  Rng rng(2);
  const VElement f = v_random(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(v_invert(f));
}
BENCHMARK(BM_Invert)->Arg(8)->Arg(12);

static void BM_ActPoint(benchmark::State& state) {
  Rng rng(3);
  const VElement f = v_random(12, rng);
  const Point x = parse_point("0110(10011)");
  for (auto _ : state) benchmark::DoNotOptimize(v_act_point(f, x));
}
BENCHMARK(BM_ActPoint);

static void BM_EvalBit(benchmark::State& state) {
  Rng rng(4);
  const VElement f = v_random(12, rng);
  const Point x = parse_point("0110(10011)");
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(v_eval_bit(f, x, n));
}
BENCHMARK(BM_EvalBit)->Arg(0)->Arg(63)->Arg(1000);

static void BM_Freeness(benchmark::State& state) {
  const VHom dhom = default_d_hom();
  const auto len = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(freeness_search(dhom, len));
  state.counters["words"] = static_cast<double>(reduced_word_count(len));
}
BENCHMARK(BM_Freeness)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_AntidiagonalWitness(benchmark::State& state) {
  Rng rng(5);
  std::vector<Point> pts;
  std::vector<BinaryWord> targets;
  while (pts.size() < static_cast<std::size_t>(state.range(0))) {
    const Point p = random_point(8, rng);
    if (std::find(pts.begin(), pts.end(), p) != pts.end()) continue;
    pts.push_back(p);
    targets.emplace_back("1011");
  }
  for (auto _ : state) benchmark::DoNotOptimize(antidiagonal_witness(pts, targets));
}
BENCHMARK(BM_AntidiagonalWitness)->Arg(2)->Arg(6);

static void BM_Steer(benchmark::State& state) {
  const VHom dhom = default_d_hom();
  const auto d = [](std::vector<std::string> t) { return FreeWord::parse(Alphabet::D, t); };
  const Configuration c{Window({d({}), d({"d1"}), d({"d2", "d1^-1"}), d({"d1", "d1", "d2"})}),
                        {parse_point("(0)"), parse_point("(0)"), parse_point("1(01)"),
                         parse_point("1(01)")}};
  const std::vector<BinaryWord> targets{BinaryWord("000"), BinaryWord("111"), BinaryWord("010"),
                                        BinaryWord("101")};
  for (auto _ : state) benchmark::DoNotOptimize(steer_to_target(c, targets, dhom));
}
BENCHMARK(BM_Steer)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
