#include <benchmark/benchmark.h>

#include <random>

#include "bernopt/bernstein.hpp"
#include "bernopt/convex.hpp"
#include "bernopt/distance.hpp"
#include "bernopt/extrema.hpp"
#include "bernopt/kinematics.hpp"

using namespace bernopt;

namespace {

BernsteinPoly random_poly(int dims, int degree, unsigned seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  Mat m(dims, degree + 1);
  for (double& v : m.data()) v = u(gen);
  return BernsteinPoly(std::move(m), 0.0, 1.0);
}

}  // namespace

static void BM_Evaluate(benchmark::State& state) {
  const BernsteinPoly p = random_poly(2, static_cast<int>(state.range(0)), 1);
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(p.value(t));
    t = t < 1.0 ? t + 1.0 / 64 : 0.0;
  }
}
BENCHMARK(BM_Evaluate)->Arg(5)->Arg(10)->Arg(30);

static void BM_Split(benchmark::State& state) {
  const BernsteinPoly p = random_poly(2, static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(split(p, 0.37));
}
BENCHMARK(BM_Split)->Arg(5)->Arg(10)->Arg(30);

static void BM_Elevate(benchmark::State& state) {
  const BernsteinPoly p = random_poly(1, 10, 3);
  const int target = static_cast<int>(state.range(0));
  elevation_matrix(10, target);  // warm the cache like a planner would
  for (auto _ : state) benchmark::DoNotOptimize(elevate(p, target));
}
BENCHMARK(BM_Elevate)->Arg(20)->Arg(50)->Arg(100);

static void BM_ExtremaDegree5(benchmark::State& state) {
  Mat m(1, 6);
  const double c[6] = {5, 0, 2, 5, 7, 5};
  for (int i = 0; i < 6; ++i) m(0, i) = c[i];
  const BernsteinPoly p(m, 0.0, 1.0);
  ExtremaQuery q;
  q.epsilon = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(minimum(p, q));
    benchmark::DoNotOptimize(maximum(p, q));
  }
}
BENCHMARK(BM_ExtremaDegree5);

static void BM_Gjk(benchmark::State& state) {
  const ConvexPointSet a = control_hull(random_poly(3, static_cast<int>(state.range(0)), 4));
  ConvexPointSet b = control_hull(random_poly(3, static_cast<int>(state.range(0)), 5));
  for (auto& pt : b.points) pt[0] += 30.0;
  for (auto _ : state) benchmark::DoNotOptimize(gjk(a, b));
}
BENCHMARK(BM_Gjk)->Arg(5)->Arg(15);

static void BM_MinDistance(benchmark::State& state) {
  const BernsteinPoly a = random_poly(2, 5, 6);
  BernsteinPoly b = [&] {
    Mat m = random_poly(2, 5, 7).coeffs();
    for (int cidx = 0; cidx < m.cols(); ++cidx) m(0, cidx) += 25.0;
    return BernsteinPoly(m, 0.0, 1.0);
  }();
  DistanceQuery q;
  q.epsilon = 1e-4;
  for (auto _ : state) benchmark::DoNotOptimize(min_distance(a, b, q));
}
BENCHMARK(BM_MinDistance);

static void BM_SpeedSquared(benchmark::State& state) {
  const BernsteinPoly p = random_poly(2, 10, 8);
  for (auto _ : state) benchmark::DoNotOptimize(speed_squared(p));
}
BENCHMARK(BM_SpeedSquared);

BENCHMARK_MAIN();
