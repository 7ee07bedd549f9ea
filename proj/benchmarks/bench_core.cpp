#include <benchmark/benchmark.h>

#include <random>

#include "iwa/normality.hpp"

using namespace iwa;

namespace {

Ctx make_ctx(const char* label, long long p, int prec, int dmax) {
  return SeriesContext::make(Model::build(RootSystem::build(label), p, prec), dmax);
}

Series random_sparse(const Ctx& ctx, std::mt19937& rng, int terms, int deg) {
  Series s = series_zero(ctx, ctx->dmax());
  for (int t = 0; t < terms; ++t) {
    std::vector<int> e(ctx->nvars(), 0);
    for (int k = 0; k < deg; ++k) e[rng() % ctx->nvars()] += 1;
    s.terms[make_monomial(std::move(e))] = 1 + int(rng() % (ctx->p() - 1));
  }
  return s;
}

}  // namespace

static void BM_RootSystemBuild(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(RootSystem::build(LieType::E, 8));
}
BENCHMARK(BM_RootSystemBuild);

static void BM_StructureConstantsF4(benchmark::State& state) {
  for (auto _ : state) {
    auto rs = RootSystem::build(LieType::F, 4);
    benchmark::DoNotOptimize(rs->structure_constants().n_table.size());
  }
}
BENCHMARK(BM_StructureConstantsF4);

static void BM_ModelBuildB4(benchmark::State& state) {
  auto rs = RootSystem::build(LieType::B, 4);
  rs->structure_constants();
  for (auto _ : state)
    benchmark::DoNotOptimize(Model::build(rs, 3, 3)->dim());
}
BENCHMARK(BM_ModelBuildB4);

static void BM_LazardCoordinates(benchmark::State& state) {
  auto M = Model::build(RootSystem::build(LieType::B, 2), 3, 4);
  std::mt19937 rng(1);
  GroupElement g = M->identity();
  for (int i = 0; i < 6; ++i)
    g = M->mul(g, M->basis_element(int(rng() % M->lazard_dim())));
  for (auto _ : state) benchmark::DoNotOptimize(M->lazard_coordinates(g));
}
BENCHMARK(BM_LazardCoordinates);

static void BM_SeriesMultiply(benchmark::State& state) {
  Ctx ctx = make_ctx("A2", 3, 3, int(state.range(0)));
  std::mt19937 rng(7);
  Series a = random_sparse(ctx, rng, 4, 3);
  Series b = random_sparse(ctx, rng, 4, 3);
  for (auto _ : state) benchmark::DoNotOptimize(multiply(a, b).terms.size());
}
BENCHMARK(BM_SeriesMultiply)->Arg(6)->Arg(8);

static void BM_IdealMembership(benchmark::State& state) {
  Ctx ctx = make_ctx("A1", 3, 4, 8);
  Series W = series_variable(ctx, 0, 8);
  for (auto _ : state)
    benchmark::DoNotOptimize(ideal_membership(W, 2, 0, 8).obstruction_degree);
}
BENCHMARK(BM_IdealMembership);

static void BM_GradedDivision(benchmark::State& state) {
  std::mt19937 rng(3);
  int p = 3, n = 10;
  HomPoly a = hom_zero(p, n), b = hom_zero(p, n);
  a.degree = 4;
  b.degree = 5;
  for (int t = 0; t < 6; ++t) {
    std::vector<int> e1(n, 0), e2(n, 0);
    for (int k = 0; k < 4; ++k) e1[rng() % n] += 1;
    for (int k = 0; k < 5; ++k) e2[rng() % n] += 1;
    a.terms[e1] = 1 + int(rng() % 2);
    b.terms[e2] = 1 + int(rng() % 2);
  }
  HomPoly f = hom_mul(a, b);
  for (auto _ : state) benchmark::DoNotOptimize(graded_divides(a, f).divisible);
}
BENCHMARK(BM_GradedDivision);

BENCHMARK_MAIN();
