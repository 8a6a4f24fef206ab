// Microbenchmarks: exact-series ring kernels and the full series pipelines.
#include <benchmark/benchmark.h>

#include <random>

#include "dinv/analysis.hpp"
#include "dinv/basic_classes.hpp"
#include "dinv/donaldson.hpp"
#include "dinv/surface.hpp"

namespace {

using namespace dinv;

FramePtr two_var(int trunc) {
  return ProbeFrame::raw({"x", "y"}, {{Rational(0), Rational(0)}, {Rational(0), Rational(0)}},
                         trunc);
}

ExpandedSeries dense_series(const FramePtr& frame, int trunc, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 7);
  ExpandedSeries s(frame, trunc);
  for (int dx = 0; dx <= trunc; ++dx)
    for (int dy = 0; dy + dx <= trunc; ++dy) s.add_term({dx, dy}, Rational(num(rng), den(rng)));
  return s;
}

SurfacePtr dolgachev() {
  SurfaceSpec spec;
  spec.variant = Variant::elliptic_p1;
  spec.p_g = 1;
  spec.multiplicities = {2, 3};
  return Surface::build(spec);
}

SurfacePtr general_type_surface() {
  SurfaceSpec spec;
  spec.variant = Variant::general_type;
  spec.p_g = 2;
  spec.k_min_sq = 1;
  spec.num_blowups = 2;
  return Surface::build(spec);
}

void BM_series_multiply(benchmark::State& state) {
  const int trunc = static_cast<int>(state.range(0));
  auto frame = two_var(trunc);
  auto a = dense_series(frame, trunc, 1);
  auto b = dense_series(frame, trunc, 2);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_series_multiply)->Arg(8)->Arg(12)->Arg(16);

void BM_exp_like(benchmark::State& state) {
  const int trunc = static_cast<int>(state.range(0));
  auto frame = two_var(trunc);
  auto form = linear_form(frame, {Rational(2, 3), Rational(-1, 2)});
  for (auto _ : state) benchmark::DoNotOptimize(exp_like(form, ExpKind::exp));
}
BENCHMARK(BM_exp_like)->Arg(8)->Arg(16);

void BM_exact_divide(benchmark::State& state) {
  const int trunc = static_cast<int>(state.range(0));
  auto frame = ProbeFrame::raw({"x"}, {{Rational(0)}}, trunc);
  auto num = exp_like(linear_form(frame, {Rational(6)}), ExpKind::sinh);
  auto den = exp_like(linear_form(frame, {Rational(1)}), ExpKind::sinh);
  for (auto _ : state) benchmark::DoNotOptimize(exact_divide(num, den));
}
BENCHMARK(BM_exact_divide)->Arg(16)->Arg(24)->Arg(32);

void BM_elliptic_expand(benchmark::State& state) {
  const int trunc = static_cast<int>(state.range(0));
  auto s = dolgachev();
  auto q = closed_form_elliptic(s, s->class_zero());
  std::vector<std::pair<std::string, CohClass>> probes = {{"h", s->class_h()}};
  for (auto _ : state) benchmark::DoNotOptimize(expand(q, probes, trunc));
}
BENCHMARK(BM_elliptic_expand)->Arg(12)->Arg(20);

void BM_structure_expand_blown(benchmark::State& state) {
  auto s = general_type_surface();
  std::vector<Rational> lc(s->basis_size(), Rational(0));
  lc[0] = 1;
  lc[1] = 1;
  auto L = s->class_from_coords(lc);
  auto q = assemble_structure(s, L, basic_classes_general_type(s, L));
  std::vector<Rational> pc(s->basis_size(), Rational(0));
  pc[0] = 1;
  pc[1] = 2;
  pc[2] = 3;
  pc[3] = 1;
  std::vector<std::pair<std::string, CohClass>> probes = {{"c", s->class_from_coords(pc)},
                                                          {"w", s->class_w()}};
  for (auto _ : state) benchmark::DoNotOptimize(expand(q, probes, 10));
}
BENCHMARK(BM_structure_expand_blown);

void BM_evaluate(benchmark::State& state) {
  SurfaceSpec spec;
  spec.variant = Variant::elliptic_p1;
  spec.p_g = 1;
  auto s = Surface::build(spec);
  auto q = closed_form_elliptic(s, s->class_zero());
  EvalRequest req;
  req.arguments = {EvalArgument{s->class_h(), 10}};
  req.k = 4;
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(q, req));
}
BENCHMARK(BM_evaluate);

void BM_existence_bound(benchmark::State& state) {
  auto s = dolgachev();
  for (auto _ : state) benchmark::DoNotOptimize(existence_bound(s, s->class_zero()));
}
BENCHMARK(BM_existence_bound);

void BM_tau_certificate(benchmark::State& state) {
  auto s = dolgachev();
  auto q = closed_form_elliptic(s, s->class_zero());
  for (auto _ : state) benchmark::DoNotOptimize(tau_certificate(q, 4));
}
BENCHMARK(BM_tau_certificate);

}  // namespace

BENCHMARK_MAIN();
