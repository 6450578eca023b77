#include <benchmark/benchmark.h>

#include "k3/cm.hpp"
#include "k3/fibers.hpp"
#include "k3/lattice.hpp"

using namespace k3;

namespace {

Poly P(const std::string& s) {
  RationalFunction f = parse_rational_function(s, 1);
  return exact_div(f.num(), f.den());
}

void BM_reduce(benchmark::State& st) {
  bqf::Form f{Int(1009), Int(1999), Int(991)};
  for (auto _ : st) benchmark::DoNotOptimize(bqf::reduce(f));
}
BENCHMARK(BM_reduce);

void BM_compose(benchmark::State& st) {
  auto cg = bqf::class_group(Int(-9983));
  const auto& a = cg.elements[1];
  const auto& b = cg.elements[cg.elements.size() / 2];
  for (auto _ : st) benchmark::DoNotOptimize(bqf::compose(a, b));
}
BENCHMARK(BM_compose);

void BM_class_group(benchmark::State& st) {
  Int d(-st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(bqf::class_group(d));
}
BENCHMARK(BM_class_group)->Arg(23)->Arg(9983)->Arg(99971);

void BM_two_torsion_scan(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(bqf::two_torsion_scan(7392));
}
BENCHMARK(BM_two_torsion_scan)->Unit(benchmark::kMillisecond);

void BM_fiber_survey(benchmark::State& st) {
  auto w = ellsurf::WeierstrassModel::short_model(1, P("-6*t^4"), P("t^5*(t^2-6*t+1)"));
  for (auto _ : st) benchmark::DoNotOptimize(ellsurf::fiber_survey(w));
}
BENCHMARK(BM_fiber_survey)->Unit(benchmark::kMicrosecond);

void BM_base_change_survey(benchmark::State& st) {
  ellsurf::WeierstrassModel w(1, P("t-2"), P("-t"), P("-t*(t-1)"), Poly(1), Poly(1));
  auto phi = parse_rational_function("-8*s^2/(s^2-1)", 1);
  for (auto _ : st) benchmark::DoNotOptimize(ellsurf::fiber_survey(ellsurf::base_change(w, phi).model));
}
BENCHMARK(BM_base_change_survey)->Unit(benchmark::kMillisecond);

void BM_j_cm(benchmark::State& st) {
  cm::CMPoint tau{1, 1, 2, -163};
  auto bits = static_cast<unsigned>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(cm::j_cm(tau, bits));
}
BENCHMARK(BM_j_cm)->Arg(128)->Arg(512)->Unit(benchmark::kMicrosecond);

void BM_hilbert_class_poly(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(cm::hilbert_class_poly(Int(-71), 512));
}
BENCHMARK(BM_hilbert_class_poly)->Unit(benchmark::kMillisecond);

void BM_discriminant_form(benchmark::State& st) {
  auto l = lattice::build_lattice("U + 2E8(-1) + A1(-1) + A5(-1)");
  for (auto _ : st) benchmark::DoNotOptimize(lattice::discriminant_form(l));
}
BENCHMARK(BM_discriminant_form)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
