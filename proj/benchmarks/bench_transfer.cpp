#include <benchmark/benchmark.h>

#include "qfc/coupling.hpp"
#include "qfc/mode_matrix.hpp"
#include "qfc/transfer.hpp"

namespace {

qfc::OperatingPoint reference_point() {
  return qfc::make_point(qfc::Band::E1367, 13, -31, 14, 50, 7, 50);
}

void bm_mode_matrix_closed_form(benchmark::State& state) {
  const qfc::OperatingPoint pt = reference_point();
  const qfc::ModeMatrixEvaluator eval(pt);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval.closed_form({40.0, 3.0}));
  }
}
BENCHMARK(bm_mode_matrix_closed_form);

void bm_mode_matrix_linear_solve(benchmark::State& state) {
  const qfc::OperatingPoint pt = reference_point();
  const qfc::ModeMatrixEvaluator eval(pt);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval.linear_solve({40.0, 3.0}));
  }
}
BENCHMARK(bm_mode_matrix_linear_solve);

void bm_coupling_profile_eval(benchmark::State& state) {
  const qfc::OperatingPoint pt = reference_point();
  const qfc::CouplingProfile prof = qfc::coupling_profile(pt);
  double z = 0.0;
  for (auto _ : state) {
    z += 1.0 / 4096.0;
    if (z > 1.0) z = 0.0;
    benchmark::DoNotOptimize(prof.omega_c(z));
  }
}
BENCHMARK(bm_coupling_profile_eval);

void bm_transfer_exact_sliced(benchmark::State& state) {
  const qfc::OperatingPoint pt = reference_point();
  qfc::PropagationControls c;
  c.initial_slices = static_cast<int>(state.range(0));
  c.tol = 1e30;  // fixed two-level refinement, no doubling loop
  for (auto _ : state) {
    benchmark::DoNotOptimize(qfc::transfer_matrix(pt, qfc::PropagationMethod::ExactSliced, c));
  }
}
BENCHMARK(bm_transfer_exact_sliced)->Arg(1024)->Arg(4096);

void bm_transfer_magnus(benchmark::State& state) {
  const qfc::OperatingPoint pt = reference_point();
  qfc::PropagationControls c;
  c.magnus_intervals = static_cast<int>(state.range(1));
  const auto method = state.range(0) == 1 ? qfc::PropagationMethod::Magnus1
                                          : qfc::PropagationMethod::Magnus2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qfc::transfer_matrix(pt, method, c));
  }
}
BENCHMARK(bm_transfer_magnus)->Args({1, 128})->Args({2, 128})->Args({2, 256});

}  // namespace
