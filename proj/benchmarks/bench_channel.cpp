#include <benchmark/benchmark.h>

#include "qfc/channel.hpp"
#include "qfc/qubit.hpp"

namespace {

void bm_convert_state(benchmark::State& state) {
  const int nmax = static_cast<int>(state.range(0));
  const qfc::DensityMatrix in = qfc::DensityMatrix::coherent(1.0, nmax);
  const qfc::ChannelCoeff c = qfc::ChannelCoeff::from_eta(0.7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qfc::convert_state(in, c));
  }
}
BENCHMARK(bm_convert_state)->Arg(8)->Arg(16)->Arg(32);

void bm_loss_channel_oracle(benchmark::State& state) {
  const int nmax = static_cast<int>(state.range(0));
  const qfc::DensityMatrix in = qfc::DensityMatrix::coherent(1.0, nmax);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qfc::loss_channel_oracle(in, 0.7));
  }
}
BENCHMARK(bm_loss_channel_oracle)->Arg(8)->Arg(16);

void bm_n_qubit_channel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Eigen::VectorXcd ghz = Eigen::VectorXcd::Zero(1 << n);
  ghz(0) = ghz((1 << n) - 1) = 1.0 / std::sqrt(2.0);
  const qfc::NQubitState in = qfc::NQubitState::from_pure(ghz);
  const std::vector<qfc::ChannelCoeff> cs(n, qfc::ChannelCoeff::from_eta(0.8));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qfc::n_qubit_channel(in, cs));
  }
}
BENCHMARK(bm_n_qubit_channel)->Arg(2)->Arg(4)->Arg(6)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
