#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "nenkf/enkf.hpp"
#include "nenkf/gaussian.hpp"
#include "nenkf/models/lorenz96.hpp"
#include "nenkf/models/ou.hpp"
#include "nenkf/models/simulate.hpp"
#include "nenkf/nested_filters.hpp"
#include "nenkf/particle_filter.hpp"
#include "nenkf/resampling.hpp"

namespace {

using namespace nenkf;

Eigen::VectorXd ou_theta() {
  Eigen::VectorXd t(3);
  t << 1.0, 2.0, 1.0;
  return t;
}

void BM_GaussianLogpdf(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  RngStream rng(1);
  Eigen::MatrixXd a(d, d);
  for (int i = 0; i < d; ++i) a.col(i) = rng.normal_vector(d);
  const Eigen::MatrixXd sigma =
      a * a.transpose() + Eigen::MatrixXd::Identity(d, d);
  const Eigen::VectorXd y = rng.normal_vector(d);
  const Eigen::VectorXd mu = rng.normal_vector(d);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gaussian_logpdf(y, mu, sigma));
  }
}
BENCHMARK(BM_GaussianLogpdf)->Arg(2)->Arg(5)->Arg(10);

void BM_Resampling(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RngStream rng(2);
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) w(i) = rng.uniform();
  w /= w.sum();
  for (auto _ : state) {
    benchmark::DoNotOptimize(resample_multinomial(w, n, rng));
  }
}
BENCHMARK(BM_Resampling)->Arg(100)->Arg(1000);

void BM_EnkfStepOu(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  OuModel model;
  RngStream rng(3);
  EnkfStepOutput s =
      enkf_init(model, ou_theta(), n, Eigen::VectorXd::Constant(1, 10.0),
                rng.substream(0));
  const Eigen::VectorXd y = Eigen::VectorXd::Constant(1, 9.5);
  std::uint64_t t = 1;
  for (auto _ : state) {
    s = enkf_step(model, ou_theta(), s.ensemble, y, rng.substream(++t));
    benchmark::DoNotOptimize(s.log_lik_increment);
  }
}
BENCHMARK(BM_EnkfStepOu)->Arg(100)->Arg(1000);

void BM_EnkfStepLorenz(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Lorenz96Model model(5);
  Eigen::VectorXd theta(4);
  theta << 1.0, 1.0, 8.0, std::sqrt(10.0);
  RngStream rng(4);
  EnkfStepOutput s = enkf_init(model, theta, n,
                               Eigen::VectorXd::Zero(5), rng.substream(0));
  const Eigen::VectorXd y = Eigen::VectorXd::Constant(5, 1.0);
  std::uint64_t t = 1;
  for (auto _ : state) {
    s = enkf_step(model, theta, s.ensemble, y, rng.substream(++t));
    benchmark::DoNotOptimize(s.log_lik_increment);
  }
}
BENCHMARK(BM_EnkfStepLorenz)->Arg(20)->Arg(100);

void BM_PfStepOu(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  OuModel model;
  RngStream rng(5);
  PfOutput s = pf_init(model, ou_theta(), n,
                       Eigen::VectorXd::Constant(1, 10.0), rng.substream(0));
  const Eigen::VectorXd y = Eigen::VectorXd::Constant(1, 9.5);
  std::uint64_t t = 1;
  for (auto _ : state) {
    s = pf_step(model, ou_theta(), s.particles, y, 1, nullptr,
                rng.substream(++t));
    benchmark::DoNotOptimize(s.log_lik_increment);
  }
}
BENCHMARK(BM_PfStepOu)->Arg(100)->Arg(1000);

void BM_NenkfStepOu(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  OuModel model;
  const SimulatedData sim =
      simulate_dataset(model, ou_theta(), ou_recipe(model, 10), 7);
  OuterConfig cfg;
  cfg.m_particles = m;
  cfg.n_members = 10;
  cfg.seed = 8;
  for (auto _ : state) {
    auto filter = make_nenkf(model, sim.y, cfg);
    filter.run();
    benchmark::DoNotOptimize(filter.system().cum_loglik.sum());
  }
}
BENCHMARK(BM_NenkfStepOu)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace
