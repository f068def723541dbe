#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "nenkf/errors.hpp"
#include "nenkf/gaussian.hpp"
#include "nenkf/kalman.hpp"
#include "nenkf/models/lotka_volterra.hpp"
#include "nenkf/models/ou.hpp"
#include "nenkf/models/simulate.hpp"

using namespace nenkf;

namespace {

// Joint multivariate-Gaussian oracle for a scalar linear-Gaussian model:
// stack y_{0:T} and evaluate its exact joint density directly.
double joint_gaussian_loglik(const LinearGaussianSpec& spec,
                             const Eigen::VectorXd& y) {
  const int n = static_cast<int>(y.size());
  const double f = spec.F(0, 0), c = spec.c(0), q = spec.Q(0, 0),
               r = spec.R(0, 0);
  Eigen::VectorXd mean(n);
  Eigen::VectorXd var(n);
  mean(0) = spec.m0(0);
  var(0) = spec.P0(0, 0);
  for (int t = 1; t < n; ++t) {
    mean(t) = f * mean(t - 1) + c;
    var(t) = f * f * var(t - 1) + q;
  }
  Eigen::MatrixXd cov(n, n);
  for (int s = 0; s < n; ++s)
    for (int t = s; t < n; ++t) {
      const double v = var(s) * std::pow(f, t - s);
      cov(s, t) = v;
      cov(t, s) = v;
    }
  cov.diagonal().array() += r;
  return gaussian_logpdf(y, mean, cov);
}

}  // namespace

TEST_CASE("kalman_filter_exact at T=0 is a single Gaussian marginal") {
  LinearGaussianSpec spec;
  spec.F = Eigen::MatrixXd::Constant(1, 1, 0.5);
  spec.c = Eigen::VectorXd::Zero(1);
  spec.Q = Eigen::MatrixXd::Constant(1, 1, 1.0);
  spec.H = Eigen::MatrixXd::Identity(1, 1);
  spec.R = Eigen::MatrixXd::Constant(1, 1, 0.3);
  spec.m0 = Eigen::VectorXd::Constant(1, 2.0);
  spec.P0 = Eigen::MatrixXd::Constant(1, 1, 1.5);

  Eigen::MatrixXd y(1, 1);
  y << 2.7;
  const KalmanResult res = kalman_filter_exact(spec, y);
  const double expected = gaussian_logpdf(
      y.row(0).transpose(), spec.m0,
      Eigen::MatrixXd::Constant(1, 1, 1.5 + 0.3));
  CHECK(res.loglik == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("kalman_filter_exact matches the joint-Gaussian oracle on OU data") {
  OuModel model;
  Eigen::VectorXd theta(3);
  theta << 1.0, 2.0, 1.0;
  const SimulatedData sim =
      simulate_dataset(model, theta, ou_recipe(model, 10), 2024);

  const auto spec = model.linear_gaussian(theta);
  REQUIRE(spec.has_value());
  const KalmanResult res = kalman_filter_exact(*spec, sim.y);
  const double oracle = joint_gaussian_loglik(*spec, sim.y.col(0));
  CHECK(res.loglik == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("kalman_filter_exact huge-R limit carries no state information") {
  OuModel model(10.0, /*obs_var=*/1e12);
  Eigen::VectorXd theta(3);
  theta << 1.0, 2.0, 1.0;
  const auto spec = model.linear_gaussian(theta);
  Eigen::MatrixXd y(4, 1);
  y << 10.0, 4.0, 3.0, 2.5;
  const KalmanResult res = kalman_filter_exact(*spec, y);

  // Prior-mean trajectory; the huge observation noise makes K ~ 0.
  double mean = 10.0;
  for (int t = 0; t < 4; ++t) {
    if (t > 0) mean = spec->F(0, 0) * mean + spec->c(0);
    const double expected =
        -0.5 * (std::log(2.0 * M_PI * 1e12) +
                (y(t, 0) - mean) * (y(t, 0) - mean) / 1e12);
    CHECK(res.increments[t] == doctest::Approx(expected).epsilon(1e-6));
  }
}

TEST_CASE("kalman_filter_exact refuses models without a linear-Gaussian form") {
  LvModel lv;
  Eigen::VectorXd theta(3);
  theta << 0.5, 0.0025, 0.3;
  Eigen::MatrixXd y(1, 1);
  y << 50.0;
  CHECK_THROWS_AS(kalman_filter_exact(lv, theta, y), UnsupportedModelError);
}
