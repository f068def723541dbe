#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "nenkf/errors.hpp"
#include "nenkf/gaussian.hpp"
#include "nenkf/log_weights.hpp"
#include "nenkf/rng.hpp"

using namespace nenkf;

namespace {
constexpr double kLog2Pi = 1.8378770664093454835606594728112;

// Independent 2x2 oracle via the closed-form inverse and determinant.
double logpdf_2x2_oracle(const Eigen::Vector2d& y, const Eigen::Vector2d& mu,
                         const Eigen::Matrix2d& s) {
  const double det = s(0, 0) * s(1, 1) - s(0, 1) * s(1, 0);
  Eigen::Matrix2d inv;
  inv << s(1, 1), -s(0, 1), -s(1, 0), s(0, 0);
  inv /= det;
  const Eigen::Vector2d d = y - mu;
  return -std::log(2.0 * M_PI) - 0.5 * std::log(det) -
         0.5 * d.dot(inv * d);
}
}  // namespace

TEST_CASE("gaussian_logpdf standard normal at the mode") {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(1);
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(1, 1);
  CHECK(gaussian_logpdf(y, y, s) == doctest::Approx(-0.9189385).epsilon(1e-6));
}

TEST_CASE("gaussian_logpdf vanishing quadratic form in 2d") {
  Eigen::VectorXd mu(2);
  mu << 0.3, -1.2;
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2, 2);
  CHECK(gaussian_logpdf(mu, mu, s) == doctest::Approx(-kLog2Pi).epsilon(1e-12));
}

TEST_CASE("gaussian_logpdf matches the explicit 2x2 inverse oracle") {
  Eigen::Vector2d y(1.0, 1.0), mu(0.0, 0.0);
  Eigen::Matrix2d s;
  s << 2.0, 1.0, 1.0, 2.0;
  const double expected = logpdf_2x2_oracle(y, mu, s);
  CHECK(gaussian_logpdf(y, mu, s) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("gaussian_logpdf is invariant under orthogonal rotation") {
  RngStream rng(42);
  for (int rep = 0; rep < 20; ++rep) {
    const int d = 3;
    Eigen::MatrixXd a(d, d);
    for (int i = 0; i < d; ++i) a.col(i) = rng.normal_vector(d);
    Eigen::MatrixXd sigma = a * a.transpose() + Eigen::MatrixXd::Identity(d, d);
    Eigen::VectorXd y = rng.normal_vector(d);
    Eigen::VectorXd mu = rng.normal_vector(d);

    Eigen::MatrixXd b(d, d);
    for (int i = 0; i < d; ++i) b.col(i) = rng.normal_vector(d);
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(b);
    const Eigen::MatrixXd q = qr.householderQ();

    const double lhs = gaussian_logpdf(y, mu, sigma);
    const double rhs =
        gaussian_logpdf(q * y, q * mu, q * sigma * q.transpose());
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("gaussian_logpdf rejects a singular covariance") {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(2);
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(2, 2);
  s(0, 0) = 1.0;
  CHECK_THROWS_AS(gaussian_logpdf(y, y, s), SingularCovarianceError);
}

TEST_CASE("cholesky_psd jitter ladder rescues rank-deficient covariances") {
  Eigen::MatrixXd s(2, 2);
  s << 1.0, 1.0, 1.0, 1.0;  // rank 1
  const CholeskyFactor f = cholesky_psd(s);
  CHECK(f.jitter > 0.0);
  const Eigen::MatrixXd rebuilt = f.lower * f.lower.transpose();
  CHECK((rebuilt - s).norm() < 1e-5);
}

TEST_CASE("mvn_sample with zero covariance returns the mean exactly") {
  Eigen::VectorXd mu(3);
  mu << 1.0, -2.0, 0.5;
  RngStream rng(7);
  CHECK(mvn_sample(mu, Eigen::MatrixXd::Zero(3, 3), rng) == mu);
}

TEST_CASE("mvn_sample fixed seed reproduces the identical vector") {
  Eigen::VectorXd mu = Eigen::VectorXd::Zero(2);
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(2, 2);
  RngStream a(123), b(123);
  CHECK(mvn_sample(mu, s, a) == mvn_sample(mu, s, b));
}

TEST_CASE("mvn_sample law-of-large-numbers moments") {
  const int n = 100000;
  RngStream rng(99);
  Eigen::VectorXd mu = Eigen::VectorXd::Zero(1);
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(1, 1);
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = mvn_sample(mu, s, rng)(0);
    sum += x;
    sumsq += x * x;
  }
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  CHECK(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(var - 1.0) < 0.05);
}

TEST_CASE("log_sum_exp handles -inf entries and extreme scales") {
  Eigen::VectorXd lw(3);
  lw << -1000.0, -1000.0, -std::numeric_limits<double>::infinity();
  CHECK(log_sum_exp(lw) ==
        doctest::Approx(-1000.0 + std::log(2.0)).epsilon(1e-12));
  const Eigen::VectorXd w = normalize_log_weights(lw);
  CHECK(w.sum() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(w(2) == 0.0);
}
