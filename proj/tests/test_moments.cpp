#include <doctest.h>

#include <Eigen/Dense>

#include "nenkf/errors.hpp"
#include "nenkf/moments.hpp"
#include "nenkf/rng.hpp"

using namespace nenkf;

TEST_CASE("ensemble_moments of identical members has zero spread") {
  Eigen::VectorXd v(2);
  v << 3.0, -1.0;
  Eigen::MatrixXd members = v.replicate(1, 5);
  const EnsembleMoments m = ensemble_moments(members);
  CHECK(m.mean == v);
  CHECK(m.cov.isZero(0.0));
}

TEST_CASE("ensemble_moments two-point variance uses the n-1 divisor") {
  Eigen::MatrixXd members(1, 2);
  members << 0.0, 2.0;
  const EnsembleMoments m = ensemble_moments(members);
  CHECK(m.mean(0) == doctest::Approx(1.0));
  CHECK(m.cov(0, 0) == doctest::Approx(2.0));
}

TEST_CASE("ensemble_moments agrees with a direct two-pass recomputation") {
  RngStream rng(5);
  Eigen::MatrixXd members(2, 5);
  for (int j = 0; j < 5; ++j) members.col(j) = rng.normal_vector(2);

  Eigen::VectorXd mean = Eigen::VectorXd::Zero(2);
  for (int j = 0; j < 5; ++j) mean += members.col(j);
  mean /= 5.0;
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(2, 2);
  for (int j = 0; j < 5; ++j) {
    const Eigen::VectorXd d = members.col(j) - mean;
    cov += d * d.transpose();
  }
  cov /= 4.0;

  const EnsembleMoments m = ensemble_moments(members);
  CHECK((m.mean - mean).norm() < 1e-14);
  CHECK((m.cov - cov).norm() < 1e-14);
}

TEST_CASE("ensemble_moments covariance is symmetric PSD") {
  RngStream rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    Eigen::MatrixXd members(3, 4);
    for (int j = 0; j < 4; ++j) members.col(j) = 10.0 * rng.normal_vector(3);
    const EnsembleMoments m = ensemble_moments(members);
    CHECK((m.cov - m.cov.transpose()).norm() <= 1e-12);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.cov);
    CHECK(es.eigenvalues().minCoeff() >= -1e-12);
  }
}

TEST_CASE("ensemble_moments requires two members") {
  CHECK_THROWS_AS(ensemble_moments(Eigen::MatrixXd::Zero(2, 1)),
                  PreconditionError);
}
