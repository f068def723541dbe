#include <doctest.h>

#include <cmath>

#include "nenkf/errors.hpp"
#include "nenkf/gamma_dist.hpp"

using namespace nenkf;

TEST_CASE("gamma_logpdf reduces to the exponential at shape 1") {
  const double lambda = 2.5, x = 0.7;
  CHECK(gamma_logpdf(x, 1.0, lambda) ==
        doctest::Approx(std::log(lambda) - lambda * x).epsilon(1e-12));
}

TEST_CASE("gamma_logpdf Gamma(2,2) at x=1") {
  CHECK(gamma_logpdf(1.0, 2.0, 2.0) ==
        doctest::Approx(std::log(4.0) - 2.0).epsilon(1e-10));
}

TEST_CASE("gamma_sample mean matches shape/rate over many draws") {
  RngStream rng(31);
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += gamma_sample(5.0, 3.0, rng);
  const double mean = sum / n;
  // Var(Gamma(5,3)) = 5/9, so 3 standard errors of the sample mean:
  const double se = std::sqrt(5.0 / 9.0 / n);
  CHECK(std::abs(mean - 5.0 / 3.0) < 3.0 * se);
}

TEST_CASE("gamma functions reject non-positive arguments") {
  CHECK_THROWS_AS(gamma_logpdf(-1.0, 2.0, 2.0), PreconditionError);
  CHECK_THROWS_AS(gamma_logpdf(1.0, 0.0, 2.0), PreconditionError);
  CHECK_THROWS_AS(gamma_logpdf(1.0, 2.0, -2.0), PreconditionError);
  RngStream rng(1);
  CHECK_THROWS_AS(gamma_sample(0.0, 1.0, rng), PreconditionError);
}
