#include "nenkf/liu_west.hpp"

#include <cmath>

#include "nenkf/errors.hpp"
#include "nenkf/gaussian.hpp"
#include "nenkf/moments.hpp"

namespace nenkf {

double LiuWestConfig::h() const {
  if (delta <= 1.0 / 3.0 || delta > 1.0)
    throw PreconditionError("LiuWestConfig: delta must lie in (1/3, 1]");
  const double r = (3.0 * delta - 1.0) / (2.0 * delta);
  return 1.0 - r * r;
}

double LiuWestConfig::a() const {
  const double hh = h();
  return std::sqrt(1.0 - hh * hh);
}

Eigen::MatrixXd liu_west_shrink(const Eigen::MatrixXd& phis,
                                const LiuWestConfig& cfg, RngStream& rng) {
  if (phis.cols() < 2)
    throw PreconditionError("liu_west_shrink: at least 2 particles required");
  const double h = cfg.h();
  if (h == 0.0) return phis;
  const double a = cfg.a();

  const EnsembleMoments mom = ensemble_moments(phis);
  const CholeskyFactor chol = cholesky_psd(mom.cov);
  Eigen::MatrixXd out(phis.rows(), phis.cols());
  for (Eigen::Index j = 0; j < phis.cols(); ++j) {
    out.col(j) = a * phis.col(j) + (1.0 - a) * mom.mean +
                 h * (chol.lower * rng.normal_vector(phis.rows()));
  }
  return out;
}

}  // namespace nenkf
