#include "nenkf/log_weights.hpp"

#include <cmath>
#include <limits>

#include "nenkf/errors.hpp"

namespace nenkf {

double log_sum_exp(const Eigen::VectorXd& lw) {
  if (lw.size() == 0)
    throw PreconditionError("log_sum_exp: empty weight vector");
  const double m = lw.maxCoeff();
  if (!std::isfinite(m)) {
    if (m == -std::numeric_limits<double>::infinity()) return m;
    throw PreconditionError("log_sum_exp: non-finite log weight");
  }
  double s = 0.0;
  for (Eigen::Index i = 0; i < lw.size(); ++i) s += std::exp(lw(i) - m);
  return m + std::log(s);
}

double log_mean_exp(const Eigen::VectorXd& lw) {
  return log_sum_exp(lw) - std::log(static_cast<double>(lw.size()));
}

Eigen::VectorXd normalize_log_weights(const Eigen::VectorXd& lw) {
  const double lse = log_sum_exp(lw);
  if (lse == -std::numeric_limits<double>::infinity())
    throw ParticleCollapseError(-1, "all log weights are -inf");
  return (lw.array() - lse).exp();
}

}  // namespace nenkf
