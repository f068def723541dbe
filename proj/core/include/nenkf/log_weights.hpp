#ifndef NENKF_LOG_WEIGHTS_HPP
#define NENKF_LOG_WEIGHTS_HPP

#include <Eigen/Dense>

namespace nenkf {

// log(sum_i exp(lw_i)); -inf when every entry is -inf.
double log_sum_exp(const Eigen::VectorXd& lw);

// log(mean_i exp(lw_i)).
double log_mean_exp(const Eigen::VectorXd& lw);

// Natural-scale weights summing to one. Throws ParticleCollapseError(-1)
// when every log weight is -inf; callers with a time index rethrow with it.
Eigen::VectorXd normalize_log_weights(const Eigen::VectorXd& lw);

}  // namespace nenkf

#endif  // NENKF_LOG_WEIGHTS_HPP
