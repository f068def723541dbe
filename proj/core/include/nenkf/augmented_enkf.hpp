#ifndef NENKF_AUGMENTED_ENKF_HPP
#define NENKF_AUGMENTED_ENKF_HPP

#include <Eigen/Dense>

#include "nenkf/liu_west.hpp"
#include "nenkf/model.hpp"
#include "nenkf/rng.hpp"

namespace nenkf {

// Joint state-parameter filtering by augmenting the state with the
// log-parameters: z = (x', phi')'. The observation matrix becomes
// H_z = (H, 0) -- H must not depend on theta -- and the parameters receive
// the Liu-West evolution kernel each step to avoid ensemble collapse.
struct AugmentedEnsemble {
  Eigen::MatrixXd z;  // (d_x + d_theta) x N
  int d_x = 0;

  Eigen::MatrixXd states() const { return z.topRows(d_x); }
  Eigen::MatrixXd log_params() const { return z.bottomRows(z.rows() - d_x); }
};

AugmentedEnsemble aenkf_init(const Model& model, int n, const Eigen::VectorXd& y0,
                             RngStream step_rng);

AugmentedEnsemble aenkf_step(const Model& model, const AugmentedEnsemble& ens,
                             const Eigen::VectorXd& y, const LiuWestConfig& cfg,
                             RngStream step_rng);

struct AenkfRunResult {
  AugmentedEnsemble final_ensemble;
  // Per-time unweighted means of the log-parameter block, one row per t.
  Eigen::MatrixXd log_param_means;
};

AenkfRunResult aenkf_run(const Model& model, int n, const Eigen::MatrixXd& y,
                         const LiuWestConfig& cfg, RngStream root);

}  // namespace nenkf

#endif  // NENKF_AUGMENTED_ENKF_HPP
