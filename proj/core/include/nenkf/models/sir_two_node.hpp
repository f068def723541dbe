#ifndef NENKF_MODELS_SIR_TWO_NODE_HPP
#define NENKF_MODELS_SIR_TWO_NODE_HPP

#include "nenkf/model.hpp"

namespace nenkf {

// Two-node stochastic SIR model with cross-node infestation pressure and
// time-varying infection rates driven by Brownian motion on the log scale.
// State x = (S1, I1, S2, I2, log b1, log b2); parameters
// theta = (gamma, alpha12, alpha21, sigma_beta, sigma). Observations are the
// node totals S_j + I_j with variance sigma^2 diag(Hx).
class SirTwoNodeModel : public Model {
 public:
  explicit SirTwoNodeModel(Eigen::VectorXd x0 = default_x0(), int substeps = 10,
                           double dt = 0.1);

  int state_dim() const override { return 6; }
  int obs_dim() const override { return 2; }

  Eigen::VectorXd init_sample(const Eigen::VectorXd& theta,
                              RngStream& rng) const override;
  Eigen::VectorXd transition_sample(const Eigen::VectorXd& theta,
                                    const Eigen::VectorXd& x,
                                    RngStream& rng) const override;
  double obs_logpdf(const Eigen::VectorXd& theta, const Eigen::VectorXd& y,
                    const Eigen::VectorXd& x) const override;
  Eigen::VectorXd obs_sample(const Eigen::VectorXd& theta,
                             const Eigen::VectorXd& x,
                             RngStream& rng) const override;
  GaussianObs obs_approx(const Eigen::VectorXd& theta,
                         const Eigen::VectorXd& forecast_mean) const override;

  static Eigen::VectorXd drift(const Eigen::VectorXd& x,
                               const Eigen::VectorXd& theta);
  static Eigen::MatrixXd diffusion(const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& theta);
  static Eigen::MatrixXd obs_matrix();
  static Eigen::VectorXd default_x0();

  static constexpr double kVarFloor = 1e-2;
  static constexpr double kStateFloor = 1e-6;

  Eigen::VectorXd initial_condition() const { return x0_; }
  int substeps() const { return substeps_; }
  double dt() const { return dt_; }

  Eigen::VectorXd transition_with(const Eigen::VectorXd& theta,
                                  const Eigen::VectorXd& x, int m, double dt,
                                  RngStream& rng) const;

 private:
  Eigen::VectorXd x0_;
  int substeps_;
  double dt_;
};

}  // namespace nenkf

#endif  // NENKF_MODELS_SIR_TWO_NODE_HPP
