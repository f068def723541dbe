#ifndef NENKF_MODELS_LORENZ96_HPP
#define NENKF_MODELS_LORENZ96_HPP

#include "nenkf/model.hpp"

namespace nenkf {

// Stochastic Lorenz-96 system in d dimensions:
//   dX_i = [th1 (X_{i+1} - X_{i-2}) X_{i-1} - th2 X_i + th3] dt + th4 dW_i
// with indices modulo d. Fully observed through y ~ N(x, obs_var I).
class Lorenz96Model : public Model {
 public:
  explicit Lorenz96Model(int dim = 5, double obs_var = 25.0, int substeps = 40,
                         double dt = 5e-3);

  int state_dim() const override { return dim_; }
  int obs_dim() const override { return dim_; }

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
  bool obs_exactly_gaussian() const override { return true; }

  static Eigen::VectorXd drift(const Eigen::VectorXd& x,
                               const Eigen::VectorXd& theta);

  Eigen::VectorXd initial_condition() const {
    return Eigen::VectorXd::Zero(dim_);
  }
  int substeps() const { return substeps_; }
  double dt() const { return dt_; }
  double obs_var() const { return obs_var_; }

  Eigen::VectorXd transition_with(const Eigen::VectorXd& theta,
                                  const Eigen::VectorXd& x, int m, double dt,
                                  RngStream& rng) const;

 private:
  int dim_;
  double obs_var_;
  int substeps_;
  double dt_;
};

}  // namespace nenkf

#endif  // NENKF_MODELS_LORENZ96_HPP
