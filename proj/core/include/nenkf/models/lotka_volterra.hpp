#ifndef NENKF_MODELS_LOTKA_VOLTERRA_HPP
#define NENKF_MODELS_LOTKA_VOLTERRA_HPP

#include "nenkf/model.hpp"

namespace nenkf {

// Predator-prey SDE with drift
//   a = (th1 x1 - th2 x1 x2, th2 x1 x2 - th3 x2)
// and the chemical-Langevin diffusion matrix, discretised with m
// Euler-Maruyama substeps per inter-observation interval. Only prey counts
// are observed, through y ~ N(Hx, Hx) with H = (1, 0); the filter's Gaussian
// approximation plugs the forecast mean into the variance.
class LvModel : public Model {
 public:
  LvModel(double x1_0 = 50.0, double x2_0 = 50.0, int substeps = 10,
          double dt = 0.2);

  int state_dim() const override { return 2; }
  int obs_dim() const override { return 1; }

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

  // Variance floor for the Gaussian observation plug-in.
  static constexpr double kVarFloor = 1e-2;
  // States are clamped here after every substep to keep the diffusion PSD.
  static constexpr double kStateFloor = 1e-6;

  int substeps() const { return substeps_; }
  double dt() const { return dt_; }
  Eigen::VectorXd initial_condition() const;

  // Transition with an explicit substep grid (used by the data generator).
  Eigen::VectorXd transition_with(const Eigen::VectorXd& theta,
                                  const Eigen::VectorXd& x, int m, double dt,
                                  RngStream& rng) const;

 private:
  double x1_0_, x2_0_;
  int substeps_;
  double dt_;
};

}  // namespace nenkf

#endif  // NENKF_MODELS_LOTKA_VOLTERRA_HPP
