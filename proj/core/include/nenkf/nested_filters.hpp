#ifndef NENKF_NESTED_FILTERS_HPP
#define NENKF_NESTED_FILTERS_HPP

#include <utility>

#include "nenkf/enkf.hpp"
#include "nenkf/param_filter.hpp"
#include "nenkf/particle_filter.hpp"

namespace nenkf {

// Inner filter policy for the nested EnKF: one EnKF per parameter particle.
// A failed weighting step aborts the run.
struct EnkfInner {
  const Model* model;

  using State = Eigen::MatrixXd;
  static constexpr bool tolerate_weight_failure = false;

  std::pair<double, State> init(const Eigen::VectorXd& phi, int n,
                                const Eigen::VectorXd& y0,
                                RngStream rng) const {
    EnkfStepOutput out =
        enkf_init(*model, phi.array().exp(), n, y0, std::move(rng));
    return {out.log_lik_increment, std::move(out.ensemble)};
  }

  double step(const Eigen::VectorXd& phi, State& s, const Eigen::VectorXd& y,
              int /*t*/, RngStream rng) const {
    EnkfStepOutput out =
        enkf_step(*model, phi.array().exp(), s, y, std::move(rng));
    s = std::move(out.ensemble);
    return out.log_lik_increment;
  }

  std::pair<double, State> run_prefix(const Eigen::VectorXd& phi, int n,
                                      const Eigen::MatrixXd& y,
                                      RngStream root) const {
    EnkfRunResult res =
        enkf_run(*model, phi.array().exp(), n, y, std::move(root));
    return {res.loglik, std::move(res.final_ensemble)};
  }
};

// Inner filter policy for SMC^2: one bootstrap particle filter per parameter
// particle. A collapse while weighting kills that particle (-inf weight)
// instead of aborting, so the outer filter can carry on.
struct PfInner {
  const Model* model;

  using State = WeightedParticles;
  static constexpr bool tolerate_weight_failure = true;

  std::pair<double, State> init(const Eigen::VectorXd& phi, int n,
                                const Eigen::VectorXd& y0,
                                RngStream rng) const {
    PfOutput out = pf_init(*model, phi.array().exp(), n, y0, std::move(rng));
    return {out.log_lik_increment, std::move(out.particles)};
  }

  double step(const Eigen::VectorXd& phi, State& s, const Eigen::VectorXd& y,
              int t, RngStream rng) const {
    PfOutput out = pf_step(*model, phi.array().exp(), s, y, t,
                           /*proposal=*/nullptr, std::move(rng));
    s = std::move(out.particles);
    return out.log_lik_increment;
  }

  std::pair<double, State> run_prefix(const Eigen::VectorXd& phi, int n,
                                      const Eigen::MatrixXd& y,
                                      RngStream root) const {
    PfRunResult res =
        pf_run(*model, phi.array().exp(), n, y, std::move(root));
    return {res.loglik, std::move(res.final_particles)};
  }
};

using NenkfFilter = ParamFilter<EnkfInner>;
using Smc2Filter = ParamFilter<PfInner>;

inline NenkfFilter make_nenkf(const Model& model, Eigen::MatrixXd y,
                              OuterConfig cfg) {
  return NenkfFilter(EnkfInner{&model}, model, std::move(y), std::move(cfg));
}

inline Smc2Filter make_smc2(const Model& model, Eigen::MatrixXd y,
                            OuterConfig cfg) {
  return Smc2Filter(PfInner{&model}, model, std::move(y), std::move(cfg));
}

}  // namespace nenkf

#endif  // NENKF_NESTED_FILTERS_HPP
