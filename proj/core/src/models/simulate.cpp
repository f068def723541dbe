#include "nenkf/models/simulate.hpp"

#include <cmath>

#include "nenkf/errors.hpp"
#include "nenkf/models/lorenz96.hpp"
#include "nenkf/models/lotka_volterra.hpp"
#include "nenkf/models/ou.hpp"
#include "nenkf/models/sir_two_node.hpp"

namespace nenkf {

SimulatedData simulate_dataset(const Model& model,
                               const Eigen::VectorXd& theta,
                               const SimulationRecipe& recipe,
                               std::uint64_t seed) {
  if (recipe.n_obs < 1)
    throw PreconditionError("simulate_dataset: n_obs must be >= 1");
  if (!recipe.interval_transition)
    throw PreconditionError("simulate_dataset: missing interval transition");

  SimulatedData out;
  out.times.resize(recipe.n_obs);
  out.y.resize(recipe.n_obs, model.obs_dim());
  out.x_true.resize(recipe.n_obs, model.state_dim());

  RngStream root(seed);
  Eigen::VectorXd x = recipe.x0;
  double time = 0.0;
  for (int r = 0; r < recipe.n_obs; ++r) {
    if (r > 0 || !recipe.obs_at_t0) {
      RngStream trans = root.substream(r, phase::transition);
      x = recipe.interval_transition(theta, x, trans);
      time += recipe.spacing;
    }
    RngStream noise = root.substream(r, phase::obs_noise);
    out.times(r) = time;
    out.x_true.row(r) = x.transpose();
    out.y.row(r) = model.obs_sample(theta, x, noise).transpose();
  }
  return out;
}

SimulationRecipe ou_recipe(const OuModel& model, int n_points) {
  SimulationRecipe r;
  r.x0 = Eigen::VectorXd::Constant(1, model.x0());
  r.n_obs = n_points + 1;  // x0 is observed too
  r.spacing = model.dt();
  r.obs_at_t0 = true;
  r.interval_transition = [&model](const Eigen::VectorXd& theta,
                                   const Eigen::VectorXd& x, RngStream& rng) {
    return model.transition_sample(theta, x, rng);
  };
  return r;
}

SimulationRecipe lv_recipe(const LvModel& model, int n_obs, double gen_dt) {
  SimulationRecipe r;
  r.x0 = model.initial_condition();
  r.n_obs = n_obs;
  r.spacing = model.substeps() * model.dt();
  r.obs_at_t0 = false;
  const int m = static_cast<int>(std::lround(r.spacing / gen_dt));
  r.interval_transition = [&model, m, gen_dt](const Eigen::VectorXd& theta,
                                              const Eigen::VectorXd& x,
                                              RngStream& rng) {
    return model.transition_with(theta, x, m, gen_dt, rng);
  };
  return r;
}

SimulationRecipe sir_recipe(const SirTwoNodeModel& model, int n_obs,
                            double gen_dt) {
  SimulationRecipe r;
  r.x0 = model.initial_condition();
  r.n_obs = n_obs;
  r.spacing = model.substeps() * model.dt();
  r.obs_at_t0 = true;
  const int m = static_cast<int>(std::lround(r.spacing / gen_dt));
  r.interval_transition = [&model, m, gen_dt](const Eigen::VectorXd& theta,
                                              const Eigen::VectorXd& x,
                                              RngStream& rng) {
    return model.transition_with(theta, x, m, gen_dt, rng);
  };
  return r;
}

SimulationRecipe lorenz_recipe(const Lorenz96Model& model, int n_obs) {
  SimulationRecipe r;
  r.x0 = model.initial_condition();
  r.n_obs = n_obs;
  r.spacing = model.substeps() * model.dt();
  r.obs_at_t0 = false;
  r.interval_transition = [&model](const Eigen::VectorXd& theta,
                                   const Eigen::VectorXd& x, RngStream& rng) {
    return model.transition_with(theta, x, model.substeps(), model.dt(), rng);
  };
  return r;
}

}  // namespace nenkf
