#ifndef NENKF_MODELS_SIMULATE_HPP
#define NENKF_MODELS_SIMULATE_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <functional>

#include "nenkf/model.hpp"

namespace nenkf {

// Twin-experiment data generation: simulate the latent path on a fine grid,
// thin to the observation times and corrupt through the observation model.
struct SimulationRecipe {
  Eigen::VectorXd x0;
  int n_obs = 0;
  double spacing = 1.0;
  // When true the first observation is of x0 itself; otherwise the first
  // observation follows one inter-observation interval.
  bool obs_at_t0 = true;
  // Fine-grid transition over one inter-observation interval.
  std::function<Eigen::VectorXd(const Eigen::VectorXd& theta,
                                const Eigen::VectorXd& x, RngStream& rng)>
      interval_transition;
};

struct SimulatedData {
  Eigen::VectorXd times;   // observation times
  Eigen::MatrixXd y;       // n_obs x d_y
  Eigen::MatrixXd x_true;  // n_obs x d_x, latent skeleton at the obs times
};

SimulatedData simulate_dataset(const Model& model,
                               const Eigen::VectorXd& theta,
                               const SimulationRecipe& recipe,
                               std::uint64_t seed);

class OuModel;
class LvModel;
class SirTwoNodeModel;
class Lorenz96Model;

// The shipped twin-experiment recipes.
SimulationRecipe ou_recipe(const OuModel& model, int n_points = 50);
// 20 observations spaced 2 time units, generated at dt = 1e-3 (thinning
// factor 2000); prey only.
SimulationRecipe lv_recipe(const LvModel& model, int n_obs = 20,
                           double gen_dt = 1e-3);
// Annual removal-prevalence observations starting at the known x0.
SimulationRecipe sir_recipe(const SirTwoNodeModel& model, int n_obs = 12,
                            double gen_dt = 0.01);
// Observations spaced 0.2 time units, generated at dt = 5e-3 (thinning
// factor 40).
SimulationRecipe lorenz_recipe(const Lorenz96Model& model, int n_obs = 30);

}  // namespace nenkf

#endif  // NENKF_MODELS_SIMULATE_HPP
