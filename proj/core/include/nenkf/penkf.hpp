#ifndef NENKF_PENKF_HPP
#define NENKF_PENKF_HPP

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "nenkf/liu_west.hpp"
#include "nenkf/model.hpp"
#include "nenkf/param_filter.hpp"
#include "nenkf/run_record.hpp"

namespace nenkf {

struct PenkfConfig {
  int m_particles = 4000;
  int n_members = 100;
  double ess_fraction = 0.4;
  LiuWestConfig liu_west;
  int threads = 1;
  std::uint64_t seed = 1;
};

using PenkfSystem = ParamParticleSystem<Eigen::MatrixXd>;
using PenkfCallback =
    std::function<void(int t, const PenkfSystem&, const RunRecord&)>;

struct PenkfResult {
  PenkfSystem system;
  std::vector<RunRecord> records;
};

// Particle filter over parameters with Liu-West artificial dynamics instead
// of MCMC rejuvenation: each step shrinks-and-jitters the parameter cloud,
// advances every particle's EnKF, reweights by the likelihood increment and
// resamples on low ESS. N stays fixed.
PenkfResult penkf_run(const Model& model, const Eigen::MatrixXd& y,
                      const PenkfConfig& cfg,
                      const PenkfCallback& callback = nullptr);

}  // namespace nenkf

#endif  // NENKF_PENKF_HPP
