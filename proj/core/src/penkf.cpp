#include "nenkf/penkf.hpp"

#include <chrono>

#include "nenkf/enkf.hpp"
#include "nenkf/errors.hpp"
#include "nenkf/log_weights.hpp"
#include "nenkf/parallel.hpp"
#include "nenkf/resampling.hpp"

namespace nenkf {

namespace {

constexpr std::uint64_t kSystemStream = 1ull << 32;

void resample_penkf(PenkfSystem& sys, const Eigen::VectorXd& w,
                    RngStream rng) {
  const int m = sys.count();
  const std::vector<int> idx = resample_multinomial(w, m, rng);
  Eigen::MatrixXd phi(sys.phi.rows(), m);
  Eigen::VectorXd cum(m);
  std::vector<Eigen::MatrixXd> state(m);
  for (int i = 0; i < m; ++i) {
    phi.col(i) = sys.phi.col(idx[i]);
    cum(i) = sys.cum_loglik(idx[i]);
    state[i] = sys.state[idx[i]];
  }
  sys.phi = std::move(phi);
  sys.cum_loglik = std::move(cum);
  sys.state = std::move(state);
  sys.log_weight.setZero(m);
}

}  // namespace

PenkfResult penkf_run(const Model& model, const Eigen::MatrixXd& y,
                      const PenkfConfig& cfg, const PenkfCallback& callback) {
  if (y.rows() < 1) throw PreconditionError("penkf_run: no observations");
  if (cfg.m_particles < 1) throw PreconditionError("penkf_run: M >= 1");

  RngStream root(cfg.seed);
  const int m = cfg.m_particles;
  const int d = model.param_dim();

  PenkfResult res;
  PenkfSystem& sys = res.system;
  sys.phi.resize(d, m);
  sys.log_weight.setZero(m);
  sys.cum_loglik.setZero(m);
  sys.state.resize(m);
  sys.n_members = cfg.n_members;

  for (int t = 0; t < static_cast<int>(y.rows()); ++t) {
    const auto started = std::chrono::steady_clock::now();
    const Eigen::VectorXd yt = y.row(t).transpose();

    if (t == 0) {
      parallel_for(m, cfg.threads, [&](std::size_t i) {
        RngStream prior_rng = root.substream(i, 0, phase::prior);
        sys.phi.col(i) = model.prior_sample(prior_rng).array().log().matrix();
      });
    } else if (m > 1) {
      // Artificial parameter evolution on the whole cloud.
      RngStream lw_rng = root.substream(kSystemStream, t, phase::liu_west);
      sys.phi = liu_west_shrink(sys.phi, cfg.liu_west, lw_rng);
    }

    parallel_for(m, cfg.threads, [&](std::size_t i) {
      RngStream rng = root.substream(i, t, phase::weight);
      const Eigen::VectorXd theta = sys.phi.col(i).array().exp();
      double inc;
      if (t == 0) {
        EnkfStepOutput out = enkf_init(model, theta, cfg.n_members, yt, rng);
        sys.state[i] = std::move(out.ensemble);
        inc = out.log_lik_increment;
      } else {
        EnkfStepOutput out = enkf_step(model, theta, sys.state[i], yt, rng);
        sys.state[i] = std::move(out.ensemble);
        inc = out.log_lik_increment;
      }
      sys.log_weight(i) += inc;
      sys.cum_loglik(i) += inc;
    });

    RunRecord rec;
    rec.t = t;
    rec.n_members = cfg.n_members;
    Eigen::VectorXd w;
    try {
      w = sys.normalized_weights();
    } catch (const ParticleCollapseError&) {
      throw ParticleCollapseError(
          t, "all parameter particles collapsed at t=" + std::to_string(t));
    }
    rec.ess = effective_sample_size(w);
    if (rec.ess < cfg.ess_fraction * m && m > 1) {
      rec.resampled = true;
      resample_penkf(sys, w, root.substream(kSystemStream, t, phase::resample));
    }
    rec.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - started)
                      .count();
    res.records.push_back(rec);
    if (callback) callback(t, sys, rec);
  }
  return res;
}

}  // namespace nenkf
