#ifndef NENKF_PARAM_FILTER_HPP
#define NENKF_PARAM_FILTER_HPP

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "nenkf/adapt.hpp"
#include "nenkf/errors.hpp"
#include "nenkf/gaussian.hpp"
#include "nenkf/log_weights.hpp"
#include "nenkf/model.hpp"
#include "nenkf/move_kernel.hpp"
#include "nenkf/parallel.hpp"
#include "nenkf/proposal.hpp"
#include "nenkf/resampling.hpp"
#include "nenkf/run_record.hpp"
#include "nenkf/surrogate.hpp"

namespace nenkf {

// Weighted parameter particles with one inner-filter state each. Weights are
// carried as unnormalised log weights u; storage is O(M N).
template <class StateT>
struct ParamParticleSystem {
  Eigen::MatrixXd phi;         // d_theta x M, log scale
  Eigen::VectorXd log_weight;  // unnormalised
  Eigen::VectorXd cum_loglik;
  std::vector<StateT> state;
  int n_members = 0;

  int count() const { return static_cast<int>(phi.cols()); }
  Eigen::VectorXd normalized_weights() const {
    return normalize_log_weights(log_weight);
  }
  Eigen::VectorXd weighted_mean_phi() const {
    return phi * normalized_weights();
  }
};

struct OuterConfig {
  int m_particles = 1000;
  int n_members = 100;        // initial N
  double ess_fraction = 0.4;  // gamma
  MhProposalConfig proposal;
  bool delayed_acceptance = true;
  int knn_k = 3;
  NAdaptConfig adapt;
  int threads = 1;
  std::uint64_t seed = 1;
};

// Sequential Monte Carlo over parameters: reweight each particle by its
// inner filter's likelihood increment, and when the ESS drops below
// gamma * M resample and rejuvenate through a Metropolis-Hastings kernel
// whose likelihood comes from rerunning the inner filter from time zero.
// The Inner policy supplies init / step / run_prefix and says whether a
// collapsed weighting step kills the particle (-inf weight) or aborts.
template <class Inner>
class ParamFilter {
 public:
  using State = typename Inner::State;
  using System = ParamParticleSystem<State>;
  using StepCallback =
      std::function<void(int t, const System&, const RunRecord&)>;

  ParamFilter(Inner inner, const Model& model, Eigen::MatrixXd y,
              OuterConfig cfg)
      : inner_(std::move(inner)),
        model_(&model),
        y_(std::move(y)),
        cfg_(std::move(cfg)),
        root_(cfg_.seed) {
    if (cfg_.m_particles < 1)
      throw PreconditionError("ParamFilter: M must be >= 1");
    if (y_.rows() < 1) throw PreconditionError("ParamFilter: no observations");
  }

  // Runs t = 0..T, invoking the callback after every completed step.
  void run(const StepCallback& callback = nullptr) {
    init();
    if (callback) callback(0, system_, records_.back());
    for (int t = 1; t < static_cast<int>(y_.rows()); ++t) {
      step(t);
      if (callback) callback(t, system_, records_.back());
    }
  }

  void init() {
    const auto started = clock_now();
    const int m = cfg_.m_particles;
    const int d = model_->param_dim();
    system_.phi.resize(d, m);
    system_.log_weight.resize(m);
    system_.cum_loglik.resize(m);
    system_.state.resize(m);
    system_.n_members = cfg_.n_members;

    const Eigen::VectorXd y0 = y_.row(0).transpose();
    parallel_for(m, cfg_.threads, [&](std::size_t i) {
      RngStream prior_rng = root_.substream(i, 0, phase::prior);
      system_.phi.col(i) =
          model_->prior_sample(prior_rng).array().log().matrix();
      weigh_particle(static_cast<int>(i), y0, 0);
    });
    finish_step(0, started);
  }

  // Weight update, ESS-triggered resample-move and N adaptation at time t.
  void step(int t) {
    const auto started = clock_now();
    const Eigen::VectorXd yt = y_.row(t).transpose();
    parallel_for(system_.count(), cfg_.threads,
                 [&](std::size_t i) { weigh_particle(static_cast<int>(i), yt, t); });
    finish_step(t, started);
  }

  // Replaces every particle's inner state by a fresh new_n-member run over
  // y_{0:t}; cumulative log-likelihoods take the new runs' values and the
  // weights are untouched (unit incremental weight).
  void exchange_members(int t, int new_n) {
    parallel_for(system_.count(), cfg_.threads, [&](std::size_t i) {
      RngStream rng = root_.substream(i, t, phase::adapt);
      try {
        auto [ll, st] = inner_.run_prefix(system_.phi.col(i), new_n,
                                          y_.topRows(t + 1), rng);
        system_.cum_loglik(i) = ll;
        system_.state[i] = std::move(st);
      } catch (const NumericalError&) {
        system_.cum_loglik(i) = -std::numeric_limits<double>::infinity();
        system_.log_weight(i) = -std::numeric_limits<double>::infinity();
        note_warning("member exchange collapsed for particle " +
                     std::to_string(i) + " at t=" + std::to_string(t));
      }
    });
    system_.n_members = new_n;
  }

  const System& system() const { return system_; }
  System& system() { return system_; }
  const std::vector<RunRecord>& records() const { return records_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  const Eigen::MatrixXd& observations() const { return y_; }
  const OuterConfig& config() const { return cfg_; }

 private:
  static std::chrono::steady_clock::time_point clock_now() {
    return std::chrono::steady_clock::now();
  }

  void note_warning(std::string msg) {
    std::lock_guard<std::mutex> lock(warn_mutex_);
    warnings_.push_back(std::move(msg));
  }

  void weigh_particle(int i, const Eigen::VectorXd& yt, int t) {
    RngStream rng = root_.substream(i, t, phase::weight);
    try {
      double inc;
      if (t == 0) {
        auto [inc0, st] =
            inner_.init(system_.phi.col(i), cfg_.n_members, yt, rng);
        inc = inc0;
        system_.state[i] = std::move(st);
        system_.log_weight(i) = 0.0;
        system_.cum_loglik(i) = 0.0;
      } else {
        inc = inner_.step(system_.phi.col(i), system_.state[i], yt, t, rng);
      }
      system_.log_weight(i) += inc;
      system_.cum_loglik(i) += inc;
    } catch (const NumericalError& err) {
      if constexpr (Inner::tolerate_weight_failure) {
        system_.log_weight(i) = -std::numeric_limits<double>::infinity();
        system_.cum_loglik(i) = -std::numeric_limits<double>::infinity();
        note_warning("particle " + std::to_string(i) + " collapsed at t=" +
                     std::to_string(t) + ": " + err.what());
      } else {
        throw;
      }
    }
  }

  void finish_step(int t, std::chrono::steady_clock::time_point started) {
    RunRecord rec;
    rec.t = t;
    rec.n_members = system_.n_members;

    Eigen::VectorXd w;
    try {
      w = system_.normalized_weights();
    } catch (const ParticleCollapseError&) {
      throw ParticleCollapseError(
          t, "all parameter particles collapsed at t=" + std::to_string(t));
    }
    rec.ess = effective_sample_size(w);

    const double threshold = cfg_.ess_fraction * system_.count();
    if (rec.ess < threshold && system_.count() > 1) {
      rec.resampled = true;
      resample_system(w, t);
      rec.moved = true;
      const MoveCounters counters = move_sweep(t);
      rec.stage1_evals = counters.stage1_evals;
      rec.stage2_evals = counters.stage2_evals;
      rec.accept_rate = counters.proposals > 0
                            ? static_cast<double>(counters.accepted) /
                                  static_cast<double>(counters.proposals)
                            : 0.0;
      maybe_adapt_members(t, rec);
    }

    rec.wall_ms = std::chrono::duration<double, std::milli>(
                      clock_now() - started)
                      .count();
    records_.push_back(rec);
  }

  void resample_system(const Eigen::VectorXd& w, int t) {
    const int m = system_.count();
    RngStream rng = root_.substream(kSystemStream, t, phase::resample);
    const std::vector<int> idx =
        resample_multinomial(w, m, rng);

    Eigen::MatrixXd phi(system_.phi.rows(), m);
    Eigen::VectorXd cum(m);
    std::vector<State> state(m);
    for (int i = 0; i < m; ++i) {
      phi.col(i) = system_.phi.col(idx[i]);
      cum(i) = system_.cum_loglik(idx[i]);
      state[i] = system_.state[idx[i]];
    }
    system_.phi = std::move(phi);
    system_.cum_loglik = std::move(cum);
    system_.state = std::move(state);
    system_.log_weight.setZero(m);
  }

  MoveCounters move_sweep(int t) {
    const int m = system_.count();
    const int d = model_->param_dim();
    const double zeta = cfg_.proposal.resolved_zeta(d);

    // Surrogate and proposal covariance are frozen snapshots of the
    // resampled cloud for the whole sweep.
    std::optional<SurrogateStore> store;
    if (cfg_.delayed_acceptance)
      store.emplace(system_.phi, system_.cum_loglik);
    const Eigen::MatrixXd cloud = system_.phi;

    const LogDensityFn log_prior = [this](const Eigen::VectorXd& phi) {
      return model_->log_prior_logpdf(phi);
    };
    const LogDensityFn knn = [&](const Eigen::VectorXd& phi) {
      return store->knn_loglik(phi, cfg_.knn_k);
    };
    const FilterEvaluator<State> evaluate =
        [&](const Eigen::VectorXd& phi, RngStream rng) {
          return inner_.run_prefix(phi, system_.n_members, y_.topRows(t + 1),
                                   std::move(rng));
        };

    std::vector<MoveCounters> counters(m);
    const int iterations = std::max(1, cfg_.proposal.iterations);
    const bool leave_one_out = cfg_.proposal.leave_one_out && m > 2;
    parallel_for(m, cfg_.threads, [&](std::size_t i) {
      Eigen::MatrixXd V =
          cloud_covariance(cloud, leave_one_out ? static_cast<int>(i) : -1);
      const Eigen::MatrixXd chol = cholesky_psd(V).lower;

      MoveState<State> cur{system_.phi.col(i), system_.cum_loglik(i),
                           system_.state[i]};
      RngStream move_rng = root_.substream(i, t, phase::move);
      for (int k = 0; k < iterations; ++k) {
        cur = mh_move<State>(cur, log_prior, chol, zeta, evaluate,
                             store ? &knn : nullptr, move_rng.substream(k),
                             counters[i]);
      }
      system_.phi.col(i) = cur.phi;
      system_.cum_loglik(i) = cur.cum_loglik;
      system_.state[i] = std::move(cur.state);
    });

    MoveCounters total;
    for (const auto& c : counters) total += c;
    return total;
  }

  void maybe_adapt_members(int t, RunRecord& rec) {
    const NAdaptConfig& ad = cfg_.adapt;
    if (!ad.enabled) return;

    if (ad.use_accept_rate) {
      if (rec.accept_rate < ad.accept_rate_threshold) {
        const int new_n = std::min(2 * system_.n_members, ad.n_max);
        if (new_n > system_.n_members) {
          exchange_members(t, new_n);
          rec.n_members = new_n;
        } else {
          note_warning("member growth capped at n_max at t=" +
                       std::to_string(t));
        }
      }
      return;
    }

    const Eigen::VectorXd phi_bar = system_.weighted_mean_phi();
    const int n_now = system_.n_members;
    const auto run_once = [&](RngStream rng) {
      return inner_
          .run_prefix(phi_bar, n_now, y_.topRows(t + 1), std::move(rng))
          .first;
    };
    double sigma2;
    try {
      sigma2 = estimate_sigma2(
          run_once, ad.var_runs,
          root_.substream(kSystemStream, t, phase::sigma2));
    } catch (const NumericalError& err) {
      note_warning(std::string("sigma2 estimation failed at t=") +
                   std::to_string(t) + ": " + err.what());
      return;
    }
    rec.sigma2 = sigma2;
    if (sigma2 > ad.sigma2_threshold) {
      const int new_n = adapted_size(sigma2, n_now, ad.n_max);
      if (new_n <= n_now) {
        note_warning("member growth capped at n_max at t=" + std::to_string(t));
        return;
      }
      exchange_members(t, new_n);
      rec.n_members = new_n;
    }
  }

  static constexpr std::uint64_t kSystemStream = 1ull << 32;

  Inner inner_;
  const Model* model_;
  Eigen::MatrixXd y_;
  OuterConfig cfg_;
  RngStream root_;
  System system_;
  std::vector<RunRecord> records_;
  std::vector<std::string> warnings_;
  std::mutex warn_mutex_;
};

}  // namespace nenkf

#endif  // NENKF_PARAM_FILTER_HPP
