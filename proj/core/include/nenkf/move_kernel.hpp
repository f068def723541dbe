#ifndef NENKF_MOVE_KERNEL_HPP
#define NENKF_MOVE_KERNEL_HPP

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>

#include "nenkf/errors.hpp"
#include "nenkf/proposal.hpp"
#include "nenkf/rng.hpp"

namespace nenkf {

// Runs a filter from time 0 for the proposed parameter and returns the
// cumulative log-likelihood together with the refreshed filter state.
template <class StateT>
using FilterEvaluator =
    std::function<std::pair<double, StateT>(const Eigen::VectorXd& phi,
                                            RngStream rng)>;

using LogDensityFn = std::function<double(const Eigen::VectorXd& phi)>;

struct MoveCounters {
  long proposals = 0;
  long stage1_evals = 0;   // surrogate screenings
  long stage2_evals = 0;   // expensive filter evaluations
  long accepted = 0;

  MoveCounters& operator+=(const MoveCounters& o) {
    proposals += o.proposals;
    stage1_evals += o.stage1_evals;
    stage2_evals += o.stage2_evals;
    accepted += o.accepted;
    return *this;
  }
};

template <class StateT>
struct MoveState {
  Eigen::VectorXd phi;  // log-parameter
  double cum_loglik = 0.0;
  StateT state;
};

// One Metropolis-Hastings iteration targeting prior x likelihood on the
// log-parameter scale. A non-null surrogate selects the two-stage delayed
// acceptance kernel: stage one screens with the surrogate, the expensive
// evaluator runs only on stage-one acceptance, and stage two cancels the
// surrogate so the overall kernel keeps the same invariant distribution.
//
// Streams are derived from iteration_rng by phase, so a delayed-acceptance
// kernel whose surrogate matches the evaluator exactly reproduces the
// standard kernel's accept/reject sequence draw for draw.
//
// Evaluator failures (particle collapse) are treated as loglik = -inf,
// i.e. rejection. If rejected, the input state is returned unchanged.
template <class StateT>
MoveState<StateT> mh_move(const MoveState<StateT>& current,
                          const LogDensityFn& log_prior,
                          const Eigen::MatrixXd& proposal_chol, double zeta,
                          const FilterEvaluator<StateT>& evaluate,
                          const LogDensityFn* surrogate,
                          RngStream iteration_rng, MoveCounters& counters) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  counters.proposals += 1;

  RngStream prop_rng = iteration_rng.substream(phase::proposal);
  const Eigen::VectorXd phi_star =
      current.phi +
      zeta * (proposal_chol * prop_rng.normal_vector(current.phi.size()));

  const double prior_lr = log_prior(phi_star) - log_prior(current.phi);

  if (surrogate != nullptr) {
    counters.stage1_evals += 1;
    const double s_star = (*surrogate)(phi_star);
    const double s_cur = (*surrogate)(current.phi);
    const double log_a1 = mh_log_accept(prior_lr, s_star - s_cur, 0.0);
    RngStream a1_rng = iteration_rng.substream(phase::accept_stage1);
    if (std::log(a1_rng.uniform()) >= log_a1) return current;

    counters.stage2_evals += 1;
    double ll_star = kNegInf;
    StateT state_star{};
    try {
      std::tie(ll_star, state_star) =
          evaluate(phi_star, iteration_rng.substream(phase::eval));
    } catch (const NumericalError&) {
      return current;  // collapsed evaluation rejects the proposal
    }
    const double log_a2 =
        mh_log_accept(0.0, ll_star - current.cum_loglik, s_cur - s_star);
    RngStream a2_rng = iteration_rng.substream(phase::accept_stage2);
    if (std::log(a2_rng.uniform()) >= log_a2) return current;

    counters.accepted += 1;
    return {phi_star, ll_star, std::move(state_star)};
  }

  // Standard (pseudo-marginal) Metropolis-Hastings. An out-of-support
  // proposal rejects without touching the evaluator.
  if (prior_lr == kNegInf) return current;
  counters.stage2_evals += 1;
  double ll_star = kNegInf;
  StateT state_star{};
  try {
    std::tie(ll_star, state_star) =
        evaluate(phi_star, iteration_rng.substream(phase::eval));
  } catch (const NumericalError&) {
    return current;
  }
  const double log_a =
      mh_log_accept(prior_lr, ll_star - current.cum_loglik, 0.0);
  RngStream a1_rng = iteration_rng.substream(phase::accept_stage1);
  if (std::log(a1_rng.uniform()) >= log_a) return current;

  counters.accepted += 1;
  return {phi_star, ll_star, std::move(state_star)};
}

}  // namespace nenkf

#endif  // NENKF_MOVE_KERNEL_HPP
