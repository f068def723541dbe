#include "nenkf/mcmc.hpp"

#include <cmath>

#include "nenkf/enkf.hpp"
#include "nenkf/errors.hpp"
#include "nenkf/gaussian.hpp"
#include "nenkf/particle_filter.hpp"

namespace nenkf {

McmcResult mcmc_run(const LogDensityFn& log_prior,
                    const LoglikEvaluator& loglik, const Eigen::VectorXd& phi0,
                    const Eigen::MatrixXd& proposal_cov, int iterations,
                    RngStream root) {
  if (iterations < 1) throw PreconditionError("mcmc_run: iterations >= 1");
  const Eigen::Index d = phi0.size();

  Eigen::MatrixXd chol;
  double zeta = 1.0;
  if (proposal_cov.isZero(0.0)) {
    chol = Eigen::MatrixXd::Zero(d, d);
    zeta = 0.0;
  } else {
    chol = cholesky_psd(proposal_cov).lower;
  }

  const FilterEvaluator<NoState> evaluate =
      [&loglik](const Eigen::VectorXd& phi, RngStream rng) {
        return std::make_pair(loglik(phi, std::move(rng)), NoState{});
      };

  MoveState<NoState> cur{phi0,
                         loglik(phi0, root.substream(0, phase::eval)),
                         NoState{}};

  McmcResult out;
  out.phis.resize(iterations, d);
  out.logliks.resize(iterations);
  MoveCounters counters;
  for (int k = 0; k < iterations; ++k) {
    cur = mh_move<NoState>(cur, log_prior, chol, zeta, evaluate,
                           /*surrogate=*/nullptr, root.substream(k + 1),
                           counters);
    out.phis.row(k) = cur.phi.transpose();
    out.logliks(k) = cur.cum_loglik;
  }
  out.accept_rate =
      static_cast<double>(counters.accepted) / counters.proposals;
  return out;
}

McmcResult emcmc_run(const Model& model, const Eigen::MatrixXd& y, int n,
                     const Eigen::VectorXd& phi0,
                     const Eigen::MatrixXd& proposal_cov, int iterations,
                     RngStream root) {
  const LoglikEvaluator ll = [&model, &y, n](const Eigen::VectorXd& phi,
                                             RngStream rng) {
    return enkf_run(model, phi.array().exp(), n, y, std::move(rng)).loglik;
  };
  const LogDensityFn prior = [&model](const Eigen::VectorXd& phi) {
    return model.log_prior_logpdf(phi);
  };
  return mcmc_run(prior, ll, phi0, proposal_cov, iterations, root);
}

McmcResult pmmh_run(const Model& model, const Eigen::MatrixXd& y, int n,
                    const Eigen::VectorXd& phi0,
                    const Eigen::MatrixXd& proposal_cov, int iterations,
                    RngStream root) {
  const LoglikEvaluator ll = [&model, &y, n](const Eigen::VectorXd& phi,
                                             RngStream rng) {
    return pf_run(model, phi.array().exp(), n, y, std::move(rng)).loglik;
  };
  const LogDensityFn prior = [&model](const Eigen::VectorXd& phi) {
    return model.log_prior_logpdf(phi);
  };
  return mcmc_run(prior, ll, phi0, proposal_cov, iterations, root);
}

ChainSummary summarize_chain(const Eigen::MatrixXd& phis, double burn_frac) {
  if (burn_frac < 0.0 || burn_frac >= 1.0)
    throw PreconditionError("summarize_chain: burn_frac in [0, 1)");
  const int burn = static_cast<int>(std::floor(burn_frac * phis.rows()));
  const int n = static_cast<int>(phis.rows()) - burn;
  if (n < 4) throw PreconditionError("summarize_chain: chain too short");
  const Eigen::MatrixXd kept = phis.bottomRows(n);
  const Eigen::Index d = phis.cols();

  ChainSummary s;
  s.n_kept = n;
  s.mean = kept.colwise().mean();
  s.sd.resize(d);
  for (Eigen::Index i = 0; i < d; ++i)
    s.sd(i) = std::sqrt((kept.col(i).array() - s.mean(i)).square().sum() /
                        static_cast<double>(n - 1));

  const int n_batches = std::max(2, static_cast<int>(std::sqrt(n)));
  const int batch = n / n_batches;
  s.mcse_mean.resize(d);
  s.mcse_sd.resize(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    Eigen::VectorXd bmeans(n_batches), bsds(n_batches);
    for (int b = 0; b < n_batches; ++b) {
      const auto seg = kept.col(i).segment(b * batch, batch);
      bmeans(b) = seg.mean();
      bsds(b) = std::sqrt((seg.array() - bmeans(b)).square().sum() /
                          static_cast<double>(batch - 1));
    }
    const double bm = bmeans.mean();
    const double bs = bsds.mean();
    s.mcse_mean(i) =
        std::sqrt((bmeans.array() - bm).square().sum() /
                  static_cast<double>(n_batches - 1) / n_batches);
    s.mcse_sd(i) = std::sqrt((bsds.array() - bs).square().sum() /
                             static_cast<double>(n_batches - 1) / n_batches);
  }
  return s;
}

ReferenceResult reference_chain(const LogDensityFn& log_prior,
                                const LoglikEvaluator& loglik,
                                const Eigen::VectorXd& phi0, int iterations,
                                RngStream root, double burn_frac,
                                int pilot_iterations) {
  const Eigen::Index d = phi0.size();
  if (pilot_iterations <= 0)
    pilot_iterations = std::max(1000, iterations / 10);

  const Eigen::MatrixXd pilot_cov =
      0.01 * Eigen::MatrixXd::Identity(d, d);
  const McmcResult pilot = mcmc_run(log_prior, loglik, phi0, pilot_cov,
                                    pilot_iterations, root.substream(1));

  const int burn = pilot_iterations / 2;
  const Eigen::MatrixXd tail = pilot.phis.bottomRows(pilot_iterations - burn);
  Eigen::MatrixXd cov;
  {
    const Eigen::VectorXd mean = tail.colwise().mean();
    const Eigen::MatrixXd centered = tail.rowwise() - mean.transpose();
    cov = centered.transpose() * centered /
          static_cast<double>(tail.rows() - 1);
    // Guard against a pilot that barely moved.
    cov += 1e-8 * Eigen::MatrixXd::Identity(d, d);
  }
  const double zeta2 = 2.56 * 2.56 / static_cast<double>(d);

  ReferenceResult out;
  out.proposal_cov = zeta2 * cov;
  out.chain = mcmc_run(log_prior, loglik, tail.bottomRows<1>().transpose(),
                       out.proposal_cov, iterations, root.substream(2));
  out.summary = summarize_chain(out.chain.phis, burn_frac);
  return out;
}

}  // namespace nenkf
