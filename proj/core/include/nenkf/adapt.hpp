#ifndef NENKF_ADAPT_HPP
#define NENKF_ADAPT_HPP

#include <functional>

#include "nenkf/rng.hpp"

namespace nenkf {

// Sample variance of r replicate log-likelihood evaluations at a fixed
// parameter; run j draws from root.substream(j). Failed runs are dropped;
// fewer than two survivors is an error.
double estimate_sigma2(const std::function<double(RngStream)>& run_loglik,
                       int r, RngStream root);

// ceil(sigma2 * n), capped at n_max and floored at 2.
int adapted_size(double sigma2, int n, int n_max);

struct NAdaptConfig {
  bool enabled = true;
  double sigma2_threshold = 1.5;
  int var_runs = 10;  // r
  int n_max = 100000;
  // Alternative trigger: double N when the mutation acceptance rate drops
  // below accept_rate_threshold (no variance estimation runs).
  bool use_accept_rate = false;
  double accept_rate_threshold = 0.10;
};

}  // namespace nenkf

#endif  // NENKF_ADAPT_HPP
