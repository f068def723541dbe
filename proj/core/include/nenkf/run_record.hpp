#ifndef NENKF_RUN_RECORD_HPP
#define NENKF_RUN_RECORD_HPP

#include <optional>
#include <vector>

namespace nenkf {

// Per-time-step diagnostics emitted by the outer parameter filters.
struct RunRecord {
  int t = 0;
  double ess = 0.0;
  bool resampled = false;
  bool moved = false;
  double accept_rate = 0.0;  // meaningful only when moved
  long stage1_evals = 0;
  long stage2_evals = 0;
  int n_members = 0;
  std::optional<double> sigma2;  // set when the variance estimate ran
  double wall_ms = 0.0;
};

}  // namespace nenkf

#endif  // NENKF_RUN_RECORD_HPP
