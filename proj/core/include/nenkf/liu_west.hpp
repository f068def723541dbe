#ifndef NENKF_LIU_WEST_HPP
#define NENKF_LIU_WEST_HPP

#include <Eigen/Dense>

#include "nenkf/rng.hpp"

namespace nenkf {

// Artificial parameter evolution kernel
//   phi' ~ N(a phi + (1-a) phi_bar, h^2 V),
// with a = sqrt(1 - h^2) so the first two population moments are preserved.
// h is derived from the discount factor delta in (1/3, 1].
struct LiuWestConfig {
  double delta = 0.97;

  double h() const;
  double a() const;
};

// Applies the kernel to a cloud of column vectors (log-parameter scale).
// phi_bar and V are the unweighted cloud moments; h == 0 returns the input
// unchanged. A degenerate V falls back to the core jitter ladder.
Eigen::MatrixXd liu_west_shrink(const Eigen::MatrixXd& phis,
                                const LiuWestConfig& cfg, RngStream& rng);

}  // namespace nenkf

#endif  // NENKF_LIU_WEST_HPP
