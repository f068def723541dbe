#ifndef NENKF_SURROGATE_HPP
#define NENKF_SURROGATE_HPP

#include <Eigen/Dense>

namespace nenkf {

// k-nearest-neighbour log-likelihood surrogate built from the unique
// resampled parameter particles of a sweep and their cumulative
// log-likelihoods. The store is immutable once built (frozen per sweep).
//
// Distances are Euclidean on standardised log-theta: each coordinate is
// divided by the cloud's standard deviation (a zero deviation falls back to
// 1). A linear scan suffices at the cloud sizes in play.
class SurrogateStore {
 public:
  // points: d x M columns; duplicates (exact repeats after resampling) are
  // collapsed to single entries.
  SurrogateStore(const Eigen::MatrixXd& points, const Eigen::VectorXd& values);

  // Inverse-distance-weighted average over the k nearest stored points; an
  // exact match returns that point's value.
  double knn_loglik(const Eigen::VectorXd& phi, int k) const;

  int size() const { return static_cast<int>(points_.cols()); }

 private:
  Eigen::MatrixXd points_;  // d x M_r, already standardised
  Eigen::VectorXd values_;
  Eigen::VectorXd scale_;
};

}  // namespace nenkf

#endif  // NENKF_SURROGATE_HPP
