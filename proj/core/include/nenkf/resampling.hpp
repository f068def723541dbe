#ifndef NENKF_RESAMPLING_HPP
#define NENKF_RESAMPLING_HPP

#include <Eigen/Dense>
#include <vector>

#include "nenkf/rng.hpp"

namespace nenkf {

// 1 / sum w_i^2 for normalised weights; in [1, N].
double effective_sample_size(const Eigen::VectorXd& normalized_weights);

// Ancestor indices drawn with probability w_j, independently per slot.
std::vector<int> resample_multinomial(const Eigen::VectorXd& weights,
                                      int count, RngStream& rng);

// Single uniform offset, stratified positions (u + j)/count.
std::vector<int> resample_systematic(const Eigen::VectorXd& weights,
                                     int count, RngStream& rng);

enum class ResamplingScheme { multinomial, systematic };

std::vector<int> resample(const Eigen::VectorXd& weights, int count,
                          ResamplingScheme scheme, RngStream& rng);

}  // namespace nenkf

#endif  // NENKF_RESAMPLING_HPP
