#include "nenkf/resampling.hpp"

#include <algorithm>
#include <cmath>

#include "nenkf/errors.hpp"

namespace nenkf {

namespace {

Eigen::VectorXd checked_cumulative(const Eigen::VectorXd& w) {
  if (w.size() == 0)
    throw PreconditionError("resample: empty weight vector");
  if ((w.array() < 0.0).any())
    throw PreconditionError("resample: negative weight");
  Eigen::VectorXd cum(w.size());
  double acc = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    acc += w(i);
    cum(i) = acc;
  }
  if (acc <= 0.0) throw PreconditionError("resample: all weights are zero");
  if (std::abs(acc - 1.0) > 1e-9)
    throw PreconditionError("resample: weights are not normalised");
  cum(w.size() - 1) = 1.0;
  return cum;
}

}  // namespace

double effective_sample_size(const Eigen::VectorXd& w) {
  if (w.size() == 0)
    throw PreconditionError("effective_sample_size: empty weights");
  if ((w.array() < 0.0).any())
    throw PreconditionError("effective_sample_size: negative weight");
  if (std::abs(w.sum() - 1.0) > 1e-9)
    throw PreconditionError("effective_sample_size: weights not normalised");
  return 1.0 / w.squaredNorm();
}

std::vector<int> resample_multinomial(const Eigen::VectorXd& weights,
                                      int count, RngStream& rng) {
  if (count < 1) throw PreconditionError("resample: count must be >= 1");
  const Eigen::VectorXd cum = checked_cumulative(weights);
  std::vector<int> idx(count);
  for (int j = 0; j < count; ++j) {
    const double u = rng.uniform();
    idx[j] = static_cast<int>(
        std::lower_bound(cum.data(), cum.data() + cum.size(), u) - cum.data());
  }
  return idx;
}

std::vector<int> resample_systematic(const Eigen::VectorXd& weights,
                                     int count, RngStream& rng) {
  if (count < 1) throw PreconditionError("resample: count must be >= 1");
  const Eigen::VectorXd cum = checked_cumulative(weights);
  std::vector<int> idx(count);
  const double u = rng.uniform();
  int i = 0;
  for (int j = 0; j < count; ++j) {
    const double p = (u + j) / count;
    while (cum(i) < p && i + 1 < cum.size()) ++i;
    idx[j] = i;
  }
  return idx;
}

std::vector<int> resample(const Eigen::VectorXd& weights, int count,
                          ResamplingScheme scheme, RngStream& rng) {
  return scheme == ResamplingScheme::multinomial
             ? resample_multinomial(weights, count, rng)
             : resample_systematic(weights, count, rng);
}

}  // namespace nenkf
