#include "nenkf/adapt.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "nenkf/errors.hpp"

namespace nenkf {

double estimate_sigma2(const std::function<double(RngStream)>& run_loglik,
                       int r, RngStream root) {
  if (r < 2) throw PreconditionError("estimate_sigma2: r must be >= 2");
  std::vector<double> values;
  values.reserve(r);
  for (int j = 0; j < r; ++j) {
    try {
      const double v = run_loglik(root.substream(j));
      if (std::isfinite(v)) values.push_back(v);
    } catch (const NumericalError&) {
      // dropped
    }
  }
  if (values.size() < 2)
    throw NumericalError(
        "estimate_sigma2: fewer than two evaluator runs survived");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return ss / static_cast<double>(values.size() - 1);
}

int adapted_size(double sigma2, int n, int n_max) {
  if (sigma2 <= 0.0 || n < 1)
    throw PreconditionError("adapted_size: invalid arguments");
  const double grown = std::ceil(sigma2 * static_cast<double>(n));
  const int capped =
      static_cast<int>(std::min<double>(grown, static_cast<double>(n_max)));
  return std::max(2, capped);
}

}  // namespace nenkf
