#include "nenkf/gamma_dist.hpp"

#include <cmath>

#include "nenkf/errors.hpp"

namespace nenkf {

double gamma_logpdf(double x, double shape, double rate) {
  if (shape <= 0.0 || rate <= 0.0)
    throw PreconditionError("gamma_logpdf: shape and rate must be positive");
  if (x <= 0.0)
    throw PreconditionError("gamma_logpdf: x must be positive");
  return shape * std::log(rate) + (shape - 1.0) * std::log(x) - rate * x -
         std::lgamma(shape);
}

double gamma_sample(double shape, double rate, RngStream& rng) {
  return rng.gamma(shape, rate);
}

}  // namespace nenkf
