#ifndef NENKF_GAMMA_DIST_HPP
#define NENKF_GAMMA_DIST_HPP

#include "nenkf/rng.hpp"

namespace nenkf {

// Gamma(shape, rate) with density rate^shape x^{shape-1} e^{-rate x} / G(shape).
double gamma_logpdf(double x, double shape, double rate);
double gamma_sample(double shape, double rate, RngStream& rng);

}  // namespace nenkf

#endif  // NENKF_GAMMA_DIST_HPP
