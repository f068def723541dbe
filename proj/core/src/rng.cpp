#include "nenkf/rng.hpp"

#include "nenkf/errors.hpp"

namespace nenkf {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return splitmix64(h);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed)
    : key_(splitmix64(seed)), engine_(key_) {}

RngStream::RngStream(std::uint64_t key, derived_tag) : key_(key), engine_(key) {}

RngStream RngStream::substream(std::uint64_t a, std::uint64_t b,
                               std::uint64_t c) const {
  return RngStream(mix(mix(mix(key_, a), b), c), derived_tag{});
}

std::uint64_t RngStream::next_u64() { return engine_(); }

double RngStream::uniform() {
  // Strictly inside (0, 1) so log(u) is always finite.
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  double u = dist(engine_);
  while (u <= 0.0) u = dist(engine_);
  return u;
}

double RngStream::normal() {
  std::normal_distribution<double> dist(0.0, 1.0);
  return dist(engine_);
}

Eigen::VectorXd RngStream::normal_vector(Eigen::Index n) {
  Eigen::VectorXd z(n);
  std::normal_distribution<double> dist(0.0, 1.0);
  for (Eigen::Index i = 0; i < n; ++i) z(i) = dist(engine_);
  return z;
}

double RngStream::gamma(double shape, double rate) {
  if (shape <= 0.0 || rate <= 0.0)
    throw PreconditionError("gamma draw requires shape > 0 and rate > 0");
  std::gamma_distribution<double> dist(shape, 1.0 / rate);
  return dist(engine_);
}

}  // namespace nenkf
