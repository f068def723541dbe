#ifndef NENKF_RNG_HPP
#define NENKF_RNG_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace nenkf {

// Stream ids used when deriving substreams. Every distinct source of
// randomness in an algorithm step gets its own tag so that adding or
// removing draws in one phase never shifts the draws of another, and so
// that results are independent of thread scheduling.
namespace phase {
inline constexpr std::uint64_t prior = 1;
inline constexpr std::uint64_t init = 2;
inline constexpr std::uint64_t transition = 3;
inline constexpr std::uint64_t pseudo_obs = 4;
inline constexpr std::uint64_t obs_noise = 5;
inline constexpr std::uint64_t resample = 6;
inline constexpr std::uint64_t liu_west = 7;
inline constexpr std::uint64_t proposal = 8;
inline constexpr std::uint64_t accept_stage1 = 9;
inline constexpr std::uint64_t accept_stage2 = 10;
inline constexpr std::uint64_t eval = 11;
inline constexpr std::uint64_t sigma2 = 12;
inline constexpr std::uint64_t adapt = 13;
inline constexpr std::uint64_t move = 14;
inline constexpr std::uint64_t weight = 15;
}  // namespace phase

// Reproducible randomness contract: a stream is identified by a 64-bit key
// derived by hashing a root seed with a chain of ids. Identical
// (seed, id chain) reproduces the identical draw sequence; distinct chains
// give streams of independent quality. Substream derivation depends only on
// the key, never on how many draws were consumed, so streams may be derived
// lazily and in any order.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  // Derived stream for (a, b, c); substream(a) == substream(a, 0, 0).
  RngStream substream(std::uint64_t a, std::uint64_t b = 0,
                      std::uint64_t c = 0) const;

  std::uint64_t key() const { return key_; }

  std::uint64_t next_u64();
  double uniform();  // U(0, 1)
  double normal();   // N(0, 1)
  Eigen::VectorXd normal_vector(Eigen::Index n);
  double gamma(double shape, double rate);

 private:
  struct derived_tag {};
  RngStream(std::uint64_t key, derived_tag);

  std::uint64_t key_;
  std::mt19937_64 engine_;
};

}  // namespace nenkf

#endif  // NENKF_RNG_HPP
