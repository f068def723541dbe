#ifndef NENKF_ERRORS_HPP
#define NENKF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nenkf {

// Validation failures: bad dimensions, unnormalised weights, invalid config.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Requested an operation the model cannot support (e.g. exact Kalman
// filtering without a linear-Gaussian transition).
class UnsupportedModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Base for runtime numerical failures; maps to exit code 3 in the CLI.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Cholesky factorisation failed even after the jitter escalation ladder.
class SingularCovarianceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Every particle weight underflowed to zero at some time step.
class ParticleCollapseError : public NumericalError {
 public:
  ParticleCollapseError(int time_index, const std::string& what)
      : NumericalError(what), time_index_(time_index) {}
  int time_index() const { return time_index_; }

 private:
  int time_index_;
};

// Transition sampler produced a non-finite state for one member.
class TransitionFailureError : public NumericalError {
 public:
  TransitionFailureError(int member_index, const std::string& what)
      : NumericalError(what), member_index_(member_index) {}
  int member_index() const { return member_index_; }

 private:
  int member_index_;
};

}  // namespace nenkf

#endif  // NENKF_ERRORS_HPP
