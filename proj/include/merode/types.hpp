#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

namespace merode {

using Complex = std::complex<double>;

// Every tolerance knob in one place, passed explicitly; no global state.
struct Tolerances {
  double root_cluster = 1e-8;      // multiplicity clustering, scaled by root magnitude
  double condition_zero = 1e-9;    // "is this classification condition zero", scaled
  double residual = 1e-9;          // ODE residual targets
  double pole_proximity = 1e-6;    // fraction of shortest period / nearest-pole guard
  double quadrature = 1e-6;        // adaptive quadrature interval tolerance
  double winding_snap = 1e-3;      // argument-principle integer snap
};

// Error with a stable machine-readable code; the CLI prints codes verbatim.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& message) {
  throw Error(code, message);
}

inline bool is_finite(Complex v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

inline void require_finite(Complex v, const char* what) {
  if (!is_finite(v)) fail("NonFiniteInput", std::string(what) + " must be finite");
}

}  // namespace merode
