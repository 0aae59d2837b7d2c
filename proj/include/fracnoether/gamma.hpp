#pragma once

namespace fracnoether {

/// Euler gamma function.
///
/// Lanczos approximation (g = 7, nine coefficients) for x >= 0.5 and the
/// reflection formula below that. Relative error is below 1e-13 on
/// [0.1, 30]. Throws PoleError at 0, -1, -2, ...
double gamma(double x);

namespace testing {

/// Perturbs one Lanczos coefficient while alive. Used by the self-test to
/// confirm that the kernel oracles detect a corrupted gamma function.
/// Not thread-safe with concurrent gamma() callers; only for fault injection.
class ScopedGammaFault {
 public:
  ScopedGammaFault();
  ~ScopedGammaFault();
  ScopedGammaFault(const ScopedGammaFault&) = delete;
  ScopedGammaFault& operator=(const ScopedGammaFault&) = delete;
};

}  // namespace testing
}  // namespace fracnoether
