#pragma once

// Riemann-Liouville integrals and derivatives of sampled functions.
//
// Derivatives of order 0 < alpha < 1 use the L1 product-integration scheme by
// default: the samples are interpolated piecewise-linearly and the RL
// derivative of the interpolant is evaluated exactly at the nodes (order
// 2 - alpha for smooth data). The singular endpoint (t_0 for the left
// operator, t_m for the right one) is marked with NaN. Order exactly 1 falls
// back to central differences, one-sided at the ends.
//
// Vector-valued functions are processed component-wise.

#include "fracnoether/grid.hpp"

namespace fracnoether {

enum class Scheme {
  kL1,                 ///< product integration, order 2 - alpha
  kGrunwaldLetnikov,   ///< unshifted Grunwald-Letnikov sum, order 1; cross-check only
};

enum class Execution { kParallel, kSerial };

struct KernelOptions {
  Scheme scheme = Scheme::kL1;
  Execution execution = Execution::kParallel;
};

SampledFunction left_rl_integral(const SampledFunction& f, FracOrder order, KernelOptions options = {});
SampledFunction right_rl_integral(const SampledFunction& f, FracOrder order, KernelOptions options = {});

/// Left RL derivative a_D_t^alpha. Throws UnsupportedOrder for alpha > 1 or
/// non-integer alpha >= 1.
SampledFunction left_rl_derivative(const SampledFunction& f, FracOrder order, KernelOptions options = {});

/// Right RL derivative t_D_b^alpha, the mirror image of left_rl_derivative.
SampledFunction right_rl_derivative(const SampledFunction& f, FracOrder order, KernelOptions options = {});

/// Central differences, first-order one-sided at t_0 and t_m.
SampledFunction classical_derivative(const SampledFunction& f);

/// c or c * (t - base)^exponent. For right-sided use the function is read as
/// c * (base - t)^exponent with base = b.
struct ClosedFormAtom {
  enum class Kind { kConstant, kPowerShifted };

  Kind kind = Kind::kConstant;
  double coefficient = 1.0;
  double exponent = 0.0;
  double base = 0.0;

  static ClosedFormAtom constant(double c, double base);
  /// Throws PreconditionError unless exponent > -1.
  static ClosedFormAtom power(double coefficient, double exponent, double base);

  double value(double t) const;
};

/// Exact left RL derivative of an atom based at a.
double closed_form_left_derivative(const ClosedFormAtom& atom, FracOrder order, double t);

/// Exact right RL derivative of c * (base - t)^exponent.
double closed_form_right_derivative(const ClosedFormAtom& atom, FracOrder order, double t);

/// Exact left RL integral of an atom based at a.
double closed_form_left_integral(const ClosedFormAtom& atom, FracOrder order, double t);

}  // namespace fracnoether
