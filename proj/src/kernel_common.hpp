#pragma once

// Helpers shared by the serial and OpenMP kernel translation units.

#include <cmath>
#include <limits>
#include <span>

#include "fracnoether/errors.hpp"

namespace fracnoether::kernels::detail {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

inline void check_order(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw UnsupportedOrder("derivative kernels need 0 < alpha < 1");
}

inline void check_integral_order(double alpha) {
  if (!(alpha > 0.0)) throw UnsupportedOrder("fractional integral needs alpha > 0");
}

inline void check_sizes(std::span<const double> f, std::span<double> out) {
  if (f.size() < 3 || out.size() != f.size()) throw DimensionMismatch("kernel input/output size mismatch");
}

// Weight of f_0 (resp. f_m) in the product trapezoid at distance n >= 1 nodes:
// (n-1)^(alpha+1) - (n-alpha-1) n^alpha, rewritten to avoid cancellation.
inline double trapezoid_first_weight(double alpha, std::size_t n) {
  const double p = alpha + 1.0;
  const double nd = static_cast<double>(n);
  return std::pow(nd, alpha) * (nd * std::expm1(p * std::log1p(-1.0 / nd)) + p);
}

}  // namespace fracnoether::kernels::detail
