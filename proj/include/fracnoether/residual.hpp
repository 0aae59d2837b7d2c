#pragma once

#include <cstddef>

#include "fracnoether/grid.hpp"

namespace fracnoether {

inline constexpr std::size_t kDefaultBand = 2;
inline constexpr double kDefaultToleranceConstant = 10.0;

/// Pointwise residual of an identity along a trajectory, with norms taken over
/// the interior nodes band..m-band only.
struct ResidualReport {
  SampledFunction components;  ///< residual vector per node
  SampledFunction pointwise;   ///< Euclidean magnitude per node
  double sup_norm = 0.0;
  double l2_norm = 0.0;        ///< sqrt(h * sum |r_i|^2) over included nodes
  std::size_t excluded_band = kDefaultBand;

  const Grid& grid() const { return components.grid(); }
  /// False for NaN norms.
  bool passes(double tolerance) const { return sup_norm <= tolerance; }
};

/// Builds the report; NaN in the included range propagates to the norms.
ResidualReport make_report(SampledFunction components, std::size_t band = kDefaultBand);

/// c * h^min(1, 2 - alpha): the default extremal-certification threshold.
double certification_tolerance(const Grid& grid, FracOrder order, double constant = kDefaultToleranceConstant);

}  // namespace fracnoether
