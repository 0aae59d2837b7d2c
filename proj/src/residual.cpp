#include "fracnoether/residual.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracnoether/errors.hpp"

namespace fracnoether {

ResidualReport make_report(SampledFunction components, std::size_t band) {
  const Grid& grid = components.grid();
  const std::size_t m = grid.m();
  if (2 * band >= m) throw PreconditionError("boundary band leaves no interior nodes");

  SampledFunction pointwise(grid, 1);
  for (std::size_t i = 0; i <= m; ++i) {
    double sq = 0.0;
    for (double r : components.at(i)) sq += r * r;
    pointwise(i) = std::sqrt(sq);
  }

  double sup = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = band; i <= m - band; ++i) {
    const double r = pointwise(i);
    if (std::isnan(r)) {
      sup = std::numeric_limits<double>::quiet_NaN();
      sum_sq = sup;
      break;
    }
    sup = std::max(sup, r);
    sum_sq += r * r;
  }
  ResidualReport report{std::move(components), std::move(pointwise), sup, std::sqrt(grid.h() * sum_sq), band};
  return report;
}

double certification_tolerance(const Grid& grid, FracOrder order, double constant) {
  return constant * std::pow(grid.h(), std::min(1.0, 2.0 - order.alpha()));
}

}  // namespace fracnoether
