#include <cmath>
#include <cstdint>

#include "fracnoether/gamma.hpp"
#include "fracnoether/kernels.hpp"
#include "kernel_common.hpp"

namespace fracnoether::kernels::parallel {

using namespace detail;

// Output node n costs O(n) (or O(m - n)), so chunks are handed out dynamically.
// Each node is reduced serially in the same order as the reference kernels.

void l1_left(std::span<const double> f, double h, double alpha, std::span<double> out) {
  check_order(alpha);
  check_sizes(f, out);
  const std::int64_t m = static_cast<std::int64_t>(f.size()) - 1;
  const std::vector<double> b = l1_weights(alpha, static_cast<std::size_t>(m));
  const double scale = std::pow(h, -alpha) / gamma(2.0 - alpha);
  const double g1 = gamma(1.0 - alpha);
  out[0] = kNaN;
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t n = 1; n <= m; ++n) {
    double sum = 0.0;
    for (std::int64_t k = 0; k < n; ++k) sum += b[n - 1 - k] * (f[k + 1] - f[k]);
    out[n] = f[0] * std::pow(static_cast<double>(n) * h, -alpha) / g1 + scale * sum;
  }
}

void l1_right(std::span<const double> f, double h, double alpha, std::span<double> out) {
  check_order(alpha);
  check_sizes(f, out);
  const std::int64_t m = static_cast<std::int64_t>(f.size()) - 1;
  const std::vector<double> b = l1_weights(alpha, static_cast<std::size_t>(m));
  const double scale = std::pow(h, -alpha) / gamma(2.0 - alpha);
  const double g1 = gamma(1.0 - alpha);
  out[m] = kNaN;
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t n = 0; n < m; ++n) {
    const std::int64_t len = m - n;
    double sum = 0.0;
    for (std::int64_t k = 0; k < len; ++k) sum += b[len - 1 - k] * (f[m - k - 1] - f[m - k]);
    out[n] = f[m] * std::pow(static_cast<double>(len) * h, -alpha) / g1 + scale * sum;
  }
}

void gl_left(std::span<const double> f, double h, double alpha, std::span<double> out) {
  check_order(alpha);
  check_sizes(f, out);
  const std::int64_t m = static_cast<std::int64_t>(f.size()) - 1;
  const std::vector<double> w = gl_weights(alpha, f.size());
  const double scale = std::pow(h, -alpha);
  out[0] = kNaN;
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t n = 1; n <= m; ++n) {
    double sum = 0.0;
    for (std::int64_t k = 0; k <= n; ++k) sum += w[k] * f[n - k];
    out[n] = scale * sum;
  }
}

void gl_right(std::span<const double> f, double h, double alpha, std::span<double> out) {
  check_order(alpha);
  check_sizes(f, out);
  const std::int64_t m = static_cast<std::int64_t>(f.size()) - 1;
  const std::vector<double> w = gl_weights(alpha, f.size());
  const double scale = std::pow(h, -alpha);
  out[m] = kNaN;
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t n = 0; n < m; ++n) {
    const std::int64_t len = m - n;
    double sum = 0.0;
    for (std::int64_t k = 0; k <= len; ++k) sum += w[k] * f[n + k];
    out[n] = scale * sum;
  }
}

void integral_left(std::span<const double> f, double h, double alpha, std::span<double> out) {
  check_integral_order(alpha);
  check_sizes(f, out);
  const std::int64_t m = static_cast<std::int64_t>(f.size()) - 1;
  const std::vector<double> c = trapezoid_weights(alpha, f.size());
  const double scale = std::pow(h, alpha) / gamma(alpha + 2.0);
  out[0] = 0.0;
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t n = 1; n <= m; ++n) {
    double sum = trapezoid_first_weight(alpha, static_cast<std::size_t>(n)) * f[0];
    for (std::int64_t j = 1; j < n; ++j) sum += c[n - j] * f[j];
    sum += f[n];
    out[n] = scale * sum;
  }
}

void integral_right(std::span<const double> f, double h, double alpha, std::span<double> out) {
  check_integral_order(alpha);
  check_sizes(f, out);
  const std::int64_t m = static_cast<std::int64_t>(f.size()) - 1;
  const std::vector<double> c = trapezoid_weights(alpha, f.size());
  const double scale = std::pow(h, alpha) / gamma(alpha + 2.0);
  out[m] = 0.0;
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t n = 0; n < m; ++n) {
    const std::int64_t len = m - n;
    double sum = trapezoid_first_weight(alpha, static_cast<std::size_t>(len)) * f[m];
    for (std::int64_t j = 1; j < len; ++j) sum += c[len - j] * f[m - j];
    sum += f[n];
    out[n] = scale * sum;
  }
}

void l1_left_nonuniform(std::span<const double> t, std::span<const double> f, double alpha,
                        std::span<double> out) {
  check_order(alpha);
  check_sizes(f, out);
  if (t.size() != f.size()) throw DimensionMismatch("node and value counts differ");
  const std::int64_t m = static_cast<std::int64_t>(f.size()) - 1;
  const double g1 = gamma(1.0 - alpha);
  const double g2 = gamma(2.0 - alpha);
  const double beta = 1.0 - alpha;
  out[0] = kNaN;
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t n = 1; n <= m; ++n) {
    double sum = 0.0;
    for (std::int64_t k = 0; k < n; ++k) {
      const double slope = (f[k + 1] - f[k]) / (t[k + 1] - t[k]);
      sum += slope * (std::pow(t[n] - t[k], beta) - std::pow(t[n] - t[k + 1], beta));
    }
    out[n] = f[0] * std::pow(t[n] - t[0], -alpha) / g1 + sum / g2;
  }
}

}  // namespace fracnoether::kernels::parallel
