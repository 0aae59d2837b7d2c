#include <cmath>

#include "fracnoether/errors.hpp"
#include "fracnoether/gamma.hpp"
#include "fracnoether/kernels.hpp"
#include "kernel_common.hpp"

namespace fracnoether::kernels {

std::vector<double> l1_weights(double alpha, std::size_t count) {
  // (j+1)^beta - j^beta = j^beta * expm1(beta * log1p(1/j)) avoids cancellation for large j.
  const double beta = 1.0 - alpha;
  std::vector<double> b(count);
  if (count > 0) b[0] = 1.0;
  for (std::size_t j = 1; j < count; ++j) {
    const double jd = static_cast<double>(j);
    b[j] = std::pow(jd, beta) * std::expm1(beta * std::log1p(1.0 / jd));
  }
  return b;
}

std::vector<double> gl_weights(double alpha, std::size_t count) {
  std::vector<double> w(count);
  if (count > 0) w[0] = 1.0;
  for (std::size_t k = 1; k < count; ++k) w[k] = w[k - 1] * (1.0 - (alpha + 1.0) / static_cast<double>(k));
  return w;
}

std::vector<double> trapezoid_weights(double alpha, std::size_t count) {
  const double p = alpha + 1.0;
  std::vector<double> c(count, 0.0);
  for (std::size_t k = 1; k < count; ++k) {
    const double kd = static_cast<double>(k);
    c[k] = std::pow(kd, p) * (std::expm1(p * std::log1p(1.0 / kd)) + std::expm1(p * std::log1p(-1.0 / kd)));
  }
  return c;
}

namespace serial {

using namespace detail;

void l1_left(std::span<const double> f, double h, double alpha, std::span<double> out) {
  check_order(alpha);
  check_sizes(f, out);
  const std::size_t m = f.size() - 1;
  const std::vector<double> b = l1_weights(alpha, m);
  const double scale = std::pow(h, -alpha) / gamma(2.0 - alpha);
  const double g1 = gamma(1.0 - alpha);
  out[0] = kNaN;
  for (std::size_t n = 1; n <= m; ++n) {
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) sum += b[n - 1 - k] * (f[k + 1] - f[k]);
    out[n] = f[0] * std::pow(static_cast<double>(n) * h, -alpha) / g1 + scale * sum;
  }
}

void l1_right(std::span<const double> f, double h, double alpha, std::span<double> out) {
  check_order(alpha);
  check_sizes(f, out);
  const std::size_t m = f.size() - 1;
  const std::vector<double> b = l1_weights(alpha, m);
  const double scale = std::pow(h, -alpha) / gamma(2.0 - alpha);
  const double g1 = gamma(1.0 - alpha);
  out[m] = kNaN;
  for (std::size_t n = 0; n < m; ++n) {
    const std::size_t len = m - n;
    double sum = 0.0;
    for (std::size_t k = 0; k < len; ++k) sum += b[len - 1 - k] * (f[m - k - 1] - f[m - k]);
    out[n] = f[m] * std::pow(static_cast<double>(len) * h, -alpha) / g1 + scale * sum;
  }
}

void gl_left(std::span<const double> f, double h, double alpha, std::span<double> out) {
  check_order(alpha);
  check_sizes(f, out);
  const std::size_t m = f.size() - 1;
  const std::vector<double> w = gl_weights(alpha, m + 1);
  const double scale = std::pow(h, -alpha);
  out[0] = kNaN;
  for (std::size_t n = 1; n <= m; ++n) {
    double sum = 0.0;
    for (std::size_t k = 0; k <= n; ++k) sum += w[k] * f[n - k];
    out[n] = scale * sum;
  }
}

void gl_right(std::span<const double> f, double h, double alpha, std::span<double> out) {
  check_order(alpha);
  check_sizes(f, out);
  const std::size_t m = f.size() - 1;
  const std::vector<double> w = gl_weights(alpha, m + 1);
  const double scale = std::pow(h, -alpha);
  out[m] = kNaN;
  for (std::size_t n = 0; n < m; ++n) {
    const std::size_t len = m - n;
    double sum = 0.0;
    for (std::size_t k = 0; k <= len; ++k) sum += w[k] * f[n + k];
    out[n] = scale * sum;
  }
}

void integral_left(std::span<const double> f, double h, double alpha, std::span<double> out) {
  check_integral_order(alpha);
  check_sizes(f, out);
  const std::size_t m = f.size() - 1;
  const std::vector<double> c = trapezoid_weights(alpha, m + 1);
  const double scale = std::pow(h, alpha) / gamma(alpha + 2.0);
  out[0] = 0.0;
  for (std::size_t n = 1; n <= m; ++n) {
    double sum = trapezoid_first_weight(alpha, n) * f[0];
    for (std::size_t j = 1; j < n; ++j) sum += c[n - j] * f[j];
    sum += f[n];
    out[n] = scale * sum;
  }
}

void integral_right(std::span<const double> f, double h, double alpha, std::span<double> out) {
  check_integral_order(alpha);
  check_sizes(f, out);
  const std::size_t m = f.size() - 1;
  const std::vector<double> c = trapezoid_weights(alpha, m + 1);
  const double scale = std::pow(h, alpha) / gamma(alpha + 2.0);
  out[m] = 0.0;
  for (std::size_t n = 0; n < m; ++n) {
    const std::size_t len = m - n;
    double sum = trapezoid_first_weight(alpha, len) * f[m];
    for (std::size_t j = 1; j < len; ++j) sum += c[len - j] * f[m - j];
    sum += f[n];
    out[n] = scale * sum;
  }
}

void l1_left_nonuniform(std::span<const double> t, std::span<const double> f, double alpha,
                        std::span<double> out) {
  check_order(alpha);
  check_sizes(f, out);
  if (t.size() != f.size()) throw DimensionMismatch("node and value counts differ");
  const std::size_t m = f.size() - 1;
  const double g1 = gamma(1.0 - alpha);
  const double g2 = gamma(2.0 - alpha);
  const double beta = 1.0 - alpha;
  out[0] = kNaN;
  for (std::size_t n = 1; n <= m; ++n) {
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double slope = (f[k + 1] - f[k]) / (t[k + 1] - t[k]);
      sum += slope * (std::pow(t[n] - t[k], beta) - std::pow(t[n] - t[k + 1], beta));
    }
    out[n] = f[0] * std::pow(t[n] - t[0], -alpha) / g1 + sum / g2;
  }
}

}  // namespace serial
}  // namespace fracnoether::kernels
