#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace fracnoether {

/// Real-valued map (t, q, v) -> R with optional analytic gradients in q and v.
///
/// Used for Lagrangians and constraint integrands L(t, q, aD^alpha q), and on the
/// control side for L(t, q, u), g_j(t, q, u) and each component of phi. When a
/// gradient is not supplied it is formed by central differences with step
/// 1e-6 * (1 + |x|) per component.
class ScalarField3 {
 public:
  using Value = std::function<double(double t, std::span<const double> q, std::span<const double> v)>;
  using Gradient = std::function<void(double t, std::span<const double> q, std::span<const double> v,
                                      std::span<double> out)>;

  ScalarField3() = default;
  explicit ScalarField3(Value value, std::optional<Gradient> grad_q = std::nullopt,
                        std::optional<Gradient> grad_v = std::nullopt);

  double operator()(double t, std::span<const double> q, std::span<const double> v) const;
  void grad_q(double t, std::span<const double> q, std::span<const double> v, std::span<double> out) const;
  void grad_v(double t, std::span<const double> q, std::span<const double> v, std::span<double> out) const;

  bool has_analytic_grad_q() const { return grad_q_.has_value(); }
  bool has_analytic_grad_v() const { return grad_v_.has_value(); }
  explicit operator bool() const { return static_cast<bool>(value_); }

  /// sum_i weights[i] * fields[i]; gradients stay analytic when every term has them.
  static ScalarField3 linear_combination(std::vector<std::pair<double, ScalarField3>> terms);

  static ScalarField3 zero();

 private:
  Value value_;
  std::optional<Gradient> grad_q_;
  std::optional<Gradient> grad_v_;
};

double fd_step(double x);

struct ProbeBox {
  double t_lo = 0.0;
  double t_hi = 1.0;
  double lo = -1.0;  ///< each q and v component drawn from [lo, hi]
  double hi = 1.0;
};

/// Largest mismatch between analytic and finite-difference partials over
/// random probes (fixed seed). Fields without analytic partials report 0.
double partials_mismatch(const ScalarField3& field, std::size_t q_dim, std::size_t v_dim, ProbeBox box,
                         std::size_t probes = 64, std::uint64_t seed = 12345);

}  // namespace fracnoether
