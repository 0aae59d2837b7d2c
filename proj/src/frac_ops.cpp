#include "fracnoether/frac_ops.hpp"

#include <cmath>
#include <string>

#include "fracnoether/errors.hpp"
#include "fracnoether/gamma.hpp"
#include "fracnoether/kernels.hpp"

namespace fracnoether {
namespace {

using Kernel = void (*)(std::span<const double>, double, double, std::span<double>);

struct KernelPair {
  Kernel serial;
  Kernel parallel;
};

SampledFunction apply_componentwise(const SampledFunction& f, double alpha, KernelPair kernel,
                                    Execution execution) {
  SampledFunction out(f.grid(), f.dim());
  std::vector<double> result(f.size());
  for (std::size_t c = 0; c < f.dim(); ++c) {
    const std::vector<double> column = f.component(c);
    Kernel k = execution == Execution::kSerial ? kernel.serial : kernel.parallel;
    k(column, f.grid().h(), alpha, result);
    out.set_component(c, result);
  }
  return out;
}

void check_derivative_order(FracOrder order) {
  const double alpha = order.alpha();
  if (alpha > 1.0) {
    throw UnsupportedOrder("RL derivative of order " + std::to_string(alpha) +
                           " is not supported (0 < alpha <= 1)");
  }
}

// 1 / Gamma(x), zero at the poles.
double reciprocal_gamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) return 0.0;
  return 1.0 / gamma(x);
}

}  // namespace

SampledFunction left_rl_integral(const SampledFunction& f, FracOrder order, KernelOptions options) {
  return apply_componentwise(f, order.alpha(), {kernels::serial::integral_left, kernels::parallel::integral_left},
                             options.execution);
}

SampledFunction right_rl_integral(const SampledFunction& f, FracOrder order, KernelOptions options) {
  return apply_componentwise(f, order.alpha(),
                             {kernels::serial::integral_right, kernels::parallel::integral_right},
                             options.execution);
}

SampledFunction left_rl_derivative(const SampledFunction& f, FracOrder order, KernelOptions options) {
  check_derivative_order(order);
  if (order.alpha() == 1.0) return classical_derivative(f);
  const KernelPair kernel = options.scheme == Scheme::kL1
                                ? KernelPair{kernels::serial::l1_left, kernels::parallel::l1_left}
                                : KernelPair{kernels::serial::gl_left, kernels::parallel::gl_left};
  return apply_componentwise(f, order.alpha(), kernel, options.execution);
}

SampledFunction right_rl_derivative(const SampledFunction& f, FracOrder order, KernelOptions options) {
  check_derivative_order(order);
  if (order.alpha() == 1.0) return -1.0 * classical_derivative(f);
  const KernelPair kernel = options.scheme == Scheme::kL1
                                ? KernelPair{kernels::serial::l1_right, kernels::parallel::l1_right}
                                : KernelPair{kernels::serial::gl_right, kernels::parallel::gl_right};
  return apply_componentwise(f, order.alpha(), kernel, options.execution);
}

SampledFunction classical_derivative(const SampledFunction& f) {
  const std::size_t m = f.grid().m();
  const double h = f.grid().h();
  SampledFunction out(f.grid(), f.dim());
  for (std::size_t c = 0; c < f.dim(); ++c) {
    out(0, c) = (f(1, c) - f(0, c)) / h;
    for (std::size_t i = 1; i < m; ++i) out(i, c) = (f(i + 1, c) - f(i - 1, c)) / (2.0 * h);
    out(m, c) = (f(m, c) - f(m - 1, c)) / h;
  }
  return out;
}

ClosedFormAtom ClosedFormAtom::constant(double c, double base) {
  return {Kind::kConstant, c, 0.0, base};
}

ClosedFormAtom ClosedFormAtom::power(double coefficient, double exponent, double base) {
  if (!(exponent > -1.0)) throw PreconditionError("power atom needs exponent > -1");
  return {Kind::kPowerShifted, coefficient, exponent, base};
}

double ClosedFormAtom::value(double t) const {
  if (kind == Kind::kConstant) return coefficient;
  return coefficient * std::pow(std::abs(t - base), exponent);
}

namespace {

// c * Gamma(v+1)/Gamma(v-alpha+1) * s^(v-alpha) with s the distance to the base point.
double power_rule(const ClosedFormAtom& atom, FracOrder order, double s) {
  const double alpha = order.alpha();
  const double v = atom.kind == ClosedFormAtom::Kind::kConstant ? 0.0 : atom.exponent;
  const double shifted = v - alpha + 1.0;
  const bool pole = shifted <= 0.0 && shifted == std::floor(shifted);
  if (pole && !order.is_integer()) {
    throw PoleError("closed-form derivative: Gamma(" + std::to_string(shifted) +
                    ") is a pole for exponent " + std::to_string(v));
  }
  if (s < 0.0) throw PreconditionError("closed-form derivative evaluated outside its interval");
  if (s == 0.0 && v - alpha < 0.0 && !pole) {
    throw PreconditionError("closed-form derivative is singular at the base point");
  }
  if (pole) return 0.0;  // integer order: classical derivative of a low-degree monomial
  return atom.coefficient * gamma(v + 1.0) * reciprocal_gamma(shifted) * std::pow(s, v - alpha);
}

}  // namespace

double closed_form_left_derivative(const ClosedFormAtom& atom, FracOrder order, double t) {
  return power_rule(atom, order, t - atom.base);
}

double closed_form_right_derivative(const ClosedFormAtom& atom, FracOrder order, double t) {
  return power_rule(atom, order, atom.base - t);
}

double closed_form_left_integral(const ClosedFormAtom& atom, FracOrder order, double t) {
  const double alpha = order.alpha();
  const double v = atom.kind == ClosedFormAtom::Kind::kConstant ? 0.0 : atom.exponent;
  const double s = t - atom.base;
  if (s < 0.0) throw PreconditionError("closed-form integral evaluated outside its interval");
  return atom.coefficient * gamma(v + 1.0) / gamma(v + alpha + 1.0) * std::pow(s, v + alpha);
}

}  // namespace fracnoether
