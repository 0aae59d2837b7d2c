#include "fracnoether/fields.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>

#include "fracnoether/errors.hpp"

namespace fracnoether {
namespace {

template <class Eval>
void central_gradient(std::span<const double> x, std::span<double> out, Eval&& eval) {
  if (out.size() != x.size()) throw DimensionMismatch("gradient output has wrong length");
  std::vector<double> shifted(x.begin(), x.end());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double step = fd_step(x[i]);
    shifted[i] = x[i] + step;
    const double plus = eval(std::span<const double>(shifted));
    shifted[i] = x[i] - step;
    const double minus = eval(std::span<const double>(shifted));
    shifted[i] = x[i];
    out[i] = (plus - minus) / (2.0 * step);
  }
}

}  // namespace

double fd_step(double x) { return 1e-6 * (1.0 + std::abs(x)); }

ScalarField3::ScalarField3(Value value, std::optional<Gradient> grad_q, std::optional<Gradient> grad_v)
    : value_(std::move(value)), grad_q_(std::move(grad_q)), grad_v_(std::move(grad_v)) {}

double ScalarField3::operator()(double t, std::span<const double> q, std::span<const double> v) const {
  return value_(t, q, v);
}

void ScalarField3::grad_q(double t, std::span<const double> q, std::span<const double> v,
                          std::span<double> out) const {
  if (grad_q_) {
    (*grad_q_)(t, q, v, out);
    return;
  }
  central_gradient(q, out, [&](std::span<const double> qs) { return value_(t, qs, v); });
}

void ScalarField3::grad_v(double t, std::span<const double> q, std::span<const double> v,
                          std::span<double> out) const {
  if (grad_v_) {
    (*grad_v_)(t, q, v, out);
    return;
  }
  central_gradient(v, out, [&](std::span<const double> vs) { return value_(t, q, vs); });
}

ScalarField3 ScalarField3::linear_combination(std::vector<std::pair<double, ScalarField3>> terms) {
  const bool analytic_q = std::all_of(terms.begin(), terms.end(), [](const auto& p) { return p.second.grad_q_.has_value(); });
  const bool analytic_v = std::all_of(terms.begin(), terms.end(), [](const auto& p) { return p.second.grad_v_.has_value(); });
  auto shared = std::make_shared<std::vector<std::pair<double, ScalarField3>>>(std::move(terms));

  Value value = [shared](double t, std::span<const double> q, std::span<const double> v) {
    double sum = 0.0;
    for (const auto& [w, f] : *shared) sum += w * f(t, q, v);
    return sum;
  };
  auto make_gradient = [shared](bool in_q) -> Gradient {
    return [shared, in_q](double t, std::span<const double> q, std::span<const double> v, std::span<double> out) {
      std::fill(out.begin(), out.end(), 0.0);
      std::vector<double> part(out.size());
      for (const auto& [w, f] : *shared) {
        if (in_q) {
          f.grad_q(t, q, v, part);
        } else {
          f.grad_v(t, q, v, part);
        }
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += w * part[i];
      }
    };
  };
  std::optional<Gradient> gq;
  std::optional<Gradient> gv;
  if (analytic_q) gq = make_gradient(true);
  if (analytic_v) gv = make_gradient(false);
  return ScalarField3(std::move(value), std::move(gq), std::move(gv));
}

ScalarField3 ScalarField3::zero() {
  auto zero_grad = [](double, std::span<const double>, std::span<const double>, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
  };
  return ScalarField3([](double, std::span<const double>, std::span<const double>) { return 0.0; }, zero_grad,
                      zero_grad);
}

double partials_mismatch(const ScalarField3& field, std::size_t q_dim, std::size_t v_dim, ProbeBox box,
                         std::size_t probes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> t_dist(box.t_lo, box.t_hi);
  std::uniform_real_distribution<double> x_dist(box.lo, box.hi);
  std::vector<double> q(q_dim), v(v_dim), analytic, numeric;
  double worst = 0.0;
  for (std::size_t p = 0; p < probes; ++p) {
    const double t = t_dist(rng);
    for (double& x : q) x = x_dist(rng);
    for (double& x : v) x = x_dist(rng);
    if (field.has_analytic_grad_q()) {
      analytic.assign(q_dim, 0.0);
      numeric.assign(q_dim, 0.0);
      field.grad_q(t, q, v, analytic);
      central_gradient(q, numeric, [&](std::span<const double> qs) { return field(t, qs, v); });
      for (std::size_t i = 0; i < q_dim; ++i) worst = std::max(worst, std::abs(analytic[i] - numeric[i]));
    }
    if (field.has_analytic_grad_v()) {
      analytic.assign(v_dim, 0.0);
      numeric.assign(v_dim, 0.0);
      field.grad_v(t, q, v, analytic);
      central_gradient(v, numeric, [&](std::span<const double> vs) { return field(t, q, vs); });
      for (std::size_t i = 0; i < v_dim; ++i) worst = std::max(worst, std::abs(analytic[i] - numeric[i]));
    }
  }
  return worst;
}

}  // namespace fracnoether
