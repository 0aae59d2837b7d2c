#include "fracnoether/transcription.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "fracnoether/errors.hpp"
#include "fracnoether/gamma.hpp"
#include "fracnoether/kernels.hpp"

namespace fracnoether::transcription {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Transcription::Operator {
  bool classical = false;
  double h = 0.0;
  Eigen::MatrixXd dense;

  void apply(const double* in, double* out, std::size_t size, std::size_t dim, bool transpose) const {
    Eigen::Map<const RowMajor> f(in, static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(dim));
    Eigen::Map<RowMajor> r(out, static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(dim));
    if (!classical) {
      if (transpose) {
        r.noalias() = dense.transpose() * f;
      } else {
        r.noalias() = dense * f;
      }
      return;
    }
    const Eigen::Index m = static_cast<Eigen::Index>(size) - 1;
    if (!transpose) {
      r.row(0) = (f.row(1) - f.row(0)) / h;
      for (Eigen::Index i = 1; i < m; ++i) r.row(i) = (f.row(i + 1) - f.row(i - 1)) / (2.0 * h);
      r.row(m) = (f.row(m) - f.row(m - 1)) / h;
      return;
    }
    r.setZero();
    r.row(0) -= f.row(0) / h;
    r.row(1) += f.row(0) / h;
    for (Eigen::Index i = 1; i < m; ++i) {
      r.row(i + 1) += f.row(i) / (2.0 * h);
      r.row(i - 1) -= f.row(i) / (2.0 * h);
    }
    r.row(m) += f.row(m) / h;
    r.row(m - 1) -= f.row(m) / h;
  }
};

namespace {

Eigen::MatrixXd l1_matrix(const Grid& grid, double alpha) {
  const std::size_t m = grid.m();
  const double h = grid.h();
  const std::vector<double> b = kernels::l1_weights(alpha, m);
  const double c = std::pow(h, -alpha) / gamma(2.0 - alpha);
  const double singular = 1.0 / gamma(1.0 - alpha);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m + 1), static_cast<Eigen::Index>(m + 1));
  for (std::size_t n = 1; n <= m; ++n) {
    const auto row = static_cast<Eigen::Index>(n);
    d(row, 0) = std::pow(static_cast<double>(n) * h, -alpha) * singular - c * b[n - 1];
    for (std::size_t j = 1; j < n; ++j) d(row, static_cast<Eigen::Index>(j)) = c * (b[n - j] - b[n - 1 - j]);
    d(row, row) = c * b[0];
  }
  d.row(0) = 2.0 * d.row(1) - d.row(2);
  return d;
}

}  // namespace

Transcription::Transcription(problems::VariationalProblem problem)
    : problem_(std::move(problem)), op_(std::make_unique<Operator>()) {
  const Grid& grid = problem_.grid();
  if (grid.m() < 3) throw PreconditionError("transcription needs at least 3 intervals");
  op_->h = grid.h();
  op_->classical = problem_.order().alpha() == 1.0;
  if (!op_->classical) op_->dense = l1_matrix(grid, problem_.order().alpha());
}

Transcription::~Transcription() = default;
Transcription::Transcription(Transcription&&) noexcept = default;
Transcription& Transcription::operator=(Transcription&&) noexcept = default;

std::size_t Transcription::unknowns() const { return (problem_.grid().m() - 1) * problem_.dim() + problem_.k(); }

SampledFunction Transcription::trajectory(const std::vector<double>& x) const {
  if (x.size() != unknowns()) throw DimensionMismatch("unknown vector has the wrong length");
  const std::size_t n = problem_.dim();
  const std::size_t m = problem_.grid().m();
  SampledFunction q(problem_.grid(), n);
  for (std::size_t c = 0; c < n; ++c) {
    q(0, c) = problem_.boundary_a()[c];
    q(m, c) = problem_.boundary_b()[c];
  }
  for (std::size_t i = 1; i < m; ++i) {
    for (std::size_t c = 0; c < n; ++c) q(i, c) = x[(i - 1) * n + c];
  }
  return q;
}

problems::Multipliers Transcription::multipliers(const std::vector<double>& x) const {
  if (x.size() != unknowns()) throw DimensionMismatch("unknown vector has the wrong length");
  const std::size_t offset = (problem_.grid().m() - 1) * problem_.dim();
  return {std::vector<double>(x.begin() + static_cast<std::ptrdiff_t>(offset), x.end())};
}

std::vector<double> Transcription::pack(const SampledFunction& q, const problems::Multipliers& lambda) const {
  if (!(q.grid() == problem_.grid()) || q.dim() != problem_.dim()) {
    throw GridMismatch("trajectory does not match the transcription grid");
  }
  if (lambda.lambda.size() != problem_.k()) throw DimensionMismatch("wrong number of multipliers");
  const std::size_t n = problem_.dim();
  const std::size_t m = problem_.grid().m();
  std::vector<double> x;
  x.reserve(unknowns());
  x.insert(x.end(), q.values().begin() + static_cast<std::ptrdiff_t>(n),
           q.values().begin() + static_cast<std::ptrdiff_t>(m * n));
  x.insert(x.end(), lambda.lambda.begin(), lambda.lambda.end());
  return x;
}

SampledFunction Transcription::velocity(const SampledFunction& q) const {
  std::vector<double> out(q.values().size());
  op_->apply(q.values().data(), out.data(), q.size(), q.dim(), false);
  return SampledFunction(q.grid(), q.dim(), std::move(out));
}

SampledFunction Transcription::velocity_adjoint(const SampledFunction& f) const {
  std::vector<double> out(f.values().size());
  op_->apply(f.values().data(), out.data(), f.size(), f.dim(), true);
  return SampledFunction(f.grid(), f.dim(), std::move(out));
}

std::vector<double> Transcription::residual(const std::vector<double>& x) const {
  const Grid& grid = problem_.grid();
  const std::size_t n = problem_.dim();
  const std::size_t m = grid.m();
  const SampledFunction q = trajectory(x);
  const problems::Multipliers lambda = multipliers(x);
  const ScalarField3 f = problems::augmented_lagrangian(problem_, lambda);
  const std::vector<double> w = problems::trapezoid_weights(grid);
  const SampledFunction v = velocity(q);

  SampledFunction gq(grid, n);
  SampledFunction weighted_gv(grid, n);
  std::vector<double> integrals(problem_.k(), 0.0);
  for (std::size_t i = 0; i <= m; ++i) {
    const double t = grid.node(i);
    f.grad_v(t, q.at(i), v.at(i), weighted_gv.at(i));
    for (double& g : weighted_gv.at(i)) g *= w[i];
    if (i > 0 && i < m) f.grad_q(t, q.at(i), v.at(i), gq.at(i));
    for (std::size_t j = 0; j < problem_.k(); ++j) integrals[j] += w[i] * problem_.constraints()[j](t, q.at(i), v.at(i));
  }
  const SampledFunction adjoint = velocity_adjoint(weighted_gv);

  std::vector<double> r(unknowns());
  for (std::size_t i = 1; i < m; ++i) {
    for (std::size_t c = 0; c < n; ++c) r[(i - 1) * n + c] = gq(i, c) + adjoint(i, c) / w[i];
  }
  const std::size_t offset = (m - 1) * n;
  for (std::size_t j = 0; j < problem_.k(); ++j) r[offset + j] = integrals[j] - problem_.constraint_levels()[j];
  return r;
}

}  // namespace fracnoether::transcription
