#include "fracnoether/grid.hpp"

#include <string>

#include "fracnoether/errors.hpp"

namespace fracnoether {

FracOrder::FracOrder(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw PreconditionError("fractional order must be finite and > 0, got " + std::to_string(alpha));
  }
}

int FracOrder::n() const { return static_cast<int>(std::floor(alpha_)) + 1; }

Grid::Grid(double a, double b, std::size_t m) : a_(a), b_(b), m_(m), h_((b - a) / static_cast<double>(m)) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw PreconditionError("grid requires finite a < b");
  }
  if (m < 2) throw PreconditionError("grid requires at least 2 intervals");
}

double Grid::node(std::size_t i) const {
  if (i == m_) return b_;
  return a_ + static_cast<double>(i) * h_;
}

std::vector<double> Grid::nodes() const {
  std::vector<double> t(size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = node(i);
  return t;
}

SampledFunction::SampledFunction(Grid grid, std::size_t dim)
    : grid_(grid), dim_(dim), values_(grid.size() * dim, 0.0) {
  if (dim == 0) throw DimensionMismatch("sampled function needs dim >= 1");
}

SampledFunction::SampledFunction(Grid grid, std::size_t dim, std::vector<double> values)
    : grid_(grid), dim_(dim), values_(std::move(values)) {
  if (dim == 0) throw DimensionMismatch("sampled function needs dim >= 1");
  if (values_.size() != grid_.size() * dim_) {
    throw DimensionMismatch("sampled function expects " + std::to_string(grid_.size() * dim_) +
                            " values, got " + std::to_string(values_.size()));
  }
}

SampledFunction SampledFunction::checked(Grid grid, std::size_t dim, std::vector<double> values) {
  SampledFunction f(grid, dim, std::move(values));
  for (double v : f.values_) {
    if (!std::isfinite(v)) throw PreconditionError("sampled function contains a non-finite value");
  }
  return f;
}

SampledFunction SampledFunction::scalar(Grid grid, std::vector<double> values) {
  return SampledFunction(grid, 1, std::move(values));
}

std::vector<double> SampledFunction::component(std::size_t comp) const {
  std::vector<double> col(size());
  for (std::size_t i = 0; i < col.size(); ++i) col[i] = (*this)(i, comp);
  return col;
}

void SampledFunction::set_component(std::size_t comp, std::span<const double> column) {
  if (column.size() != size()) throw DimensionMismatch("component length does not match grid");
  for (std::size_t i = 0; i < column.size(); ++i) (*this)(i, comp) = column[i];
}

bool SampledFunction::is_marked(std::size_t node) const {
  for (double v : at(node)) {
    if (std::isnan(v)) return true;
  }
  return false;
}

SampledFunction& SampledFunction::operator+=(const SampledFunction& other) {
  require_same_grid(*this, other, "operator+=");
  if (dim_ != other.dim_) throw DimensionMismatch("operator+=: dimension mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

SampledFunction& SampledFunction::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

SampledFunction operator+(SampledFunction lhs, const SampledFunction& rhs) { return lhs += rhs; }
SampledFunction operator*(double s, SampledFunction f) { return f *= s; }

SampledFunction fill_singular_endpoints(SampledFunction f) {
  const std::size_t m = f.grid().m();
  for (std::size_t c = 0; c < f.dim(); ++c) {
    if (std::isnan(f(0, c))) f(0, c) = 2.0 * f(1, c) - f(2, c);
    if (std::isnan(f(m, c))) f(m, c) = 2.0 * f(m - 1, c) - f(m - 2, c);
  }
  return f;
}

SampledFunction reflect(const SampledFunction& f) {
  SampledFunction g(f.grid(), f.dim());
  const std::size_t m = f.grid().m();
  for (std::size_t i = 0; i <= m; ++i) {
    for (std::size_t c = 0; c < f.dim(); ++c) g(i, c) = f(m - i, c);
  }
  return g;
}

void require_same_grid(const SampledFunction& f, const SampledFunction& g, const char* what) {
  if (!(f.grid() == g.grid())) throw GridMismatch(std::string(what) + ": functions live on different grids");
}

}  // namespace fracnoether
