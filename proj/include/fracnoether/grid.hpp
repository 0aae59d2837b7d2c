#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace fracnoether {

/// Order of a fractional operator, alpha > 0.
class FracOrder {
 public:
  explicit FracOrder(double alpha);

  double alpha() const { return alpha_; }
  /// Smallest integer n with n - 1 <= alpha < n.
  int n() const;
  bool is_integer() const { return alpha_ == std::floor(alpha_); }

 private:
  double alpha_;
};

/// Uniform mesh t_i = a + i*h, i = 0..m, on [a, b].
class Grid {
 public:
  Grid(double a, double b, std::size_t m);

  double a() const { return a_; }
  double b() const { return b_; }
  std::size_t m() const { return m_; }
  std::size_t size() const { return m_ + 1; }
  double h() const { return h_; }
  double node(std::size_t i) const;
  std::vector<double> nodes() const;

  /// Grids are equal when they describe the same node set bit-for-bit.
  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  double a_;
  double b_;
  std::size_t m_;
  double h_;
};

/// Values of an R^dim-valued function at the nodes of a grid, stored node-major.
///
/// NaN entries are reserved for singular-boundary markers produced by the
/// derivative operators; `checked` rejects them for user-supplied data.
class SampledFunction {
 public:
  SampledFunction(Grid grid, std::size_t dim);
  SampledFunction(Grid grid, std::size_t dim, std::vector<double> values);

  /// Validating factory: length must be (m+1)*dim and all entries finite.
  static SampledFunction checked(Grid grid, std::size_t dim, std::vector<double> values);
  static SampledFunction scalar(Grid grid, std::vector<double> values);

  template <class Fn>
  static SampledFunction from_function(const Grid& grid, Fn&& fn) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) v[i] = fn(grid.node(i));
    return SampledFunction(grid, 1, std::move(v));
  }

  const Grid& grid() const { return grid_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return grid_.size(); }

  double& operator()(std::size_t node, std::size_t comp = 0) { return values_[node * dim_ + comp]; }
  double operator()(std::size_t node, std::size_t comp = 0) const { return values_[node * dim_ + comp]; }

  std::span<const double> at(std::size_t node) const { return {values_.data() + node * dim_, dim_}; }
  std::span<double> at(std::size_t node) { return {values_.data() + node * dim_, dim_}; }

  std::vector<double> component(std::size_t comp) const;
  void set_component(std::size_t comp, std::span<const double> column);

  const std::vector<double>& values() const { return values_; }
  bool is_marked(std::size_t node) const;

  SampledFunction& operator+=(const SampledFunction& other);
  SampledFunction& operator*=(double s);

 private:
  Grid grid_;
  std::size_t dim_;
  std::vector<double> values_;
};

SampledFunction operator+(SampledFunction lhs, const SampledFunction& rhs);
SampledFunction operator*(double s, SampledFunction f);

/// Replaces NaN markers at t_0 and t_m by linear extrapolation from the two
/// nearest nodes (2 f_1 - f_2, resp. 2 f_{m-1} - f_{m-2}).
SampledFunction fill_singular_endpoints(SampledFunction f);

/// f evaluated at the reflected nodes: g(t_i) = f(t_{m-i}).
SampledFunction reflect(const SampledFunction& f);

void require_same_grid(const SampledFunction& f, const SampledFunction& g, const char* what);

}  // namespace fracnoether
