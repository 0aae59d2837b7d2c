#pragma once

// Raw history-sum kernels on uniformly spaced samples.
//
// Each kernel exists twice: `serial` is the straightforward reference, and
// `parallel` splits the output nodes across OpenMP threads. Every output node
// is reduced in the same order in both, so results are bit-identical.
//
// Derivative kernels require 0 < alpha < 1 and write NaN at the singular
// endpoint (out[0] for left operators, out[m] for right ones).

#include <span>
#include <vector>

namespace fracnoether::kernels {

/// b_j = (j+1)^(1-alpha) - j^(1-alpha), j = 0..count-1.
std::vector<double> l1_weights(double alpha, std::size_t count);

/// Grunwald-Letnikov coefficients (-1)^k binom(alpha, k), k = 0..count-1.
std::vector<double> gl_weights(double alpha, std::size_t count);

/// Product-trapezoid weights c_k = (k+1)^(p) - 2 k^(p) + (k-1)^(p), p = alpha + 1,
/// k = 0..count-1 (c_0 unused).
std::vector<double> trapezoid_weights(double alpha, std::size_t count);

namespace serial {

void l1_left(std::span<const double> f, double h, double alpha, std::span<double> out);
void l1_right(std::span<const double> f, double h, double alpha, std::span<double> out);
void gl_left(std::span<const double> f, double h, double alpha, std::span<double> out);
void gl_right(std::span<const double> f, double h, double alpha, std::span<double> out);
void integral_left(std::span<const double> f, double h, double alpha, std::span<double> out);
void integral_right(std::span<const double> f, double h, double alpha, std::span<double> out);
/// L1 derivative of the piecewise-linear interpolant on strictly increasing nodes t.
void l1_left_nonuniform(std::span<const double> t, std::span<const double> f, double alpha,
                        std::span<double> out);

}  // namespace serial

namespace parallel {

void l1_left(std::span<const double> f, double h, double alpha, std::span<double> out);
void l1_right(std::span<const double> f, double h, double alpha, std::span<double> out);
void gl_left(std::span<const double> f, double h, double alpha, std::span<double> out);
void gl_right(std::span<const double> f, double h, double alpha, std::span<double> out);
void integral_left(std::span<const double> f, double h, double alpha, std::span<double> out);
void integral_right(std::span<const double> f, double h, double alpha, std::span<double> out);
void l1_left_nonuniform(std::span<const double> t, std::span<const double> f, double alpha,
                        std::span<double> out);

}  // namespace parallel
}  // namespace fracnoether::kernels
