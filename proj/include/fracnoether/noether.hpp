#pragma once

// Fractional conservation laws along isoperimetric extremals.
//
// The pair operator
//   D^gamma(f, h) = -h . tD_b^gamma f + f . aD_t^gamma h
// replaces the derivative of a product; for gamma = 1 it is (f h)'. Laws are
// reported as residual fields: a law holds when its residual vanishes on the
// band-excluded interior, which for alpha < 1 does not make any scalar constant.

#include <functional>
#include <span>
#include <vector>

#include "fracnoether/fields.hpp"
#include "fracnoether/grid.hpp"
#include "fracnoether/problems.hpp"
#include "fracnoether/residual.hpp"

namespace fracnoether::noether {

/// Infinitesimal generators of t' = t + eps tau(t, q), q' = q + eps xi(t, q).
struct SymmetryGenerator {
  std::function<double(double t, std::span<const double> q)> tau;
  std::function<void(double t, std::span<const double> q, std::span<double> out)> xi;

  static SymmetryGenerator zero();
  /// tau = c_tau, xi = c_xi (one entry per component).
  static SymmetryGenerator constant(double c_tau, std::vector<double> c_xi);
};

/// tau(t_i, q_i) and xi(t_i, q_i) sampled along a trajectory.
SampledFunction sample_tau(const SymmetryGenerator& gen, const SampledFunction& q);
SampledFunction sample_xi(const SymmetryGenerator& gen, const SampledFunction& q);

/// D^gamma(f, h), summed over components. Interior values only; the endpoints
/// carry NaN markers when gamma < 1.
SampledFunction frac_pair_operator(const SampledFunction& f, const SampledFunction& h, FracOrder order);

/// d_2 F . xi + d_3 F . aD^alpha[xi(t, q(t))]; requires tau == 0 along q.
ResidualReport invariance_necessary_condition(const problems::VariationalProblem& problem,
                                              const problems::Multipliers& mult, const SampledFunction& q,
                                              const SymmetryGenerator& gen, std::size_t band = kDefaultBand);

/// D^alpha[d_3 F, xi]; requires tau == 0 along q.
ResidualReport momentum_law_residual(const problems::VariationalProblem& problem,
                                     const problems::Multipliers& mult, const SampledFunction& q,
                                     const SymmetryGenerator& gen, std::size_t band = kDefaultBand);

/// D^alpha(F - alpha d_3 F . aD^alpha q, tau) + D^alpha(d_3 F, xi).
ResidualReport noether_law_residual(const problems::VariationalProblem& problem,
                                    const problems::Multipliers& mult, const SampledFunction& q,
                                    const SymmetryGenerator& gen, std::size_t band = kDefaultBand);

struct InvarianceOptions {
  double eps_coarse = 1e-4;
  double eps_fine = 5e-5;
  std::size_t band = kDefaultBand;
};

/// First-order invariance of int F dt under the generator. Node i of the
/// report holds the Richardson-combined centered estimate of dI/d eps at
/// eps = 0 for the subinterval [a, t_i]. The transformed trajectory lives on
/// the transformed nodes t_i + eps tau_i; its derivative uses the transformed
/// lower limit. Throws ResamplingError when the time map is not increasing.
ResidualReport invariance_first_order_check(const problems::VariationalProblem& problem,
                                            const problems::Multipliers& mult, const SampledFunction& q,
                                            const SymmetryGenerator& gen, InvarianceOptions options = {});

/// Same check for an arbitrary integrand, e.g. L alone or a single g_j.
ResidualReport first_order_invariance(const ScalarField3& integrand, FracOrder order, const SampledFunction& q,
                                      const SymmetryGenerator& gen, InvarianceOptions options = {});

}  // namespace fracnoether::noether
