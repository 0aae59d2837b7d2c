#include "fracnoether/gamma.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <numbers>
#include <string>

#include "fracnoether/errors.hpp"

namespace fracnoether {
namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoefficients = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

std::atomic<int> g_fault_depth{0};

double lanczos(double x) {
  // Gamma(x) for x >= 0.5, written as Gamma(z + 1) with z = x - 1.
  const double z = x - 1.0;
  double sum = kLanczosCoefficients[0];
  for (std::size_t i = 1; i < kLanczosCoefficients.size(); ++i) {
    double c = kLanczosCoefficients[i];
    if (i == 1 && g_fault_depth.load(std::memory_order_relaxed) > 0) c *= 1.01;
    sum += c / (z + static_cast<double>(i));
  }
  const double t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * sum;
}

}  // namespace

double gamma(double x) {
  if (std::isnan(x)) return x;
  if (x <= 0.0 && x == std::floor(x)) {
    throw PoleError("gamma: pole at non-positive integer " + std::to_string(x));
  }
  if (x < 0.5) {
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos(1.0 - x));
  }
  return lanczos(x);
}

namespace testing {

ScopedGammaFault::ScopedGammaFault() { g_fault_depth.fetch_add(1); }
ScopedGammaFault::~ScopedGammaFault() { g_fault_depth.fetch_sub(1); }

}  // namespace testing
}  // namespace fracnoether
