#pragma once

#include <cmath>
#include <concepts>
#include <string>

#include "awr/error.hpp"
#include "awr/roots.hpp"

namespace awr {

/// A pressure law p: [0, inf) -> [0, inf) with first and second derivatives.
/// Models are expected to satisfy p(0) = 0, p' > 0 and strict convexity of
/// rho -> rho p(rho); `satisfies_hypotheses` checks this by sampling.
template <class P>
concept PressureLaw = requires(const P& p, double rho) {
  { p(rho) } -> std::convertible_to<double>;
  { p.derivative(rho) } -> std::convertible_to<double>;
  { p.second_derivative(rho) } -> std::convertible_to<double>;
};

/// p(rho) = rho^gamma with gamma >= 1.
class PowerLaw {
 public:
  PowerLaw() = default;

  explicit PowerLaw(double gamma) : gamma_(gamma) {
    if (!(gamma >= 1.0) || !std::isfinite(gamma)) {
      throw Error(Errc::InvalidConfig, "pressure exponent must satisfy gamma >= 1, got " +
                                           std::to_string(gamma));
    }
  }

  double gamma() const noexcept { return gamma_; }

  double operator()(double rho) const {
    if (gamma_ == 1.0) return rho;
    if (gamma_ == 2.0) return rho * rho;
    return std::pow(rho, gamma_);
  }

  double derivative(double rho) const {
    if (gamma_ == 1.0) return 1.0;
    if (gamma_ == 2.0) return 2.0 * rho;
    return gamma_ * std::pow(rho, gamma_ - 1.0);
  }

  double second_derivative(double rho) const {
    if (gamma_ == 1.0) return 0.0;
    if (gamma_ == 2.0) return 2.0;
    return gamma_ * (gamma_ - 1.0) * std::pow(rho, gamma_ - 2.0);
  }

 private:
  double gamma_ = 1.0;
};

/// Solves p(rho) = value for rho >= 0 by bisection (p is strictly increasing).
template <PressureLaw P>
double invert_pressure(const P& p, double value) {
  if (value <= 0.0) return 0.0;
  const auto residual = [&](double rho) { return p(rho) - value; };
  const double hi = grow_until_nonnegative(residual, 1.0);
  return bisect(residual, 0.0, hi);
}

/// Sampled check of the three structural hypotheses on a log-spaced grid of
/// densities in [rho_lo, rho_hi], plus unboundedness at rho_big.
template <PressureLaw P>
bool satisfies_hypotheses(const P& p, double rho_lo = 1e-6, double rho_hi = 1e3,
                          int samples = 2000, double rho_big = 1e8, double bound = 1e3) {
  if (p(0.0) != 0.0) return false;
  const double ratio = std::log(rho_hi / rho_lo) / (samples - 1);
  for (int i = 0; i < samples; ++i) {
    const double rho = rho_lo * std::exp(ratio * i);
    if (!(p.derivative(rho) > 0.0)) return false;
    if (!(2.0 * p.derivative(rho) + rho * p.second_derivative(rho) > 0.0)) return false;
  }
  return p(rho_big) > bound;
}

}  // namespace awr
