#pragma once

#include <cmath>
#include <sstream>
#include <string>

#include "awr/error.hpp"
#include "awr/pressure.hpp"

namespace awr {

/// Densities at or below this value are treated as vacuum and rejected.
inline constexpr double kRhoMin = 1e-10;
/// Slack allowed when decoding y < rho p(rho) from round-off.
inline constexpr double kNegativeVelocityTolerance = 1e-12;

namespace detail {
inline std::string format_pair(double a, double b) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << a << ", " << b << ")";
  return os.str();
}
}  // namespace detail

/// Traffic state in primitive coordinates: density and velocity.
struct StatePV {
  double rho = 1.0;
  double v = 0.0;

  StatePV() = default;
  StatePV(double rho_, double v_) : rho(rho_), v(v_) {
    if (!(rho > kRhoMin) || !std::isfinite(rho) || !(v >= 0.0) || !std::isfinite(v)) {
      throw Error(Errc::InvalidState,
                  "state needs rho > 1e-10 and v >= 0, got " + detail::format_pair(rho, v));
    }
  }

  friend bool operator==(const StatePV&, const StatePV&) = default;
};

/// Traffic state in conserved coordinates: density and y = rho (v + p(rho)).
struct StateRY {
  double rho = 1.0;
  double y = 1.0;

  StateRY() = default;
  StateRY(double rho_, double y_) : rho(rho_), y(y_) {
    if (!(rho > kRhoMin) || !std::isfinite(rho) || !std::isfinite(y)) {
      throw Error(Errc::InvalidState,
                  "conserved state needs rho > 1e-10, got " + detail::format_pair(rho, y));
    }
  }

  friend bool operator==(const StateRY&, const StateRY&) = default;
};

struct Flux2 {
  double f1 = 0.0;  // rho v
  double f2 = 0.0;  // rho v (v + p(rho))

  friend bool operator==(const Flux2&, const Flux2&) = default;
};

struct Eigenvalues {
  double lambda1;
  double lambda2;
};

struct RiemannInvariants {
  double z;  // v
  double w;  // v + p(rho)
};

template <PressureLaw P>
StateRY to_conserved(const StatePV& s, const P& p) {
  return StateRY(s.rho, s.rho * (s.v + p(s.rho)));
}

template <PressureLaw P>
StatePV to_primitive(const StateRY& s, const P& p) {
  double v = s.y / s.rho - p(s.rho);
  if (v < 0.0) {
    if (v < -kNegativeVelocityTolerance) {
      throw Error(Errc::NegativeVelocity,
                  "y < rho p(rho) for conserved state " + detail::format_pair(s.rho, s.y));
    }
    v = 0.0;
  }
  return StatePV(s.rho, v);
}

template <PressureLaw P>
Flux2 flux(const StatePV& s, const P& p) {
  const double f1 = s.rho * s.v;
  return {f1, f1 * (s.v + p(s.rho))};
}

template <PressureLaw P>
Eigenvalues eigenvalues(const StatePV& s, const P& p) {
  return {s.v - s.rho * p.derivative(s.rho), s.v};
}

template <PressureLaw P>
double lambda1(const StatePV& s, const P& p) {
  return s.v - s.rho * p.derivative(s.rho);
}

/// Velocity on the 1-Lax curve through s0 at density rho. May be negative;
/// callers check admissibility.
template <PressureLaw P>
double lax1_velocity(double rho, const StatePV& s0, const P& p) {
  return s0.v + p(s0.rho) - p(rho);
}

/// The 2-Lax curve is a line of constant velocity.
inline double lax2_velocity(double /*rho*/, const StatePV& s0) { return s0.v; }

template <PressureLaw P>
RiemannInvariants riemann_invariants(const StatePV& s, const P& p) {
  return {s.v, s.v + p(s.rho)};
}

template <PressureLaw P>
double w_of(const StatePV& s, const P& p) {
  return s.v + p(s.rho);
}

}  // namespace awr
