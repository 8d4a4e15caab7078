#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "awr/error.hpp"
#include "awr/model.hpp"
#include "awr/pressure.hpp"
#include "awr/roots.hpp"

namespace awr {

/// Tolerance used when deciding that f1 at x=0 equals q (classical wins ties).
inline constexpr double kConstraintTieTolerance = 1e-12;
/// Tolerance on wave-speed signs of the glued half-fans and on fan invariants.
inline constexpr double kFanTolerance = 1e-10;

enum class WaveKind { Shock1, Rarefaction1, Contact2, NonclassicalStationary };

constexpr std::string_view wave_kind_name(WaveKind kind) {
  switch (kind) {
    case WaveKind::Shock1: return "shock1";
    case WaveKind::Rarefaction1: return "rarefaction1";
    case WaveKind::Contact2: return "contact2";
    case WaveKind::NonclassicalStationary: return "stationary";
  }
  return "unknown";
}

enum class SolverKind { Classical, RS1, RS2 };

constexpr std::string_view solver_kind_name(SolverKind kind) {
  switch (kind) {
    case SolverKind::Classical: return "classical";
    case SolverKind::RS1: return "rs1";
    case SolverKind::RS2: return "rs2";
  }
  return "unknown";
}

struct Wave {
  WaveKind kind;
  StatePV left;
  StatePV right;
  double speed_lo;
  double speed_hi;
};

/// Self-similar solution: waves ordered by speed plus the two data states.
/// `solver` records which construction produced the fan (a constrained solver
/// whose constraint is inactive reports Classical). `delta_f2` is the jump of
/// the second flux component across x=0, nonzero only for RS2.
struct WaveFan {
  std::vector<Wave> waves;
  StatePV left;
  StatePV right;
  SolverKind solver = SolverKind::Classical;
  double delta_f2 = 0.0;

  bool constrained() const noexcept { return solver != SolverKind::Classical; }
};

/// Upper bound q on the density flux at x=0. +inf disables the constraint.
class ConstraintQ {
 public:
  explicit ConstraintQ(double q) : q_(q) {
    if (!(q > 0.0)) throw Error(Errc::InvalidConfig, "constraint q must be positive");
  }
  static ConstraintQ unbounded() { return ConstraintQ(std::numeric_limits<double>::infinity()); }

  double value() const noexcept { return q_; }

 private:
  double q_;
};

/// Which side of a discontinuity sitting exactly on the sampled ray to return.
enum class Trace { Left, Right };

/// Intermediate state of the classical solver: the point of the 1-curve
/// through l with velocity v^r.
template <PressureLaw P>
StatePV intermediate_state(const StatePV& l, const StatePV& r, const P& p) {
  const double w_l = w_of(l, p);
  if (w_l <= r.v + kResidualTolerance) {
    throw Error(Errc::VacuumIntermediate,
                "w of left state does not exceed right velocity; intermediate state is vacuum");
  }
  const double rho_m = invert_pressure(p, w_l - r.v);
  if (!(rho_m > kRhoMin)) {
    throw Error(Errc::VacuumIntermediate, "intermediate density falls below the vacuum cutoff");
  }
  return StatePV(rho_m, r.v);
}

namespace detail {

inline bool nearly_equal_density(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(1.0, std::max(a, b));
}

/// The single 1-wave joining two states on the same 1-curve (none if equal).
template <PressureLaw P>
void push_one_wave(std::vector<Wave>& waves, const StatePV& a, const StatePV& b, const P& p) {
  if (a.rho == b.rho) return;
  if (b.rho > a.rho) {
    const double speed = (b.rho * b.v - a.rho * a.v) / (b.rho - a.rho);
    waves.push_back({WaveKind::Shock1, a, b, speed, speed});
  } else {
    waves.push_back({WaveKind::Rarefaction1, a, b, lambda1(a, p), lambda1(b, p)});
  }
}

}  // namespace detail

template <PressureLaw P>
WaveFan solve_classical(const StatePV& l, const StatePV& r, const P& p) {
  WaveFan fan{{}, l, r, SolverKind::Classical, 0.0};
  if (l == r) return fan;
  StatePV m = intermediate_state(l, r, p);
  // Snap round-off-sized waves away so equal-invariant data produce clean fans.
  if (detail::nearly_equal_density(m.rho, r.rho)) {
    m = r;
  } else if (detail::nearly_equal_density(m.rho, l.rho)) {
    m = StatePV(l.rho, r.v);
  }
  detail::push_one_wave(fan.waves, l, m, p);
  if (!(m == r)) fan.waves.push_back({WaveKind::Contact2, m, r, r.v, r.v});
  return fan;
}

/// Evaluates the fan on the ray x/t = xi. A ray lying exactly on a
/// discontinuity returns the state on `side` of it.
template <PressureLaw P>
StatePV sample(const WaveFan& fan, double xi, const P& p, Trace side = Trace::Right) {
  const bool right = side == Trace::Right;
  for (const Wave& wave : fan.waves) {
    if (right ? xi < wave.speed_lo : xi <= wave.speed_lo) return wave.left;
    if (wave.kind != WaveKind::Rarefaction1) continue;
    if (xi > wave.speed_hi || (right && xi == wave.speed_hi)) continue;
    if (xi == wave.speed_hi) return wave.right;
    // Inside the fan lambda1(rho, w - p(rho)) = xi, decreasing in rho.
    const double w0 = w_of(wave.left, p);
    const auto g = [&](double rho) { return w0 - p(rho) - rho * p.derivative(rho) - xi; };
    const double rho = bisect(g, wave.right.rho, wave.left.rho);
    return StatePV(rho, std::max(0.0, w0 - p(rho)));
  }
  return fan.right;
}

/// Densities where the 1-curve through l carries flux exactly q.
/// `rho_check1 == rho_hat` encodes the tangent double root.
struct I1Roots {
  double rho_check1;
  double rho_hat;
};

template <PressureLaw P>
std::optional<I1Roots> i1_roots(const StatePV& l, ConstraintQ constraint, const P& p) {
  const double q = constraint.value();
  if (!std::isfinite(q)) return std::nullopt;
  const double w = w_of(l, p);
  const double rho_max = invert_pressure(p, w);
  const auto slope = [&](double rho) { return p(rho) + rho * p.derivative(rho) - w; };
  const double rho_star = bisect(slope, 0.0, rho_max);
  const auto g = [&](double rho) { return rho * (w - p(rho)) - q; };
  const double g_star = g(rho_star);
  if (g_star < -kResidualTolerance) return std::nullopt;
  if (g_star <= kResidualTolerance) return I1Roots{rho_star, rho_star};
  return I1Roots{bisect(g, 0.0, rho_star), bisect(g, rho_star, rho_max)};
}

template <PressureLaw P>
StatePV check2_state(const StatePV& r, ConstraintQ constraint, const P& /*p*/) {
  if (r.v <= kResidualTolerance) {
    throw Error(Errc::ZeroRightVelocity,
                "right velocity is zero; the 2-curve through the right state carries no flux");
  }
  return StatePV(constraint.value() / r.v, r.v);
}

template <PressureLaw P>
Flux2 flux_at_zero(const WaveFan& fan, const P& p) {
  for (const Wave& wave : fan.waves) {
    if (wave.speed_lo != 0.0 || wave.speed_hi != 0.0) continue;
    const Flux2 a = flux(wave.left, p);
    const Flux2 b = flux(wave.right, p);
    const bool f2_must_match = wave.kind != WaveKind::NonclassicalStationary ||
                               fan.solver == SolverKind::RS1;
    if (std::abs(a.f1 - b.f1) > kFanTolerance ||
        (f2_must_match && std::abs(a.f2 - b.f2) > kFanTolerance)) {
      throw Error(Errc::AssertionFailure, "flux jumps across a stationary wave at x=0");
    }
  }
  return flux(sample(fan, 0.0, p, Trace::Right), p);
}

namespace detail {

struct ConstrainedTraces {
  StatePV hat;
  StatePV check1;
};

/// Returns the left trace (rho_hat, v_hat) and RS1's right trace when the
/// classical fan violates the constraint; nullopt when classical applies.
template <PressureLaw P>
std::optional<ConstrainedTraces> active_traces(const StatePV& l, const WaveFan& classical,
                                               ConstraintQ constraint, const P& p) {
  const double q = constraint.value();
  if (flux_at_zero(classical, p).f1 <= q + kConstraintTieTolerance) return std::nullopt;
  const auto roots = i1_roots(l, constraint, p);
  if (!roots) {
    throw Error(Errc::AssertionFailure,
                "constraint violated by classical fan but the flux level q is unreachable on the "
                "1-curve of the left state");
  }
  if (roots->rho_check1 == roots->rho_hat) return std::nullopt;
  return ConstrainedTraces{StatePV(roots->rho_hat, q / roots->rho_hat),
                           StatePV(roots->rho_check1, q / roots->rho_check1)};
}

/// Waves of a half-fan glued to x<0 (sign=-1) or x>0 (sign=+1).
inline void append_half(std::vector<Wave>& out, const std::vector<Wave>& half, int sign) {
  for (Wave wave : half) {
    const double lo = sign < 0 ? wave.speed_hi : -wave.speed_lo;
    if (lo > kFanTolerance) {
      throw Error(Errc::AssertionFailure,
                  std::string("glued half-fan has a ") + std::string(wave_kind_name(wave.kind)) +
                      " on the wrong side of x=0");
    }
    if (sign < 0) {
      wave.speed_lo = std::min(wave.speed_lo, 0.0);
      wave.speed_hi = std::min(wave.speed_hi, 0.0);
    } else {
      wave.speed_lo = std::max(wave.speed_lo, 0.0);
      wave.speed_hi = std::max(wave.speed_hi, 0.0);
    }
    out.push_back(wave);
  }
}

template <PressureLaw P>
WaveFan glue(const StatePV& l, const StatePV& r, const StatePV& hat, const StatePV& check,
             SolverKind solver, const P& p) {
  WaveFan fan{{}, l, r, solver, 0.0};
  std::vector<Wave> left_half;
  push_one_wave(left_half, l, hat, p);
  append_half(fan.waves, left_half, -1);
  fan.waves.push_back({WaveKind::NonclassicalStationary, hat, check, 0.0, 0.0});
  append_half(fan.waves, solve_classical(check, r, p).waves, +1);
  fan.delta_f2 = flux(check, p).f2 - flux(hat, p).f2;
  return fan;
}

}  // namespace detail

/// Constrained solver conserving both rho and y at x=0.
template <PressureLaw P>
WaveFan solve_rs1(const StatePV& l, const StatePV& r, ConstraintQ constraint, const P& p) {
  WaveFan classical = solve_classical(l, r, p);
  const auto traces = detail::active_traces(l, classical, constraint, p);
  if (!traces) return classical;
  WaveFan fan = detail::glue(l, r, traces->hat, traces->check1, SolverKind::RS1, p);
  fan.delta_f2 = 0.0;
  return fan;
}

/// Constrained solver conserving only rho at x=0; the right trace sits on the
/// 2-curve of r.
template <PressureLaw P>
WaveFan solve_rs2(const StatePV& l, const StatePV& r, ConstraintQ constraint, const P& p) {
  WaveFan classical = solve_classical(l, r, p);
  const auto traces = detail::active_traces(l, classical, constraint, p);
  if (!traces) return classical;
  return detail::glue(l, r, traces->hat, check2_state(r, constraint, p), SolverKind::RS2, p);
}

template <PressureLaw P>
WaveFan solve(SolverKind kind, const StatePV& l, const StatePV& r, ConstraintQ constraint,
              const P& p) {
  switch (kind) {
    case SolverKind::Classical: return solve_classical(l, r, p);
    case SolverKind::RS1: return solve_rs1(l, r, constraint, p);
    case SolverKind::RS2: return solve_rs2(l, r, constraint, p);
  }
  return solve_classical(l, r, p);
}

/// Checks the structural invariants of a fan; returns a description of the
/// first violation, or nullopt.
template <PressureLaw P>
std::optional<std::string> validate_fan(const WaveFan& fan, const P& p,
                                        double tol = kFanTolerance) {
  const auto fail = [](std::size_t i, const std::string& msg) {
    return std::optional<std::string>("wave " + std::to_string(i) + ": " + msg);
  };
  if (fan.waves.empty()) {
    if (!(fan.left == fan.right)) return std::optional<std::string>("empty fan with distinct data");
    return std::nullopt;
  }
  if (!(fan.waves.front().left == fan.left)) return fail(0, "left state is not the left datum");
  if (!(fan.waves.back().right == fan.right)) {
    return fail(fan.waves.size() - 1, "right state is not the right datum");
  }
  for (std::size_t i = 0; i < fan.waves.size(); ++i) {
    const Wave& wv = fan.waves[i];
    if (i > 0) {
      if (!(fan.waves[i - 1].right == wv.left)) return fail(i, "does not share a state with its neighbour");
      if (fan.waves[i - 1].speed_hi > wv.speed_lo) return fail(i, "speeds out of order");
    }
    const double wl = w_of(wv.left, p);
    const double wr = w_of(wv.right, p);
    switch (wv.kind) {
      case WaveKind::Shock1: {
        if (std::abs(wl - wr) > tol) return fail(i, "1-shock changes w");
        if (!(wv.left.rho < wv.right.rho)) return fail(i, "1-shock violates the entropy condition");
        const double rh = (wv.right.rho * wv.right.v - wv.left.rho * wv.left.v) /
                          (wv.right.rho - wv.left.rho);
        if (wv.speed_lo != wv.speed_hi) return fail(i, "1-shock has a spread of speeds");
        // Glued half-fans clamp round-off-sized speeds of the wrong sign to 0.
        const bool clamped = wv.speed_lo == 0.0 && std::abs(rh) <= tol;
        if (std::abs(wv.speed_lo - rh) > tol * std::max(1.0, std::abs(rh)) && !clamped) {
          return fail(i, "1-shock speed differs from Rankine-Hugoniot");
        }
        break;
      }
      case WaveKind::Rarefaction1:
        if (std::abs(wl - wr) > tol) return fail(i, "1-rarefaction changes w");
        if (!(wv.left.rho > wv.right.rho)) return fail(i, "1-rarefaction must decrease density");
        if (!(wv.speed_lo < wv.speed_hi)) return fail(i, "1-rarefaction speeds not increasing");
        break;
      case WaveKind::Contact2:
        if (std::abs(wv.left.v - wv.right.v) > tol || std::abs(wv.speed_lo - wv.right.v) > tol ||
            wv.speed_lo != wv.speed_hi) {
          return fail(i, "2-contact does not travel with the common velocity");
        }
        break;
      case WaveKind::NonclassicalStationary: {
        if (wv.speed_lo != 0.0 || wv.speed_hi != 0.0) return fail(i, "stationary jump moves");
        const double f1l = wv.left.rho * wv.left.v;
        const double f1r = wv.right.rho * wv.right.v;
        if (std::abs(f1l - f1r) > tol) return fail(i, "stationary jump does not conserve rho");
        if (fan.solver == SolverKind::RS1) {
          if (std::abs(wl - wr) > tol) return fail(i, "RS1 stationary jump changes w");
          if (!(wv.left.rho > wv.right.rho)) return fail(i, "RS1 stationary jump must drop density");
        }
        break;
      }
    }
  }
  return std::nullopt;
}

}  // namespace awr
