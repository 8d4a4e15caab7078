#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "awr/error.hpp"
#include "awr/model.hpp"
#include "awr/pressure.hpp"
#include "awr/random.hpp"
#include "awr/riemann.hpp"
#include "awr/roots.hpp"

namespace awr {

inline constexpr double kContainsTolerance = 1e-10;
inline constexpr double kInvarianceTolerance = 1e-12;

/// The set { v1 <= v <= v2, w1 <= v + p(rho) <= w2 }.
class DomainBox {
 public:
  DomainBox(double v1, double v2, double w1, double w2) : v1_(v1), v2_(v2), w1_(w1), w2_(w2) {
    if (!(0.0 < v1 && v1 < v2 && 0.0 < w1 && w1 < w2 && v2 < w2)) {
      throw Error(Errc::InvalidConfig,
                  "domain box needs 0 < v1 < v2, 0 < w1 < w2 and v2 < w2");
    }
  }

  double v1() const noexcept { return v1_; }
  double v2() const noexcept { return v2_; }
  double w1() const noexcept { return w1_; }
  double w2() const noexcept { return w2_; }

 private:
  double v1_, v2_, w1_, w2_;
};

template <PressureLaw P>
bool contains(const DomainBox& box, const StatePV& s, const P& p,
              double tol = kContainsTolerance) {
  const double w = w_of(s, p);
  return s.v >= box.v1() - tol && s.v <= box.v2() + tol && w >= box.w1() - tol &&
         w <= box.w2() + tol;
}

/// w of the state with velocity v on the level set rho v = q.
template <PressureLaw P>
double h_q(double v, ConstraintQ q, const P& p) {
  return p(q.value() / v) + v;
}

template <PressureLaw P>
double h_q_derivative(double v, ConstraintQ q, const P& p) {
  const double rho = q.value() / v;
  return 1.0 - rho / v * p.derivative(rho);
}

/// The unique minimiser of h_q; h_q' is strictly increasing so bisection on it
/// is bracketed once h_q' changes sign.
template <PressureLaw P>
double vbar(ConstraintQ q, const P& p) {
  const auto dh = [&](double v) { return h_q_derivative(v, q, p); };
  double hi = grow_until_nonnegative(dh, 1.0);
  double lo = hi;
  while (dh(lo) > 0.0 && lo > 1e-300) lo *= 0.5;
  return bisect(dh, lo, hi);
}

template <PressureLaw P>
double min_h_q(const DomainBox& box, ConstraintQ q, const P& p) {
  return h_q(std::clamp(vbar(q, p), box.v1(), box.v2()), q, p);
}

/// Sufficient condition under which the constraint can never bind inside the box.
template <PressureLaw P>
bool is_invariant_unconstrained_bound(const DomainBox& box, ConstraintQ q, const P& p,
                                      double tol = kInvarianceTolerance) {
  if (!std::isfinite(q.value())) return true;
  return min_h_q(box, q, p) >= box.w2() - tol;
}

/// True when some v in [v1, v2] has h_q(v) < w2, the regime in which the
/// invariance characterisations below are exact.
template <PressureLaw P>
bool constraint_can_bind(const DomainBox& box, ConstraintQ q, const P& p,
                         double tol = kInvarianceTolerance) {
  return !is_invariant_unconstrained_bound(box, q, p, tol);
}

template <PressureLaw P>
bool is_invariant_rs1(const DomainBox& box, ConstraintQ q, const P& p,
                      double tol = kInvarianceTolerance) {
  if (is_invariant_unconstrained_bound(box, q, p, tol)) return true;
  return h_q(box.v1(), q, p) >= box.w2() - tol && h_q(box.v2(), q, p) >= box.w2() - tol;
}

template <PressureLaw P>
bool is_invariant_rs2(const DomainBox& box, ConstraintQ q, const P& p,
                      double tol = kInvarianceTolerance) {
  if (is_invariant_unconstrained_bound(box, q, p, tol)) return true;
  return h_q(box.v1(), q, p) >= box.w2() - tol && min_h_q(box, q, p) >= box.w1() - tol;
}

enum class CounterexampleKind { RS1Left, RS1Right, RS2Left, RS2Right };

constexpr std::string_view counterexample_name(CounterexampleKind kind) {
  switch (kind) {
    case CounterexampleKind::RS1Left: return "RS1_left";
    case CounterexampleKind::RS1Right: return "RS1_right";
    case CounterexampleKind::RS2Left: return "RS2_left";
    case CounterexampleKind::RS2Right: return "RS2_right";
  }
  return "unknown";
}

constexpr SolverKind counterexample_solver(CounterexampleKind kind) {
  return kind == CounterexampleKind::RS1Left || kind == CounterexampleKind::RS1Right
             ? SolverKind::RS1
             : SolverKind::RS2;
}

/// Side of x=0 whose trace leaves the box for this counterexample family.
constexpr Trace counterexample_trace(CounterexampleKind kind) {
  return kind == CounterexampleKind::RS1Left || kind == CounterexampleKind::RS2Left
             ? Trace::Left
             : Trace::Right;
}

/// State on the upper level w = w2 at velocity v: the data used by the
/// necessity arguments. Empty if that point is not a valid state.
template <PressureLaw P>
std::optional<StatePV> state_on_upper_level(const DomainBox& box, double v, const P& p) {
  const double rho = invert_pressure(p, box.w2() - v);
  if (!(rho > kRhoMin)) return std::nullopt;
  return StatePV(rho, v);
}

/// Data (s, s) inside the box whose constrained solution leaves the box, for
/// the requested family; empty when the corresponding condition holds.
template <PressureLaw P>
std::optional<StatePV> counterexample_state(const DomainBox& box, ConstraintQ q, const P& p,
                                            CounterexampleKind which,
                                            double tol = kInvarianceTolerance) {
  if (!constraint_can_bind(box, q, p, tol)) return std::nullopt;
  const double w2 = box.w2();
  const double v_min = std::clamp(vbar(q, p), box.v1(), box.v2());
  switch (which) {
    case CounterexampleKind::RS1Left:
      if (h_q(box.v1(), q, p) >= w2 - tol) return std::nullopt;
      return state_on_upper_level(box, box.v1(), p);
    case CounterexampleKind::RS1Right:
      if (h_q(box.v2(), q, p) >= w2 - tol) return std::nullopt;
      return state_on_upper_level(box, box.v2(), p);
    case CounterexampleKind::RS2Left:
      if (h_q(box.v1(), q, p) >= w2 - tol) return std::nullopt;
      return state_on_upper_level(box, v_min, p);
    case CounterexampleKind::RS2Right:
      if (h_q(v_min, q, p) >= box.w1() - tol) return std::nullopt;
      return state_on_upper_level(box, v_min, p);
  }
  return std::nullopt;
}

/// Re-runs the solver on (s, s) and reports whether the relevant trace at x=0
/// lies outside the box.
template <PressureLaw P>
bool counterexample_exits(const DomainBox& box, ConstraintQ q, const P& p,
                          CounterexampleKind which, const StatePV& s) {
  const WaveFan fan = solve(counterexample_solver(which), s, s, q, p);
  const StatePV trace = sample(fan, 0.0, p, counterexample_trace(which));
  return !contains(box, trace, p);
}

/// First counterexample witnessing that `solver` does not leave the box
/// invariant, or nullopt when none of its families applies.
template <PressureLaw P>
std::optional<std::pair<CounterexampleKind, StatePV>> find_counterexample(
    const DomainBox& box, ConstraintQ q, const P& p, SolverKind solver) {
  const std::array<CounterexampleKind, 2> kinds =
      solver == SolverKind::RS1
          ? std::array{CounterexampleKind::RS1Left, CounterexampleKind::RS1Right}
          : std::array{CounterexampleKind::RS2Left, CounterexampleKind::RS2Right};
  for (CounterexampleKind kind : kinds) {
    if (auto s = counterexample_state(box, q, p, kind)) return std::pair{kind, *s};
  }
  return std::nullopt;
}

enum class BoxRegime { Generic, RS1Invariant, RS2Invariant };

constexpr std::string_view box_regime_name(BoxRegime regime) {
  switch (regime) {
    case BoxRegime::Generic: return "generic";
    case BoxRegime::RS1Invariant: return "rs1-invariant";
    case BoxRegime::RS2Invariant: return "rs2-invariant";
  }
  return "unknown";
}

/// Random box. The two invariant regimes produce boxes in which the
/// constraint can bind and the corresponding solver's condition holds.
template <PressureLaw P>
DomainBox random_box(UniformStream& u, ConstraintQ q, const P& p, BoxRegime regime) {
  const double vb = regime == BoxRegime::Generic ? 0.0 : vbar(q, p);
  const auto h = [&](double v) { return h_q(v, q, p); };
  for (int attempt = 0; attempt < 10000; ++attempt) {
    if (regime == BoxRegime::Generic) {
      const double v1 = u(0.1, 3.0);
      const double v2 = v1 + u(0.1, 3.0);
      const double w2 = v2 + u(0.1, 6.0);
      return DomainBox(v1, v2, w2 * u(0.05, 0.95), w2);
    }
    const double v1 = vb * u(0.3, 0.95);
    if (regime == BoxRegime::RS1Invariant) {
      const double v2 = vb * u(1.05, 3.0);
      const double lo = std::max(h(vb), v2);
      const double hi = std::min(h(v1), h(v2));
      if (!(lo < hi)) continue;
      const double w2 = u(lo, hi);
      const DomainBox box(v1, v2, w2 * u(0.05, 0.95), w2);
      if (constraint_can_bind(box, q, p) && is_invariant_rs1(box, q, p)) return box;
    } else {
      const double v2 = vb * u(0.5, 3.0);
      if (!(v2 > v1)) continue;
      const double h_box = h(std::clamp(vb, v1, v2));
      const double lo = std::max(h_box, v2);
      const double hi = h(v1);
      if (!(lo < hi)) continue;
      const double w2 = u(lo, hi);
      const double w1 = std::min(h_box, w2) * u(0.05, 1.0);
      if (!(w1 < w2)) continue;
      const DomainBox box(v1, v2, w1, w2);
      if (constraint_can_bind(box, q, p) && is_invariant_rs2(box, q, p)) return box;
    }
  }
  throw Error(Errc::InvalidConfig, "could not draw a box for regime " +
                                       std::string(box_regime_name(regime)));
}

template <PressureLaw P>
StatePV random_state_in(const DomainBox& box, UniformStream& u, const P& p) {
  for (;;) {
    const double v = u(box.v1(), box.v2());
    const double w = u(std::max(box.w1(), v + 1e-3 * (box.w2() - v)), box.w2());
    const double rho = invert_pressure(p, w - v);
    if (rho > 10.0 * kRhoMin) return StatePV(rho, v);
  }
}

struct SweepResult {
  std::size_t pairs = 0;
  std::size_t skipped = 0;  // pairs whose classical solution needs a vacuum state
  std::size_t exits = 0;
  std::optional<std::pair<StatePV, StatePV>> first_exit;
};

/// Samples `pairs` data pairs inside the box, solves with `solver` and checks
/// that every state at `rays` rays (plus both traces at x=0) stays in the box.
template <PressureLaw P>
SweepResult soundness_sweep(const DomainBox& box, ConstraintQ q, const P& p, SolverKind solver,
                            std::size_t pairs, int rays, UniformStream& u, double tol = 1e-8) {
  SweepResult result;
  for (std::size_t i = 0; i < pairs; ++i) {
    const StatePV l = random_state_in(box, u, p);
    const StatePV r = random_state_in(box, u, p);
    ++result.pairs;
    if (!(w_of(l, p) > r.v + 1e-6)) {
      ++result.skipped;
      continue;
    }
    const WaveFan fan = solve(solver, l, r, q, p);
    double lo = -1.0, hi = 1.0;
    for (const Wave& wave : fan.waves) {
      lo = std::min(lo, wave.speed_lo - 1.0);
      hi = std::max(hi, wave.speed_hi + 1.0);
    }
    std::vector<StatePV> probes = {sample(fan, 0.0, p, Trace::Left), sample(fan, 0.0, p)};
    for (int k = 0; k < rays; ++k) {
      const double xi = rays == 1 ? 0.0 : lo + (hi - lo) * k / (rays - 1);
      probes.push_back(sample(fan, xi, p));
    }
    for (const StatePV& s : probes) {
      if (!contains(box, s, p, tol)) {
        if (!result.first_exit) result.first_exit = std::pair{l, r};
        ++result.exits;
        break;
      }
    }
  }
  return result;
}

struct DomainViolation {
  BoxRegime regime;
  SolverKind solver;
  double q;
  DomainBox box;
  std::string_view property;  // "soundness" or "completeness"
  StatePV left, right;        // offending data (left == right for counterexamples)
};

struct DomainCampaignResult {
  std::size_t boxes = 0;
  std::size_t soundness_checks = 0;
  std::size_t completeness_checks = 0;
  std::vector<DomainViolation> violations;
};

/// For each regime draws `boxes_per_regime` boxes with q in [0.5, 5]. Boxes
/// accepted by a solver's predicate are swept for exits; rejected boxes must
/// yield a counterexample that verifiably exits.
template <PressureLaw P>
DomainCampaignResult domain_campaign(std::size_t boxes_per_regime, std::uint64_t seed, const P& p,
                                     std::size_t pairs = 100, int rays = 41, double tol = 1e-8) {
  DomainCampaignResult out;
  UniformStream u(seed);
  for (BoxRegime regime : {BoxRegime::Generic, BoxRegime::RS1Invariant, BoxRegime::RS2Invariant}) {
    for (std::size_t b = 0; b < boxes_per_regime; ++b) {
      const ConstraintQ q(u(0.5, 5.0));
      const DomainBox box = random_box(u, q, p, regime);
      ++out.boxes;
      for (SolverKind solver : {SolverKind::RS1, SolverKind::RS2}) {
        const bool invariant =
            solver == SolverKind::RS1 ? is_invariant_rs1(box, q, p) : is_invariant_rs2(box, q, p);
        if (invariant) {
          ++out.soundness_checks;
          const SweepResult sweep = soundness_sweep(box, q, p, solver, pairs, rays, u, tol);
          if (sweep.first_exit) {
            out.violations.push_back({regime, solver, q.value(), box, "soundness",
                                      sweep.first_exit->first, sweep.first_exit->second});
          }
          continue;
        }
        ++out.completeness_checks;
        const auto found = find_counterexample(box, q, p, solver);
        if (!found || !contains(box, found->second, p) ||
            !counterexample_exits(box, q, p, found->first, found->second)) {
          const StatePV s = found ? found->second : StatePV(1.0, box.v1());
          out.violations.push_back({regime, solver, q.value(), box, "completeness", s, s});
        }
      }
    }
  }
  return out;
}

}  // namespace awr
