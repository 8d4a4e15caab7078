#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "awr/error.hpp"
#include "awr/model.hpp"
#include "awr/pressure.hpp"
#include "awr/riemann.hpp"
#include "awr/tv.hpp"

namespace awr {

/// Uniform mesh with interfaces x_{j+1/2} = j dx, so the constraint location
/// x = 0 is the interface between cells j = 0 and j = 1. Cells run over
/// j = -n_left + 1 .. n_right and are stored at index k = j + n_left - 1.
class SimGrid {
 public:
  SimGrid(double dx, std::size_t n_left, std::size_t n_right)
      : dx_(dx), n_left_(n_left), n_right_(n_right) {
    if (!(dx > 0.0) || !std::isfinite(dx) || n_left == 0 || n_right == 0) {
      throw Error(Errc::InvalidConfig, "grid needs dx > 0 and at least one cell on each side");
    }
  }

  /// Mesh covering [-x_left, x_right], rounding each half to whole cells.
  static SimGrid covering(double x_left, double x_right, double dx) {
    if (!(dx > 0.0) || !(x_left > 0.0) || !(x_right > 0.0)) {
      throw Error(Errc::InvalidConfig, "domain half-widths and dx must be positive");
    }
    const auto cells = [dx](double len) {
      return static_cast<std::size_t>(std::max(1.0, std::round(len / dx)));
    };
    return SimGrid(dx, cells(x_left), cells(x_right));
  }

  double dx() const noexcept { return dx_; }
  std::size_t n_left() const noexcept { return n_left_; }
  std::size_t n_right() const noexcept { return n_right_; }
  std::size_t size() const noexcept { return n_left_ + n_right_; }

  /// Mesh label j of storage index k.
  long label(std::size_t k) const noexcept {
    return static_cast<long>(k) - static_cast<long>(n_left_) + 1;
  }
  std::size_t index(long j) const noexcept {
    return static_cast<std::size_t>(j + static_cast<long>(n_left_) - 1);
  }
  double center(std::size_t k) const noexcept { return (static_cast<double>(label(k)) - 0.5) * dx_; }

  /// Interface index (0..size()) of x = 0; interface i separates cells i-1 and i.
  std::size_t constraint_interface() const noexcept { return n_left_; }

 private:
  double dx_;
  std::size_t n_left_;
  std::size_t n_right_;
};

struct SimState {
  double t = 0.0;
  std::vector<StateRY> u;
  std::size_t n = 0;
};

enum class SchemeKind { ClassicalGodunov, ConstrainedRS1, ConstrainedRS2Ghost, ConstrainedRS2Freeze };

constexpr std::string_view scheme_name(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::ClassicalGodunov: return "classical";
    case SchemeKind::ConstrainedRS1: return "rs1";
    case SchemeKind::ConstrainedRS2Ghost: return "rs2-ghost";
    case SchemeKind::ConstrainedRS2Freeze: return "rs2-freeze";
  }
  return "unknown";
}

/// Riemann solver whose exact solution a scheme approximates.
constexpr SolverKind scheme_solver(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::ClassicalGodunov: return SolverKind::Classical;
    case SchemeKind::ConstrainedRS1: return SolverKind::RS1;
    case SchemeKind::ConstrainedRS2Ghost:
    case SchemeKind::ConstrainedRS2Freeze: return SolverKind::RS2;
  }
  return SolverKind::Classical;
}

/// When the RS2 interface treatment switches on. FluxExceedsQ is the
/// consistent rule; FluxBelowQ reproduces the literal "f < q" wording.
enum class Activation { FluxExceedsQ, FluxBelowQ };

inline bool constraint_active(double f1, ConstraintQ q, Activation rule) {
  return rule == Activation::FluxExceedsQ ? f1 > q.value() : f1 < q.value();
}

template <PressureLaw P>
Flux2 godunov_flux(const StatePV& l, const StatePV& r, const P& p) {
  if (l == r) return flux(l, p);
  return flux_at_zero(solve_classical(l, r, p), p);
}

template <PressureLaw P>
Flux2 godunov_flux(const StateRY& ul, const StateRY& ur, const P& p) {
  return godunov_flux(to_primitive(ul, p), to_primitive(ur, p), p);
}

/// Caps the density flux at q and rescales f2 so that f2/f1 (= w of the
/// interface state) is preserved.
inline Flux2 constrained_flux_rs1(const Flux2& f, ConstraintQ q) {
  if (f.f1 <= q.value() || f.f1 <= 1e-14) return f;
  return {q.value(), q.value() * f.f2 / f.f1};
}

namespace detail {

template <PressureLaw P>
std::vector<StatePV> decode(const SimState& state, const SimGrid& grid, const P& p) {
  std::vector<StatePV> out;
  out.reserve(state.u.size());
  for (std::size_t k = 0; k < state.u.size(); ++k) {
    try {
      out.push_back(to_primitive(state.u[k], p));
    } catch (const Error& e) {
      throw Error(Errc::NonphysicalCell,
                  "cell j=" + std::to_string(grid.label(k)) + " at step " + std::to_string(state.n) +
                      ": " + e.what());
    }
  }
  return out;
}

inline StateRY make_cell(double rho, double y, const SimGrid& grid, std::size_t k, std::size_t n) {
  if (!(rho > kRhoMin) || !std::isfinite(rho) || !std::isfinite(y)) {
    throw Error(Errc::NonphysicalCell, "cell j=" + std::to_string(grid.label(k)) +
                                           " lost positivity at step " + std::to_string(n + 1));
  }
  return StateRY(rho, y);
}

}  // namespace detail

template <PressureLaw P>
SimState project_riemann(const StatePV& left, const StatePV& right, const SimGrid& grid,
                         const P& p) {
  SimState s;
  s.u.reserve(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    s.u.push_back(to_conserved(grid.center(k) < 0.0 ? left : right, p));
  }
  return s;
}

template <PressureLaw P>
double cfl_dt(const SimState& state, const SimGrid& grid, const P& p) {
  double max_speed = 0.0;
  for (const StatePV& s : detail::decode(state, grid, p)) {
    const Eigenvalues ev = eigenvalues(s, p);
    max_speed = std::max({max_speed, std::abs(ev.lambda1), std::abs(ev.lambda2)});
  }
  if (max_speed < 1e-14) {
    throw Error(Errc::DegenerateSpeeds, "all characteristic speeds vanish; CFL step is unbounded");
  }
  return 0.5 * grid.dx() / max_speed;
}

struct StepResult {
  SimState state;
  Flux2 boundary_left;       // flux entering through the left end
  Flux2 boundary_right;      // flux leaving through the right end
  Flux2 interface_godunov;   // uncapped Godunov flux at x = 0
  Flux2 interface_minus;     // flux used by cell j = 0
  Flux2 interface_plus;      // flux used by cell j = 1
  bool active = false;       // constraint treatment applied this step
  double y_defect = 0.0;     // y removed at x = 0 during the step (cell-integrated)
};

/// One explicit step of the requested scheme with outflow boundaries.
template <PressureLaw P>
StepResult step(const SimState& state, const SimGrid& grid, const P& p, double dt,
                SchemeKind kind, ConstraintQ q, Activation rule = Activation::FluxExceedsQ) {
  const std::size_t n = grid.size();
  const std::vector<StatePV> prim = detail::decode(state, grid, p);

  std::vector<Flux2> fluxes(n + 1);
  fluxes[0] = flux(prim.front(), p);
  fluxes[n] = flux(prim.back(), p);
  for (std::size_t i = 1; i < n; ++i) fluxes[i] = godunov_flux(prim[i - 1], prim[i], p);

  const std::size_t c = grid.constraint_interface();
  StepResult out;
  out.interface_godunov = fluxes[c];
  out.interface_minus = fluxes[c];
  out.interface_plus = fluxes[c];
  double frozen_velocity = 0.0;

  switch (kind) {
    case SchemeKind::ClassicalGodunov:
      break;
    case SchemeKind::ConstrainedRS1:
      out.active = fluxes[c].f1 > q.value();
      out.interface_minus = out.interface_plus = constrained_flux_rs1(fluxes[c], q);
      break;
    case SchemeKind::ConstrainedRS2Ghost:
    case SchemeKind::ConstrainedRS2Freeze: {
      out.active = constraint_active(fluxes[c].f1, q, rule);
      out.interface_minus = out.interface_plus = constrained_flux_rs1(fluxes[c], q);
      if (!out.active) break;
      const double v1 = prim[c].v;
      if (v1 <= kResidualTolerance) {
        throw Error(Errc::ZeroRightVelocity, "cell j=1 has zero velocity while the constraint is active");
      }
      if (kind == SchemeKind::ConstrainedRS2Ghost) {
        // Ghost state (q / v1, v1) on the 2-curve of cell 1.
        out.interface_plus.f2 = q.value() * (v1 + p(q.value() / v1));
      } else {
        frozen_velocity = v1;
      }
      break;
    }
  }

  const double ratio = dt / grid.dx();
  out.state.t = state.t + dt;
  out.state.n = state.n + 1;
  out.state.u.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Flux2& fl = k == c ? out.interface_plus : fluxes[k];
    const Flux2& fr = k + 1 == c ? out.interface_minus : fluxes[k + 1];
    const double rho = state.u[k].rho - ratio * (fr.f1 - fl.f1);
    const double y = state.u[k].y - ratio * (fr.f2 - fl.f2);
    out.state.u.push_back(detail::make_cell(rho, y, grid, k, state.n));
  }

  if (kind == SchemeKind::ConstrainedRS2Ghost && out.active) {
    out.y_defect = dt * (out.interface_minus.f2 - out.interface_plus.f2);
  } else if (kind == SchemeKind::ConstrainedRS2Freeze && out.active) {
    StateRY& cell = out.state.u[c];
    const double y_frozen = cell.rho * (frozen_velocity + p(cell.rho));
    out.y_defect = grid.dx() * (cell.y - y_frozen);
    cell.y = y_frozen;
  }
  out.boundary_left = fluxes[0];
  out.boundary_right = fluxes[n];
  return out;
}

template <PressureLaw P>
StepResult step_classical(const SimState& s, const SimGrid& g, const P& p, double dt) {
  return step(s, g, p, dt, SchemeKind::ClassicalGodunov, ConstraintQ::unbounded());
}

template <PressureLaw P>
StepResult step_rs1(const SimState& s, const SimGrid& g, ConstraintQ q, const P& p, double dt) {
  return step(s, g, p, dt, SchemeKind::ConstrainedRS1, q);
}

template <PressureLaw P>
StepResult step_rs2_ghost(const SimState& s, const SimGrid& g, ConstraintQ q, const P& p, double dt,
                          Activation rule = Activation::FluxExceedsQ) {
  return step(s, g, p, dt, SchemeKind::ConstrainedRS2Ghost, q, rule);
}

template <PressureLaw P>
StepResult step_rs2_freeze(const SimState& s, const SimGrid& g, ConstraintQ q, const P& p, double dt,
                           Activation rule = Activation::FluxExceedsQ) {
  return step(s, g, p, dt, SchemeKind::ConstrainedRS2Freeze, q, rule);
}

/// Cell-integrated totals, sum_j u_j dx.
inline std::array<double, 2> totals(const SimState& s, const SimGrid& grid) {
  double rho = 0.0, y = 0.0;
  for (const StateRY& u : s.u) {
    rho += u.rho;
    y += u.y;
  }
  return {rho * grid.dx(), y * grid.dx()};
}

struct LedgerRow {
  std::size_t n = 0;
  double t = 0.0;
  double dt = 0.0;
  double total_rho = 0.0;
  double total_y = 0.0;
  double y_defect_interface = 0.0;  // cumulative
  Flux2 boundary_left;
  Flux2 boundary_right;
};

using ConservationLedger = std::vector<LedgerRow>;

struct LedgerClosure {
  double max_rho_residual = 0.0;  // relative to the running total
  double max_y_residual = 0.0;
};

/// Per-step residuals of
///   total(n+1) - total(n) = dt (F_left - F_right) [- y defect of the step].
inline LedgerClosure ledger_closure(const ConservationLedger& ledger) {
  LedgerClosure out;
  for (std::size_t i = 1; i < ledger.size(); ++i) {
    const LedgerRow& a = ledger[i - 1];
    const LedgerRow& b = ledger[i];
    const double d_rho = b.total_rho - a.total_rho;
    const double d_y = b.total_y - a.total_y;
    const double expect_rho = b.dt * (b.boundary_left.f1 - b.boundary_right.f1);
    const double expect_y = b.dt * (b.boundary_left.f2 - b.boundary_right.f2) -
                            (b.y_defect_interface - a.y_defect_interface);
    const double scale_rho = std::max(std::abs(a.total_rho), std::numeric_limits<double>::min());
    const double scale_y = std::max(std::abs(a.total_y), std::numeric_limits<double>::min());
    out.max_rho_residual = std::max(out.max_rho_residual, std::abs(d_rho - expect_rho) / scale_rho);
    out.max_y_residual = std::max(out.max_y_residual, std::abs(d_y - expect_y) / scale_y);
  }
  return out;
}

struct MaxPrincipleReport {
  double w_min_initial = 0.0;
  double w_max_initial = 0.0;
  double w_min = 0.0;  // over all cells and steps
  double w_max = 0.0;

  double overshoot() const { return w_max - w_max_initial; }
  double undershoot() const { return w_min_initial - w_min; }
};

struct RunSpec {
  StatePV left;
  StatePV right;
  SimGrid grid;
  ConstraintQ q;
  SchemeKind scheme = SchemeKind::ConstrainedRS1;
  double t_final = 0.2;
  std::vector<double> output_times;  // snapshots besides t = 0
  Activation activation = Activation::FluxExceedsQ;
};

struct RunResult {
  std::vector<SimState> snapshots;  // t = 0 first, then each output time reached
  SimState final_state;
  ConservationLedger ledger;
  MaxPrincipleReport max_principle;
  double max_interface_f1 = 0.0;  // largest x = 0 density flux used by cell j = 0
  std::size_t active_steps = 0;
  bool validated_envelope = true;  // data share the same w (scheme validation regime)
};

namespace detail {
inline void track_w(MaxPrincipleReport& mp, const SimState& s) {
  for (const StateRY& u : s.u) {
    const double w = u.y / u.rho;
    mp.w_min = std::min(mp.w_min, w);
    mp.w_max = std::max(mp.w_max, w);
  }
}
}  // namespace detail

template <PressureLaw P>
RunResult run(const RunSpec& spec, const P& p) {
  RunResult result;
  const SimGrid& grid = spec.grid;
  result.validated_envelope = std::abs(w_of(spec.left, p) - w_of(spec.right, p)) <= 1e-12;

  SimState state = project_riemann(spec.left, spec.right, grid, p);
  {
    auto& mp = result.max_principle;
    mp.w_min_initial = mp.w_min = std::numeric_limits<double>::infinity();
    mp.w_max_initial = mp.w_max = -std::numeric_limits<double>::infinity();
    detail::track_w(mp, state);
    mp.w_min_initial = mp.w_min;
    mp.w_max_initial = mp.w_max;
  }
  const auto t0 = totals(state, grid);
  result.ledger.push_back({0, 0.0, 0.0, t0[0], t0[1], 0.0, {}, {}});
  result.snapshots.push_back(state);

  std::vector<double> targets;
  for (double t : spec.output_times) {
    if (t > 0.0 && t <= spec.t_final) targets.push_back(t);
  }
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  const bool final_is_snapshot = !targets.empty() && targets.back() == spec.t_final;
  if (targets.empty() || targets.back() < spec.t_final) targets.push_back(spec.t_final);

  double defect = 0.0;
  for (std::size_t next = 0; next < targets.size() && spec.t_final > 0.0; ++next) {
    const double target = targets[next];
    while (state.t < target) {
      double dt = cfl_dt(state, grid, p);
      const bool lands = state.t + dt >= target;
      if (lands) dt = target - state.t;
      StepResult sr = step(state, grid, p, dt, spec.scheme, spec.q, spec.activation);
      if (lands) sr.state.t = target;
      state = std::move(sr.state);
      defect += sr.y_defect;
      if (sr.active) ++result.active_steps;
      result.max_interface_f1 = std::max(result.max_interface_f1, sr.interface_minus.f1);
      const auto tot = totals(state, grid);
      result.ledger.push_back(
          {state.n, state.t, dt, tot[0], tot[1], defect, sr.boundary_left, sr.boundary_right});
      detail::track_w(result.max_principle, state);
    }
    if (next + 1 < targets.size() || final_is_snapshot) result.snapshots.push_back(state);
  }
  result.final_state = std::move(state);
  return result;
}

/// Exact solution at (x, t); t = 0 returns the Riemann datum.
template <PressureLaw P>
StatePV exact_at(const WaveFan& fan, double x, double t, const P& p) {
  if (t <= 0.0) return x < 0.0 ? fan.left : fan.right;
  return sample(fan, x / t, p);
}

struct ErrorNorms {
  double l1 = 0.0;
  double linf = 0.0;
};

/// L1 and Linf distances between cell values and the exact fan sampled at
/// cell centres, for rho, v, y and w (in that order).
template <PressureLaw P>
std::array<ErrorNorms, 4> errors_vs_exact(const SimState& state, const SimGrid& grid,
                                          const WaveFan& fan, const P& p) {
  std::array<ErrorNorms, 4> out{};
  const std::vector<StatePV> prim = detail::decode(state, grid, p);
  for (std::size_t k = 0; k < prim.size(); ++k) {
    const StatePV exact = exact_at(fan, grid.center(k), state.t, p);
    for (std::size_t qi = 0; qi < kAllQuantities.size(); ++qi) {
      const double diff = std::abs(quantity_of(prim[k], kAllQuantities[qi], p) -
                                   quantity_of(exact, kAllQuantities[qi], p));
      out[qi].l1 += diff * grid.dx();
      out[qi].linf = std::max(out[qi].linf, diff);
    }
  }
  return out;
}

}  // namespace awr
