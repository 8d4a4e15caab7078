// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "awr/awr.hpp"
#include "oracles.hpp"

namespace {

using namespace awr;

// Tolerances and limits, fixed here so every run is judged the same way.
constexpr double kOracleTol = 1e-6;
constexpr double kCriterion1Ms = 1.0;
constexpr double kCapTol = 1e-10;
constexpr double kMaxPrincipleRayTol = 1e-10;
constexpr double kI1Margin = 1e-9;
constexpr double kI1Residual = 1e-12;
constexpr double kTVTol = 1e-9;
constexpr double kDomainTol = 1e-8;
constexpr double kLedgerTol = 1e-11;
constexpr double kDiscreteMaxPrincipleTol = 1e-11;
constexpr double kL1Bound = 0.05;
constexpr double kRatioLo = 0.4, kRatioHi = 0.8;
constexpr double kJumpFraction = 0.05;  // cells next to x=0 within 5% of the jump
constexpr double kTraceRel = 0.02;
constexpr double kSpeedRel = 0.10;
constexpr std::size_t kRandomTriples = 10000;
constexpr std::size_t kBoxesPerRegime = 200;

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double budget_ms;  // 0 means no runtime bound
  std::function<Outcome()> check;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

const PowerLaw kLinear(1.0);
const StatePV kA(1.5, 3.0);
const StatePV kB(4.0, 0.5);

Outcome criterion1() {
  const oracle::QuadraticRoots roots = oracle::linear_pressure_i1(4.5, 3.0);
  const StatePV hat(roots.hi, 4.5 - roots.hi), check(roots.lo, 4.5 - roots.lo);
  double best_ms = 1e300;
  WaveFan fan;
  for (int i = 0; i < 20; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    fan = solve_rs1(kA, kA, ConstraintQ(3.0), kLinear);
    best_ms = std::min(best_ms, std::chrono::duration<double, std::milli>(
                                    std::chrono::steady_clock::now() - t0).count());
  }
  const auto near = [](double a, double b) { return std::abs(a - b) <= kOracleTol; };
  bool ok = fan.waves.size() == 3;
  if (ok) {
    const Wave &w0 = fan.waves[0], &w1 = fan.waves[1], &w2 = fan.waves[2];
    ok = w0.kind == WaveKind::Shock1 && near(w0.speed_lo, -0.686141) &&
         near(w0.speed_lo, oracle::rh_speed(1.5, 3.0, hat.rho, hat.v)) &&
         w1.kind == WaveKind::NonclassicalStationary && w1.speed_lo == 0.0 &&
         near(w1.left.rho, 3.686141) && near(w1.left.v, 0.813859) && near(w1.right.rho, 0.813859) &&
         near(w1.right.v, 3.686141) && near(w1.left.rho, hat.rho) && near(w1.right.rho, check.rho) &&
         w2.kind == WaveKind::Shock1 && near(w2.speed_lo, 2.186141) &&
         near(w2.speed_lo, oracle::rh_speed(check.rho, check.v, 1.5, 3.0));
  }
  ok = ok && best_ms < kCriterion1Ms;
  return {ok, "3 waves match oracle; solve time " + fmt("%.4f ms", best_ms)};
}

// Criteria 2-4 share one random campaign per exponent.
struct SolverCampaign {
  std::size_t cap_failures = 0, mp_failures = 0, i1_failures = 0, i1_cases = 0;
  double worst_cap = -1e300;
};

SolverCampaign solver_campaign() {
  SolverCampaign out;
  for (double g : {1.0, 2.0}) {
    const PowerLaw p(g);
    TripleSampler sampler(2024, SamplingRanges{});
    for (std::size_t i = 0; i < kRandomTriples; ++i) {
      const auto t = sampler.next(p);
      const ConstraintQ q(t.q);
      const WaveFan classical = solve_classical(t.left, t.right, p);
      const WaveFan fan1 = solve_rs1(t.left, t.right, q, p);
      const WaveFan fan2 = solve_rs2(t.left, t.right, q, p);
      for (const WaveFan* fan : {&fan1, &fan2}) {
        const double f1 = flux_at_zero(*fan, p).f1;
        out.worst_cap = std::max(out.worst_cap, f1 - t.q);
        if (f1 > t.q + kCapTol) ++out.cap_failures;
      }
      const double lo = std::min(w_of(t.left, p), w_of(t.right, p)) - kMaxPrincipleRayTol;
      const double hi = std::max(w_of(t.left, p), w_of(t.right, p)) + kMaxPrincipleRayTol;
      double reach = 1.0;
      for (const Wave& w : fan1.waves) reach = std::max({reach, std::abs(w.speed_lo), std::abs(w.speed_hi)});
      for (int k = 0; k <= 40; ++k) {
        const double w = w_of(sample(fan1, -1.2 * reach + 2.4 * reach * k / 40.0, p), p);
        if (w < lo || w > hi) {
          ++out.mp_failures;
          break;
        }
      }
      if (flux_at_zero(classical, p).f1 > t.q + kI1Margin) {
        ++out.i1_cases;
        const auto roots = i1_roots(t.left, q, p);
        const double w = w_of(t.left, p);
        const auto residual = [&](double r) { return std::abs(r * (w - p(r)) - t.q); };
        if (!roots || !(roots->rho_check1 < roots->rho_hat) ||
            residual(roots->rho_check1) > kI1Residual || residual(roots->rho_hat) > kI1Residual) {
          ++out.i1_failures;
        }
      }
    }
  }
  return out;
}

const SolverCampaign& campaign() {
  static const SolverCampaign c = solver_campaign();
  return c;
}

Outcome criterion2() {
  const SolverCampaign& c = campaign();
  return {c.cap_failures == 0, std::to_string(c.cap_failures) + " cap violations in " +
                                   std::to_string(4 * kRandomTriples) + " constrained fans; max f1-q " +
                                   fmt("%.3g", c.worst_cap)};
}

Outcome criterion3() {
  const SolverCampaign& c = campaign();
  return {c.mp_failures == 0, std::to_string(c.mp_failures) + " RS1 fans leave [min w, max w] at 41 rays"};
}

Outcome criterion4() {
  const SolverCampaign& c = campaign();
  return {c.i1_failures == 0 && c.i1_cases > 0,
          std::to_string(c.i1_failures) + " failures in " + std::to_string(c.i1_cases) + " active cases"};
}

Outcome criterion5() {
  std::size_t violations = 0;
  for (double g : {1.0, 2.0}) {
    violations += random_campaign(kRandomTriples, 42, SamplingRanges{}, PowerLaw(g), kTVTol).violations.size();
  }
  return {violations == 0, std::to_string(violations) + " violations in " +
                               std::to_string(2 * kRandomTriples) + " triples (gamma 1 and 2)"};
}

Outcome criterion6() {
  std::size_t sound = 0, complete = 0, rs1 = 0, rs2 = 0;
  std::size_t sound_checks = 0, complete_checks = 0;
  for (double g : {1.0, 2.0}) {
    const DomainCampaignResult r = domain_campaign(kBoxesPerRegime, 7, PowerLaw(g), 100, 41, kDomainTol);
    sound_checks += r.soundness_checks;
    complete_checks += r.completeness_checks;
    for (const DomainViolation& v : r.violations) {
      (v.property == std::string_view("soundness") ? sound : complete)++;
      (v.solver == SolverKind::RS1 ? rs1 : rs2)++;
    }
  }
  return {sound == 0 && complete == 0,
          "soundness " + std::to_string(sound) + "/" + std::to_string(sound_checks) +
              " boxes with exits, completeness " + std::to_string(complete) + "/" +
              std::to_string(complete_checks) + " failures (RS1 " + std::to_string(rs1) + ", RS2 " +
              std::to_string(rs2) + ")"};
}

RunSpec spec_for(const StatePV& l, SchemeKind scheme, double dx, std::vector<double> times = {}) {
  return RunSpec{l, kA, SimGrid::covering(1.0, 1.0, dx), ConstraintQ(3.0), scheme, 0.2, std::move(times)};
}

Outcome criterion7() {
  const RunResult rs1 = run(spec_for(kA, SchemeKind::ConstrainedRS1, 0.002), kLinear);
  const RunResult frz = run(spec_for(kA, SchemeKind::ConstrainedRS2Freeze, 0.002), kLinear);
  const LedgerClosure c1 = ledger_closure(rs1.ledger);
  const LedgerClosure c2 = ledger_closure(frz.ledger);
  const double defect = frz.ledger.back().y_defect_interface;
  const bool ok = c1.max_rho_residual <= kLedgerTol && c1.max_y_residual <= kLedgerTol &&
                  c2.max_rho_residual <= kLedgerTol && defect > 0.0;
  return {ok, "RS1 residuals " + fmt("%.2e", c1.max_rho_residual) + "/" + fmt("%.2e", c1.max_y_residual) +
                  ", freeze rho residual " + fmt("%.2e", c2.max_rho_residual) + ", y-defect " +
                  fmt("%.6f", defect)};
}

Outcome criterion8() {
  double worst = -1e300;
  for (const StatePV& l : {kA, kB}) {
    const MaxPrincipleReport mp = run(spec_for(l, SchemeKind::ConstrainedRS1, 0.002), kLinear).max_principle;
    worst = std::max({worst, mp.overshoot(), mp.undershoot()});
  }
  return {worst <= kDiscreteMaxPrincipleTol, "largest excursion " + fmt("%.2e", worst)};
}

Outcome criterion9() {
  bool ok = true;
  std::string detail;
  struct Case {
    const char* name;
    StatePV left;
    SchemeKind scheme;
  };
  for (const Case& c : {Case{"1a", kA, SchemeKind::ConstrainedRS1}, Case{"1b", kB, SchemeKind::ConstrainedRS1},
                        Case{"2a", kA, SchemeKind::ConstrainedRS2Freeze},
                        Case{"2b", kB, SchemeKind::ConstrainedRS2Freeze}}) {
    const WaveFan fan = solve(scheme_solver(c.scheme), c.left, kA, ConstraintQ(3.0), kLinear);
    const StatePV minus = sample(fan, 0.0, kLinear, Trace::Left);
    const StatePV plus = sample(fan, 0.0, kLinear);
    double l1[2];
    bool sharp = true;
    int i = 0;
    for (double dx : {0.004, 0.002}) {
      const RunSpec spec = spec_for(c.left, c.scheme, dx);
      const RunResult r = run(spec, kLinear);
      l1[i++] = errors_vs_exact(r.final_state, spec.grid, fan, kLinear)[0].l1;
      if (dx == 0.002) {
        const auto prim = detail::decode(r.final_state, spec.grid, kLinear);
        const double jump = std::abs(minus.rho - plus.rho);
        for (long j : {-1L, 0L}) sharp = sharp && std::abs(prim[spec.grid.index(j)].rho - minus.rho) <= kJumpFraction * jump;
        for (long j : {1L, 2L}) sharp = sharp && std::abs(prim[spec.grid.index(j)].rho - plus.rho) <= kJumpFraction * jump;
      }
    }
    const double ratio = l1[1] / l1[0];
    const bool case_ok = l1[1] < kL1Bound && ratio >= kRatioLo && ratio <= kRatioHi && sharp;
    ok = ok && case_ok;
    detail += std::string(detail.empty() ? "" : "; ") + c.name + " L1 " + fmt("%.4f", l1[1]) +
              " ratio " + fmt("%.3f", ratio) + (sharp ? " jump sharp" : " jump smeared");
  }
  return {ok, detail};
}

Outcome criterion10() {
  const RunSpec freeze = spec_for(kA, SchemeKind::ConstrainedRS2Freeze, 0.002, {0.1, 0.2});
  const RunSpec ghost = spec_for(kA, SchemeKind::ConstrainedRS2Ghost, 0.002);
  const RunResult fr = run(freeze, kLinear);
  const RunResult gh = run(ghost, kLinear);
  const std::size_t k1 = freeze.grid.index(1);
  const StatePV f1 = detail::decode(fr.final_state, freeze.grid, kLinear)[k1];
  const StatePV g1 = detail::decode(gh.final_state, ghost.grid, kLinear)[k1];

  // Exact v is 3 everywhere on x > 0, so any deviation is the spurious wave.
  std::vector<double> peak;
  for (const SimState& snap : fr.snapshots) {
    if (snap.t == 0.0) continue;
    const auto prim = detail::decode(snap, freeze.grid, kLinear);
    double best = -1.0, where = 0.0;
    for (std::size_t k = freeze.grid.n_left(); k < prim.size(); ++k) {
      const double d = std::abs(prim[k].v - 3.0);
      if (d > best) {
        best = d;
        where = freeze.grid.center(k);
      }
    }
    peak.push_back(where);
  }
  const double speed = peak.size() == 2 ? (peak[1] - peak[0]) / 0.1 : 0.0;
  const bool ghost_ok = g1.v > 3.0;
  const bool freeze_ok = std::abs(f1.rho - 1.0) <= kTraceRel && std::abs(f1.v - 3.0) <= kTraceRel * 3.0;
  const bool speed_ok = std::abs(speed - 3.0) <= kSpeedRel * 3.0;
  return {ghost_ok && freeze_ok && speed_ok,
          "ghost v1 " + fmt("%.5f", g1.v) + ", freeze cell 1 (" + fmt("%.5f", f1.rho) + ", " +
              fmt("%.5f", f1.v) + "), oscillation peak " + fmt("%.4f", peak.size() == 2 ? peak[0] : 0.0) +
              " -> " + fmt("%.4f", peak.size() == 2 ? peak[1] : 0.0) + ", speed " + fmt("%.3f", speed)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "exact RS1 solver matches oracle on Test 1a", kCriterion1Ms, criterion1},
      {2, "constraint cap on 10^4 random triples", 5000.0, criterion2},
      {3, "RS1 maximum principle at 41 rays", 0.0, criterion3},
      {4, "I1 has two distinct roots when the constraint binds", 0.0, criterion4},
      {5, "total variation inequalities", 30000.0, criterion5},
      {6, "invariant domains: soundness and completeness", 0.0, criterion6},
      {7, "scheme conservation ledgers", 10000.0, criterion7},
      {8, "discrete maximum principle for the RS1 scheme", 0.0, criterion8},
      {9, "convergence to exact solutions", 60000.0, criterion9},
      {10, "ghost versus freeze treatment on Test 2a", 0.0, criterion10},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o = c.check();
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    // Criterion 1 times the solver itself inside the check.
    if (c.budget_ms > 0.0 && c.id != 1 && ms > c.budget_ms) {
      o.pass = false;
      o.detail += "; over time budget";
    }
    if (!o.pass) ++failures;
    std::printf("criterion %2d: %s  %s (%s) [%.0f ms]\n", c.id, o.pass ? "PASS" : "FAIL", c.title,
                o.detail.c_str(), ms);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
