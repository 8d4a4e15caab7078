#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string_view>
#include <vector>

#include "awr/error.hpp"
#include "awr/model.hpp"
#include "awr/pressure.hpp"
#include "awr/random.hpp"
#include "awr/riemann.hpp"

namespace awr {

enum class Quantity { Rho, V, Y, W };

inline constexpr std::array<Quantity, 4> kAllQuantities = {Quantity::Rho, Quantity::V, Quantity::Y,
                                                           Quantity::W};

constexpr std::string_view quantity_name(Quantity q) {
  switch (q) {
    case Quantity::Rho: return "rho";
    case Quantity::V: return "v";
    case Quantity::Y: return "y";
    case Quantity::W: return "w";
  }
  return "unknown";
}

template <PressureLaw P>
double quantity_of(const StatePV& s, Quantity q, const P& p) {
  switch (q) {
    case Quantity::Rho: return s.rho;
    case Quantity::V: return s.v;
    case Quantity::Y: return s.rho * (s.v + p(s.rho));
    case Quantity::W: return s.v + p(s.rho);
  }
  return 0.0;
}

/// Exact total variation of one component of a fan, summed wave by wave.
///
/// Along a 1-rarefaction w is constant, rho moves monotonically between the
/// endpoints, v = w - p(rho) is monotone in rho, and y = rho w is linear in
/// rho. Each quantity is therefore monotone across the wave and contributes
/// exactly the absolute difference of its endpoint values.
template <PressureLaw P>
double tv_of_fan(const WaveFan& fan, Quantity quantity, const P& p) {
  double total = 0.0;
  for (const Wave& wave : fan.waves) {
    total += std::abs(quantity_of(wave.right, quantity, p) - quantity_of(wave.left, quantity, p));
  }
  return total;
}

/// Total variations of both constrained solvers' outputs, per quantity.
struct TVReport {
  double tv_rho_1 = 0, tv_rho_2 = 0;
  double tv_v_1 = 0, tv_v_2 = 0;
  double tv_y_1 = 0, tv_y_2 = 0;
  double tv_w_1 = 0, tv_w_2 = 0;

  std::array<double, 8> values() const {
    return {tv_rho_1, tv_rho_2, tv_v_1, tv_v_2, tv_y_1, tv_y_2, tv_w_1, tv_w_2};
  }
};

template <PressureLaw P>
TVReport compare_solvers(const StatePV& l, const StatePV& r, ConstraintQ q, const P& p) {
  const WaveFan fan1 = solve_rs1(l, r, q, p);
  const WaveFan fan2 = solve_rs2(l, r, q, p);
  TVReport out;
  out.tv_rho_1 = tv_of_fan(fan1, Quantity::Rho, p);
  out.tv_rho_2 = tv_of_fan(fan2, Quantity::Rho, p);
  out.tv_v_1 = tv_of_fan(fan1, Quantity::V, p);
  out.tv_v_2 = tv_of_fan(fan2, Quantity::V, p);
  out.tv_y_1 = tv_of_fan(fan1, Quantity::Y, p);
  out.tv_y_2 = tv_of_fan(fan2, Quantity::Y, p);
  out.tv_w_1 = tv_of_fan(fan1, Quantity::W, p);
  out.tv_w_2 = tv_of_fan(fan2, Quantity::W, p);
  return out;
}

/// Which of the four comparisons fail: RS1 carries at least as much
/// variation in rho, v and y as RS2, and at most as much in w.
/// `inverted` flips every comparison (harness self-test).
struct TVCheck {
  bool rho = true, v = true, y = true, w = true;
  bool all() const { return rho && v && y && w; }
};

inline TVCheck check_tv_inequalities(const TVReport& r, double tol, bool inverted = false) {
  TVCheck c;
  if (!inverted) {
    c.rho = r.tv_rho_1 >= r.tv_rho_2 - tol;
    c.v = r.tv_v_1 >= r.tv_v_2 - tol;
    c.y = r.tv_y_1 >= r.tv_y_2 - tol;
    c.w = r.tv_w_1 <= r.tv_w_2 + tol;
  } else {
    c.rho = r.tv_rho_1 < r.tv_rho_2 - tol;
    c.v = r.tv_v_1 < r.tv_v_2 - tol;
    c.y = r.tv_y_1 < r.tv_y_2 - tol;
    c.w = r.tv_w_1 > r.tv_w_2 + tol;
  }
  return c;
}

struct SamplingRanges {
  double rho_lo = 0.1, rho_hi = 5.0;
  double v_lo = 0.1, v_hi = 5.0;
  double q_lo = 0.5, q_hi = 5.0;
};

struct CampaignRecord {
  std::size_t index = 0;
  StatePV left, right;
  double q = 0;
  TVReport report;
  TVCheck check;
};

struct CampaignResult {
  std::vector<CampaignRecord> records;
  std::vector<std::size_t> violations;  // indices into records
  std::size_t rejected_draws = 0;       // draws skipped for vacuum intermediate states
};

/// Deterministic stream of Riemann triples (l, r, q). Draws whose classical
/// solution would need a vacuum intermediate state are rejected and redrawn.
class TripleSampler {
 public:
  TripleSampler(std::uint64_t seed, SamplingRanges ranges) : uniform_(seed), ranges_(ranges) {}

  struct Triple {
    StatePV left, right;
    double q;
  };

  template <PressureLaw P>
  Triple next(const P& p, std::size_t* rejected = nullptr) {
    for (;;) {
      const double rho_l = uniform_(ranges_.rho_lo, ranges_.rho_hi);
      const double v_l = uniform_(ranges_.v_lo, ranges_.v_hi);
      const double rho_r = uniform_(ranges_.rho_lo, ranges_.rho_hi);
      const double v_r = uniform_(ranges_.v_lo, ranges_.v_hi);
      const double q = uniform_(ranges_.q_lo, ranges_.q_hi);
      const StatePV l(rho_l, v_l);
      const StatePV r(rho_r, v_r);
      // Keep a margin above the vacuum threshold so intermediate densities stay resolvable.
      if (w_of(l, p) > v_r + 1e-6) return {l, r, q};
      if (rejected) ++*rejected;
    }
  }

 private:
  UniformStream uniform_;
  SamplingRanges ranges_;
};

template <PressureLaw P>
CampaignResult random_campaign(std::size_t n, std::uint64_t seed, const SamplingRanges& ranges,
                               const P& p, double tol = 1e-9, bool inverted = false) {
  CampaignResult result;
  result.records.reserve(n);
  TripleSampler sampler(seed, ranges);
  for (std::size_t i = 0; i < n; ++i) {
    const auto t = sampler.next(p, &result.rejected_draws);
    CampaignRecord rec;
    rec.index = i;
    rec.left = t.left;
    rec.right = t.right;
    rec.q = t.q;
    rec.report = compare_solvers(t.left, t.right, ConstraintQ(t.q), p);
    rec.check = check_tv_inequalities(rec.report, tol, inverted);
    if (!rec.check.all()) result.violations.push_back(i);
    result.records.push_back(rec);
  }
  return result;
}

}  // namespace awr
