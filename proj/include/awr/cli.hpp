#pragma once

// Configuration and subcommands behind the `awr` executable. Everything here
// writes plain CSV with 17 significant digits so runs are byte-reproducible.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "awr/domains.hpp"
#include "awr/error.hpp"
#include "awr/fvm.hpp"
#include "awr/riemann.hpp"
#include "awr/tv.hpp"

namespace awr::cli {

enum class ExitCode : int { Ok = 0, Violation = 1, Failure = 2 };

struct RunConfig {
  double gamma = 1.0;
  double q = 3.0;
  StatePV left{1.5, 3.0};
  StatePV right{1.5, 3.0};
  SchemeKind scheme = SchemeKind::ConstrainedRS1;
  double dx = 0.002;
  double x_left = 1.0;
  double x_right = 1.0;
  double t_final = 0.2;
  std::vector<double> output_times;
  std::string out = "out";
  std::uint64_t seed = 42;
  std::size_t n = 10000;
  Activation activation = Activation::FluxExceedsQ;
  std::array<double, 4> box{0.8, 4.0, 2.0, 4.5};  // v1, v2, w1, w2
  bool invert_check = false;
  bool domain_sweep = true;

  bool operator==(const RunConfig&) const = default;
};

inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

/// Fixed 17-significant-digit rendering used in every CSV file.
inline std::string csv(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] inline void bad_value(std::string_view key, std::string_view value,
                                   std::string_view expected) {
  throw Error(Errc::InvalidConfig, "bad value '" + std::string(value) + "' for " +
                                       std::string(key) + " (expected " + std::string(expected) +
                                       ")");
}

inline double parse_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double x = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), x);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) bad_value(key, text, "a number");
  return x;
}

inline std::vector<double> parse_list(std::string_view key, std::string_view text) {
  std::vector<double> out;
  text = trim(text);
  if (text.empty()) return out;
  for (;;) {
    const auto comma = text.find(',');
    out.push_back(parse_double(key, text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return out;
}

inline StatePV parse_state(std::string_view key, std::string_view text) {
  const std::vector<double> v = parse_list(key, text);
  if (v.size() != 2) bad_value(key, text, "RHO,V");
  return StatePV(v[0], v[1]);
}

inline bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  bad_value(key, text, "true or false");
}

inline std::string join(const std::vector<double>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ',';
    s += format_double(values[i]);
  }
  return s;
}

}  // namespace detail

inline SchemeKind parse_scheme(std::string_view text) {
  for (SchemeKind k : {SchemeKind::ClassicalGodunov, SchemeKind::ConstrainedRS1,
                       SchemeKind::ConstrainedRS2Ghost, SchemeKind::ConstrainedRS2Freeze}) {
    if (text == scheme_name(k)) return k;
  }
  detail::bad_value("scheme", text, "classical, rs1, rs2-ghost or rs2-freeze");
}

inline const std::vector<std::string_view>& config_keys() {
  static const std::vector<std::string_view> keys = {
      "gamma", "q",     "left",  "right", "scheme",     "dx",   "x_left",       "x_right",
      "t_final", "output_times", "out", "seed", "n", "activation", "box", "invert_check",
      "domain_sweep"};
  return keys;
}

/// Sets one key; CLI flags use the same names with '-' in place of '_'.
inline void apply_setting(RunConfig& c, std::string_view key, std::string_view value) {
  using namespace detail;
  value = trim(value);
  if (key == "gamma") {
    c.gamma = parse_double(key, value);
  } else if (key == "q") {
    c.q = parse_double(key, value);
  } else if (key == "left") {
    c.left = parse_state(key, value);
  } else if (key == "right") {
    c.right = parse_state(key, value);
  } else if (key == "scheme") {
    c.scheme = parse_scheme(value);
  } else if (key == "dx") {
    c.dx = parse_double(key, value);
  } else if (key == "x_left") {
    c.x_left = parse_double(key, value);
  } else if (key == "x_right") {
    c.x_right = parse_double(key, value);
  } else if (key == "t_final") {
    c.t_final = parse_double(key, value);
  } else if (key == "output_times") {
    c.output_times = parse_list(key, value);
  } else if (key == "out") {
    c.out = std::string(value);
  } else if (key == "seed") {
    std::uint64_t s = 0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), s);
    if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
      bad_value(key, value, "a non-negative integer");
    }
    c.seed = s;
  } else if (key == "n") {
    std::size_t n = 0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), n);
    if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
      bad_value(key, value, "a non-negative integer");
    }
    c.n = n;
  } else if (key == "activation") {
    if (value == "above") {
      c.activation = Activation::FluxExceedsQ;
    } else if (value == "below") {
      c.activation = Activation::FluxBelowQ;
    } else {
      bad_value(key, value, "above or below");
    }
  } else if (key == "box") {
    const std::vector<double> b = parse_list(key, value);
    if (b.size() != 4) bad_value(key, value, "V1,V2,W1,W2");
    c.box = {b[0], b[1], b[2], b[3]};
  } else if (key == "invert_check") {
    c.invert_check = parse_bool(key, value);
  } else if (key == "domain_sweep") {
    c.domain_sweep = parse_bool(key, value);
  } else {
    throw Error(Errc::InvalidConfig, "unknown key '" + std::string(key) + "'");
  }
}

/// Parses `key = value` lines; '#' starts a comment. Keys not present keep
/// the values of `base`.
inline RunConfig parse_config(std::string_view text, RunConfig base = {}) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(Errc::InvalidConfig, "line " + std::to_string(line_no) + ": expected key = value");
    }
    try {
      apply_setting(base, detail::trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const Error& e) {
      const std::string what = e.what();
      const std::string detail = what.substr(std::min(what.size(), errc_name(e.code()).size() + 2));
      throw Error(e.code(), "line " + std::to_string(line_no) + ": " + detail);
    }
  }
  return base;
}

inline std::string serialize(const RunConfig& c) {
  std::ostringstream os;
  os << "gamma = " << format_double(c.gamma) << '\n'
     << "q = " << format_double(c.q) << '\n'
     << "left = " << format_double(c.left.rho) << ',' << format_double(c.left.v) << '\n'
     << "right = " << format_double(c.right.rho) << ',' << format_double(c.right.v) << '\n'
     << "scheme = " << scheme_name(c.scheme) << '\n'
     << "dx = " << format_double(c.dx) << '\n'
     << "x_left = " << format_double(c.x_left) << '\n'
     << "x_right = " << format_double(c.x_right) << '\n'
     << "t_final = " << format_double(c.t_final) << '\n'
     << "output_times = " << detail::join(c.output_times) << '\n'
     << "out = " << c.out << '\n'
     << "seed = " << c.seed << '\n'
     << "n = " << c.n << '\n'
     << "activation = " << (c.activation == Activation::FluxExceedsQ ? "above" : "below") << '\n'
     << "box = " << detail::join({c.box.begin(), c.box.end()}) << '\n'
     << "invert_check = " << (c.invert_check ? "true" : "false") << '\n'
     << "domain_sweep = " << (c.domain_sweep ? "true" : "false") << '\n';
  return os.str();
}

/// Riemann data of the four validation tests: q = 3, p(rho) = rho, dx = 0.002.
inline RunConfig preset(std::string_view name, RunConfig base = {}) {
  base.gamma = 1.0;
  base.q = 3.0;
  base.dx = 0.002;
  base.right = StatePV(1.5, 3.0);
  if (name == "test1a" || name == "test2a") {
    base.left = StatePV(1.5, 3.0);
  } else if (name == "test1b" || name == "test2b") {
    base.left = StatePV(4.0, 0.5);
  } else {
    throw Error(Errc::InvalidConfig, "unknown preset '" + std::string(name) +
                                         "' (expected test1a, test1b, test2a or test2b)");
  }
  base.scheme = name.substr(0, 5) == "test1" ? SchemeKind::ConstrainedRS1
                                             : SchemeKind::ConstrainedRS2Freeze;
  return base;
}

namespace detail {

inline std::ofstream open_output(const RunConfig& c, const std::string& name) {
  std::filesystem::create_directories(c.out);
  std::ofstream f(std::filesystem::path(c.out) / name);
  if (!f) throw Error(Errc::InvalidConfig, "cannot write " + (std::filesystem::path(c.out) / name).string());
  return f;
}

template <PressureLaw P>
void write_state_row(std::ostream& os, double t, double x, const StatePV& s, const P& p) {
  os << csv(t) << ',' << csv(x) << ',' << csv(s.rho) << ',' << csv(s.v) << ','
     << csv(quantity_of(s, Quantity::Y, p)) << ',' << csv(w_of(s, p)) << '\n';
}

inline void write_fan(std::ostream& os, const WaveFan& fan) {
  os << "kind,speed_lo,speed_hi,rho_left,v_left,rho_right,v_right\n";
  if (fan.waves.empty()) {
    os << "constant,-inf,inf," << csv(fan.left.rho) << ',' << csv(fan.left.v) << ','
       << csv(fan.right.rho) << ',' << csv(fan.right.v) << '\n';
  }
  for (const Wave& w : fan.waves) {
    os << wave_kind_name(w.kind) << ',' << csv(w.speed_lo) << ',' << csv(w.speed_hi) << ','
       << csv(w.left.rho) << ',' << csv(w.left.v) << ',' << csv(w.right.rho) << ','
       << csv(w.right.v) << '\n';
  }
}

template <PressureLaw P>
void write_profile(std::ostream& os, const WaveFan& fan, const P& p, int rays = 1001) {
  double reach = 1.0;
  for (const Wave& w : fan.waves) reach = std::max({reach, std::abs(w.speed_lo), std::abs(w.speed_hi)});
  reach *= 1.25;
  os << "xi,rho,v,y,w\n";
  for (int k = 0; k < rays; ++k) {
    const double xi = -reach + 2.0 * reach * k / (rays - 1);
    const StatePV s = sample(fan, xi, p);
    os << csv(xi) << ',' << csv(s.rho) << ',' << csv(s.v) << ','
       << csv(quantity_of(s, Quantity::Y, p)) << ',' << csv(w_of(s, p)) << '\n';
  }
}

}  // namespace detail

inline int cmd_riemann(const RunConfig& c, std::ostream& log) {
  const PowerLaw p(c.gamma);
  const ConstraintQ q(c.q);
  for (SolverKind kind : {SolverKind::Classical, SolverKind::RS1, SolverKind::RS2}) {
    const WaveFan fan = solve(kind, c.left, c.right, q, p);
    if (auto problem = validate_fan(fan, p)) throw Error(Errc::AssertionFailure, *problem);
    const std::string tag(solver_kind_name(kind));
    auto fan_file = detail::open_output(c, "fan_" + tag + ".csv");
    detail::write_fan(fan_file, fan);
    auto profile_file = detail::open_output(c, "profile_" + tag + ".csv");
    detail::write_profile(profile_file, fan, p);
    const Flux2 f = flux_at_zero(fan, p);
    log << tag << ": " << fan.waves.size() << " waves, flux at x=0 (" << csv(f.f1) << ", "
        << csv(f.f2) << ")" << (kind != SolverKind::Classical && fan.constrained() ? ", constrained" : "")
        << '\n';
  }
  return static_cast<int>(ExitCode::Ok);
}

inline int cmd_simulate(const RunConfig& c, std::ostream& log, std::ostream& err) {
  const PowerLaw p(c.gamma);
  RunSpec spec{c.left,    c.right,         SimGrid::covering(c.x_left, c.x_right, c.dx),
               ConstraintQ(c.q), c.scheme, c.t_final, c.output_times, c.activation};
  if (!(c.t_final >= 0.0)) throw Error(Errc::InvalidConfig, "t_final must be non-negative");
  const RunResult r = run(spec, p);
  if (!r.validated_envelope) {
    err << "warning: left and right states have different w; outside the validated data range\n";
  }
  const WaveFan fan = solve(scheme_solver(c.scheme), c.left, c.right, ConstraintQ(c.q), p);

  for (std::size_t i = 0; i < r.snapshots.size(); ++i) {
    const SimState& snap = r.snapshots[i];
    const std::vector<StatePV> prim = awr::detail::decode(snap, spec.grid, p);
    char index[16];
    std::snprintf(index, sizeof index, "%03zu", i);
    auto file = detail::open_output(c, std::string("snapshot_") + index + ".csv");
    auto exact = detail::open_output(c, std::string("exact_") + index + ".csv");
    file << "t,x,rho,v,y,w\n";
    exact << "t,x,rho,v,y,w\n";
    for (std::size_t k = 0; k < prim.size(); ++k) {
      const double x = spec.grid.center(k);
      detail::write_state_row(file, snap.t, x, prim[k], p);
      detail::write_state_row(exact, snap.t, x, exact_at(fan, x, snap.t, p), p);
    }
  }

  auto ledger = detail::open_output(c, "ledger.csv");
  ledger << "n,t,dt,total_rho,total_y,y_defect_interface\n";
  for (const LedgerRow& row : r.ledger) {
    ledger << row.n << ',' << csv(row.t) << ',' << csv(row.dt) << ',' << csv(row.total_rho) << ','
           << csv(row.total_y) << ',' << csv(row.y_defect_interface) << '\n';
  }

  const MaxPrincipleReport& mp = r.max_principle;
  const LedgerClosure closure = ledger_closure(r.ledger);
  auto report = detail::open_output(c, "report.csv");
  report << "key,value\n"
         << "scheme," << scheme_name(c.scheme) << '\n'
         << "steps," << r.ledger.size() - 1 << '\n'
         << "active_steps," << r.active_steps << '\n'
         << "max_interface_f1," << csv(r.max_interface_f1) << '\n'
         << "w_min_initial," << csv(mp.w_min_initial) << '\n'
         << "w_max_initial," << csv(mp.w_max_initial) << '\n'
         << "w_min," << csv(mp.w_min) << '\n'
         << "w_max," << csv(mp.w_max) << '\n'
         << "ledger_rho_residual," << csv(closure.max_rho_residual) << '\n'
         << "ledger_y_residual," << csv(closure.max_y_residual) << '\n'
         << "y_defect_interface," << csv(r.ledger.back().y_defect_interface) << '\n';

  const auto errors = errors_vs_exact(r.final_state, spec.grid, fan, p);
  auto summary = detail::open_output(c, "errors.csv");
  summary << "quantity,l1,linf\n";
  for (std::size_t i = 0; i < errors.size(); ++i) {
    summary << quantity_name(kAllQuantities[i]) << ',' << csv(errors[i].l1) << ','
            << csv(errors[i].linf) << '\n';
  }
  log << scheme_name(c.scheme) << ": " << r.ledger.size() - 1 << " steps to t=" << csv(r.final_state.t)
      << ", L1(rho) error " << csv(errors[0].l1) << '\n';
  return static_cast<int>(ExitCode::Ok);
}

inline int cmd_campaign(const RunConfig& c, std::ostream& log) {
  const PowerLaw p(c.gamma);
  const CampaignResult tv = random_campaign(c.n, c.seed, SamplingRanges{}, p, 1e-9, c.invert_check);
  const char* header =
      "seed,index,rho_l,v_l,rho_r,v_r,q,tv_rho_1,tv_rho_2,tv_v_1,tv_v_2,tv_y_1,tv_y_2,tv_w_1,tv_w_2,"
      "pass\n";
  auto all = detail::open_output(c, "tv_campaign.csv");
  auto bad = detail::open_output(c, "tv_violations.csv");
  all << header;
  bad << header;
  for (const CampaignRecord& rec : tv.records) {
    std::ostringstream row;
    row << c.seed << ',' << rec.index << ',' << csv(rec.left.rho) << ',' << csv(rec.left.v) << ','
        << csv(rec.right.rho) << ',' << csv(rec.right.v) << ',' << csv(rec.q);
    for (double v : rec.report.values()) row << ',' << csv(v);
    row << ',' << (rec.check.all() ? "pass" : "fail") << '\n';
    all << row.str();
    if (!rec.check.all()) bad << row.str();
  }

  std::size_t domain_violations = 0;
  auto dv = detail::open_output(c, "domain_violations.csv");
  dv << "regime,solver,property,q,v1,v2,w1,w2,rho_l,v_l,rho_r,v_r\n";
  DomainCampaignResult domains;
  if (c.domain_sweep) {
    domains = domain_campaign(std::min<std::size_t>(c.n, 200), c.seed + 1, p);
    for (const DomainViolation& v : domains.violations) {
      dv << box_regime_name(v.regime) << ',' << solver_kind_name(v.solver) << ',' << v.property
         << ',' << csv(v.q) << ',' << csv(v.box.v1()) << ',' << csv(v.box.v2()) << ','
         << csv(v.box.w1()) << ',' << csv(v.box.w2()) << ',' << csv(v.left.rho) << ','
         << csv(v.left.v) << ',' << csv(v.right.rho) << ',' << csv(v.right.v) << '\n';
    }
    domain_violations = domains.violations.size();
  }

  auto summary = detail::open_output(c, "summary.csv");
  summary << "key,value\n"
          << "triples," << tv.records.size() << '\n'
          << "rejected_draws," << tv.rejected_draws << '\n'
          << "tv_violations," << tv.violations.size() << '\n'
          << "boxes," << domains.boxes << '\n'
          << "soundness_checks," << domains.soundness_checks << '\n'
          << "completeness_checks," << domains.completeness_checks << '\n'
          << "domain_violations," << domain_violations << '\n';
  log << "tv: " << tv.violations.size() << " violations in " << tv.records.size() << " triples; "
      << "domains: " << domain_violations << " violations in " << domains.boxes << " boxes\n";
  return static_cast<int>(tv.violations.empty() && domain_violations == 0 ? ExitCode::Ok
                                                                          : ExitCode::Violation);
}

inline int cmd_domain_check(const RunConfig& c, std::ostream& log) {
  const PowerLaw p(c.gamma);
  const ConstraintQ q(c.q);
  const DomainBox box(c.box[0], c.box[1], c.box[2], c.box[3]);
  log << "vbar," << csv(vbar(q, p)) << '\n'
      << "min_h_q," << csv(min_h_q(box, q, p)) << '\n'
      << "unconstrained_bound," << is_invariant_unconstrained_bound(box, q, p) << '\n'
      << "invariant_rs1," << is_invariant_rs1(box, q, p) << '\n'
      << "invariant_rs2," << is_invariant_rs2(box, q, p) << '\n';
  for (auto kind : {CounterexampleKind::RS1Left, CounterexampleKind::RS1Right,
                    CounterexampleKind::RS2Left, CounterexampleKind::RS2Right}) {
    log << counterexample_name(kind) << ',';
    if (const auto s = counterexample_state(box, q, p, kind)) {
      log << csv(s->rho) << ';' << csv(s->v) << ";exits="
          << counterexample_exits(box, q, p, kind, *s) << '\n';
    } else {
      log << "none\n";
    }
  }
  return static_cast<int>(ExitCode::Ok);
}

/// Runs a subcommand, mapping library errors to exit code 2.
inline int dispatch(std::string_view command, const RunConfig& c, std::ostream& log,
                    std::ostream& err) {
  try {
    if (command == "riemann") return cmd_riemann(c, log);
    if (command == "simulate") return cmd_simulate(c, log, err);
    if (command == "campaign") return cmd_campaign(c, log);
    if (command == "domain-check") return cmd_domain_check(c, log);
    throw Error(Errc::InvalidConfig, "unknown command '" + std::string(command) + "'");
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return static_cast<int>(ExitCode::Failure);
}

}  // namespace awr::cli
