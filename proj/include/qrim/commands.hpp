// commands.hpp: The five CLI commands as library functions
//
// Each command writes a '#'-prefixed metadata block, one header row and its data
// rows to a stream and returns a process exit code. Invalid input raises
// std::invalid_argument; mapping exceptions to exit codes is left to the caller.

#pragma once

#include "qrim/alternating.hpp"
#include "qrim/csv.hpp"
#include "qrim/engine.hpp"
#include "qrim/errors.hpp"
#include "qrim/model.hpp"
#include "qrim/parallel.hpp"
#include "qrim/rng.hpp"
#include "qrim/sampling.hpp"
#include "qrim/simultaneous.hpp"
#include "qrim/verify.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#ifndef QRIM_VERSION
#define QRIM_VERSION "unknown"
#endif

namespace qrim::cli {

inline constexpr std::string_view kVersion = QRIM_VERSION;

enum ExitCode : int {
    kOk = 0,
    kInvalidInput = 2,
    kFrozen = 3,
    kInvariantViolation = 4,
    kIoError = 5,
};

enum class Axis { tau, j };

inline std::string_view to_string(Axis a) { return a == Axis::tau ? "tau" : "j_scale"; }

inline Axis parse_axis(std::string_view s) {
    if (s == "tau") return Axis::tau;
    if (s == "J" || s == "j") return Axis::j;
    throw std::invalid_argument("unknown sweep axis '" + std::string(s) + "' (expected tau or J)");
}

inline engine::Mode parse_mode(std::string_view s) {
    if (s == "alternating") return engine::Mode::alternating;
    if (s == "simultaneous") return engine::Mode::simultaneous;
    throw std::invalid_argument("unknown mode '" + std::string(s) +
                                "' (expected alternating or simultaneous)");
}

// Couplings default to J^H = (4, 16), J^C = (2, 8) with beta = (2, 1), omega = 1.
inline MachineConfig default_machine() {
    MachineConfig cfg;
    cfg.hot.coupling = {4.0, 16.0};
    cfg.cold.coupling = {2.0, 8.0};
    return cfg;
}

struct RunSpec {
    engine::Mode mode{engine::Mode::alternating};
    MachineConfig cfg{default_machine()};
    std::size_t collisions{100};
    std::optional<std::size_t> samples;  // bounds-sample: 1000; verify: battery default
    std::uint64_t seed{42};
    double tol{engine::kDefaultTol};
    Axis axis{Axis::tau};
    double from{0.0};
    double to{2.0};
    std::size_t points{101};
    QubitState initial{1.0, 0.0};  // ground state
    bool random_initial{false};
    bool quick{false};
    unsigned workers{0};
};

inline constexpr std::size_t kDefaultBoundsSamples = 1000;

inline void validate(const RunSpec& s) {
    qrim::validate(s.cfg);
    if (!(std::isfinite(s.tol) && s.tol > 0.0)) {
        throw std::invalid_argument("--tol must be finite and > 0");
    }
    if (!std::isfinite(s.from) || !std::isfinite(s.to)) {
        throw std::invalid_argument("--from and --to must be finite");
    }
    if (!s.random_initial) require_physical(s.initial, "initial state");
}

inline void write_metadata(std::ostream& os, std::string_view command, const RunSpec& s) {
    using csv::format_double;
    csv::write_meta(os, "qrim_version", kVersion);
    csv::write_meta(os, "command", command);
    csv::write_meta(os, "mode", engine::to_string(s.mode));
    csv::write_meta(os, "omega_s", format_double(s.cfg.omega_s));
    csv::write_meta(os, "omega_h", format_double(s.cfg.hot.bath.omega));
    csv::write_meta(os, "omega_c", format_double(s.cfg.cold.bath.omega));
    csv::write_meta(os, "beta_h", format_double(s.cfg.hot.bath.beta));
    csv::write_meta(os, "beta_c", format_double(s.cfg.cold.bath.beta));
    csv::write_meta(os, "jxx_h", format_double(s.cfg.hot.coupling.jxx));
    csv::write_meta(os, "jyy_h", format_double(s.cfg.hot.coupling.jyy));
    csv::write_meta(os, "jxx_c", format_double(s.cfg.cold.coupling.jxx));
    csv::write_meta(os, "jyy_c", format_double(s.cfg.cold.coupling.jyy));
    csv::write_meta(os, "tau", format_double(s.cfg.tau));
    csv::write_meta(os, "collisions", std::to_string(s.collisions));
    csv::write_meta(os, "samples", s.samples ? std::to_string(*s.samples) : "default");
    csv::write_meta(os, "seed", std::to_string(s.seed));
    csv::write_meta(os, "tol", format_double(s.tol));
    csv::write_meta(os, "axis", to_string(s.axis));
    csv::write_meta(os, "from", format_double(s.from));
    csv::write_meta(os, "to", format_double(s.to));
    csv::write_meta(os, "points", std::to_string(s.points));
    csv::write_meta(os, "p0", format_double(s.initial.p));
    csv::write_meta(os, "c0_re", format_double(s.initial.c.real()));
    csv::write_meta(os, "c0_im", format_double(s.initial.c.imag()));
    csv::write_meta(os, "random_initial", s.random_initial ? "1" : "0");
    csv::write_meta(os, "quick", s.quick ? "1" : "0");
}

// ---------------------------------------------------------------------------

inline int cmd_dynamics(const RunSpec& s, std::ostream& os) {
    validate(s);
    QubitState start = s.initial;
    if (s.random_initial) {
        SampleStream rng(s.seed, 0);
        start = random_state(rng);
    }
    const engine::Trajectory traj = engine::evolve(start, s.cfg, s.mode, s.collisions);
    write_metadata(os, "dynamics", s);
    csv::write_header(os, {"n", "p", "re_c", "im_c", "q_hot", "q_cold", "w_hot", "w_cold", "de"});
    for (const engine::TrajectoryPoint& pt : traj) {
        csv::write_row(os, {pt.n, pt.state.p, pt.state.c.real(), pt.state.c.imag(),
                            pt.ledger.q_hot, pt.ledger.q_cold, pt.ledger.w_hot, pt.ledger.w_cold,
                            pt.ledger.de_system});
    }
    return kOk;
}

// ---------------------------------------------------------------------------

struct LimitCycleValues {
    double p_after_cold{std::numeric_limits<double>::quiet_NaN()};
    double p_after_hot{std::numeric_limits<double>::quiet_NaN()};
    ThermoCycle thermo{};
};

inline bool is_equal_coupling(const MachineConfig& c) {
    const double j = c.hot.coupling.jxx;
    return c.hot.coupling.jyy == j && c.cold.coupling.jxx == j && c.cold.coupling.jyy == j &&
           c.hot.bath.omega == c.omega_s && c.cold.bath.omega == c.omega_s;
}

inline int cmd_limit_cycle(const RunSpec& s, std::ostream& os) {
    validate(s);
    const MachineConfig& cfg = s.cfg;
    LimitCycleValues analytic;
    LimitCycleValues oracle;
    std::string method;
    bool frozen = false;

    if (s.mode == engine::Mode::alternating) {
        method = "closed_form";
        const alternating::LimitCycleReport lc = alternating::limit_cycle(cfg);
        frozen = lc.frozen;
        if (!frozen) {
            analytic = {lc.p_after_cold, lc.p_after_hot, alternating::thermo_limit_cycle(cfg, lc)};
        }
    } else {
        frozen = cfg.all_couplings_zero();
        const double p_c = gibbs_population(cfg.cold.bath);
        const double p_h = gibbs_population(cfg.hot.bath);
        if (is_equal_coupling(cfg)) {
            method = "equal_coupling";
            const auto cond = simultaneous::conduction_closed_form(cfg.hot.coupling.jxx, cfg.tau,
                                                                   cfg.omega_s, p_c, p_h);
            const double p = 0.5 * (p_c + p_h);
            ThermoCycle t;
            t.q_cold = cond.q_per_collision;
            t.q_hot = -cond.q_per_collision;
            analytic = {p, p, t};
        } else if (!frozen) {
            method = "second_order";
            const double p = simultaneous::dyson_fixed_point(cfg);
            const auto q = simultaneous::dyson_heat(p, cfg);
            const auto w = simultaneous::dyson_work(p, cfg);
            ThermoCycle t;
            t.q_cold = q.cold;
            t.q_hot = q.hot;
            t.w_cold = w.cold;
            t.w_hot = w.hot;
            t.w_total = w.cold + w.hot;
            t.q_total = q.cold + q.hot;
            analytic = {p, p, t};
        } else {
            method = "none";
        }
    }
    if (!frozen) {
        try {
            const engine::NumericLimitCycle num = engine::find_limit_cycle_numeric(cfg, s.mode, s.tol);
            oracle = {num.p_after_cold, num.p_after_hot, num.thermo};
        } catch (const FrozenDynamics&) {
            frozen = true;
        }
    }
    if (frozen) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        const ThermoCycle blank{nan, nan, nan, nan, nan, nan, nan, nan, nan};
        analytic = {nan, nan, blank};
        oracle = analytic;
    }

    write_metadata(os, "limit-cycle", s);
    csv::write_header(os, {"mode", "frozen", "analytic_method", "p_after_cold",
                           "p_after_cold_oracle", "p_after_cold_diff", "p_after_hot",
                           "p_after_hot_oracle", "p_after_hot_diff", "q_cold", "q_cold_oracle",
                           "q_cold_diff", "q_hot", "q_hot_oracle", "q_hot_diff", "w_cold",
                           "w_cold_oracle", "w_cold_diff", "w_hot", "w_hot_oracle",
                           "w_hot_diff"});
    auto diff = [](double a, double b) { return std::abs(a - b); };
    const ThermoCycle& a = analytic.thermo;
    const ThermoCycle& o = oracle.thermo;
    csv::write_row(os, {engine::to_string(s.mode), frozen, method, analytic.p_after_cold,
                        oracle.p_after_cold, diff(analytic.p_after_cold, oracle.p_after_cold),
                        analytic.p_after_hot, oracle.p_after_hot,
                        diff(analytic.p_after_hot, oracle.p_after_hot), a.q_cold, o.q_cold,
                        diff(a.q_cold, o.q_cold), a.q_hot, o.q_hot, diff(a.q_hot, o.q_hot),
                        a.w_cold, o.w_cold, diff(a.w_cold, o.w_cold), a.w_hot, o.w_hot,
                        diff(a.w_hot, o.w_hot)});
    return frozen ? kFrozen : kOk;
}

// ---------------------------------------------------------------------------

struct SweepPoint {
    double value{0.0};
    double q_cold{std::numeric_limits<double>::quiet_NaN()};
    double q_hot{std::numeric_limits<double>::quiet_NaN()};
    double current{std::numeric_limits<double>::quiet_NaN()};
    double p_after_cold{std::numeric_limits<double>::quiet_NaN()};
    double p_after_hot{std::numeric_limits<double>::quiet_NaN()};
};

// Limit-cycle populations and heats; NaN fields when frozen.
inline SweepPoint evaluate_limit_cycle(const MachineConfig& cfg, engine::Mode mode, double tol) {
    SweepPoint p;
    if (mode == engine::Mode::alternating) {
        const alternating::LimitCycleReport lc = alternating::limit_cycle(cfg);
        if (lc.frozen) return p;
        const ThermoCycle t = alternating::thermo_limit_cycle(cfg, lc);
        p.q_cold = t.q_cold;
        p.q_hot = t.q_hot;
        p.p_after_cold = lc.p_after_cold;
        p.p_after_hot = lc.p_after_hot;
        return p;
    }
    try {
        const engine::NumericLimitCycle lc = engine::find_limit_cycle_numeric(cfg, mode, tol);
        p.q_cold = lc.thermo.q_cold;
        p.q_hot = lc.thermo.q_hot;
        p.p_after_cold = lc.p_after_cold;
        p.p_after_hot = lc.p_after_hot;
    } catch (const FrozenDynamics&) {
    }
    return p;
}

inline constexpr double kCurrentStep = 1e-5;

// Heat current dQ_C/dtau by central differences of the limit-cycle cold heat.
inline double heat_current_numeric(const MachineConfig& cfg, engine::Mode mode, double tol) {
    const double h = kCurrentStep * std::max(1.0, cfg.tau);
    auto q_at = [&](double tau) {
        MachineConfig c = cfg;
        c.tau = tau;
        return evaluate_limit_cycle(c, mode, tol).q_cold;
    };
    if (cfg.tau < h) return (q_at(cfg.tau + h) - q_at(cfg.tau)) / h;
    return (q_at(cfg.tau + h) - q_at(cfg.tau - h)) / (2.0 * h);
}

inline std::vector<double> sweep_values(double from, double to, std::size_t points) {
    std::vector<double> v(points);
    for (std::size_t k = 0; k < points; ++k) {
        v[k] = points == 1 ? from
                           : from + (to - from) * static_cast<double>(k) /
                                        static_cast<double>(points - 1);
    }
    if (points > 1) v.back() = to;
    return v;
}

// The J axis multiplies all four couplings of the run by the axis value.
inline int cmd_heat_sweep(const RunSpec& s, std::ostream& os) {
    validate(s);
    if (s.points == 0) throw std::invalid_argument("--points must be >= 1");
    if (s.from > s.to) throw std::invalid_argument("--from must not exceed --to");
    if (s.axis == Axis::tau && s.from < 0.0) {
        throw std::invalid_argument("tau sweep must start at tau >= 0");
    }
    const std::vector<double> values = sweep_values(s.from, s.to, s.points);
    const auto rows = parallel_map<SweepPoint>(
        values.size(),
        [&](std::size_t k) {
            MachineConfig cfg = s.cfg;
            if (s.axis == Axis::tau) {
                cfg.tau = values[k];
            } else {
                const double f = values[k];
                cfg.hot.coupling = {f * s.cfg.hot.coupling.jxx, f * s.cfg.hot.coupling.jyy};
                cfg.cold.coupling = {f * s.cfg.cold.coupling.jxx, f * s.cfg.cold.coupling.jyy};
            }
            SweepPoint p = evaluate_limit_cycle(cfg, s.mode, s.tol);
            p.value = values[k];
            p.current = heat_current_numeric(cfg, s.mode, s.tol);
            return p;
        },
        s.workers);

    write_metadata(os, "heat-sweep", s);
    csv::write_header(os, {to_string(s.axis), "q_cold", "q_hot", "current", "p_after_cold",
                           "p_after_hot"});
    for (const SweepPoint& p : rows) {
        csv::write_row(os, {p.value, p.q_cold, p.q_hot, p.current, p.p_after_cold, p.p_after_hot});
    }
    return kOk;
}

// ---------------------------------------------------------------------------

inline double bounds_slack(engine::Mode mode) {
    return mode == engine::Mode::alternating ? verify::limits::bounds_alternating
                                             : verify::limits::bounds_simultaneous;
}

inline int cmd_bounds_sample(const RunSpec& s, std::ostream& os) {
    validate(s);
    const std::size_t n = s.samples.value_or(kDefaultBoundsSamples);
    if (n == 0) throw std::invalid_argument("--samples must be >= 1");
    const auto rows = parallel_map<BoundsSample>(
        n, [&](std::size_t i) { return bounds_sample(s.cfg, s.mode, s.seed, i, s.tol); },
        s.workers);

    write_metadata(os, "bounds-sample", s);
    csv::write_header(os, {"sample", "jxx_h", "jyy_h", "jxx_c", "jyy_c", "frozen", "p_after_cold",
                           "p_after_hot", "upper_cold", "upper_hot", "lower_hot", "lower_cold",
                           "q_cold", "w_total"});
    const double inf = std::numeric_limits<double>::infinity();
    double min_uc = inf, min_uh = inf, min_lh = inf, min_lc = inf, min_qc = inf;
    std::size_t frozen = 0;
    std::size_t violations = 0;
    const double slack = bounds_slack(s.mode);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const BoundsSample& r = rows[i];
        csv::write_row(os, {i, r.cfg.hot.coupling.jxx, r.cfg.hot.coupling.jyy,
                            r.cfg.cold.coupling.jxx, r.cfg.cold.coupling.jyy, r.frozen,
                            r.p_after_cold, r.p_after_hot, r.upper_cold, r.upper_hot, r.lower_hot,
                            r.lower_cold, r.q_cold, r.w_total});
        if (r.frozen) {
            ++frozen;
            continue;
        }
        min_uc = std::min(min_uc, r.upper_cold);
        min_uh = std::min(min_uh, r.upper_hot);
        min_lh = std::min(min_lh, r.lower_hot);
        min_lc = std::min(min_lc, r.lower_cold);
        min_qc = std::min(min_qc, r.q_cold);
        if (!(r.worst_margin() >= slack)) ++violations;
    }
    using csv::format_double;
    os << "# summary samples=" << n << " frozen=" << frozen << " violations=" << violations
       << " slack=" << format_double(-slack) << " min_upper_cold=" << format_double(min_uc)
       << " min_upper_hot=" << format_double(min_uh) << " min_lower_hot=" << format_double(min_lh)
       << " min_lower_cold=" << format_double(min_lc) << " min_q_cold=" << format_double(min_qc)
       << " verdict=" << (violations == 0 ? "pass" : "fail") << '\n';
    return violations == 0 ? kOk : kInvariantViolation;
}

// ---------------------------------------------------------------------------

inline verify::Options verify_options(const RunSpec& s) {
    verify::Options o = s.quick ? verify::Options::quick() : verify::Options{};
    o.seed = s.seed;
    o.campaign_base = s.cfg;
    o.tol = s.tol;
    o.workers = s.workers;
    if (s.samples) o.oracle_configs = *s.samples;
    return o;
}

inline void write_report(std::ostream& os, const verify::Report& rep) {
    csv::write_header(os, {"check", "status", "samples", "skipped", "worst", "relation", "limit",
                           "note", "offending"});
    for (const verify::CheckResult& c : rep.checks) {
        csv::write_row(os, {c.name, verify::to_string(c.status), c.samples, c.skipped, c.worst,
                            verify::to_string(c.relation), c.limit, csv::quote(c.note),
                            csv::quote(c.offending)});
    }
    os << "# verdict=" << (rep.passed() ? "pass" : "fail") << " checks=" << rep.checks.size()
       << " failures=" << rep.failures() << '\n';
}

inline int cmd_verify(const RunSpec& s, std::ostream& os, const verify::Options& o) {
    validate(s);
    const verify::Report rep = verify::run(o);
    write_metadata(os, "verify", s);
    write_report(os, rep);
    return rep.passed() ? kOk : kInvariantViolation;
}

inline int cmd_verify(const RunSpec& s, std::ostream& os) {
    return cmd_verify(s, os, verify_options(s));
}

}  // namespace qrim::cli
