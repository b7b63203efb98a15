// verify.hpp: Invariant battery behind the `verify` command
//
// Each check evaluates one invariant over a seeded campaign and keeps the worst
// value seen together with the configuration that produced it.

#pragma once

#include "qrim/alternating.hpp"
#include "qrim/engine.hpp"
#include "qrim/errors.hpp"
#include "qrim/model.hpp"
#include "qrim/parallel.hpp"
#include "qrim/rng.hpp"
#include "qrim/sampling.hpp"
#include "qrim/simultaneous.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

namespace qrim::verify {

enum class Status { pass, fail, info };
enum class Relation { at_most, at_least };

inline std::string_view to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::info: return "info";
    }
    return "fail";
}

inline std::string_view to_string(Relation r) { return r == Relation::at_most ? "<=" : ">="; }

struct CheckResult {
    std::string name;
    Status status{Status::pass};
    std::size_t samples{0};
    std::size_t skipped{0};  // frozen configurations, excluded from the check
    double worst{std::numeric_limits<double>::quiet_NaN()};
    Relation relation{Relation::at_most};
    double limit{0.0};
    std::string offending;  // full-precision configuration of the worst sample on failure
    std::string note;
};

struct Report {
    std::vector<CheckResult> checks;

    std::size_t failures() const {
        return static_cast<std::size_t>(std::count_if(
            checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == Status::fail; }));
    }
    bool passed() const { return failures() == 0; }
};

using ThermoFn = std::function<ThermoCycle(const MachineConfig&)>;

struct Options {
    std::uint64_t seed{42};
    // Base of the coupling campaigns; its couplings are overwritten per sample.
    MachineConfig campaign_base{};
    std::size_t oracle_configs{1000};
    std::size_t bounds_samples{60000};
    std::size_t simultaneous_samples{15000};
    std::size_t grid_points{21};  // per coupling axis
    std::size_t no_engine_random{100000};
    std::size_t first_law_configs{100};
    std::size_t first_law_collisions{40};
    std::size_t trotter_points{50};
    std::size_t dyson_states{16};
    double tol{engine::kDefaultTol};
    unsigned workers{0};
    // Closed-form alternating thermodynamics under test; empty means the library's.
    ThermoFn alternating_thermo;

    // A reduced battery that finishes in about a second.
    static Options quick() {
        Options o;
        o.oracle_configs = 100;
        o.bounds_samples = 2000;
        o.simultaneous_samples = 300;
        o.grid_points = 5;
        o.no_engine_random = 500;
        o.first_law_configs = 10;
        o.first_law_collisions = 10;
        o.trotter_points = 10;
        o.dyson_states = 4;
        return o;
    }
};

// Tolerances of the individual checks.
namespace limits {
inline constexpr double oracle = 1e-9;
inline constexpr double no_refrigeration_alternating = -1e-12;
inline constexpr double no_refrigeration_simultaneous = -1e-9;
inline constexpr double bounds_alternating = -1e-12;
inline constexpr double bounds_simultaneous = -1e-9;
inline constexpr double energy_closure = 1e-11;
inline constexpr double first_law = 1e-11;
inline constexpr double physicality = -1e-10;
inline constexpr double no_engine_alternating = 1e-10;
inline constexpr double no_engine_simultaneous = 1e-9;
inline constexpr double trotter_factor = 5.0;
inline constexpr double dyson_factor = 10.0;
}  // namespace limits

// Trotter cut: J_yy^H = J_xx^H / 4, J_xx^C = J_xx^H / 2, J_yy^C = J_xx^H / 8.
inline constexpr double kTrotterTau = 0.01;
inline constexpr double kTrotterMaxJTau = 1.0;
inline constexpr double kDysonTau = 0.001;
inline constexpr double kDysonOutOfRegimeTau = 0.5;

namespace detail {

// Campaign-specific stream offsets keep the campaigns statistically independent.
inline constexpr std::uint64_t kOracleStream = 1ULL << 40;
inline constexpr std::uint64_t kFirstLawStream = 2ULL << 40;
inline constexpr std::uint64_t kNoEngineStream = 3ULL << 40;
inline constexpr std::uint64_t kDysonStream = 4ULL << 40;
inline constexpr std::uint64_t kResonantStream = 5ULL << 40;

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Running extremum; a NaN sample poisons the result.
class Worst {
public:
    explicit Worst(Relation r)
        : rel_(r),
          value_(r == Relation::at_most ? -std::numeric_limits<double>::infinity()
                                        : std::numeric_limits<double>::infinity()) {}

    void add(double v, const MachineConfig& cfg) {
        ++count_;
        if (poisoned_) return;
        if (std::isnan(v)) {
            poisoned_ = true;
            value_ = v;
            cfg_ = cfg;
            return;
        }
        if (rel_ == Relation::at_most ? v > value_ : v < value_) {
            value_ = v;
            cfg_ = cfg;
        }
    }
    void skip() { ++skipped_; }

    CheckResult finish(std::string name, double limit, std::string note = {}) const {
        CheckResult r;
        r.name = std::move(name);
        r.samples = count_;
        r.skipped = skipped_;
        r.relation = rel_;
        r.limit = limit;
        r.note = std::move(note);
        r.worst = count_ == 0 ? kNaN : value_;
        const bool ok = count_ > 0 && !poisoned_ &&
                        (rel_ == Relation::at_most ? value_ <= limit : value_ >= limit);
        r.status = ok ? Status::pass : Status::fail;
        if (!ok && count_ > 0) r.offending = describe(cfg_);
        return r;
    }

private:
    Relation rel_;
    double value_;
    bool poisoned_{false};
    std::size_t count_{0};
    std::size_t skipped_{0};
    MachineConfig cfg_{};
};

inline ThermoCycle default_thermo(const MachineConfig& cfg) {
    return alternating::thermo_limit_cycle(cfg);
}

inline double max_thermo_difference(const ThermoCycle& a, const ThermoCycle& b) {
    return std::max({std::abs(a.q_cold - b.q_cold), std::abs(a.q_hot - b.q_hot),
                     std::abs(a.w_cold - b.w_cold), std::abs(a.w_hot - b.w_hot)});
}

inline const ThermoFn& thermo_of(const Options& o) {
    static const ThermoFn fallback = default_thermo;
    return o.alternating_thermo ? o.alternating_thermo : fallback;
}

}  // namespace detail

// Closed-form alternating limit cycle against the engine on random, generally
// detuned configurations: populations, thermodynamics and per-stroke energy closure.
// No-refrigeration is evaluated on a resonant redraw of the same ranges, since the
// theorem needs one shared frequency.
inline std::vector<CheckResult> check_alternating_oracle(const Options& o) {
    struct Sample {
        MachineConfig cfg;
        bool frozen{false};
        double population{detail::kNaN};
        double thermo{detail::kNaN};
        double closure{detail::kNaN};
        MachineConfig resonant;
        bool resonant_frozen{false};
        double q_cold{detail::kNaN};
    };
    const ThermoFn& thermo = detail::thermo_of(o);
    const auto samples = parallel_map<Sample>(
        o.oracle_configs,
        [&](std::size_t i) {
            SampleStream rng(o.seed, detail::kOracleStream + i);
            Sample s;
            s.cfg = random_machine(rng, false);
            SampleStream rng_res(o.seed, detail::kResonantStream + i);
            s.resonant = random_machine(rng_res, true);
            if (alternating::limit_cycle(s.resonant).frozen) {
                s.resonant_frozen = true;
            } else {
                s.q_cold = thermo(s.resonant).q_cold;
            }
            const alternating::LimitCycleReport lc = alternating::limit_cycle(s.cfg);
            if (lc.frozen) {
                s.frozen = true;
                return s;
            }
            const ThermoCycle t = thermo(s.cfg);
            s.closure = std::max({std::abs(t.de_cold + t.w_cold + t.q_cold),
                                  std::abs(t.de_hot + t.w_hot + t.q_hot),
                                  std::abs(t.w_total + t.q_total)});
            try {
                const engine::NumericLimitCycle num =
                    engine::find_limit_cycle_numeric(s.cfg, engine::Mode::alternating, o.tol);
                s.population = std::max(std::abs(lc.p_after_cold - num.p_after_cold),
                                        std::abs(lc.p_after_hot - num.p_after_hot));
                s.thermo = detail::max_thermo_difference(t, num.thermo);
            } catch (const NonConvergence&) {
                // leaves NaN, which fails the check
            }
            return s;
        },
        o.workers);

    detail::Worst pop(Relation::at_most), th(Relation::at_most), closure(Relation::at_most),
        qc(Relation::at_least);
    for (const Sample& s : samples) {
        if (s.resonant_frozen) {
            qc.skip();
        } else {
            qc.add(s.q_cold, s.resonant);
        }
        if (s.frozen) {
            pop.skip();
            th.skip();
            closure.skip();
            continue;
        }
        pop.add(s.population, s.cfg);
        th.add(s.thermo, s.cfg);
        closure.add(s.closure, s.cfg);
    }
    return {
        pop.finish("alternating_population_oracle", limits::oracle,
                   "max |closed form - engine| over both limit-cycle populations"),
        th.finish("alternating_thermo_oracle", limits::oracle,
                  "max |closed form - engine| over Q_C Q_H W_C W_H"),
        closure.finish("alternating_energy_closure", limits::energy_closure,
                       "max |dE + W + Q| per stroke and per cycle"),
        qc.finish("alternating_no_refrigeration", limits::no_refrigeration_alternating,
                  "min Q_C of the closed-form limit cycle; resonant random configurations"),
    };
}

// Closed-form alternating campaign over random couplings on the campaign base:
// no-refrigeration and the population window [1 - p_C, p_C].
inline std::vector<CheckResult> check_alternating_bounds(const Options& o) {
    const auto samples = parallel_map<BoundsSample>(
        o.bounds_samples,
        [&](std::size_t i) {
            return bounds_sample(o.campaign_base, engine::Mode::alternating, o.seed, i, o.tol);
        },
        o.workers);
    detail::Worst qc(Relation::at_least), win(Relation::at_least);
    for (const BoundsSample& s : samples) {
        if (s.frozen) {
            qc.skip();
            win.skip();
            continue;
        }
        qc.add(s.q_cold, s.cfg);
        win.add(s.worst_margin(), s.cfg);
    }
    return {
        qc.finish("alternating_campaign_no_refrigeration", limits::no_refrigeration_alternating,
                  "min Q_C of the closed-form limit cycle over the coupling campaign"),
        win.finish("alternating_population_bounds", limits::bounds_alternating,
                   "min margin to [1-p_C p_C] after either stroke; the lower bound after "
                   "the cold stroke is observed rather than proven"),
    };
}

// Engine-evolved simultaneous campaign: no-refrigeration and population window.
// Both are conjectures at strong coupling; a pass is numerical support only.
inline std::vector<CheckResult> check_simultaneous_campaign(const Options& o) {
    const auto samples = parallel_map<BoundsSample>(
        o.simultaneous_samples,
        [&](std::size_t i) {
            return bounds_sample(o.campaign_base, engine::Mode::simultaneous, o.seed, i, o.tol);
        },
        o.workers);
    detail::Worst qc(Relation::at_least), win(Relation::at_least);
    for (const BoundsSample& s : samples) {
        if (s.frozen) {
            qc.skip();
            win.skip();
            continue;
        }
        qc.add(s.q_cold, s.cfg);
        win.add(s.worst_margin(), s.cfg);
    }
    return {
        qc.finish("simultaneous_no_refrigeration", limits::no_refrigeration_simultaneous,
                  "min engine Q_C; conjecture support"),
        win.finish("simultaneous_population_bounds", limits::bounds_simultaneous,
                   "min margin to [1-p_C p_C]; conjecture support"),
    };
}

// First law per collision and physicality of every state along engine trajectories.
inline std::vector<CheckResult> check_first_law(const Options& o) {
    struct Sample {
        MachineConfig cfg;
        double residual{0.0};
        double physical{std::numeric_limits<double>::infinity()};
    };
    const auto samples = parallel_map<Sample>(
        o.first_law_configs,
        [&](std::size_t i) {
            SampleStream rng(o.seed, detail::kFirstLawStream + i);
            Sample s;
            s.cfg = random_machine(rng, false);
            const QubitState start = random_state(rng);
            for (engine::Mode mode : {engine::Mode::alternating, engine::Mode::simultaneous}) {
                for (const engine::TrajectoryPoint& pt :
                     engine::evolve(start, s.cfg, mode, o.first_law_collisions)) {
                    s.residual = std::max(s.residual, std::abs(pt.ledger.first_law_residual()));
                    const QubitState& q = pt.state;
                    s.physical = std::min(
                        {s.physical, q.p, 1.0 - q.p, q.p * (1.0 - q.p) - std::norm(q.c)});
                }
            }
            return s;
        },
        o.workers);
    detail::Worst res(Relation::at_most), phys(Relation::at_least);
    for (const Sample& s : samples) {
        res.add(s.residual, s.cfg);
        phys.add(s.physical, s.cfg);
    }
    return {
        res.finish("first_law", limits::first_law,
                   "max |dE_S + sum W + sum Q| per collision; both machines"),
        phys.finish("physicality", limits::physicality,
                    "min of p and 1-p and p(1-p)-|c|^2 along trajectories; both machines"),
    };
}

// Total limit-cycle work on a coupling grid plus resonant random configurations.
inline std::vector<CheckResult> check_no_engine(const Options& o) {
    struct Sample {
        MachineConfig cfg;
        bool frozen_alt{false};
        bool frozen_sim{false};
        double w_alt{detail::kNaN};
        double w_sim{detail::kNaN};
    };
    const std::size_t g = o.grid_points;
    const std::size_t grid = g * g * g * g;
    auto axis = [&](std::size_t k) {
        return g == 1 ? 0.0
                      : -kCouplingRange + 2.0 * kCouplingRange * static_cast<double>(k) /
                                              static_cast<double>(g - 1);
    };
    const ThermoFn& thermo = detail::thermo_of(o);
    const auto samples = parallel_map<Sample>(
        grid + o.no_engine_random,
        [&](std::size_t i) {
            Sample s;
            if (i < grid) {
                s.cfg = o.campaign_base;
                s.cfg.hot.coupling = {axis(i % g), axis((i / g) % g)};
                s.cfg.cold.coupling = {axis((i / (g * g)) % g), axis(i / (g * g * g))};
            } else {
                SampleStream rng(o.seed, detail::kNoEngineStream + (i - grid));
                s.cfg = random_machine(rng, true);
            }
            if (alternating::limit_cycle(s.cfg).frozen) {
                s.frozen_alt = true;
            } else {
                s.w_alt = thermo(s.cfg).w_total;
            }
            try {
                s.w_sim = engine::find_limit_cycle_numeric(s.cfg, engine::Mode::simultaneous, o.tol)
                              .thermo.w_total;
            } catch (const FrozenDynamics&) {
                s.frozen_sim = true;
            } catch (const NonConvergence&) {
                // leaves NaN, which fails the check
            }
            return s;
        },
        o.workers);
    detail::Worst alt(Relation::at_most), sim(Relation::at_most);
    for (const Sample& s : samples) {
        if (s.frozen_alt) alt.skip(); else alt.add(s.w_alt, s.cfg);
        if (s.frozen_sim) sim.skip(); else sim.add(s.w_sim, s.cfg);
    }
    const std::string note = "max total work per cycle over a " + std::to_string(g) +
                             "^4 coupling grid and resonant random configurations";
    return {
        alt.finish("alternating_no_engine", limits::no_engine_alternating, note),
        sim.finish("simultaneous_no_engine", limits::no_engine_simultaneous,
                   note + "; conjecture support"),
    };
}

inline MachineConfig trotter_config(const MachineConfig& base, double jxx_h_tau) {
    MachineConfig cfg = base;
    cfg.tau = kTrotterTau;
    const double j = jxx_h_tau / kTrotterTau;
    cfg.hot.coupling = {j, j / 4.0};
    cfg.cold.coupling = {j / 2.0, j / 8.0};
    return cfg;
}

// Alternating and simultaneous limit-cycle heat and work at small tau, measured in
// units of the allowed deviation 5 J_xx^H omega tau^2.
inline CheckResult check_trotter(const Options& o) {
    struct Sample {
        MachineConfig cfg;
        double ratio{detail::kNaN};
    };
    const ThermoFn& thermo = detail::thermo_of(o);
    const auto samples = parallel_map<Sample>(
        o.trotter_points,
        [&](std::size_t k) {
            const double jt =
                kTrotterMaxJTau * static_cast<double>(k + 1) / static_cast<double>(o.trotter_points);
            Sample s;
            s.cfg = trotter_config(o.campaign_base, jt);
            const ThermoCycle a = thermo(s.cfg);
            const ThermoCycle b =
                engine::find_limit_cycle_numeric(s.cfg, engine::Mode::simultaneous, o.tol).thermo;
            const double allowed = limits::trotter_factor * s.cfg.hot.coupling.jxx *
                                   s.cfg.omega_s * kTrotterTau * kTrotterTau;
            s.ratio = detail::max_thermo_difference(a, b) / allowed;
            return s;
        },
        o.workers);
    detail::Worst w(Relation::at_most);
    for (const Sample& s : samples) w.add(s.ratio, s.cfg);
    return w.finish("trotter_equivalence", 1.0,
                    "max |alternating - simultaneous| / (5 J_xx^H omega tau^2) over Q and W; "
                    "tau = 0.01 and J_xx^H tau in (0 1]");
}

inline MachineConfig dyson_config(double tau) {
    MachineConfig cfg;
    cfg.hot.bath = {1.0, 1.0};
    cfg.cold.bath = {2.0, 1.0};
    cfg.hot.coupling = {4.0, 16.0};
    cfg.cold.coupling = {2.0, 8.0};
    cfg.tau = tau;
    return cfg;
}

// One simultaneous collision from random states: second-order predictions against
// the engine, in units of 10 max(J, omega)^3 tau^3.
inline CheckResult dyson_comparison(const Options& o, double tau, bool in_regime) {
    const MachineConfig cfg = dyson_config(tau);
    const engine::TripleCollider collide(cfg);
    const simultaneous::DysonPrediction d = simultaneous::dyson_prediction(cfg);
    const double scale = std::max(d.j_tau, d.omega_tau);
    const double allowed = limits::dyson_factor * scale * scale * scale;
    detail::Worst w(Relation::at_most);
    for (std::size_t i = 0; i < o.dyson_states; ++i) {
        SampleStream rng(o.seed, detail::kDysonStream + i);
        const QubitState s0 = random_state(rng);
        const auto [s1, led] = collide(s0);
        const auto q = simultaneous::dyson_heat(s0.p, cfg);
        const auto wk = simultaneous::dyson_work(s0.p, cfg);
        const double diff = std::max(
            {std::abs(simultaneous::dyson_population_step(s0.p, cfg) - s1.p),
             std::abs(simultaneous::dyson_coherence_step(s0.c, cfg) - s1.c),
             std::abs(q.cold - led.q_cold), std::abs(q.hot - led.q_hot),
             std::abs(wk.cold - led.w_cold), std::abs(wk.hot - led.w_hot)});
        w.add(diff / allowed, cfg);
    }
    CheckResult r = w.finish(
        in_regime ? "dyson_validity" : "dyson_out_of_regime", 1.0,
        "max |second order - engine| / (10 max(J omega)^3 tau^3) over p c Q W");
    if (!in_regime) {
        r.status = Status::info;
        r.offending.clear();
        r.note += "; outside the short-collision regime so disagreement is expected";
    }
    return r;
}

inline Report run(const Options& o) {
    validate(o.campaign_base);
    Report rep;
    auto append = [&](std::vector<CheckResult> v) {
        for (CheckResult& c : v) rep.checks.push_back(std::move(c));
    };
    append(check_alternating_oracle(o));
    append(check_alternating_bounds(o));
    append(check_simultaneous_campaign(o));
    append(check_first_law(o));
    append(check_no_engine(o));
    rep.checks.push_back(check_trotter(o));
    rep.checks.push_back(dyson_comparison(o, kDysonTau, true));
    rep.checks.push_back(dyson_comparison(o, kDysonOutOfRegimeTau, false));
    return rep;
}

}  // namespace qrim::verify
