// sampling.hpp: Seeded configuration samplers and the coupling-sampling campaign
//
// Sample i of a campaign always comes from SampleStream(seed, i), so any single
// sample can be regenerated without replaying the ones before it.

#pragma once

#include "qrim/alternating.hpp"
#include "qrim/engine.hpp"
#include "qrim/errors.hpp"
#include "qrim/model.hpp"
#include "qrim/rng.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>

namespace qrim {

inline constexpr double kCouplingRange = 5.0;

// Draws the four couplings i.i.d. uniform in [-range, range] in the order
// jxx_h, jyy_h, jxx_c, jyy_c; everything else is taken from base.
inline MachineConfig with_random_couplings(const MachineConfig& base, SampleStream& rng,
                                           double range = kCouplingRange) {
    MachineConfig cfg = base;
    cfg.hot.coupling.jxx = rng.uniform(-range, range);
    cfg.hot.coupling.jyy = rng.uniform(-range, range);
    cfg.cold.coupling.jxx = rng.uniform(-range, range);
    cfg.cold.coupling.jyy = rng.uniform(-range, range);
    return cfg;
}

// Couplings in [-5, 5], tau in (0, 2], beta_c >= beta_h in [0.1, 5] and
// frequencies in [0.5, 2]. With resonant = true all three qubits share one frequency.
inline MachineConfig random_machine(SampleStream& rng, bool resonant) {
    MachineConfig cfg = with_random_couplings(MachineConfig{}, rng);
    cfg.tau = 2.0 * (1.0 - rng.uniform());
    const double b1 = rng.uniform(0.1, 5.0);
    const double b2 = rng.uniform(0.1, 5.0);
    cfg.hot.bath.beta = std::min(b1, b2);
    cfg.cold.bath.beta = std::max(b1, b2);
    cfg.omega_s = rng.uniform(0.5, 2.0);
    if (resonant) {
        cfg.hot.bath.omega = cfg.omega_s;
        cfg.cold.bath.omega = cfg.omega_s;
    } else {
        cfg.hot.bath.omega = rng.uniform(0.5, 2.0);
        cfg.cold.bath.omega = rng.uniform(0.5, 2.0);
    }
    return cfg;
}

// One sample of the population-bound campaign: limit-cycle populations and their
// distances to the window [1 - p_C, p_C].
struct BoundsSample {
    MachineConfig cfg;
    bool frozen{false};
    double p_after_cold{std::numeric_limits<double>::quiet_NaN()};
    double p_after_hot{std::numeric_limits<double>::quiet_NaN()};
    double upper_cold{std::numeric_limits<double>::quiet_NaN()};  // p_C - p_after_cold
    double upper_hot{std::numeric_limits<double>::quiet_NaN()};   // p_C - p_after_hot
    double lower_hot{std::numeric_limits<double>::quiet_NaN()};   // p_after_hot - (1 - p_C)
    double lower_cold{std::numeric_limits<double>::quiet_NaN()};  // p_after_cold - (1 - p_C)
    double q_cold{std::numeric_limits<double>::quiet_NaN()};
    double w_total{std::numeric_limits<double>::quiet_NaN()};

    double worst_margin() const {
        return std::min({upper_cold, upper_hot, lower_hot, lower_cold});
    }
};

// Alternating samples use the closed form; simultaneous samples run the engine.
inline BoundsSample bounds_sample(const MachineConfig& base, engine::Mode mode,
                                  std::uint64_t seed, std::uint64_t index,
                                  double tol = engine::kDefaultTol) {
    SampleStream rng(seed, index);
    BoundsSample s;
    s.cfg = with_random_couplings(base, rng);
    const double p_c = gibbs_population(s.cfg.cold.bath);
    if (mode == engine::Mode::alternating) {
        const alternating::LimitCycleReport lc = alternating::limit_cycle(s.cfg);
        if (lc.frozen) {
            s.frozen = true;
            return s;
        }
        s.p_after_cold = lc.p_after_cold;
        s.p_after_hot = lc.p_after_hot;
        const ThermoCycle t = alternating::thermo_limit_cycle(s.cfg, lc);
        s.q_cold = t.q_cold;
        s.w_total = t.w_total;
    } else {
        try {
            const engine::NumericLimitCycle lc =
                engine::find_limit_cycle_numeric(s.cfg, mode, tol);
            s.p_after_cold = lc.p_after_cold;
            s.p_after_hot = lc.p_after_hot;
            s.q_cold = lc.thermo.q_cold;
            s.w_total = lc.thermo.w_total;
        } catch (const FrozenDynamics&) {
            s.frozen = true;
            return s;
        }
    }
    s.upper_cold = p_c - s.p_after_cold;
    s.upper_hot = p_c - s.p_after_hot;
    s.lower_hot = s.p_after_hot - (1.0 - p_c);
    s.lower_cold = s.p_after_cold - (1.0 - p_c);
    return s;
}

}  // namespace qrim
