// alternating.hpp: Exact analytics of the alternating-coupling machine
//
// Each collision with an ancilla of contact A maps the ground-state population as
//   p' = g_A p + f_A(p_A),   g_A = 1 - k_theta - k_phi,   f_A = k_theta p_A + k_phi (1 - p_A).
// A cycle is one hot collision followed by one cold collision; the limit cycle
// alternates between the population after the cold stroke and after the hot stroke.

#pragma once

#include "qrim/errors.hpp"
#include "qrim/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qrim::alternating {

// Below this value of k_theta + k_phi a contact acts trivially.
inline constexpr double kFrozenThreshold = 1e-14;
// theta*tau below which k_theta uses its small-argument limit.
inline constexpr double kSincSwitch = 1e-6;
inline constexpr double kBoundSlack = 1e-12;

struct CollisionCoeffs {
    double kappa_theta{0.0};
    double kappa_phi{0.0};
    double theta{0.0};
    double phi{0.0};

    double g() const { return 1.0 - kappa_theta - kappa_phi; }
    double f(double p_a) const { return kappa_theta * p_a + kappa_phi * (1.0 - p_a); }
    bool frozen() const { return kappa_theta + kappa_phi < kFrozenThreshold; }
};

// 4 s^2 / w^2 sin^2(w tau / 2), finite as w -> 0.
inline double swap_weight(double s, double w, double tau) {
    if (s == 0.0) return 0.0;
    if (w * tau < kSincSwitch) return s * s * tau * tau;
    const double sn = std::sin(0.5 * w * tau);
    return 4.0 * s * s / (w * w) * sn * sn;
}

inline CollisionCoeffs collision_coefficients(const Coupling& c, double omega_a, double omega_s,
                                              double tau) {
    if (!(tau >= 0.0)) throw std::invalid_argument("collision_coefficients: tau must be >= 0");
    const double sum = c.jxx + c.jyy;
    const double diff = c.jxx - c.jyy;
    CollisionCoeffs k;
    k.theta = std::sqrt(4.0 * sum * sum + (omega_a - omega_s) * (omega_a - omega_s));
    k.phi = std::sqrt(4.0 * diff * diff + (omega_a + omega_s) * (omega_a + omega_s));
    k.kappa_theta = swap_weight(sum, k.theta, tau);
    k.kappa_phi = swap_weight(diff, k.phi, tau);
    return k;
}

inline CollisionCoeffs collision_coefficients(const MachineConfig& cfg, Contact which) {
    const Reservoir& r = cfg.reservoir(which);
    return collision_coefficients(r.coupling, r.bath.omega, cfg.omega_s, cfg.tau);
}

inline double population_step(double p_n, const CollisionCoeffs& k, double p_a) {
    return k.g() * p_n + k.f(p_a);
}

// Fixed point of repeated collisions with a single bath.
inline double single_bath_fixed_point(const Coupling& c, const BathSpec& bath, double omega_s,
                                      double tau) {
    const CollisionCoeffs k = collision_coefficients(c, bath.omega, omega_s, tau);
    if (k.frozen()) {
        throw FrozenDynamics("single_bath_fixed_point: frozen dynamics, fixed point undefined");
    }
    return k.f(gibbs_population(bath)) / (k.kappa_theta + k.kappa_phi);
}

struct LimitCycleReport {
    double p_after_cold{std::numeric_limits<double>::quiet_NaN()};
    double p_after_hot{std::numeric_limits<double>::quiet_NaN()};
    double g_hot{1.0};
    double g_cold{1.0};
    bool frozen{false};

    CollisionCoeffs hot;
    CollisionCoeffs cold;
    double p_h{0.5};  // Gibbs population of the hot ancilla
    double p_c{0.5};  // Gibbs population of the cold ancilla
};

inline LimitCycleReport limit_cycle(const MachineConfig& cfg) {
    validate(cfg);
    LimitCycleReport r;
    r.hot = collision_coefficients(cfg, Contact::hot);
    r.cold = collision_coefficients(cfg, Contact::cold);
    r.p_h = gibbs_population(cfg.hot.bath);
    r.p_c = gibbs_population(cfg.cold.bath);
    r.g_hot = r.hot.g();
    r.g_cold = r.cold.g();
    if (r.hot.frozen() && r.cold.frozen()) {
        r.frozen = true;
        return r;
    }
    // 1 - g_C g_H, expanded so that it stays accurate when both kappas are small.
    const double kc = r.cold.kappa_theta + r.cold.kappa_phi;
    const double kh = r.hot.kappa_theta + r.hot.kappa_phi;
    const double denom = kc + kh - kc * kh;
    const double f_c = r.cold.f(r.p_c);
    const double f_h = r.hot.f(r.p_h);
    r.p_after_cold = (f_c + r.g_cold * f_h) / denom;
    r.p_after_hot = (f_h + r.g_hot * f_c) / denom;
    return r;
}

// tau -> 0+ limit of the limit cycle; both strokes collapse to one population.
inline double stroboscopic_fixed_point(const MachineConfig& cfg) {
    const Coupling& h = cfg.hot.coupling;
    const Coupling& c = cfg.cold.coupling;
    const double denom = 2.0 * (h.jxx * h.jxx + h.jyy * h.jyy + c.jxx * c.jxx + c.jyy * c.jyy);
    if (denom == 0.0) {
        throw FrozenDynamics("stroboscopic_fixed_point: all couplings are zero");
    }
    const double p_c = gibbs_population(cfg.cold.bath);
    const double p_h = gibbs_population(cfg.hot.bath);
    const double num = (c.jxx - c.jyy) * (c.jxx - c.jyy) + (h.jxx - h.jyy) * (h.jxx - h.jyy) +
                       4.0 * c.jxx * c.jyy * p_c + 4.0 * h.jxx * h.jyy * p_h;
    return num / denom;
}

using qrim::ThermoCycle;

namespace detail {

// Work and heat of one collision that starts from system population p.
inline void stroke_energetics(const CollisionCoeffs& k, double omega_a, double omega_s,
                              double p, double p_a, double& w, double& q) {
    w = k.kappa_theta * (omega_a - omega_s) * (p - p_a) -
        k.kappa_phi * (omega_a + omega_s) * (p - (1.0 - p_a));
    q = omega_a * (-k.kappa_theta * (p - p_a) + k.kappa_phi * (p - (1.0 - p_a)));
}

}  // namespace detail

inline ThermoCycle thermo_limit_cycle(const MachineConfig& cfg, const LimitCycleReport& lc) {
    if (lc.frozen) {
        throw FrozenDynamics("thermo_limit_cycle: frozen dynamics, limit cycle undefined (" +
                             describe(cfg) + ")");
    }
    ThermoCycle t;
    // The cold stroke starts from the post-hot population and vice versa.
    detail::stroke_energetics(lc.cold, cfg.cold.bath.omega, cfg.omega_s, lc.p_after_hot, lc.p_c,
                              t.w_cold, t.q_cold);
    detail::stroke_energetics(lc.hot, cfg.hot.bath.omega, cfg.omega_s, lc.p_after_cold, lc.p_h,
                              t.w_hot, t.q_hot);
    t.w_total = t.w_cold + t.w_hot;
    t.q_total = t.q_cold + t.q_hot;
    t.de_cold = -cfg.omega_s * (lc.p_after_cold - lc.p_after_hot);
    t.de_hot = -cfg.omega_s * (lc.p_after_hot - lc.p_after_cold);
    t.de_total = t.de_cold + t.de_hot;
    return t;
}

inline ThermoCycle thermo_limit_cycle(const MachineConfig& cfg) {
    return thermo_limit_cycle(cfg, limit_cycle(cfg));
}

// ---------------------------------------------------------------------------
// Pure conduction: resonant frequencies and J_xx = J_yy = J^A at both contacts,
// where k_theta^A = sin^2(2 J^A tau) and k_phi^A = 0.

inline double conduction_heat(double j_c, double j_h, double omega, double tau, double p_c,
                              double p_h) {
    const double sc = std::sin(2.0 * j_c * tau);
    const double sh = std::sin(2.0 * j_h * tau);
    const double kc = sc * sc;
    const double kh = sh * sh;
    const double denom = kc * kh - kc - kh;
    if (kc + kh < kFrozenThreshold) {
        throw FrozenDynamics("conduction_heat: both contacts frozen");
    }
    return omega * kc * kh * (p_h - p_c) / denom;
}

inline bool is_pure_conduction(const MachineConfig& cfg) {
    return cfg.hot.bath.omega == cfg.omega_s && cfg.cold.bath.omega == cfg.omega_s &&
           cfg.hot.coupling.jxx == cfg.hot.coupling.jyy &&
           cfg.cold.coupling.jxx == cfg.cold.coupling.jyy;
}

inline double conduction_heat(const MachineConfig& cfg) {
    if (!is_pure_conduction(cfg)) {
        throw std::invalid_argument(
            "conduction_heat: requires resonance and J_xx = J_yy at both contacts");
    }
    return conduction_heat(cfg.cold.coupling.jxx, cfg.hot.coupling.jxx, cfg.omega_s, cfg.tau,
                           gibbs_population(cfg.cold.bath), gibbs_population(cfg.hot.bath));
}

// d Q_C / d tau for equal symmetric couplings J at both contacts.
inline double heat_current(double j, double omega, double tau, double p_c, double p_h) {
    const double s = std::sin(2.0 * j * tau);
    const double d = 2.0 - s * s;
    return 4.0 * j * omega * std::sin(4.0 * j * tau) / (d * d) * (p_c - p_h);
}

// Same current written through the effective coupling x = sin^2(2 J tau). It agrees
// with heat_current wherever J sin(4 J tau) >= 0.
inline double heat_current_x(double x, double j, double omega, double p_c, double p_h) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::invalid_argument("heat_current_x: x must lie in [0, 1]");
    }
    const double d = 2.0 - x;
    return 8.0 * j * omega * std::sqrt(x * (1.0 - x)) / (d * d) * (p_c - p_h);
}

// Maximiser of sqrt(x(1-x))/(2-x)^2 on (0,1): the positive root of 2x^2 + x - 2.
inline double turnover_x() { return (std::sqrt(17.0) - 1.0) / 4.0; }

// Central-difference tau-derivative of the limit-cycle cold heat for a general
// configuration. Returns NaN at frozen points.
inline double cold_heat_tau_derivative(const MachineConfig& cfg) {
    const double h = 1e-6 * std::max(1.0, cfg.tau);
    auto q_at = [&](double tau) {
        MachineConfig c = cfg;
        c.tau = tau;
        const LimitCycleReport lc = limit_cycle(c);
        if (lc.frozen) return std::numeric_limits<double>::quiet_NaN();
        return thermo_limit_cycle(c, lc).q_cold;
    };
    if (cfg.tau < h) return (q_at(cfg.tau + h) - q_at(cfg.tau)) / h;
    return (q_at(cfg.tau + h) - q_at(cfg.tau - h)) / (2.0 * h);
}

struct PopulationBounds {
    double upper_cold{0.0};  // p_C - p_after_cold
    double upper_hot{0.0};   // p_C - p_after_hot
    double lower_hot{0.0};   // p_after_hot - (1 - p_C)
    double lower_cold{0.0};  // p_after_cold - (1 - p_C); observed numerically, not proven
    double slack{kBoundSlack};

    bool proven_hold() const {
        return upper_cold >= -slack && upper_hot >= -slack && lower_hot >= -slack;
    }
    bool observed_hold() const { return lower_cold >= -slack; }
    bool all_hold() const { return proven_hold() && observed_hold(); }
    double worst() const { return std::min({upper_cold, upper_hot, lower_hot, lower_cold}); }
};

inline PopulationBounds check_population_bounds(const LimitCycleReport& report, double p_c,
                                                double slack = kBoundSlack) {
    if (report.frozen) {
        throw FrozenDynamics("check_population_bounds: limit cycle undefined");
    }
    PopulationBounds b;
    b.upper_cold = p_c - report.p_after_cold;
    b.upper_hot = p_c - report.p_after_hot;
    b.lower_hot = report.p_after_hot - (1.0 - p_c);
    b.lower_cold = report.p_after_cold - (1.0 - p_c);
    b.slack = slack;
    return b;
}

}  // namespace qrim::alternating
