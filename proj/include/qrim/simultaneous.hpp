// simultaneous.hpp: Analytic layer for the simultaneous-coupling machine
//
// Second-order (Dyson) short-collision predictions, the tau -> 0 equations of
// motion, and the nonperturbative closed forms available when all four couplings
// are equal and the qubits are resonant.

#pragma once

#include "qrim/alternating.hpp"
#include "qrim/errors.hpp"
#include "qrim/model.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>

namespace qrim::simultaneous {

struct DysonPrediction {
    double eta{1.0};      // population contraction per collision
    double p_fixed{0.5};  // steady population
    cplx psi_c{1.0};      // c_{n+1} = psi_c c_n + psi_conj conj(c_n)
    double psi_conj{0.0};
    double gamma_xx_hot{0.0};  // J^2 tau
    double gamma_yy_hot{0.0};
    double gamma_xx_cold{0.0};
    double gamma_yy_cold{0.0};
    double omega_eff{0.0};  // free-phase damping rate omega_s^2 tau / 2
    // Smallness indicators of the expansion; results are reliable when both are << 1.
    double j_tau{0.0};      // max |J| tau
    double omega_tau{0.0};  // max omega tau
};

namespace detail {

inline double sum_sq_couplings(const MachineConfig& cfg) {
    const Coupling& h = cfg.hot.coupling;
    const Coupling& c = cfg.cold.coupling;
    return h.jxx * h.jxx + h.jyy * h.jyy + c.jxx * c.jxx + c.jyy * c.jyy;
}

inline double anisotropy_sq(const MachineConfig& cfg) {
    const Coupling& h = cfg.hot.coupling;
    const Coupling& c = cfg.cold.coupling;
    return h.jxx * h.jxx - h.jyy * h.jyy + c.jxx * c.jxx - c.jyy * c.jyy;
}

}  // namespace detail

// Identical to the tau -> 0 limit of the alternating limit cycle.
inline double dyson_fixed_point(const MachineConfig& cfg) {
    return alternating::stroboscopic_fixed_point(cfg);
}

inline DysonPrediction dyson_prediction(const MachineConfig& cfg) {
    DysonPrediction d;
    const double tau = cfg.tau;
    const double sum_sq = detail::sum_sq_couplings(cfg);
    d.eta = 1.0 - 2.0 * sum_sq * tau * tau;
    d.p_fixed = dyson_fixed_point(cfg);
    const double w = cfg.omega_s;
    d.psi_c = cplx(1.0 - (0.5 * w * w + sum_sq) * tau * tau, w * tau);
    d.psi_conj = detail::anisotropy_sq(cfg) * tau * tau;
    d.gamma_xx_hot = cfg.hot.coupling.jxx * cfg.hot.coupling.jxx * tau;
    d.gamma_yy_hot = cfg.hot.coupling.jyy * cfg.hot.coupling.jyy * tau;
    d.gamma_xx_cold = cfg.cold.coupling.jxx * cfg.cold.coupling.jxx * tau;
    d.gamma_yy_cold = cfg.cold.coupling.jyy * cfg.cold.coupling.jyy * tau;
    d.omega_eff = 0.5 * w * w * tau;
    d.j_tau = tau * std::max({std::abs(cfg.hot.coupling.jxx), std::abs(cfg.hot.coupling.jyy),
                              std::abs(cfg.cold.coupling.jxx), std::abs(cfg.cold.coupling.jyy)});
    d.omega_tau = tau * std::max({cfg.omega_s, cfg.hot.bath.omega, cfg.cold.bath.omega});
    return d;
}

inline double dyson_population_step(double p_n, const MachineConfig& cfg) {
    const double eta = 1.0 - 2.0 * detail::sum_sq_couplings(cfg) * cfg.tau * cfg.tau;
    const double p_fixed = dyson_fixed_point(cfg);
    return eta * (p_n - p_fixed) + p_fixed;
}

inline cplx dyson_coherence_step(cplx c_n, const MachineConfig& cfg) {
    const double tau = cfg.tau;
    const double w = cfg.omega_s;
    const double sum_sq = detail::sum_sq_couplings(cfg);
    const cplx a(1.0 - (0.5 * w * w + sum_sq) * tau * tau, w * tau);
    const double b = detail::anisotropy_sq(cfg) * tau * tau;
    return a * c_n + b * std::conj(c_n);
}

struct StateRate {
    double dp{0.0};
    cplx dc{0.0};
};

// tau -> 0 equations of motion with Gamma = J^2 tau and omega_eff held fixed.
inline StateRate eom_rhs(const QubitState& s, const MachineConfig& cfg) {
    const DysonPrediction d = dyson_prediction(cfg);
    const double gamma_sum = d.gamma_xx_hot + d.gamma_yy_hot + d.gamma_xx_cold + d.gamma_yy_cold;
    const double gamma_aniso = d.gamma_xx_cold - d.gamma_yy_cold + d.gamma_xx_hot - d.gamma_yy_hot;
    StateRate r;
    r.dp = -2.0 * gamma_sum * (s.p - d.p_fixed);
    r.dc = cplx(-d.omega_eff - gamma_sum, cfg.omega_s) * s.c + gamma_aniso * std::conj(s.c);
    return r;
}

// Exact one-collision population map for J_xx = J_yy = j at both contacts and
// resonant qubits, valid for any tau.
inline double equal_coupling_step(double p_n, double j, double tau, double p_c, double p_h) {
    const double cs = std::cos(4.0 * std::numbers::sqrt2 * j * tau);
    return 0.25 * (-cs * (p_c + p_h - 2.0 * p_n) + p_c + p_h + 2.0 * p_n);
}

struct ContactPair {
    double cold{0.0};
    double hot{0.0};
};

namespace detail {

// Second-order population transfer into ancilla A, weighted by its energy.
inline double dyson_heat_one(const Coupling& j, double omega_a, double p_a, double p_n,
                             double tau) {
    const double d = j.jxx - j.jyy;
    return (d * d * (2.0 * p_a - 1.0) + 4.0 * j.jxx * j.jyy * (p_a - p_n)) * omega_a * tau * tau;
}

// Reduces to 2 (J_xx - J_yy)^2 omega (1 - p_A - p_n) tau^2 at resonance.
inline double dyson_work_one(const Coupling& j, double omega_a, double omega_s, double p_a,
                             double p_n, double tau) {
    const double s = j.jxx + j.jyy;
    const double d = j.jxx - j.jyy;
    return (s * s * (omega_a - omega_s) * (p_n - p_a) +
            d * d * (omega_a + omega_s) * (1.0 - p_a - p_n)) *
           tau * tau;
}

}  // namespace detail

inline ContactPair dyson_heat(double p_n, const MachineConfig& cfg) {
    const double p_c = gibbs_population(cfg.cold.bath);
    const double p_h = gibbs_population(cfg.hot.bath);
    return {detail::dyson_heat_one(cfg.cold.coupling, cfg.cold.bath.omega, p_c, p_n, cfg.tau),
            detail::dyson_heat_one(cfg.hot.coupling, cfg.hot.bath.omega, p_h, p_n, cfg.tau)};
}

inline ContactPair dyson_work(double p_n, const MachineConfig& cfg) {
    const double p_c = gibbs_population(cfg.cold.bath);
    const double p_h = gibbs_population(cfg.hot.bath);
    return {detail::dyson_work_one(cfg.cold.coupling, cfg.cold.bath.omega, cfg.omega_s, p_c, p_n,
                                   cfg.tau),
            detail::dyson_work_one(cfg.hot.coupling, cfg.hot.bath.omega, cfg.omega_s, p_h, p_n,
                                   cfg.tau)};
}

struct ConductionResult {
    double q_per_collision{0.0};  // Q_C = -Q_H in the steady state
    double current{0.0};          // d Q_C / d tau
};

// Steady-state conduction for J_xx = J_yy = j at both contacts, resonant qubits.
inline ConductionResult conduction_closed_form(double j, double tau, double omega, double p_c,
                                               double p_h) {
    const double arg = std::numbers::sqrt2 * j * tau;
    const double s = std::sin(arg);
    ConductionResult r;
    r.q_per_collision = omega * (p_c - p_h) * s * s;
    r.current = std::numbers::sqrt2 * omega * j * (p_c - p_h) * std::sin(2.0 * arg);
    return r;
}

// Current as a function of the effective coupling y = sin^2(sqrt2 j tau); agrees
// with conduction_closed_form where j sin(2 sqrt2 j tau) >= 0.
inline double conduction_current_y(double y, double j, double omega, double p_c, double p_h) {
    if (!(y >= 0.0 && y <= 1.0)) {
        throw std::invalid_argument("conduction_current_y: y must lie in [0, 1]");
    }
    return 2.0 * std::numbers::sqrt2 * omega * j * (p_c - p_h) * std::sqrt(y * (1.0 - y));
}

// True when the Dyson steady state is hotter than the hot ancilla (p_fixed < p_H).
inline bool overheating_condition(const MachineConfig& cfg) {
    const Coupling& h = cfg.hot.coupling;
    const Coupling& c = cfg.cold.coupling;
    const double p_c = gibbs_population(cfg.cold.bath);
    const double p_h = gibbs_population(cfg.hot.bath);
    const double aniso = (h.jxx - h.jyy) * (h.jxx - h.jyy) + (c.jxx - c.jyy) * (c.jxx - c.jyy);
    return (1.0 - 2.0 * p_h) * aniso + 4.0 * c.jxx * c.jyy * (p_c - p_h) < 0.0;
}

}  // namespace qrim::simultaneous
