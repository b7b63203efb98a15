// engine.hpp: Brute-force repeated-interaction evolution with a per-collision ledger
//
// The engine propagates the full system+ancilla density matrix with the exact
// collision unitary and traces the ancillas out. It knows nothing about the
// closed forms in alternating.hpp / simultaneous.hpp and serves as their oracle.

#pragma once

#include "qrim/errors.hpp"
#include "qrim/matops.hpp"
#include "qrim/model.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <string_view>
#include <utility>
#include <vector>

namespace qrim::engine {

enum class Mode { alternating, simultaneous };

inline std::string_view to_string(Mode m) {
    return m == Mode::alternating ? "alternating" : "simultaneous";
}

// Energy bookkeeping of one collision. Contacts not touched by the collision
// carry zeros.
struct CollisionLedger {
    double q_hot{0.0};
    double q_cold{0.0};
    double w_hot{0.0};
    double w_cold{0.0};
    double de_system{0.0};

    // Unitarity of the collision makes this vanish.
    double first_law_residual() const { return de_system + w_hot + w_cold + q_hot + q_cold; }
};

enum class Stroke { initial, hot, cold, both };

struct TrajectoryPoint {
    std::size_t n{0};
    Stroke stroke{Stroke::initial};
    QubitState state;
    CollisionLedger ledger;
};

using Trajectory = std::vector<TrajectoryPoint>;

namespace detail {

// Reduced state of the leftmost qubit of a 2*m dimensional operator.
inline QubitState reduce_to_system(const CMatrix& rho) {
    const Eigen::Index m = rho.rows() / 2;
    cplx p = 0.0;
    cplx c = 0.0;
    for (Eigen::Index k = 0; k < m; ++k) {
        p += rho(k, k);
        c += rho(k, m + k);
    }
    return {p.real(), c};
}

// U^dagger X U - X
inline CMatrix heisenberg_change(const CMatrix& u, const CMatrix& x) {
    return u.adjoint() * x * u - x;
}

}  // namespace detail

// One system-ancilla collision with a fixed contact. Construction diagonalises the
// 4x4 generator once; applying it is cheap.
class PairCollider {
public:
    PairCollider(const MachineConfig& cfg, Contact which) : which_(which) {
        const Reservoir& r = cfg.reservoir(which);
        const CMatrix h_s = kron(qubit_hamiltonian(cfg.omega_s), identity(2));
        const CMatrix h_a = kron(identity(2), qubit_hamiltonian(r.bath.omega));
        const CMatrix h_i = interaction_pair(r.coupling);
        u_ = expm_hermitian(h_s + h_a + h_i, cfg.tau);
        d_system_ = detail::heisenberg_change(u_, h_s);
        d_ancilla_ = detail::heisenberg_change(u_, h_a);
        d_interaction_ = detail::heisenberg_change(u_, h_i);
        ancilla_ = density_matrix(gibbs_state(r.bath));
    }

    Contact contact() const { return which_; }
    const CMatrix& unitary() const { return u_; }

    std::pair<QubitState, CollisionLedger> operator()(const QubitState& s) const {
        require_physical(s, "collide_alternating");
        const CMatrix rho0 = kron(density_matrix(s), ancilla_);
        const CMatrix rho1 = u_ * rho0 * u_.adjoint();
        CollisionLedger led;
        led.de_system = expectation(d_system_, rho0);
        const double q = expectation(d_ancilla_, rho0);
        const double w = expectation(d_interaction_, rho0);
        if (which_ == Contact::hot) {
            led.q_hot = q;
            led.w_hot = w;
        } else {
            led.q_cold = q;
            led.w_cold = w;
        }
        return {detail::reduce_to_system(rho1), led};
    }

    // Population-only map; coherences do not feed into populations.
    double population(double p) const {
        const CMatrix rho1 = u_ * kron(density_matrix({p, 0.0}), ancilla_) * u_.adjoint();
        return detail::reduce_to_system(rho1).p;
    }

private:
    Contact which_;
    CMatrix u_;
    CMatrix d_system_;
    CMatrix d_ancilla_;
    CMatrix d_interaction_;
    CMatrix ancilla_;
};

// One three-body collision on system (x) hot (x) cold.
class TripleCollider {
public:
    explicit TripleCollider(const MachineConfig& cfg) {
        const CMatrix h_s = system_hamiltonian_three_body(cfg.omega_s);
        const CMatrix h_h = ancilla_hamiltonian_three_body(cfg.hot.bath.omega, Contact::hot);
        const CMatrix h_c = ancilla_hamiltonian_three_body(cfg.cold.bath.omega, Contact::cold);
        const CMatrix i_h = interaction_three_body(cfg.hot.coupling, Contact::hot);
        const CMatrix i_c = interaction_three_body(cfg.cold.coupling, Contact::cold);
        u_ = expm_hermitian(h_s + h_h + h_c + i_h + i_c, cfg.tau);
        d_system_ = detail::heisenberg_change(u_, h_s);
        d_hot_ = detail::heisenberg_change(u_, h_h);
        d_cold_ = detail::heisenberg_change(u_, h_c);
        d_int_hot_ = detail::heisenberg_change(u_, i_h);
        d_int_cold_ = detail::heisenberg_change(u_, i_c);
        ancillas_ = kron(density_matrix(gibbs_state(cfg.hot.bath)),
                         density_matrix(gibbs_state(cfg.cold.bath)));
    }

    const CMatrix& unitary() const { return u_; }

    std::pair<QubitState, CollisionLedger> operator()(const QubitState& s) const {
        require_physical(s, "collide_simultaneous");
        const CMatrix rho0 = kron(density_matrix(s), ancillas_);
        const CMatrix rho1 = u_ * rho0 * u_.adjoint();
        CollisionLedger led;
        led.de_system = expectation(d_system_, rho0);
        led.q_hot = expectation(d_hot_, rho0);
        led.q_cold = expectation(d_cold_, rho0);
        led.w_hot = expectation(d_int_hot_, rho0);
        led.w_cold = expectation(d_int_cold_, rho0);
        return {detail::reduce_to_system(rho1), led};
    }

    double population(double p) const {
        const CMatrix rho1 = u_ * kron(density_matrix({p, 0.0}), ancillas_) * u_.adjoint();
        return detail::reduce_to_system(rho1).p;
    }

private:
    CMatrix u_;
    CMatrix d_system_;
    CMatrix d_hot_;
    CMatrix d_cold_;
    CMatrix d_int_hot_;
    CMatrix d_int_cold_;
    CMatrix ancillas_;
};

inline std::pair<QubitState, CollisionLedger> collide_alternating(const QubitState& state,
                                                                  const MachineConfig& cfg,
                                                                  Contact which) {
    return PairCollider(cfg, which)(state);
}

inline std::pair<QubitState, CollisionLedger> collide_simultaneous(const QubitState& state,
                                                                   const MachineConfig& cfg) {
    return TripleCollider(cfg)(state);
}

// Collision k (1-based) of an alternating run touches the hot bath for odd k
// and the cold bath for even k, so every cycle is hot followed by cold.
inline Trajectory evolve(const QubitState& initial, const MachineConfig& cfg, Mode mode,
                         std::size_t n_collisions) {
    require_physical(initial, "evolve");
    Trajectory traj;
    traj.reserve(n_collisions + 1);
    traj.push_back({0, Stroke::initial, initial, {}});
    QubitState s = initial;
    if (mode == Mode::alternating) {
        const PairCollider hot(cfg, Contact::hot);
        const PairCollider cold(cfg, Contact::cold);
        for (std::size_t k = 1; k <= n_collisions; ++k) {
            const bool is_hot = (k % 2) == 1;
            auto [next, led] = is_hot ? hot(s) : cold(s);
            s = next;
            traj.push_back({k, is_hot ? Stroke::hot : Stroke::cold, s, led});
        }
    } else {
        const TripleCollider both(cfg);
        for (std::size_t k = 1; k <= n_collisions; ++k) {
            auto [next, led] = both(s);
            s = next;
            traj.push_back({k, Stroke::both, s, led});
        }
    }
    return traj;
}

inline constexpr double kDefaultTol = 1e-12;
inline constexpr std::size_t kDefaultMaxCycles = 1'000'000;
// Cycle maps with |slope| at or above this do not contract.
inline constexpr double kContractionLimit = 1.0 - 1e-12;

struct NumericLimitCycle {
    double p_after_cold{0.0};  // simultaneous: the steady population
    double p_after_hot{0.0};   // simultaneous: equal to p_after_cold
    double slope{0.0};         // a in p' = a p + b over one cycle
    double intercept{0.0};     // b
    std::size_t cycles_checked{0};
    double residual_change{0.0};
    double residual_coherence{0.0};
    ThermoCycle thermo;
    CollisionLedger ledger_hot;   // alternating: hot stroke; simultaneous: the collision
    CollisionLedger ledger_cold;  // alternating: cold stroke; simultaneous: zeros
};

// Fixed point of the exactly affine one-cycle population map, located by fitting
// two probe cycles and confirmed by iteration from the fitted value.
inline NumericLimitCycle find_limit_cycle_numeric(const MachineConfig& cfg, Mode mode,
                                                  double tol = kDefaultTol,
                                                  std::size_t max_cycles = kDefaultMaxCycles) {
    if (!(tol > 0.0)) throw std::invalid_argument("find_limit_cycle_numeric: tol must be > 0");
    validate(cfg);

    NumericLimitCycle out;
    auto finish = [&](auto&& cycle_population, auto&& run_cycle) {
        const double b = cycle_population(0.0);
        const double a = cycle_population(1.0) - b;
        out.slope = a;
        out.intercept = b;
        if (!(std::abs(a) < kContractionLimit)) {
            std::ostringstream os;
            os.precision(17);
            os << "find_limit_cycle_numeric: cycle map does not contract (slope " << a
               << "); frozen dynamics for " << describe(cfg);
            throw FrozenDynamics(os.str());
        }
        double p = b / (1.0 - a);
        double change = std::numeric_limits<double>::infinity();
        std::size_t k = 0;
        while (k < max_cycles) {
            const double next = cycle_population(p);
            ++k;
            change = std::abs(next - p);
            p = next;
            if (change < tol) break;
        }
        out.cycles_checked = k;
        out.residual_change = change;
        if (!(change < tol)) {
            std::ostringstream os;
            os.precision(17);
            os << "find_limit_cycle_numeric: no convergence after " << k
               << " cycles (last change " << change << ", slope " << a << ", tol " << tol
               << ") for " << describe(cfg);
            throw NonConvergence(os.str());
        }
        run_cycle(p);
    };

    if (mode == Mode::alternating) {
        const PairCollider hot(cfg, Contact::hot);
        const PairCollider cold(cfg, Contact::cold);
        finish([&](double p) { return cold.population(hot.population(p)); },
               [&](double p) {
                   const QubitState start{p, 0.0};
                   auto [after_hot, led_h] = hot(start);
                   auto [after_cold, led_c] = cold(after_hot);
                   out.p_after_cold = p;
                   out.p_after_hot = after_hot.p;
                   out.residual_coherence = std::abs(after_cold.c);
                   out.ledger_hot = led_h;
                   out.ledger_cold = led_c;
                   ThermoCycle& t = out.thermo;
                   t.q_hot = led_h.q_hot;
                   t.w_hot = led_h.w_hot;
                   t.q_cold = led_c.q_cold;
                   t.w_cold = led_c.w_cold;
                   t.de_hot = led_h.de_system;
                   t.de_cold = led_c.de_system;
                   t.w_total = t.w_hot + t.w_cold;
                   t.q_total = t.q_hot + t.q_cold;
                   t.de_total = t.de_hot + t.de_cold;
               });
    } else {
        const TripleCollider both(cfg);
        finish([&](double p) { return both.population(p); },
               [&](double p) {
                   auto [after, led] = both(QubitState{p, 0.0});
                   out.p_after_cold = p;
                   out.p_after_hot = p;
                   out.residual_coherence = std::abs(after.c);
                   out.ledger_hot = led;
                   ThermoCycle& t = out.thermo;
                   t.q_hot = led.q_hot;
                   t.q_cold = led.q_cold;
                   t.w_hot = led.w_hot;
                   t.w_cold = led.w_cold;
                   t.w_total = t.w_hot + t.w_cold;
                   t.q_total = t.q_hot + t.q_cold;
                   t.de_hot = std::numeric_limits<double>::quiet_NaN();
                   t.de_cold = std::numeric_limits<double>::quiet_NaN();
                   t.de_total = led.de_system;
               });
    }
    if (!(out.residual_coherence < tol)) {
        std::ostringstream os;
        os << "find_limit_cycle_numeric: residual coherence " << out.residual_coherence
           << " exceeds tol " << tol;
        throw NonConvergence(os.str());
    }
    return out;
}

}  // namespace qrim::engine
