// model.hpp: Qubit states, bath/coupling parameters and the machine Hamiltonians
//
// Conventions used throughout the library:
//   * |0> is the ground state, sigma_z|0> = +|0>, so H = -(w/2) sigma_z = diag(-w/2, +w/2)
//     and the population p is the ground-state population.
//   * Two-body operators are ordered system (x) ancilla.
//   * Three-body operators are ordered system (x) hot (x) cold.

#pragma once

#include "qrim/matops.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qrim {

enum class Contact { hot, cold };

inline std::string_view to_string(Contact c) { return c == Contact::hot ? "hot" : "cold"; }

// Ground-state population p and coherence c = rho_01 of a qubit density matrix.
struct QubitState {
    double p{1.0};
    cplx c{0.0, 0.0};

    friend bool operator==(const QubitState&, const QubitState&) = default;
};

// Tolerance for populations and the positivity condition |c|^2 <= p(1-p).
inline constexpr double kStateTol = 1e-10;

inline bool is_physical(const QubitState& s, double slack = kStateTol) {
    if (!std::isfinite(s.p) || !std::isfinite(s.c.real()) || !std::isfinite(s.c.imag())) {
        return false;
    }
    if (s.p < -slack || s.p > 1.0 + slack) return false;
    return std::norm(s.c) <= s.p * (1.0 - s.p) + slack;
}

inline void require_physical(const QubitState& s, const char* where) {
    if (!is_physical(s)) {
        std::ostringstream os;
        os.precision(17);
        os << where << ": unphysical qubit state (p = " << s.p << ", c = " << s.c.real()
           << (s.c.imag() < 0 ? " - " : " + ") << std::abs(s.c.imag()) << "i)";
        throw std::invalid_argument(os.str());
    }
}

inline CMatrix density_matrix(const QubitState& s) {
    CMatrix rho(2, 2);
    rho << s.p, s.c, std::conj(s.c), 1.0 - s.p;
    return rho;
}

inline QubitState from_density_matrix(const CMatrix& rho) {
    if (rho.rows() != 2 || rho.cols() != 2) {
        throw std::invalid_argument("from_density_matrix: expected a 2x2 matrix");
    }
    return {rho(0, 0).real(), rho(0, 1)};
}

struct BathSpec {
    double beta{1.0};   // inverse temperature
    double omega{1.0};  // ancilla level splitting
};

struct Coupling {
    double jxx{0.0};
    double jyy{0.0};

    bool is_zero() const { return jxx == 0.0 && jyy == 0.0; }
};

struct Reservoir {
    BathSpec bath;
    Coupling coupling;
};

struct MachineConfig {
    double omega_s{1.0};
    Reservoir hot{{1.0, 1.0}, {}};
    Reservoir cold{{2.0, 1.0}, {}};
    double tau{0.5};

    const Reservoir& reservoir(Contact c) const { return c == Contact::hot ? hot : cold; }
    Reservoir& reservoir(Contact c) { return c == Contact::hot ? hot : cold; }

    bool all_couplings_zero() const {
        return hot.coupling.is_zero() && cold.coupling.is_zero();
    }
};

// Per-cycle thermodynamics in the limit cycle. Heat is energy deposited into an
// ancilla; work is the growth of the interaction energy over a collision.
// For the simultaneous machine a cycle is one collision and the per-stroke energy
// changes de_cold/de_hot are not defined (NaN).
struct ThermoCycle {
    double q_cold{0.0};
    double q_hot{0.0};
    double w_cold{0.0};
    double w_hot{0.0};
    double w_total{0.0};
    double q_total{0.0};
    double de_cold{0.0};
    double de_hot{0.0};
    double de_total{0.0};
};

inline void validate(const BathSpec& b, const char* where) {
    if (!std::isfinite(b.beta) || b.beta < 0.0) {
        throw std::invalid_argument(std::string(where) + ": beta must be finite and >= 0");
    }
    if (!std::isfinite(b.omega) || b.omega <= 0.0) {
        throw std::invalid_argument(std::string(where) + ": omega must be finite and > 0");
    }
}

inline void validate(const MachineConfig& cfg) {
    if (!std::isfinite(cfg.omega_s) || cfg.omega_s <= 0.0) {
        throw std::invalid_argument("MachineConfig: omega_s must be finite and > 0");
    }
    if (!std::isfinite(cfg.tau) || cfg.tau < 0.0) {
        throw std::invalid_argument("MachineConfig: tau must be finite and >= 0");
    }
    validate(cfg.hot.bath, "MachineConfig.hot");
    validate(cfg.cold.bath, "MachineConfig.cold");
    for (const Coupling& j : {cfg.hot.coupling, cfg.cold.coupling}) {
        if (!std::isfinite(j.jxx) || !std::isfinite(j.jyy)) {
            throw std::invalid_argument("MachineConfig: couplings must be finite");
        }
    }
    if (cfg.cold.bath.beta < cfg.hot.bath.beta) {
        throw std::invalid_argument("MachineConfig: beta_cold must be >= beta_hot");
    }
}

// p = 1 / (1 + exp(-beta omega)), c = 0.
inline QubitState gibbs_state(const BathSpec& bath) {
    return {1.0 / (1.0 + std::exp(-bath.beta * bath.omega)), {0.0, 0.0}};
}

inline double gibbs_population(const BathSpec& bath) { return gibbs_state(bath).p; }

inline CMatrix qubit_hamiltonian(double omega) { return -0.5 * omega * sigma_z(); }

// J_xx sx(x)sx + J_yy sy(x)sy
inline CMatrix interaction_pair(const Coupling& c) {
    return c.jxx * kron(sigma_x(), sigma_x()) + c.jyy * kron(sigma_y(), sigma_y());
}

// Bare (free) part H_S (x) 1 + 1 (x) H_A of one system-ancilla collision.
inline CMatrix free_hamiltonian_pair(double omega_s, double omega_a) {
    return kron(qubit_hamiltonian(omega_s), identity(2)) +
           kron(identity(2), qubit_hamiltonian(omega_a));
}

inline CMatrix total_hamiltonian_alternating(const MachineConfig& cfg, Contact which) {
    const Reservoir& r = cfg.reservoir(which);
    return interaction_pair(r.coupling) + free_hamiltonian_pair(cfg.omega_s, r.bath.omega);
}

// Interaction of the system with one ancilla embedded in system (x) hot (x) cold.
inline CMatrix interaction_three_body(const Coupling& c, Contact which) {
    const CMatrix i2 = identity(2);
    if (which == Contact::hot) {
        return c.jxx * kron({sigma_x(), sigma_x(), i2}) + c.jyy * kron({sigma_y(), sigma_y(), i2});
    }
    return c.jxx * kron({sigma_x(), i2, sigma_x()}) + c.jyy * kron({sigma_y(), i2, sigma_y()});
}

inline CMatrix system_hamiltonian_three_body(double omega_s) {
    const CMatrix i2 = identity(2);
    return kron({qubit_hamiltonian(omega_s), i2, i2});
}

inline CMatrix ancilla_hamiltonian_three_body(double omega_a, Contact which) {
    const CMatrix i2 = identity(2);
    return which == Contact::hot ? kron({i2, qubit_hamiltonian(omega_a), i2})
                                 : kron({i2, i2, qubit_hamiltonian(omega_a)});
}

inline CMatrix total_hamiltonian_simultaneous(const MachineConfig& cfg) {
    return system_hamiltonian_three_body(cfg.omega_s) +
           ancilla_hamiltonian_three_body(cfg.hot.bath.omega, Contact::hot) +
           ancilla_hamiltonian_three_body(cfg.cold.bath.omega, Contact::cold) +
           interaction_three_body(cfg.hot.coupling, Contact::hot) +
           interaction_three_body(cfg.cold.coupling, Contact::cold);
}

inline std::string describe(const MachineConfig& cfg) {
    std::ostringstream os;
    os.precision(17);
    os << "omega_s=" << cfg.omega_s << " omega_h=" << cfg.hot.bath.omega
       << " omega_c=" << cfg.cold.bath.omega << " beta_h=" << cfg.hot.bath.beta
       << " beta_c=" << cfg.cold.bath.beta << " jxx_h=" << cfg.hot.coupling.jxx
       << " jyy_h=" << cfg.hot.coupling.jyy << " jxx_c=" << cfg.cold.coupling.jxx
       << " jyy_c=" << cfg.cold.coupling.jyy << " tau=" << cfg.tau;
    return os.str();
}

}  // namespace qrim
