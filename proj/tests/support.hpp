// support.hpp: Conversions and random inputs shared by the unit tests

#pragma once

#include "oracles.hpp"
#include "qrim/matops.hpp"
#include "qrim/model.hpp"

#include <random>

namespace support {

inline oracle::Mat to_mat(const qrim::CMatrix& m) {
    oracle::Mat out(static_cast<std::size_t>(m.rows()),
                    std::vector<oracle::cplx>(static_cast<std::size_t>(m.cols())));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
    return out;
}

inline double max_diff(const qrim::CMatrix& a, const oracle::Mat& b) {
    return oracle::max_abs_diff(to_mat(a), b);
}

inline qrim::CMatrix random_hermitian(std::mt19937_64& rng, Eigen::Index n, double scale = 3.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    qrim::CMatrix a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = qrim::cplx(u(rng), u(rng));
    return 0.5 * (a + a.adjoint());
}

inline qrim::CMatrix random_density(std::mt19937_64& rng, Eigen::Index n) {
    std::normal_distribution<double> g;
    qrim::CMatrix a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = qrim::cplx(g(rng), g(rng));
    qrim::CMatrix rho = a * a.adjoint();
    return rho / rho.trace();
}

inline oracle::Contact contact(const qrim::MachineConfig& cfg, qrim::Contact which) {
    const qrim::Reservoir& r = cfg.reservoir(which);
    return {r.coupling.jxx, r.coupling.jyy, r.bath.beta, r.bath.omega};
}

// The running example: J^H = (4, 16), J^C = (2, 8), beta = (2, 1), resonant at omega = 1.
inline qrim::MachineConfig figure_config(double tau) {
    qrim::MachineConfig cfg;
    cfg.hot.coupling = {4.0, 16.0};
    cfg.cold.coupling = {2.0, 8.0};
    cfg.tau = tau;
    return cfg;
}

inline qrim::MachineConfig equal_coupling_config(double j, double tau) {
    qrim::MachineConfig cfg;
    cfg.hot.coupling = {j, j};
    cfg.cold.coupling = {j, j};
    cfg.tau = tau;
    return cfg;
}

}  // namespace support
