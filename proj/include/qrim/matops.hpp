// matops.hpp: Dense complex-matrix kernel for 2-, 4- and 8-dimensional operators
// Kronecker products, partial traces, Hermitian exponentials and expectation values.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qrim {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

namespace tol {
inline constexpr double hermitian = 1e-10;     // max |h - h^dagger| entry
inline constexpr double trace = 1e-12;         // |Tr rho - 1|
inline constexpr double positivity = -1e-10;   // smallest admissible eigenvalue
inline constexpr double unitarity = 1e-12;     // max |U U^dagger - 1| entry
inline constexpr double imag_expect = 1e-12;   // discarded imaginary part of <op>
}  // namespace tol

// --------------------------- Pauli algebra ----------------------------------

inline CMatrix identity(Eigen::Index dim) { return CMatrix::Identity(dim, dim); }

inline CMatrix sigma_x() {
    CMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

inline CMatrix sigma_y() {
    CMatrix m(2, 2);
    m << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
    return m;
}

// sigma_z |0> = +|0>; |0> is the ground state of -(w/2) sigma_z.
inline CMatrix sigma_z() {
    CMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

// --------------------------- Structural checks ------------------------------

inline double max_abs_entry(const CMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double hermiticity_error(const CMatrix& h) {
    if (h.rows() != h.cols()) {
        throw std::invalid_argument("hermiticity_error: matrix must be square");
    }
    return max_abs_entry(h - h.adjoint());
}

inline double unitarity_error(const CMatrix& u) {
    if (u.rows() != u.cols()) {
        throw std::invalid_argument("unitarity_error: matrix must be square");
    }
    return max_abs_entry(u * u.adjoint() - identity(u.rows()));
}

inline void require_hermitian(const CMatrix& h, const char* where) {
    const double err = hermiticity_error(h);
    if (!(err <= tol::hermitian)) {
        std::ostringstream os;
        os << where << ": generator is not Hermitian (max |h - h^dagger| = " << err
           << ", tolerance " << tol::hermitian << ")";
        throw std::invalid_argument(os.str());
    }
}

inline double min_eigenvalue(const CMatrix& h) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("min_eigenvalue: eigen decomposition failed");
    }
    return solver.eigenvalues().minCoeff();
}

// Hermitian, unit trace and positive semidefinite within the kernel tolerances.
inline bool is_density_matrix(const CMatrix& rho) {
    if (rho.rows() != rho.cols() || rho.rows() == 0) return false;
    if (hermiticity_error(rho) > tol::hermitian) return false;
    if (std::abs(rho.trace() - cplx(1.0, 0.0)) > tol::trace) return false;
    return min_eigenvalue(rho) >= tol::positivity;
}

// --------------------------- Operations -------------------------------------

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

inline CMatrix kron(std::initializer_list<CMatrix> factors) {
    CMatrix out = CMatrix::Ones(1, 1);
    for (const CMatrix& f : factors) out = kron(out, f);
    return out;
}

// Trace over every subsystem not listed in `keep`. Subsystem 0 is the leftmost
// Kronecker factor; the kept subsystems appear in the output in ascending order.
inline CMatrix partial_trace(const CMatrix& rho, std::span<const std::size_t> dims,
                             std::span<const std::size_t> keep) {
    if (rho.rows() != rho.cols()) {
        throw std::invalid_argument("partial_trace: matrix must be square");
    }
    if (dims.empty()) {
        throw std::invalid_argument("partial_trace: empty subsystem list");
    }
    const std::size_t total =
        std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
    if (total != static_cast<std::size_t>(rho.rows())) {
        std::ostringstream os;
        os << "partial_trace: product of subsystem dims (" << total
           << ") does not match matrix dimension (" << rho.rows() << ")";
        throw std::invalid_argument(os.str());
    }
    const std::size_t n = dims.size();
    std::vector<bool> kept(n, false);
    for (std::size_t k : keep) {
        if (k >= n) throw std::invalid_argument("partial_trace: keep index out of range");
        kept[k] = true;
    }

    // Row-major strides of the composite index.
    std::vector<std::size_t> stride(n, 1);
    for (std::size_t s = n - 1; s-- > 0;) stride[s] = stride[s + 1] * dims[s + 1];

    std::size_t out_dim = 1;
    for (std::size_t s = 0; s < n; ++s)
        if (kept[s]) out_dim *= dims[s];

    // Maps a composite index to its reduced (kept) index.
    auto reduced = [&](std::size_t idx) {
        std::size_t r = 0;
        for (std::size_t s = 0; s < n; ++s) {
            if (!kept[s]) continue;
            r = r * dims[s] + (idx / stride[s]) % dims[s];
        }
        return r;
    };
    auto traced_part = [&](std::size_t idx) {
        std::size_t r = 0;
        for (std::size_t s = 0; s < n; ++s) {
            if (kept[s]) continue;
            r = r * dims[s] + (idx / stride[s]) % dims[s];
        }
        return r;
    };

    CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(out_dim),
                                static_cast<Eigen::Index>(out_dim));
    for (std::size_t i = 0; i < total; ++i) {
        const std::size_t ti = traced_part(i);
        const std::size_t ri = reduced(i);
        for (std::size_t j = 0; j < total; ++j) {
            if (traced_part(j) != ti) continue;
            out(static_cast<Eigen::Index>(ri), static_cast<Eigen::Index>(reduced(j))) +=
                rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return out;
}

inline CMatrix partial_trace(const CMatrix& rho, std::initializer_list<std::size_t> dims,
                             std::initializer_list<std::size_t> keep) {
    return partial_trace(rho, std::span<const std::size_t>(dims.begin(), dims.size()),
                         std::span<const std::size_t>(keep.begin(), keep.size()));
}

// exp(-i h t) through the eigendecomposition of the Hermitian generator.
inline CMatrix expm_hermitian(const CMatrix& h, double t) {
    if (h.rows() != h.cols()) {
        throw std::invalid_argument("expm_hermitian: generator must be square");
    }
    require_hermitian(h, "expm_hermitian");
    // Symmetrize so the solver sees an exactly Hermitian input.
    const CMatrix hs = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(hs);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("expm_hermitian: eigen decomposition failed");
    }
    const Eigen::VectorXd& lam = solver.eigenvalues();
    const CMatrix& v = solver.eigenvectors();
    Eigen::VectorXcd phase(lam.size());
    for (Eigen::Index k = 0; k < lam.size(); ++k) {
        phase(k) = std::polar(1.0, -lam(k) * t);
    }
    return v * phase.asDiagonal() * v.adjoint();
}

// Tr[op rho] for Hermitian op; the imaginary part is checked and dropped.
inline double expectation(const CMatrix& op, const CMatrix& rho) {
    if (op.rows() != rho.rows() || op.cols() != rho.cols() || op.rows() != op.cols()) {
        std::ostringstream os;
        os << "expectation: dimension mismatch (" << op.rows() << "x" << op.cols() << " vs "
           << rho.rows() << "x" << rho.cols() << ")";
        throw std::invalid_argument(os.str());
    }
    // Tr[A B] = sum_ij A_ij B_ji
    const cplx value = (op.transpose().cwiseProduct(rho)).sum();
    const double scale = std::max(1.0, max_abs_entry(op));
    if (std::abs(value.imag()) > tol::imag_expect * scale) {
        std::ostringstream os;
        os << "expectation: imaginary part " << value.imag()
           << " exceeds tolerance; operator or state not Hermitian";
        throw std::domain_error(os.str());
    }
    return value.real();
}

}  // namespace qrim
