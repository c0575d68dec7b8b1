#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "duc/complex_matrix.hpp"
#include "duc/kernels.hpp"

namespace duc {

/// A two-site gate on (C^q)^2, stored as its q^2 x q^2 matrix with the
/// composite row-major index convention (a,b) -> a*q + b.
struct TwoSiteGate {
    std::size_t q = 0;
    ComplexMatrix matrix;

    TwoSiteGate() = default;
    TwoSiteGate(std::size_t q_, ComplexMatrix m) : q(q_), matrix(std::move(m)) {
        if (matrix.rows() != q * q || matrix.cols() != q * q)
            throw std::invalid_argument("TwoSiteGate: matrix is not q^2 x q^2");
        if (!matrix.all_finite())
            throw std::invalid_argument("TwoSiteGate: non-finite entries");
    }
};

/// Local dimension q from a q^2 x q^2 matrix; throws if the extent is not a
/// perfect square.
std::size_t local_dim_of(const ComplexMatrix& m);

/// Space-time dual: U~_{ab,cd} = U_{db,ca}. The result need not be unitary.
ComplexMatrix dual_reshuffle(const ComplexMatrix& u);

enum class Site { First, Second };

/// Partial trace of a q^2 x q^2 operator over one tensor factor.
ComplexMatrix partial_trace(const ComplexMatrix& x, Site site);

struct GateValidation {
    bool unitary = false;
    bool dual_unitary = false;
    double max_defect = 0.0;       // worst of the four defect norms
    double unitarity_defect = 0.0;
    double dual_defect = 0.0;
};

/// Checks ||UU+ - 1||_max and ||U+U - 1||_max for U and its dual.
GateValidation validate_gate(const ComplexMatrix& u, double tol = 1e-10);

struct Eigenpair {
    cplx value;
    std::vector<cplx> vector;  // right eigenvector, unit 2-norm
};

/// Thrown when the QR iteration inside the dense eigensolver fails; carries
/// whatever eigenvalues did converge.
struct EigenConvergenceError : std::runtime_error {
    explicit EigenConvergenceError(std::string msg, std::vector<cplx> partial_)
        : std::runtime_error(std::move(msg)), partial(std::move(partial_)) {}
    std::vector<cplx> partial;
};

/// Dense general (non-Hermitian) eigendecomposition. Pairs are sorted by
/// descending modulus, ties broken by descending phase in (-pi, pi].
std::vector<Eigenpair> general_eigs(const ComplexMatrix& m);

/// Eigenvalues only, same sorting; cheaper when vectors are not needed.
std::vector<cplx> general_eigenvalues(const ComplexMatrix& m);

/// Singular values, descending.
std::vector<double> singular_values(const ComplexMatrix& m);

/// Orthonormal basis (unit 2-norm columns, mutually orthogonal) of the right
/// null space of m, using singular values below cutoff. Returned as a matrix
/// whose columns span the null space; may have zero columns.
ComplexMatrix null_space(const ComplexMatrix& m, double cutoff);

struct HermitianEig {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // columns are eigenvectors
};

/// Eigendecomposition of a Hermitian matrix; throws if the Hermiticity defect
/// exceeds tol.
HermitianEig hermitian_eig(const ComplexMatrix& w, double tol = 1e-10);

/// Eigenvalue phases of a unitary matrix, sorted ascending in (-pi, pi].
/// Computed from one Hermitian diagonalization of (U + U^dag)/2 plus the
/// commuting sine matrix i(U^dag - U)/2, which is substantially cheaper than
/// a general eigensolve. Throws if the input is not unitary.
std::vector<double> unitary_eigenphases(const ComplexMatrix& u);

/// e^{i s W} for Hermitian W, via its spectral decomposition.
ComplexMatrix hermitian_phase_exp(const ComplexMatrix& w, double s);

/// Determinant via LU factorization. Used as an independent cross-check on
/// eigenvalue products and for unit-modulus tests on Floquet operators.
cplx determinant(const ComplexMatrix& m);

}  // namespace duc
