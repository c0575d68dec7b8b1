#pragma once

#include <string>
#include <vector>

#include "duc/complex_matrix.hpp"
#include "duc/gate_factory.hpp"
#include "duc/linalg.hpp"

namespace duc {

enum class Direction { Plus, Minus };

/// Light-cone quantum channel in matrix form: acting on row-major vectorized
/// q x q operators, M(rho)_{ab} = sum_{cd} M_{(ab),(cd)} rho_{cd}.
struct QuantumChannel {
    std::size_t q = 0;
    Direction direction = Direction::Plus;
    ComplexMatrix matrix;

    /// Apply to a q x q operator.
    ComplexMatrix apply(const ComplexMatrix& rho) const;
};

/// M+(rho) = tr_1[U+ (rho kron 1) U]/q, M-(rho) = tr_2[U+ (1 kron rho) U]/q.
QuantumChannel build_channel(const TwoSiteGate& u, Direction direction,
                             double unitarity_tol = 1e-10);

/// sigma_ab = (1/q) sum_f e^{-i(J_af - J_bf)}; the diagonal of the V[J]
/// channel under the composite index (a,b) -> a q + b.
ComplexMatrix sigma_values(const PhaseMatrix& j);

/// Four-way ergodicity classes read off a channel spectrum.
enum class ErgodicityClass { NonInteracting, NonErgodic, ErgodicNonmixing, ErgodicMixing };

std::string to_string(ErgodicityClass c);

struct ErgodicityReport {
    std::vector<cplx> eigenvalues;  // sorted: descending modulus, then phase
    std::size_t n_unit_one = 0;     // |lambda - 1| <= tol, identity included
    std::size_t n_unit_modulus = 0; // ||lambda| - 1| <= tol
    ErgodicityClass cls = ErgodicityClass::ErgodicMixing;
    double subleading_modulus = 0.0;  // largest |lambda| among nontrivial eigenvalues
};

ErgodicityReport classify(const QuantumChannel& m, double tol = 1e-8);

struct ConservedCharges {
    /// Trace-orthonormal basis of the unit-eigenvalue eigenspace; element
    /// identity_index is 1/sqrt(q).
    std::vector<ComplexMatrix> basis;
    std::size_t identity_index = 0;
};

/// Basis of ker(M - 1) via SVD with singular-value cutoff, orthonormalized
/// under the trace inner product and rotated so one element is 1/sqrt(q).
ConservedCharges conserved_charges(const QuantumChannel& m, double tol = 1e-8);

struct SvdCheckReport {
    bool ok = false;
    double max_mismatch = 0.0;
    std::vector<double> channel_singulars;   // descending
    std::vector<double> expected_singulars;  // {|sigma_ab(J)|}, descending
};

/// Singular values of the channel of bundle.gate must equal {|sigma_ab(J)|}
/// as multisets.
SvdCheckReport channel_svd_check(const GateBundle& bundle, double tol = 1e-10);

}  // namespace duc
