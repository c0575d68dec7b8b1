#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "duc/complex_matrix.hpp"
#include "duc/linalg.hpp"
#include "duc/rng.hpp"

namespace duc {

enum class GateClass {
    ErgodicMixing,
    NonErgodic,
    NonErgodicNoncommuting,
    ErgodicNonmixing,
    NonInteracting,
    Prethermal,
    // appendix reductions, exposed through the same spec for the CLI
    DftKicked,
    Qubit,
};

std::string to_string(GateClass c);
GateClass gate_class_from_string(const std::string& s);

struct GateSpec {
    std::size_t q = 2;
    GateClass cls = GateClass::ErgodicMixing;
    std::size_t n = 0;            // number of commuting charges
    std::size_t m = 0;            // number of equal J rows (noncommuting class)
    double epsilon = 0.0;         // prethermal perturbation strength
    double j_scalar = 0.0;        // qubit-gate coupling
    std::vector<double> thetas;   // shift-matrix phases, empty = all zero
    std::uint64_t seed = 0;

    void validate() const;  // throws std::invalid_argument on bad combinations
};

/// A constructed gate together with the parametrization pieces it was
/// assembled from: U = (u+ kron u-) V[J] (v- kron v+).
struct GateBundle {
    GateSpec spec;
    TwoSiteGate gate;
    ComplexMatrix u_plus, u_minus, v_plus, v_minus;
    PhaseMatrix j;
    ComplexMatrix w;  // charge-rotation unitary (identity when unused)
    std::vector<ComplexMatrix> charges;        // commuting c_a = w e_aa w+
    std::vector<ComplexMatrix> extra_charges;  // non-commuting pairs c_ab

    /// Max-norm defect of recomposing the gate from its components.
    double reassembly_defect() const;
};

/// V[J]_{ab,cd} = delta_{ad} delta_{bc} e^{i J_ab}; dual-unitary for any J.
TwoSiteGate build_V(const PhaseMatrix& j);

/// Haar-distributed element of SU(q): Ginibre + QR with the R-diagonal phase
/// fix, then a global q-th-root phase to set det = 1.
ComplexMatrix haar_unitary(std::size_t q, Rng& rng);

/// Complex Ginibre matrix with independent standard-normal entries.
ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng);

/// GUE-distributed Hermitian matrix rescaled to unit spectral radius.
ComplexMatrix gue_unit_radius(std::size_t q, Rng& rng);

enum class BlockSide { U, V };

/// Block-diagonal one-site unitary of the non-ergodic construction:
/// side U returns w diag(1_n, inner), side V returns diag(1_n, inner) w+.
ComplexMatrix block_unitary(std::size_t q, std::size_t n, const ComplexMatrix& inner,
                            const ComplexMatrix& w, BlockSide side);

/// Samples gates of a fixed spec. The charge-rotation w (and the prethermal
/// perturbation generators) are drawn once from the spec seed and shared
/// across samples, so per-slot fresh gates of a circuit conserve the same
/// charges.
class GateEnsemble {
public:
    explicit GateEnsemble(GateSpec spec);

    GateBundle sample(Rng& rng) const;
    const GateSpec& spec() const { return spec_; }
    const ComplexMatrix& w() const { return w_; }
    const std::vector<ComplexMatrix>& charges() const { return charges_; }

private:
    GateSpec spec_;
    ComplexMatrix w_;
    ComplexMatrix pert_u_, pert_v_;  // e^{+i eps W_u}, e^{-i eps W_v}
    std::vector<ComplexMatrix> charges_;
    std::vector<ComplexMatrix> extra_charges_;
};

/// One-shot construction: ensemble of `spec` sampled once with `rng`.
GateBundle make_gate(const GateSpec& spec, Rng& rng);

/// Same, with the sampling rng derived from spec.seed.
GateBundle make_gate(const GateSpec& spec);

/// Kicked-chain gate U_{ab,cd} = (1/q) e^{2 pi i (a+d)(b+c)/q}.
TwoSiteGate dft_kicked_gate(std::size_t q);

/// q = 2 family: build_V with J'_ab = (2J - pi/2)(a-b)^2 - J, the exponential
/// of the XX+YY coupling. J = pi/4 gives SWAP times e^{-i pi/4}; the channel
/// singular values are {1, 1, sin 2J, sin 2J}.
TwoSiteGate qubit_gate(double j_scalar);

/// Random density matrix G G+ / tr(G G+) from a Ginibre G.
ComplexMatrix random_density(std::size_t q, Rng& rng);

/// Random traceless operator: Ginibre minus (tr/q) 1.
ComplexMatrix random_traceless(std::size_t q, Rng& rng);

}  // namespace duc
