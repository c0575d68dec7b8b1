#include "duc/gate_factory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <lapacke.h>

#include "duc/channel.hpp"

namespace duc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxResample = 100;

lapack_complex_double* lp(cplx* p) { return reinterpret_cast<lapack_complex_double*>(p); }

PhaseMatrix random_phases(std::size_t q, Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    PhaseMatrix j(q);
    for (auto& v : j.entries) v = u(rng);
    return j;
}

void copy_row(PhaseMatrix& j, std::size_t from, std::size_t to) {
    for (std::size_t f = 0; f < j.q; ++f) j.at(to, f) = j.at(from, f);
}

ComplexMatrix basis_unit(std::size_t q, std::size_t a, std::size_t b) {
    ComplexMatrix e(q, q);
    e(a, b) = 1.0;
    return e;
}

/// Shift matrix P_{a,b} = e^{i theta_a} delta_{b, a+1 mod q}.
ComplexMatrix shift_matrix(std::size_t q, const std::vector<double>& thetas) {
    ComplexMatrix p(q, q);
    for (std::size_t a = 0; a < q; ++a) {
        const double th = a < thetas.size() ? thetas[a] : 0.0;
        p(a, (a + 1) % q) = std::exp(cplx(0.0, th));
    }
    return p;
}

/// Counts of unit-one / other near-unit-modulus eigenvalues of the plus
/// channel, used by the rejection steps.
struct SpectrumCounts {
    std::size_t unit_one = 0;
    std::size_t unit_modulus = 0;
};

SpectrumCounts channel_counts(const TwoSiteGate& gate, double one_tol, double mod_tol) {
    const QuantumChannel ch = build_channel(gate, Direction::Plus);
    SpectrumCounts c;
    for (const cplx& lam : general_eigenvalues(ch.matrix)) {
        if (std::abs(lam - cplx(1.0)) <= one_tol) ++c.unit_one;
        if (std::abs(std::abs(lam) - 1.0) <= mod_tol) ++c.unit_modulus;
    }
    return c;
}

}  // namespace

std::string to_string(GateClass c) {
    switch (c) {
        case GateClass::ErgodicMixing: return "ergodic_mixing";
        case GateClass::NonErgodic: return "non_ergodic";
        case GateClass::NonErgodicNoncommuting: return "non_ergodic_noncommuting";
        case GateClass::ErgodicNonmixing: return "ergodic_nonmixing";
        case GateClass::NonInteracting: return "non_interacting";
        case GateClass::Prethermal: return "prethermal";
        case GateClass::DftKicked: return "dft";
        case GateClass::Qubit: return "qubit";
    }
    return "unknown";
}

GateClass gate_class_from_string(const std::string& s) {
    if (s == "ergodic_mixing" || s == "ergodic-mixing") return GateClass::ErgodicMixing;
    if (s == "non_ergodic" || s == "non-ergodic") return GateClass::NonErgodic;
    if (s == "non_ergodic_noncommuting" || s == "non-ergodic-noncommuting")
        return GateClass::NonErgodicNoncommuting;
    if (s == "ergodic_nonmixing" || s == "ergodic-nonmixing") return GateClass::ErgodicNonmixing;
    if (s == "non_interacting" || s == "non-interacting") return GateClass::NonInteracting;
    if (s == "prethermal") return GateClass::Prethermal;
    if (s == "dft") return GateClass::DftKicked;
    if (s == "qubit") return GateClass::Qubit;
    throw std::invalid_argument("unknown gate class: " + s);
}

void GateSpec::validate() const {
    if (q < 2) throw std::invalid_argument("GateSpec: q must be >= 2");
    switch (cls) {
        case GateClass::NonErgodic:
        case GateClass::Prethermal:
            if (n < 1 || n > q - 1)
                throw std::invalid_argument("GateSpec: need 1 <= n <= q-1 (n = q is equivalent to n = q-1)");
            break;
        case GateClass::NonErgodicNoncommuting:
            if (n < 1 || n > q - 1)
                throw std::invalid_argument("GateSpec: need 1 <= n <= q-1");
            // m < 2 is allowed and degenerates to the plain non-ergodic
            // construction (no equal rows, no extra charges)
            if (m > n)
                throw std::invalid_argument("GateSpec: need m <= n for the noncommuting class");
            break;
        case GateClass::Qubit:
            if (q != 2) throw std::invalid_argument("GateSpec: qubit class requires q = 2");
            break;
        default:
            break;
    }
    if (epsilon < 0.0) throw std::invalid_argument("GateSpec: epsilon must be >= 0");
    if (cls == GateClass::Prethermal && epsilon == 0.0 && n == 0)
        throw std::invalid_argument("GateSpec: prethermal requires n >= 1");
}

double GateBundle::reassembly_defect() const {
    const ComplexMatrix rebuilt =
        kron(u_plus, u_minus) * build_V(j).matrix * kron(v_minus, v_plus);
    return max_abs_diff(rebuilt, gate.matrix);
}

TwoSiteGate build_V(const PhaseMatrix& j) {
    const std::size_t q = j.q;
    ComplexMatrix v(q * q, q * q);
    for (std::size_t a = 0; a < q; ++a)
        for (std::size_t b = 0; b < q; ++b)
            v(a * q + b, b * q + a) = std::exp(cplx(0.0, j.at(a, b)));
    return TwoSiteGate(q, std::move(v));
}

ComplexMatrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    ComplexMatrix g(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) g(i, j) = cplx(n(rng), n(rng));
    return g;
}

ComplexMatrix haar_unitary(std::size_t q, Rng& rng) {
    if (q == 0) throw std::invalid_argument("haar_unitary: q must be >= 1");
    ComplexMatrix a = ginibre(q, q, rng);
    const lapack_int nq = static_cast<lapack_int>(q);
    std::vector<cplx> tau(q);
    if (LAPACKE_zgeqrf(LAPACK_ROW_MAJOR, nq, nq, lp(a.data()), nq, lp(tau.data())) != 0)
        throw std::runtime_error("haar_unitary: zgeqrf failed");
    std::vector<cplx> rdiag(q);
    for (std::size_t i = 0; i < q; ++i) rdiag[i] = a(i, i);
    if (LAPACKE_zungqr(LAPACK_ROW_MAJOR, nq, nq, nq, lp(a.data()), nq, lp(tau.data())) != 0)
        throw std::runtime_error("haar_unitary: zungqr failed");
    // absorb the R-diagonal phases so the distribution is Haar
    for (std::size_t jcol = 0; jcol < q; ++jcol) {
        const cplx phase = rdiag[jcol] / std::abs(rdiag[jcol]);
        for (std::size_t i = 0; i < q; ++i) a(i, jcol) *= phase;
    }
    // global q-th-root phase to land in SU(q)
    const cplx det = determinant(a);
    const cplx fix = std::exp(cplx(0.0, -std::arg(det) / static_cast<double>(q)));
    a *= fix;
    return a;
}

ComplexMatrix gue_unit_radius(std::size_t q, Rng& rng) {
    ComplexMatrix g = ginibre(q, q, rng);
    ComplexMatrix w = g + g.adjoint();
    w *= 0.5;
    double radius = 0.0;
    for (double v : hermitian_eig(w).values) radius = std::max(radius, std::abs(v));
    w *= 1.0 / radius;
    return w;
}

ComplexMatrix block_unitary(std::size_t q, std::size_t n, const ComplexMatrix& inner,
                            const ComplexMatrix& w, BlockSide side) {
    if (n > q - 1) throw std::invalid_argument("block_unitary: need n <= q-1");
    if (inner.rows() != q - n || inner.cols() != q - n)
        throw std::invalid_argument("block_unitary: inner block is not (q-n) x (q-n)");
    if (w.rows() != q || w.cols() != q)
        throw std::invalid_argument("block_unitary: w is not q x q");
    ComplexMatrix block(q, q);
    for (std::size_t i = 0; i < n; ++i) block(i, i) = 1.0;
    for (std::size_t i = 0; i < q - n; ++i)
        for (std::size_t j = 0; j < q - n; ++j) block(n + i, n + j) = inner(i, j);
    return side == BlockSide::U ? w * block : block * w.adjoint();
}

GateEnsemble::GateEnsemble(GateSpec spec) : spec_(std::move(spec)) {
    spec_.validate();
    const std::size_t q = spec_.q;
    Rng shared = make_rng(derive_seed(spec_.seed, SeedLane::Gate, 0));
    w_ = ComplexMatrix::identity(q);

    switch (spec_.cls) {
        case GateClass::NonErgodic:
        case GateClass::NonErgodicNoncommuting:
        case GateClass::Prethermal: {
            w_ = haar_unitary(q, shared);
            const ComplexMatrix wd = w_.adjoint();
            for (std::size_t a = 0; a < spec_.n; ++a)
                charges_.push_back(w_ * basis_unit(q, a, a) * wd);
            if (spec_.cls == GateClass::NonErgodicNoncommuting) {
                const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
                for (std::size_t a = 0; a < spec_.m; ++a)
                    for (std::size_t b = 0; b < spec_.m; ++b) {
                        if (a == b) continue;
                        ComplexMatrix e = basis_unit(q, a, b);
                        if (b < a)
                            e += basis_unit(q, b, a);
                        else
                            e -= basis_unit(q, b, a);
                        extra_charges_.push_back((w_ * e * wd) * cplx(inv_sqrt2));
                    }
            }
            if (spec_.cls == GateClass::Prethermal) {
                Rng prng = make_rng(derive_seed(spec_.seed, SeedLane::Perturbation, 0));
                const ComplexMatrix wu = gue_unit_radius(q, prng);
                const ComplexMatrix wv = gue_unit_radius(q, prng);
                pert_u_ = hermitian_phase_exp(wu, spec_.epsilon);
                pert_v_ = hermitian_phase_exp(wv, -spec_.epsilon);
            }
            break;
        }
        case GateClass::ErgodicNonmixing:
            w_ = haar_unitary(q, shared);
            break;
        default:
            break;
    }
}

GateBundle GateEnsemble::sample(Rng& rng) const {
    const std::size_t q = spec_.q;

    if (spec_.cls == GateClass::DftKicked) {
        GateBundle b;
        b.spec = spec_;
        b.gate = dft_kicked_gate(q);
        PhaseMatrix j(q);
        for (std::size_t a = 0; a < q; ++a)
            for (std::size_t f = 0; f < q; ++f)
                j.at(a, f) = kTwoPi * static_cast<double>(a * f) / static_cast<double>(q);
        b.j = j;
        ComplexMatrix k(q, q);
        const double inv_sqrtq = 1.0 / std::sqrt(static_cast<double>(q));
        for (std::size_t a = 0; a < q; ++a)
            for (std::size_t bx = 0; bx < q; ++bx)
                k(a, bx) = inv_sqrtq * std::exp(cplx(0.0, kTwoPi * static_cast<double>(a * bx) /
                                                              static_cast<double>(q)));
        b.u_plus = k.adjoint();
        b.u_minus = k;
        b.v_minus = k;
        b.v_plus = k.adjoint();
        b.w = ComplexMatrix::identity(q);
        return b;
    }
    if (spec_.cls == GateClass::Qubit) {
        GateBundle b;
        b.spec = spec_;
        b.gate = qubit_gate(spec_.j_scalar);
        PhaseMatrix j(2);
        const double jj = spec_.j_scalar;
        j.at(0, 0) = -jj;
        j.at(1, 1) = -jj;
        j.at(0, 1) = jj - std::numbers::pi / 2.0;
        j.at(1, 0) = jj - std::numbers::pi / 2.0;
        b.j = j;
        b.u_plus = b.u_minus = b.v_plus = b.v_minus = ComplexMatrix::identity(2);
        b.w = ComplexMatrix::identity(2);
        return b;
    }

    for (int attempt = 0; attempt < kMaxResample; ++attempt) {
        GateBundle b;
        b.spec = spec_;
        b.w = w_;
        b.charges = charges_;
        b.extra_charges = extra_charges_;

        PhaseMatrix j = random_phases(q, rng);
        std::size_t expected_unit_one = 1;
        std::size_t expected_unit_modulus = 1;

        switch (spec_.cls) {
            case GateClass::ErgodicMixing:
                b.u_plus = haar_unitary(q, rng);
                b.v_plus = haar_unitary(q, rng);
                break;
            case GateClass::NonErgodic:
            case GateClass::Prethermal: {
                const ComplexMatrix inner_u = haar_unitary(q - spec_.n, rng);
                const ComplexMatrix inner_v = haar_unitary(q - spec_.n, rng);
                b.u_plus = block_unitary(q, spec_.n, inner_u, w_, BlockSide::U);
                b.v_plus = block_unitary(q, spec_.n, inner_v, w_, BlockSide::V);
                expected_unit_one = spec_.n + 1;
                expected_unit_modulus = spec_.n + 1;
                if (spec_.cls == GateClass::Prethermal && spec_.epsilon > 0.0) {
                    b.u_plus = pert_u_ * b.u_plus;
                    b.v_plus = b.v_plus * pert_v_;
                }
                break;
            }
            case GateClass::NonErgodicNoncommuting: {
                for (std::size_t r = 1; r < spec_.m; ++r) copy_row(j, 0, r);
                const ComplexMatrix inner_u = haar_unitary(q - spec_.n, rng);
                const ComplexMatrix inner_v = haar_unitary(q - spec_.n, rng);
                b.u_plus = block_unitary(q, spec_.n, inner_u, w_, BlockSide::U);
                b.v_plus = block_unitary(q, spec_.n, inner_v, w_, BlockSide::V);
                expected_unit_one = spec_.n + 1 + spec_.m * (spec_.m - 1);
                expected_unit_modulus = expected_unit_one;
                break;
            }
            case GateClass::NonInteracting: {
                for (std::size_t r = 1; r < q; ++r) copy_row(j, 0, r);
                b.u_plus = haar_unitary(q, rng);
                b.v_plus = b.u_plus.adjoint();
                expected_unit_one = q * q;
                expected_unit_modulus = q * q;
                break;
            }
            case GateClass::ErgodicNonmixing: {
                const ComplexMatrix p = shift_matrix(q, spec_.thetas);
                b.u_plus = w_ * p;
                b.v_plus = w_.adjoint();
                expected_unit_one = 1;
                expected_unit_modulus = q;
                break;
            }
            default:
                throw std::invalid_argument("GateEnsemble: unsupported class");
        }

        if (spec_.cls == GateClass::NonInteracting) {
            b.u_minus = haar_unitary(q, rng);
            b.v_minus = b.u_minus.adjoint();
        } else {
            b.u_minus = haar_unitary(q, rng);
            b.v_minus = haar_unitary(q, rng);
        }

        b.j = j;
        b.gate = TwoSiteGate(
            q, kron(b.u_plus, b.u_minus) * build_V(j).matrix * kron(b.v_minus, b.v_plus));

        // reject degenerate draws whose spectrum does not match the class;
        // skipped where the spectrum is guaranteed (non-interacting) or where
        // near-unit moduli are the point (small-epsilon prethermal)
        if (spec_.cls == GateClass::NonInteracting || spec_.cls == GateClass::Prethermal)
            return b;
        const SpectrumCounts counts = channel_counts(b.gate, 1e-8, 1e-6);
        if (counts.unit_one == expected_unit_one && counts.unit_modulus == expected_unit_modulus)
            return b;
    }
    throw std::runtime_error("GateEnsemble::sample: rejection cap exceeded");
}

GateBundle make_gate(const GateSpec& spec, Rng& rng) { return GateEnsemble(spec).sample(rng); }

GateBundle make_gate(const GateSpec& spec) {
    Rng rng = make_rng(derive_seed(spec.seed, SeedLane::Gate, 1));
    return make_gate(spec, rng);
}

TwoSiteGate dft_kicked_gate(std::size_t q) {
    if (q < 2) throw std::invalid_argument("dft_kicked_gate: q must be >= 2");
    ComplexMatrix u(q * q, q * q);
    const double inv_q = 1.0 / static_cast<double>(q);
    for (std::size_t a = 0; a < q; ++a)
        for (std::size_t b = 0; b < q; ++b)
            for (std::size_t c = 0; c < q; ++c)
                for (std::size_t d = 0; d < q; ++d)
                    u(a * q + b, c * q + d) =
                        inv_q * std::exp(cplx(0.0, kTwoPi * inv_q *
                                                       static_cast<double>((a + d) * (b + c))));
    return TwoSiteGate(q, std::move(u));
}

TwoSiteGate qubit_gate(double j_scalar) {
    // swap-structured core with phases (2J - pi/2)(a-b)^2 - J; at J = pi/4
    // this is SWAP times e^{-i pi/4}
    PhaseMatrix j(2);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
            const double db = static_cast<double>(a) - static_cast<double>(b);
            j.at(a, b) = (2.0 * j_scalar - std::numbers::pi / 2.0) * db * db - j_scalar;
        }
    return build_V(j);
}

ComplexMatrix random_density(std::size_t q, Rng& rng) {
    const ComplexMatrix g = ginibre(q, q, rng);
    ComplexMatrix rho = g * g.adjoint();
    rho *= 1.0 / rho.trace();
    return rho;
}

ComplexMatrix random_traceless(std::size_t q, Rng& rng) {
    ComplexMatrix g = ginibre(q, q, rng);
    const cplx t = g.trace() / static_cast<double>(q);
    for (std::size_t i = 0; i < q; ++i) g(i, i) -= t;
    return g;
}

}  // namespace duc
