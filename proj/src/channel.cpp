#include "duc/channel.hpp"

#include <algorithm>
#include <cmath>

namespace duc {

ComplexMatrix QuantumChannel::apply(const ComplexMatrix& rho) const {
    if (rho.rows() != q || rho.cols() != q)
        throw std::invalid_argument("QuantumChannel::apply: operator is not q x q");
    ComplexMatrix out(q, q);
    for (std::size_t a = 0; a < q; ++a)
        for (std::size_t b = 0; b < q; ++b) {
            cplx s = 0.0;
            for (std::size_t c = 0; c < q; ++c)
                for (std::size_t d = 0; d < q; ++d)
                    s += matrix(a * q + b, c * q + d) * rho(c, d);
            out(a, b) = s;
        }
    return out;
}

QuantumChannel build_channel(const TwoSiteGate& u, Direction direction, double unitarity_tol) {
    const std::size_t q = u.q;
    const GateValidation v = validate_gate(u.matrix, unitarity_tol);
    if (!v.unitary)
        throw std::invalid_argument("build_channel: gate is not unitary within tolerance");

    // Direct index contraction of tr_1[U^dag (E_ik kron 1) U] / q (plus) or
    // tr_2[U^dag (1 kron E_jl) U] / q (minus); equivalent to embedding each
    // basis operator and tracing, but O(q^6) instead of O(q^8).
    const ComplexMatrix& m = u.matrix;
    QuantumChannel ch{q, direction, ComplexMatrix(q * q, q * q)};
    const double inv_q = 1.0 / static_cast<double>(q);
    if (direction == Direction::Plus) {
        for (std::size_t b = 0; b < q; ++b)
            for (std::size_t d = 0; d < q; ++d)
                for (std::size_t i = 0; i < q; ++i)
                    for (std::size_t k = 0; k < q; ++k) {
                        cplx acc = 0.0;
                        for (std::size_t a = 0; a < q; ++a)
                            for (std::size_t j = 0; j < q; ++j)
                                acc += std::conj(m(i * q + j, a * q + b)) * m(k * q + j, a * q + d);
                        ch.matrix(b * q + d, i * q + k) = acc * inv_q;
                    }
    } else {
        for (std::size_t a = 0; a < q; ++a)
            for (std::size_t c = 0; c < q; ++c)
                for (std::size_t j = 0; j < q; ++j)
                    for (std::size_t l = 0; l < q; ++l) {
                        cplx acc = 0.0;
                        for (std::size_t b = 0; b < q; ++b)
                            for (std::size_t i = 0; i < q; ++i)
                                acc += std::conj(m(i * q + j, a * q + b)) * m(i * q + l, c * q + b);
                        ch.matrix(a * q + c, j * q + l) = acc * inv_q;
                    }
    }
    return ch;
}

ComplexMatrix sigma_values(const PhaseMatrix& j) {
    const std::size_t q = j.q;
    ComplexMatrix sigma(q, q);
    for (std::size_t a = 0; a < q; ++a)
        for (std::size_t b = 0; b < q; ++b) {
            cplx s = 0.0;
            for (std::size_t f = 0; f < q; ++f)
                s += std::exp(cplx(0.0, -(j.at(a, f) - j.at(b, f))));
            sigma(a, b) = s / static_cast<double>(q);
        }
    // the diagonal is exactly 1 by construction; pin it against rounding
    for (std::size_t a = 0; a < q; ++a) sigma(a, a) = 1.0;
    return sigma;
}

std::string to_string(ErgodicityClass c) {
    switch (c) {
        case ErgodicityClass::NonInteracting: return "non_interacting";
        case ErgodicityClass::NonErgodic: return "non_ergodic";
        case ErgodicityClass::ErgodicNonmixing: return "ergodic_nonmixing";
        case ErgodicityClass::ErgodicMixing: return "ergodic_mixing";
    }
    return "unknown";
}

ErgodicityReport classify(const QuantumChannel& m, double tol) {
    ErgodicityReport r;
    r.eigenvalues = general_eigenvalues(m.matrix);
    const std::size_t total = r.eigenvalues.size();
    for (const cplx& lam : r.eigenvalues) {
        if (std::abs(lam - cplx(1.0)) <= tol) ++r.n_unit_one;
        if (std::abs(std::abs(lam) - 1.0) <= tol) ++r.n_unit_modulus;
    }
    // subleading modulus: the largest modulus among eigenvalues that are not
    // conserved directions (within tol of 1). This is the decay rate of the
    // slowest decaying or oscillating mode.
    for (const cplx& lam : r.eigenvalues)
        if (std::abs(lam - cplx(1.0)) > tol)
            r.subleading_modulus = std::max(r.subleading_modulus, std::abs(lam));

    if (r.n_unit_one == total)
        r.cls = ErgodicityClass::NonInteracting;
    else if (r.n_unit_one > 1)
        r.cls = ErgodicityClass::NonErgodic;
    else if (r.n_unit_modulus > 1)
        r.cls = ErgodicityClass::ErgodicNonmixing;
    else
        r.cls = ErgodicityClass::ErgodicMixing;
    return r;
}

ConservedCharges conserved_charges(const QuantumChannel& m, double tol) {
    const std::size_t q = m.q;
    const std::size_t d = q * q;
    ComplexMatrix shifted = m.matrix;
    for (std::size_t i = 0; i < d; ++i) shifted(i, i) -= 1.0;
    const ComplexMatrix basis = null_space(shifted, tol);
    const std::size_t k = basis.cols();

    // unvectorize columns; they are trace-orthonormal since the vec 2-norm
    // inner product equals tr(A+ B)
    std::vector<ComplexMatrix> ops;
    ops.reserve(k);
    for (std::size_t c = 0; c < k; ++c) {
        ComplexMatrix op(q, q);
        for (std::size_t a = 0; a < q; ++a)
            for (std::size_t b = 0; b < q; ++b) op(a, b) = basis(a * q + b, c);
        ops.push_back(std::move(op));
    }

    // rotate so the identity direction is an explicit basis element
    ComplexMatrix idn = ComplexMatrix::identity(q);
    idn *= 1.0 / std::sqrt(static_cast<double>(q));
    ConservedCharges out;
    out.basis.push_back(idn);
    out.identity_index = 0;
    for (const ComplexMatrix& op : ops) {
        ComplexMatrix r = op;
        for (const ComplexMatrix& prev : out.basis) {
            const cplx overlap = trace_inner(prev, r);
            ComplexMatrix proj = prev;
            proj *= overlap;
            r -= proj;
        }
        const double nrm = r.frobenius_norm();
        if (nrm > 1e-6) {
            r *= 1.0 / nrm;
            out.basis.push_back(std::move(r));
        }
    }
    return out;
}

SvdCheckReport channel_svd_check(const GateBundle& bundle, double tol) {
    SvdCheckReport r;
    const QuantumChannel ch = build_channel(bundle.gate, Direction::Plus);
    r.channel_singulars = singular_values(ch.matrix);
    const ComplexMatrix sigma = sigma_values(bundle.j);
    for (std::size_t i = 0; i < sigma.rows(); ++i)
        for (std::size_t jx = 0; jx < sigma.cols(); ++jx)
            r.expected_singulars.push_back(std::abs(sigma(i, jx)));
    std::sort(r.expected_singulars.rbegin(), r.expected_singulars.rend());
    for (std::size_t i = 0; i < r.channel_singulars.size(); ++i)
        r.max_mismatch =
            std::max(r.max_mismatch, std::abs(r.channel_singulars[i] - r.expected_singulars[i]));
    r.ok = r.max_mismatch <= tol;
    return r;
}

}  // namespace duc
