#include "duc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <cblas.h>
#include <lapacke.h>

namespace duc {

namespace {

lapack_complex_double* lp(cplx* p) { return reinterpret_cast<lapack_complex_double*>(p); }

void require_square(const ComplexMatrix& m, const char* who) {
    if (m.rows() != m.cols()) throw std::invalid_argument(std::string(who) + ": non-square matrix");
}

// descending modulus, ties by descending phase in (-pi, pi]
bool eig_order(const cplx& a, const cplx& b) {
    const double ma = std::abs(a), mb = std::abs(b);
    if (std::abs(ma - mb) > 1e-12 * (1.0 + std::max(ma, mb))) return ma > mb;
    return std::atan2(a.imag(), a.real()) > std::atan2(b.imag(), b.real());
}

}  // namespace

std::size_t local_dim_of(const ComplexMatrix& m) {
    require_square(m, "local_dim_of");
    const auto n = m.rows();
    const auto q = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(n))));
    if (q < 2 || q * q != n)
        throw std::invalid_argument("local_dim_of: dimension is not q^2 with q >= 2");
    return q;
}

ComplexMatrix dual_reshuffle(const ComplexMatrix& u) {
    const std::size_t q = local_dim_of(u);
    ComplexMatrix d(q * q, q * q);
    for (std::size_t a = 0; a < q; ++a)
        for (std::size_t b = 0; b < q; ++b)
            for (std::size_t c = 0; c < q; ++c)
                for (std::size_t e = 0; e < q; ++e)
                    d(a * q + b, c * q + e) = u(e * q + b, c * q + a);
    return d;
}

ComplexMatrix partial_trace(const ComplexMatrix& x, Site site) {
    const std::size_t q = local_dim_of(x);
    ComplexMatrix y(q, q);
    if (site == Site::First) {
        for (std::size_t b = 0; b < q; ++b)
            for (std::size_t d = 0; d < q; ++d) {
                cplx s = 0.0;
                for (std::size_t a = 0; a < q; ++a) s += x(a * q + b, a * q + d);
                y(b, d) = s;
            }
    } else {
        for (std::size_t a = 0; a < q; ++a)
            for (std::size_t c = 0; c < q; ++c) {
                cplx s = 0.0;
                for (std::size_t b = 0; b < q; ++b) s += x(a * q + b, c * q + b);
                y(a, c) = s;
            }
    }
    return y;
}

GateValidation validate_gate(const ComplexMatrix& u, double tol) {
    const std::size_t n = u.rows();
    local_dim_of(u);  // rejects non-q^2 dimensions
    const ComplexMatrix id = ComplexMatrix::identity(n);
    const ComplexMatrix ud = u.adjoint();
    GateValidation r;
    r.unitarity_defect = std::max(max_abs_diff(u * ud, id), max_abs_diff(ud * u, id));
    const ComplexMatrix t = dual_reshuffle(u);
    const ComplexMatrix td = t.adjoint();
    r.dual_defect = std::max(max_abs_diff(t * td, id), max_abs_diff(td * t, id));
    r.unitary = r.unitarity_defect <= tol;
    r.dual_unitary = r.dual_defect <= tol;
    r.max_defect = std::max(r.unitarity_defect, r.dual_defect);
    return r;
}

namespace {

std::vector<cplx> zgeev_values(const ComplexMatrix& m, ComplexMatrix* vectors) {
    require_square(m, "general_eigs");
    const lapack_int n = static_cast<lapack_int>(m.rows());
    ComplexMatrix a = m;
    std::vector<cplx> w(n);
    ComplexMatrix vr(n, n);
    const lapack_int info =
        LAPACKE_zgeev(LAPACK_ROW_MAJOR, 'N', vectors ? 'V' : 'N', n, lp(a.data()), n,
                      lp(w.data()), nullptr, n, lp(vr.data()), n);
    if (info < 0) throw std::invalid_argument("general_eigs: bad argument to zgeev");
    if (info > 0) {
        // eigenvalues info..n-1 converged
        std::vector<cplx> partial(w.begin() + info, w.end());
        throw EigenConvergenceError("general_eigs: QR iteration failed to converge",
                                    std::move(partial));
    }
    if (vectors) *vectors = std::move(vr);
    return w;
}

}  // namespace

std::vector<Eigenpair> general_eigs(const ComplexMatrix& m) {
    ComplexMatrix vr;
    std::vector<cplx> w = zgeev_values(m, &vr);
    const std::size_t n = m.rows();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t i, std::size_t j) { return eig_order(w[i], w[j]); });
    std::vector<Eigenpair> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        out[k].value = w[idx[k]];
        out[k].vector.resize(n);
        for (std::size_t i = 0; i < n; ++i) out[k].vector[i] = vr(i, idx[k]);
    }
    return out;
}

std::vector<cplx> general_eigenvalues(const ComplexMatrix& m) {
    std::vector<cplx> w = zgeev_values(m, nullptr);
    std::sort(w.begin(), w.end(), eig_order);
    return w;
}

std::vector<double> singular_values(const ComplexMatrix& m) {
    const lapack_int rows = static_cast<lapack_int>(m.rows());
    const lapack_int cols = static_cast<lapack_int>(m.cols());
    ComplexMatrix a = m;
    std::vector<double> s(std::min(rows, cols));
    std::vector<double> superb(std::max<lapack_int>(1, std::min(rows, cols) - 1));
    const lapack_int info =
        LAPACKE_zgesvd(LAPACK_ROW_MAJOR, 'N', 'N', rows, cols, lp(a.data()), cols, s.data(),
                       nullptr, 1, nullptr, 1, superb.data());
    if (info != 0) throw std::runtime_error("singular_values: zgesvd failed");
    return s;
}

ComplexMatrix null_space(const ComplexMatrix& m, double cutoff) {
    const lapack_int rows = static_cast<lapack_int>(m.rows());
    const lapack_int cols = static_cast<lapack_int>(m.cols());
    ComplexMatrix a = m;
    const lapack_int k = std::min(rows, cols);
    std::vector<double> s(k);
    ComplexMatrix vt(cols, cols);
    std::vector<double> superb(std::max<lapack_int>(1, k - 1));
    const lapack_int info =
        LAPACKE_zgesvd(LAPACK_ROW_MAJOR, 'N', 'A', rows, cols, lp(a.data()), cols, s.data(),
                       nullptr, 1, lp(vt.data()), cols, superb.data());
    if (info != 0) throw std::runtime_error("null_space: zgesvd failed");
    std::size_t nullity = 0;
    for (lapack_int i = 0; i < cols; ++i)
        if (i >= k || s[i] < cutoff) ++nullity;
    ComplexMatrix basis(m.cols(), nullity);
    std::size_t col = 0;
    for (lapack_int i = 0; i < cols; ++i) {
        if (i < k && s[i] >= cutoff) continue;
        // row i of V^H, conjugated, is the corresponding column of V
        for (lapack_int j = 0; j < cols; ++j) basis(j, col) = std::conj(vt(i, j));
        ++col;
    }
    return basis;
}

HermitianEig hermitian_eig(const ComplexMatrix& w, double tol) {
    require_square(w, "hermitian_eig");
    if (max_abs_diff(w, w.adjoint()) > tol)
        throw std::invalid_argument("hermitian_eig: input is not Hermitian within tolerance");
    const lapack_int n = static_cast<lapack_int>(w.rows());
    HermitianEig r;
    r.vectors = w;
    r.values.resize(n);
    const lapack_int info =
        LAPACKE_zheev(LAPACK_ROW_MAJOR, 'V', 'U', n, lp(r.vectors.data()), n, r.values.data());
    if (info != 0) throw std::runtime_error("hermitian_eig: zheev failed");
    return r;
}

std::vector<double> unitary_eigenphases(const ComplexMatrix& u) {
    require_square(u, "unitary_eigenphases");
    const std::size_t n = u.rows();
    const lapack_int ln = static_cast<lapack_int>(n);

    // For unitary U with eigenvalues e^{i theta}, H = (U + U^dag)/2 and
    // K = i(U^dag - U)/2 are commuting Hermitian matrices with eigenvalues
    // cos(theta) and sin(theta) in matching eigenvectors. One Hermitian
    // diagonalization of H plus diagonal elements of V^dag K V recovers the
    // phases at roughly a third of the cost of a general eigensolve.
    const ComplexMatrix udag = u.adjoint();
    ComplexMatrix h(n, n), k(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            h(i, j) = 0.5 * (u(i, j) + udag(i, j));
            k(i, j) = cplx(0.0, 0.5) * (udag(i, j) - u(i, j));
        }

    ComplexMatrix vecs = h;
    std::vector<double> cosv(n);
    if (LAPACKE_zheevd(LAPACK_ROW_MAJOR, 'V', 'U', ln, lp(vecs.data()), ln, cosv.data()) != 0)
        throw std::runtime_error("unitary_eigenphases: zheevd failed");

    ComplexMatrix kv(n, n);
    const cplx one(1.0), zero(0.0);
    cblas_zgemm(CblasRowMajor, CblasNoTrans, CblasNoTrans, ln, ln, ln, &one, k.data(), ln,
                vecs.data(), ln, &zero, kv.data(), ln);

    std::vector<double> sinv(n);
    // Within a cos-degenerate group the H-eigenvectors may mix K-eigenvectors,
    // so diagonalize the (exactly Hermitian, since [H, K] = 0) group block of
    // V^dag K V instead of taking raw diagonal entries.
    const double group_tol = 1e-8;
    for (std::size_t lo = 0; lo < n;) {
        std::size_t hi = lo + 1;
        while (hi < n && cosv[hi] - cosv[hi - 1] <= group_tol) ++hi;
        if (hi - lo == 1) {
            cplx d = 0.0;
            for (std::size_t r = 0; r < n; ++r) d += std::conj(vecs(r, lo)) * kv(r, lo);
            sinv[lo] = d.real();
        } else {
            const std::size_t g = hi - lo;
            ComplexMatrix block(g, g);
            for (std::size_t a = 0; a < g; ++a)
                for (std::size_t b = 0; b < g; ++b) {
                    cplx d = 0.0;
                    for (std::size_t r = 0; r < n; ++r)
                        d += std::conj(vecs(r, lo + a)) * kv(r, lo + b);
                    block(a, b) = d;
                }
            // symmetrize away rounding before the strict Hermiticity check
            for (std::size_t a = 0; a < g; ++a)
                for (std::size_t b = a; b < g; ++b) {
                    const cplx avg = 0.5 * (block(a, b) + std::conj(block(b, a)));
                    block(a, b) = avg;
                    block(b, a) = std::conj(avg);
                }
            const HermitianEig be = hermitian_eig(block);
            for (std::size_t a = 0; a < g; ++a) sinv[lo + a] = be.values[a];
        }
        lo = hi;
    }

    std::vector<double> phases(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(cosv[i] * cosv[i] + sinv[i] * sinv[i] - 1.0) > 1e-6)
            throw std::invalid_argument(
                "unitary_eigenphases: input is not unitary (cos^2 + sin^2 != 1)");
        phases[i] = std::atan2(sinv[i], cosv[i]);
    }
    std::sort(phases.begin(), phases.end());
    return phases;
}

ComplexMatrix hermitian_phase_exp(const ComplexMatrix& w, double s) {
    const HermitianEig e = hermitian_eig(w);
    const std::size_t n = w.rows();
    ComplexMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const cplx phase = std::exp(cplx(0.0, s * e.values[k]));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                out(i, j) += phase * e.vectors(i, k) * std::conj(e.vectors(j, k));
    }
    return out;
}

cplx determinant(const ComplexMatrix& m) {
    require_square(m, "determinant");
    const lapack_int n = static_cast<lapack_int>(m.rows());
    ComplexMatrix a = m;
    std::vector<lapack_int> piv(n);
    const lapack_int info = LAPACKE_zgetrf(LAPACK_ROW_MAJOR, n, n, lp(a.data()), n, piv.data());
    if (info < 0) throw std::runtime_error("determinant: zgetrf failed");
    cplx det = 1.0;
    for (lapack_int i = 0; i < n; ++i) {
        det *= a(i, i);
        if (piv[i] != i + 1) det = -det;
    }
    return det;
}

}  // namespace duc
