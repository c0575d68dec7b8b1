#include "duc/kernels.hpp"

#include <stdexcept>

namespace duc::kernels {

namespace {

void check_mul_shapes(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: inner dimension mismatch");
}

std::size_t ipow(std::size_t base, std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= base;
    return r;
}

}  // namespace

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_mul_shapes(a, b);
    const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
    ComplexMatrix c(n, m);
    const cplx* pa = a.data();
    const cplx* pb = b.data();
    cplx* pc = c.data();
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) {
        cplx* crow = pc + i * m;
        const cplx* arow = pa + i * k;
        for (std::size_t l = 0; l < k; ++l) {
            const cplx av = arow[l];
            if (av == cplx(0.0)) continue;
            const cplx* brow = pb + l * m;
            for (std::size_t j = 0; j < m; ++j) crow[j] += av * brow[j];
        }
    }
    return c;
}

ComplexMatrix matmul_reference(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_mul_shapes(a, b);
    const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
    ComplexMatrix c(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            cplx s = 0.0;
            for (std::size_t l = 0; l < k; ++l) s += a(i, l) * b(l, j);
            c(i, j) = s;
        }
    return c;
}

namespace {

struct Embedding {
    std::size_t q2;       // q*q
    std::size_t lo_dim;   // q^(L - site - 2)
    std::size_t hi_dim;   // q^site
    std::size_t dim;      // q^L
};

Embedding embedding_for(std::size_t q, std::size_t num_sites, std::size_t site,
                        const ComplexMatrix& gate, std::size_t matrix_extent) {
    if (site + 2 > num_sites) throw std::invalid_argument("apply_gate: site pair out of range");
    const std::size_t q2 = q * q;
    if (gate.rows() != q2 || gate.cols() != q2)
        throw std::invalid_argument("apply_gate: gate is not q^2 x q^2");
    Embedding e{q2, ipow(q, num_sites - site - 2), ipow(q, site), ipow(q, num_sites)};
    if (matrix_extent != e.dim) throw std::invalid_argument("apply_gate: matrix extent is not q^L");
    return e;
}

}  // namespace

void apply_gate_rows(ComplexMatrix& a, const ComplexMatrix& gate,
                     std::size_t q, std::size_t num_sites, std::size_t site) {
    const Embedding e = embedding_for(q, num_sites, site, gate, a.rows());
    const std::size_t ncols = a.cols();
    const std::size_t groups = e.hi_dim * e.lo_dim;
    cplx* pa = a.data();
#pragma omp parallel
    {
        std::vector<cplx> tmp(e.q2 * ncols);
#pragma omp for schedule(static)
        for (std::size_t grp = 0; grp < groups; ++grp) {
            const std::size_t hi = grp / e.lo_dim;
            const std::size_t lo = grp % e.lo_dim;
            const std::size_t base = hi * e.q2 * e.lo_dim + lo;
            std::fill(tmp.begin(), tmp.end(), cplx(0.0));
            for (std::size_t g = 0; g < e.q2; ++g) {
                cplx* trow = tmp.data() + g * ncols;
                for (std::size_t gp = 0; gp < e.q2; ++gp) {
                    const cplx gv = gate(g, gp);
                    if (gv == cplx(0.0)) continue;
                    const cplx* src = pa + (base + gp * e.lo_dim) * ncols;
                    for (std::size_t j = 0; j < ncols; ++j) trow[j] += gv * src[j];
                }
            }
            for (std::size_t g = 0; g < e.q2; ++g) {
                cplx* dst = pa + (base + g * e.lo_dim) * ncols;
                const cplx* trow = tmp.data() + g * ncols;
                for (std::size_t j = 0; j < ncols; ++j) dst[j] = trow[j];
            }
        }
    }
}

void apply_gate_cols(ComplexMatrix& a, const ComplexMatrix& gate,
                     std::size_t q, std::size_t num_sites, std::size_t site) {
    const Embedding e = embedding_for(q, num_sites, site, gate, a.cols());
    const std::size_t nrows = a.rows();
    const std::size_t stride = e.lo_dim;
    cplx* pa = a.data();
#pragma omp parallel
    {
        std::vector<cplx> tmp(e.q2);
#pragma omp for schedule(static)
        for (std::size_t r = 0; r < nrows; ++r) {
            cplx* row = pa + r * a.cols();
            for (std::size_t hi = 0; hi < e.hi_dim; ++hi)
                for (std::size_t lo = 0; lo < e.lo_dim; ++lo) {
                    const std::size_t base = hi * e.q2 * e.lo_dim + lo;
                    for (std::size_t g = 0; g < e.q2; ++g) {
                        cplx s = 0.0;
                        for (std::size_t gp = 0; gp < e.q2; ++gp)
                            s += row[base + gp * stride] * gate(gp, g);
                        tmp[g] = s;
                    }
                    for (std::size_t g = 0; g < e.q2; ++g) row[base + g * stride] = tmp[g];
                }
        }
    }
}

void apply_gate_rows_reference(ComplexMatrix& a, const ComplexMatrix& gate,
                               std::size_t q, std::size_t num_sites, std::size_t site) {
    const Embedding e = embedding_for(q, num_sites, site, gate, a.rows());
    const std::size_t ncols = a.cols();
    std::vector<cplx> tmp(e.q2);
    for (std::size_t hi = 0; hi < e.hi_dim; ++hi)
        for (std::size_t lo = 0; lo < e.lo_dim; ++lo)
            for (std::size_t j = 0; j < ncols; ++j) {
                const std::size_t base = hi * e.q2 * e.lo_dim + lo;
                for (std::size_t g = 0; g < e.q2; ++g) {
                    cplx s = 0.0;
                    for (std::size_t gp = 0; gp < e.q2; ++gp)
                        s += gate(g, gp) * a(base + gp * e.lo_dim, j);
                    tmp[g] = s;
                }
                for (std::size_t g = 0; g < e.q2; ++g) a(base + g * e.lo_dim, j) = tmp[g];
            }
}

void apply_gate_cols_reference(ComplexMatrix& a, const ComplexMatrix& gate,
                               std::size_t q, std::size_t num_sites, std::size_t site) {
    const Embedding e = embedding_for(q, num_sites, site, gate, a.cols());
    std::vector<cplx> tmp(e.q2);
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t hi = 0; hi < e.hi_dim; ++hi)
            for (std::size_t lo = 0; lo < e.lo_dim; ++lo) {
                const std::size_t base = hi * e.q2 * e.lo_dim + lo;
                for (std::size_t g = 0; g < e.q2; ++g) {
                    cplx s = 0.0;
                    for (std::size_t gp = 0; gp < e.q2; ++gp)
                        s += a(r, base + gp * e.lo_dim) * gate(gp, g);
                    tmp[g] = s;
                }
                for (std::size_t g = 0; g < e.q2; ++g) a(r, base + g * e.lo_dim) = tmp[g];
            }
}

std::vector<std::size_t> site_translation_perm(std::size_t q, std::size_t num_sites) {
    const std::size_t dim = ipow(q, num_sites);
    std::vector<std::size_t> perm(dim);
    for (std::size_t s = 0; s < dim; ++s) {
        // digits of s, position 0 most significant
        std::size_t t = 0;
        std::size_t rem = s;
        std::vector<std::size_t> dig(num_sites);
        for (std::size_t x = num_sites; x-- > 0;) {
            dig[x] = rem % q;
            rem /= q;
        }
        // digit at position x moves to position (x+1) mod L
        for (std::size_t x = 0; x < num_sites; ++x) {
            const std::size_t src = (x + num_sites - 1) % num_sites;
            t = t * q + dig[src];
        }
        perm[s] = t;
    }
    return perm;
}

ComplexMatrix permute_rows(const ComplexMatrix& a, const std::vector<std::size_t>& perm) {
    if (perm.size() != a.rows()) throw std::invalid_argument("permute_rows: size mismatch");
    ComplexMatrix b(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) b(perm[i], j) = a(i, j);
    return b;
}

ComplexMatrix permute_cols(const ComplexMatrix& a, const std::vector<std::size_t>& perm) {
    if (perm.size() != a.cols()) throw std::invalid_argument("permute_cols: size mismatch");
    ComplexMatrix b(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) b(i, perm[j]) = a(i, j);
    return b;
}

}  // namespace duc::kernels

namespace duc {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx av = a(i, j);
            if (av == cplx(0.0)) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    c(i * b.rows() + k, j * b.cols() + l) = av * b(k, l);
        }
    return c;
}

}  // namespace duc
