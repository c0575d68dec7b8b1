#include <doctest.h>

#include <cmath>
#include <complex>

#include "duc/gate_factory.hpp"
#include "duc/kernels.hpp"
#include "duc/linalg.hpp"
#include "duc/rng.hpp"
#include "test_helpers.hpp"

using namespace duc;
using duc::testing::random_hermitian;
using duc::testing::random_matrix;
using duc::testing::swap_gate;

namespace {

ComplexMatrix basis_unit(std::size_t n, std::size_t i, std::size_t j) {
    ComplexMatrix e(n, n);
    e(i, j) = 1.0;
    return e;
}

}  // namespace

TEST_CASE("kron: identity, basis units, shapes") {
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    CHECK(max_abs_diff(kron(i2, i2), ComplexMatrix::identity(4)) == 0.0);

    const ComplexMatrix e00 = basis_unit(2, 0, 0);
    const ComplexMatrix k = kron(e00, e00);
    CHECK(k.rows() == 4);
    CHECK(k(0, 0) == cplx(1.0));
    CHECK(max_abs_diff(k, basis_unit(4, 0, 0)) == 0.0);

    Rng rng = make_rng(1);
    const ComplexMatrix a = random_matrix(2, 3, rng);
    const ComplexMatrix b = random_matrix(4, 5, rng);
    const ComplexMatrix ab = kron(a, b);
    CHECK(ab.rows() == 8);
    CHECK(ab.cols() == 15);
    // spot-check the defining index formula
    CHECK(ab(1 * 4 + 2, 2 * 5 + 3) == a(1, 2) * b(2, 3));
}

TEST_CASE("kron is multiplicative: (A kron B)(C kron D) = AC kron BD") {
    Rng rng = make_rng(2);
    const ComplexMatrix a = random_matrix(3, 3, rng), b = random_matrix(2, 2, rng);
    const ComplexMatrix c = random_matrix(3, 3, rng), d = random_matrix(2, 2, rng);
    CHECK(max_abs_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)) < 1e-12);
}

TEST_CASE("dual_reshuffle: SWAP self-dual, identity dual, involution") {
    const ComplexMatrix s = swap_gate(3);
    CHECK(max_abs_diff(dual_reshuffle(s), s) == 0.0);

    // dual of the identity: entries delta_ab delta_cd
    const ComplexMatrix di = dual_reshuffle(ComplexMatrix::identity(9));
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b)
            for (std::size_t c = 0; c < 3; ++c)
                for (std::size_t d = 0; d < 3; ++d)
                    CHECK(di(a * 3 + b, c * 3 + d) == cplx(a == b && c == d ? 1.0 : 0.0));

    Rng rng = make_rng(3);
    const ComplexMatrix u = random_matrix(16, 16, rng);
    CHECK(max_abs_diff(dual_reshuffle(dual_reshuffle(u)), u) == 0.0);
}

TEST_CASE("partial_trace: factorized, identity, direct-summation oracle") {
    Rng rng = make_rng(4);
    const ComplexMatrix a = random_matrix(3, 3, rng), b = random_matrix(3, 3, rng);
    ComplexMatrix tb = b;
    tb *= a.trace();
    CHECK(max_abs_diff(partial_trace(kron(a, b), Site::First), tb) < 1e-13);
    ComplexMatrix ta = a;
    ta *= b.trace();
    CHECK(max_abs_diff(partial_trace(kron(a, b), Site::Second), ta) < 1e-13);

    ComplexMatrix qi = ComplexMatrix::identity(3);
    qi *= 3.0;
    CHECK(max_abs_diff(partial_trace(ComplexMatrix::identity(9), Site::Second), qi) == 0.0);

    // SWAP (rho kron 1) SWAP = 1 kron rho; trace out the first site by an
    // independent index-loop summation
    const ComplexMatrix rho = random_matrix(2, 2, rng);
    const ComplexMatrix s = swap_gate(2);
    const ComplexMatrix x = s * kron(rho, ComplexMatrix::identity(2)) * s;
    ComplexMatrix oracle(2, 2);
    for (std::size_t bq = 0; bq < 2; ++bq)
        for (std::size_t d = 0; d < 2; ++d)
            for (std::size_t aa = 0; aa < 2; ++aa) oracle(bq, d) += x(aa * 2 + bq, aa * 2 + d);
    CHECK(max_abs_diff(partial_trace(x, Site::First), oracle) == 0.0);
    // x = 1 kron rho, so tracing the first site gives q rho and the second
    // gives tr(rho) 1
    ComplexMatrix qr = rho;
    qr *= 2.0;
    CHECK(max_abs_diff(partial_trace(x, Site::First), qr) < 1e-13);
    ComplexMatrix tr1 = ComplexMatrix::identity(2);
    tr1 *= rho.trace();
    CHECK(max_abs_diff(partial_trace(x, Site::Second), tr1) < 1e-13);
}

TEST_CASE("trace preservation of partial_trace") {
    Rng rng = make_rng(5);
    const ComplexMatrix x = random_matrix(16, 16, rng);
    CHECK(std::abs(partial_trace(x, Site::First).trace() - x.trace()) < 1e-12);
    CHECK(std::abs(partial_trace(x, Site::Second).trace() - x.trace()) < 1e-12);
}

TEST_CASE("validate_gate: SWAP, identity, CNOT") {
    for (std::size_t q = 2; q <= 8; ++q) {
        const GateValidation r = validate_gate(swap_gate(q));
        CHECK(r.unitary);
        CHECK(r.dual_unitary);
    }

    const GateValidation ri = validate_gate(ComplexMatrix::identity(4));
    CHECK(ri.unitary);
    CHECK_FALSE(ri.dual_unitary);

    ComplexMatrix cnot(4, 4);
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
    const GateValidation rc = validate_gate(cnot);
    CHECK(rc.unitary);
    CHECK_FALSE(rc.dual_unitary);
    // hand check: the dual of CNOT has a zero row, so the defect reaches 1
    CHECK(rc.dual_defect >= 1.0 - 1e-12);

    CHECK_THROWS_AS(validate_gate(ComplexMatrix::identity(5)), std::invalid_argument);
}

TEST_CASE("general_eigs: diagonal, shift, determinant oracle") {
    ComplexMatrix d(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = cplx(0.0, 0.5);
    const auto ev = general_eigenvalues(d);
    CHECK(std::abs(ev[0] - cplx(1.0)) < 1e-14);
    CHECK(std::abs(ev[1] - cplx(0.0, 0.5)) < 1e-14);

    ComplexMatrix shift(2, 2);
    shift(0, 1) = shift(1, 0) = 1.0;
    const auto es = general_eigenvalues(shift);
    // spectrum {1, -1}; the tie on modulus is broken by descending phase,
    // so -1 (phase pi) is listed first
    CHECK(std::abs(es[0] - cplx(-1.0)) < 1e-14);
    CHECK(std::abs(es[1] - cplx(1.0)) < 1e-14);

    Rng rng = make_rng(6);
    const ComplexMatrix m = random_matrix(9, 9, rng);
    cplx prod = 1.0;
    for (const auto& p : general_eigs(m)) prod *= p.value;
    const cplx det = determinant(m);
    CHECK(std::abs(prod - det) < 1e-8 * std::abs(det));
}

TEST_CASE("general_eigs: residual and ordering contracts") {
    Rng rng = make_rng(7);
    const ComplexMatrix m = random_matrix(8, 8, rng);
    const double scale = m.frobenius_norm();
    const auto pairs = general_eigs(m);
    for (std::size_t k = 0; k + 1 < pairs.size(); ++k) {
        const double ma = std::abs(pairs[k].value), mb = std::abs(pairs[k + 1].value);
        CHECK(ma >= mb - 1e-12 * (1.0 + ma));
    }
    for (const auto& p : pairs) {
        // residual ||Mv - lambda v||
        double res = 0.0, vnorm = 0.0;
        for (std::size_t i = 0; i < 8; ++i) {
            cplx mv = 0.0;
            for (std::size_t j = 0; j < 8; ++j) mv += m(i, j) * p.vector[j];
            res += std::norm(mv - p.value * p.vector[i]);
            vnorm += std::norm(p.vector[i]);
        }
        CHECK(std::sqrt(res) <= 1e-8 * scale * std::sqrt(vnorm));
    }
}

TEST_CASE("general_eigs on Hermitian input returns near-real eigenvalues") {
    Rng rng = make_rng(8);
    const ComplexMatrix h = random_hermitian(6, rng);
    for (const cplx& v : general_eigenvalues(h)) CHECK(std::abs(v.imag()) < 1e-8);
}

TEST_CASE("hermitian_phase_exp: s=0, diagonal, Taylor oracle, unitarity") {
    Rng rng = make_rng(9);
    const ComplexMatrix w = random_hermitian(4, rng);
    CHECK(max_abs_diff(hermitian_phase_exp(w, 0.0), ComplexMatrix::identity(4)) < 1e-12);

    ComplexMatrix d(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = 2.0;
    const ComplexMatrix ed = hermitian_phase_exp(d, M_PI);
    CHECK(std::abs(ed(0, 0) - std::exp(cplx(0.0, M_PI))) < 1e-12);
    CHECK(std::abs(ed(1, 1) - std::exp(cplx(0.0, 2.0 * M_PI))) < 1e-12);
    CHECK(std::abs(ed(0, 1)) < 1e-12);

    // truncated series sum_{k<=30} (0.3 i W)^k / k!
    ComplexMatrix series = ComplexMatrix::identity(4);
    ComplexMatrix term = ComplexMatrix::identity(4);
    ComplexMatrix iw = w;
    iw *= cplx(0.0, 0.3);
    for (int k = 1; k <= 30; ++k) {
        term = term * iw;
        term *= 1.0 / k;
        series += term;
    }
    const ComplexMatrix e = hermitian_phase_exp(w, 0.3);
    CHECK(max_abs_diff(e, series) < 1e-10);
    CHECK(max_abs_diff(e * e.adjoint(), ComplexMatrix::identity(4)) < 1e-10);

    ComplexMatrix nh = random_matrix(3, 3, rng);
    CHECK_THROWS_AS(hermitian_phase_exp(nh, 1.0), std::invalid_argument);
}

TEST_CASE("unitary_eigenphases: diagonal, Haar cross-check, cos degeneracy") {
    // diagonal unitary with known phases
    ComplexMatrix d(3, 3);
    d(0, 0) = std::exp(cplx(0.0, 0.3));
    d(1, 1) = std::exp(cplx(0.0, -1.2));
    d(2, 2) = 1.0;
    auto ph = unitary_eigenphases(d);
    CHECK(std::abs(ph[0] - (-1.2)) < 1e-12);
    CHECK(std::abs(ph[1] - 0.0) < 1e-12);
    CHECK(std::abs(ph[2] - 0.3) < 1e-12);

    // generic Haar unitary: match the general eigensolver's phases
    Rng rng = make_rng(10);
    const ComplexMatrix u = haar_unitary(12, rng);
    ph = unitary_eigenphases(u);
    std::vector<double> expected;
    for (const cplx& lam : general_eigenvalues(u))
        expected.push_back(std::atan2(lam.imag(), lam.real()));
    std::sort(expected.begin(), expected.end());
    for (std::size_t i = 0; i < 12; ++i) CHECK(std::abs(ph[i] - expected[i]) < 1e-8);

    // phases +-theta share cos(theta): exercises the degenerate-group path
    ComplexMatrix dd(4, 4);
    dd(0, 0) = std::exp(cplx(0.0, 0.7));
    dd(1, 1) = std::exp(cplx(0.0, -0.7));
    dd(2, 2) = std::exp(cplx(0.0, 0.7));
    dd(3, 3) = std::exp(cplx(0.0, 2.8));
    const ComplexMatrix w = haar_unitary(4, rng);
    ph = unitary_eigenphases(w * dd * w.adjoint());
    std::vector<double> want{2.8, -0.7, 0.7, 0.7};
    std::sort(want.begin(), want.end());
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(ph[i] - want[i]) < 1e-10);

    // identity: fully degenerate, all phases zero
    ph = unitary_eigenphases(ComplexMatrix::identity(5));
    for (double p : ph) CHECK(std::abs(p) < 1e-12);

    CHECK_THROWS_AS(unitary_eigenphases(random_matrix(4, 4, rng)), std::invalid_argument);
}

TEST_CASE("singular_values and null_space") {
    // rank-1 matrix: one singular value, nullity 2
    ComplexMatrix m(3, 3);
    for (std::size_t j = 0; j < 3; ++j) m(0, j) = cplx(1.0, static_cast<double>(j));
    const auto s = singular_values(m);
    CHECK(s[1] < 1e-14);
    const ComplexMatrix ns = null_space(m, 1e-8);
    CHECK(ns.cols() == 2);
    // every null-space column annihilated
    for (std::size_t c = 0; c < ns.cols(); ++c) {
        cplx acc = 0.0;
        for (std::size_t j = 0; j < 3; ++j) acc += m(0, j) * ns(j, c);
        CHECK(std::abs(acc) < 1e-12);
    }
}

TEST_CASE("local_dim_of rejects non-square-of-integer dimensions") {
    CHECK(local_dim_of(ComplexMatrix::identity(9)) == 3);
    CHECK_THROWS_AS(local_dim_of(ComplexMatrix::identity(3)), std::invalid_argument);
    CHECK_THROWS_AS(local_dim_of(ComplexMatrix(4, 5)), std::invalid_argument);
}
