#include <doctest.h>

#include <numeric>

#include "duc/kernels.hpp"
#include "duc/rng.hpp"
#include "test_helpers.hpp"

using namespace duc;
using duc::testing::random_matrix;
using duc::testing::swap_gate;

TEST_CASE("matmul parallel kernel matches the serial reference") {
    Rng rng = make_rng(11);
    for (std::size_t n : {1u, 7u, 32u, 65u}) {
        const ComplexMatrix a = random_matrix(n, n + 3, rng);
        const ComplexMatrix b = random_matrix(n + 3, n + 1, rng);
        CHECK(max_abs_diff(kernels::matmul(a, b), kernels::matmul_reference(a, b)) < 1e-12);
    }
}

TEST_CASE("apply_gate_rows/cols match their serial references") {
    Rng rng = make_rng(12);
    const std::size_t q = 3, num_sites = 4, dim = 81;
    const ComplexMatrix gate = random_matrix(q * q, q * q, rng);
    for (std::size_t site = 0; site + 1 < num_sites; ++site) {
        ComplexMatrix a = random_matrix(dim, dim, rng);
        ComplexMatrix b = a;
        kernels::apply_gate_rows(a, gate, q, num_sites, site);
        kernels::apply_gate_rows_reference(b, gate, q, num_sites, site);
        CHECK(max_abs_diff(a, b) == 0.0);

        ComplexMatrix c = random_matrix(dim, dim, rng);
        ComplexMatrix d = c;
        kernels::apply_gate_cols(c, gate, q, num_sites, site);
        kernels::apply_gate_cols_reference(d, gate, q, num_sites, site);
        CHECK(max_abs_diff(c, d) == 0.0);
    }
}

TEST_CASE("apply_gate_rows equals explicit kron embedding") {
    Rng rng = make_rng(13);
    const std::size_t q = 2, num_sites = 4;
    const ComplexMatrix gate = random_matrix(4, 4, rng);
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    const ComplexMatrix x = random_matrix(16, 16, rng);

    // site 1 on 4 sites: 1 kron G kron 1
    const ComplexMatrix emb = kron(kron(i2, gate), i2);
    ComplexMatrix a = x;
    kernels::apply_gate_rows(a, gate, q, num_sites, 1);
    CHECK(max_abs_diff(a, emb * x) < 1e-12);

    ComplexMatrix b = x;
    kernels::apply_gate_cols(b, gate, q, num_sites, 1);
    CHECK(max_abs_diff(b, x * emb) < 1e-12);
}

TEST_CASE("site_translation_perm moves digits one site to the right") {
    const auto perm = kernels::site_translation_perm(2, 3);
    // basis index abc (site 0 most significant) -> cab
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
            for (std::size_t c = 0; c < 2; ++c)
                CHECK(perm[(a * 2 + b) * 2 + c] == (c * 2 + a) * 2 + b);
}

TEST_CASE("permute_rows/cols realize P A and A P^T") {
    Rng rng = make_rng(14);
    const auto perm = kernels::site_translation_perm(2, 3);
    ComplexMatrix p(8, 8);
    for (std::size_t i = 0; i < 8; ++i) p(perm[i], i) = 1.0;
    const ComplexMatrix a = random_matrix(8, 8, rng);
    CHECK(max_abs_diff(kernels::permute_rows(a, perm), p * a) == 0.0);
    CHECK(max_abs_diff(kernels::permute_cols(a, perm), a * p.transpose()) == 0.0);
}

TEST_CASE("translation conjugation shifts a gate by one site") {
    Rng rng = make_rng(15);
    const std::size_t q = 2, num_sites = 4;
    const ComplexMatrix gate = random_matrix(4, 4, rng);
    const auto perm = kernels::site_translation_perm(q, num_sites);

    // P (G at site 0) P^{-1} = G at site 1, on the identity
    ComplexMatrix at0 = ComplexMatrix::identity(16);
    kernels::apply_gate_rows(at0, gate, q, num_sites, 0);
    // permute_cols applies P^T = P^{-1} on the right
    const ComplexMatrix conj = kernels::permute_cols(kernels::permute_rows(at0, perm), perm);

    ComplexMatrix at1 = ComplexMatrix::identity(16);
    kernels::apply_gate_rows(at1, gate, q, num_sites, 1);
    CHECK(max_abs_diff(conj, at1) == 0.0);
}
