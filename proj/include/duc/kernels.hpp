#pragma once

#include <cstddef>
#include <vector>

#include "duc/complex_matrix.hpp"

namespace duc::kernels {

/// OpenMP-parallel dense matrix product. Primary kernel used by operator*.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

/// Serial triple-loop reference for matmul, kept for testing and benchmarks.
ComplexMatrix matmul_reference(const ComplexMatrix& a, const ComplexMatrix& b);

/// In-place A <- G_emb * A where G_emb embeds the q^2 x q^2 gate G on the
/// adjacent site pair (site, site+1) of an L-site chain (site 0 is the most
/// significant digit of the basis index). A must have q^L rows.
void apply_gate_rows(ComplexMatrix& a, const ComplexMatrix& gate,
                     std::size_t q, std::size_t num_sites, std::size_t site);

/// In-place A <- A * G_emb, same embedding convention; A must have q^L columns.
void apply_gate_cols(ComplexMatrix& a, const ComplexMatrix& gate,
                     std::size_t q, std::size_t num_sites, std::size_t site);

/// Serial references for the gate-application kernels.
void apply_gate_rows_reference(ComplexMatrix& a, const ComplexMatrix& gate,
                               std::size_t q, std::size_t num_sites, std::size_t site);
void apply_gate_cols_reference(ComplexMatrix& a, const ComplexMatrix& gate,
                               std::size_t q, std::size_t num_sites, std::size_t site);

/// Basis permutation of the one-site-right cyclic translation: the digit at
/// chain position x moves to position x+1 mod L. perm[s] is the translated
/// basis index of s.
std::vector<std::size_t> site_translation_perm(std::size_t q, std::size_t num_sites);

/// B with B(perm[i], j) = A(i, j), i.e. B = P A for the permutation matrix
/// P_{perm[i], i} = 1.
ComplexMatrix permute_rows(const ComplexMatrix& a, const std::vector<std::size_t>& perm);

/// B with B(i, perm[j]) = A(i, j), i.e. B = A P^T.
ComplexMatrix permute_cols(const ComplexMatrix& a, const std::vector<std::size_t>& perm);

}  // namespace duc::kernels

namespace duc {

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    return kernels::matmul(a, b);
}

/// Kronecker product: (A kron B)_{(a p + b),(c r + d)} = A_{ac} B_{bd}
/// for B of shape p x r.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace duc
