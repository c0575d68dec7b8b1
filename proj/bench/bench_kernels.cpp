// Timing comparison of the OpenMP kernels against their serial references.
#include <chrono>
#include <cstdio>
#include <random>

#include "duc/kernels.hpp"
#include "duc/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace duc;

namespace {

ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = cplx(dist(rng), dist(rng));
    return m;
}

template <typename F>
double time_best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto start = std::chrono::steady_clock::now();
        f();
        const double s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (s < best) best = s;
    }
    return best;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP: disabled at build time\n");
#endif

    Rng rng = make_rng(1);
    std::printf("%-28s %10s %10s %8s\n", "kernel", "parallel", "serial", "speedup");

    for (std::size_t n : {128u, 256u, 512u}) {
        const ComplexMatrix a = random_matrix(n, n, rng);
        const ComplexMatrix b = random_matrix(n, n, rng);
        ComplexMatrix sink;
        const double tp = time_best_of(3, [&] { sink = kernels::matmul(a, b); });
        const double ts = time_best_of(3, [&] { sink = kernels::matmul_reference(a, b); });
        std::printf("matmul %4zux%-4zu            %9.4fs %9.4fs %7.2fx\n", n, n, tp, ts,
                    ts / tp);
    }

    {
        const std::size_t q = 3, sites = 6, dim = 729;
        const ComplexMatrix gate = random_matrix(q * q, q * q, rng);
        ComplexMatrix state = random_matrix(dim, dim, rng);
        const double tp = time_best_of(3, [&] {
            for (std::size_t p = 0; p + 1 < sites; p += 2)
                kernels::apply_gate_rows(state, gate, q, sites, p);
        });
        const double ts = time_best_of(3, [&] {
            for (std::size_t p = 0; p + 1 < sites; p += 2)
                kernels::apply_gate_rows_reference(state, gate, q, sites, p);
        });
        std::printf("apply_gate_rows q=3 L=6      %9.4fs %9.4fs %7.2fx\n", tp, ts, ts / tp);

        const double tcp = time_best_of(3, [&] {
            for (std::size_t p = 0; p + 1 < sites; p += 2)
                kernels::apply_gate_cols(state, gate, q, sites, p);
        });
        const double tcs = time_best_of(3, [&] {
            for (std::size_t p = 0; p + 1 < sites; p += 2)
                kernels::apply_gate_cols_reference(state, gate, q, sites, p);
        });
        std::printf("apply_gate_cols q=3 L=6      %9.4fs %9.4fs %7.2fx\n", tcp, tcs,
                    tcs / tcp);
    }
    return 0;
}
