#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "duc/channel.hpp"
#include "duc/complex_matrix.hpp"
#include "duc/gate_factory.hpp"

namespace duc {

/// Light-cone correlation values c(t,t) = tr[M^t(rho) sigma], t = 0..t_max.
struct CorrelationSeries {
    std::size_t q = 0;
    Direction direction = Direction::Plus;
    std::vector<cplx> values;
    GateSpec spec;
    std::string rho_desc, sigma_desc;
};

/// Computed by repeated application of the channel to rho (no explicit
/// matrix powers).
CorrelationSeries correlation_series(const QuantumChannel& m, const ComplexMatrix& rho,
                                     const ComplexMatrix& sigma, std::size_t t_max);

/// tr(sigma)/q: the infinite-temperature value ergodic correlations decay to.
cplx thermal_value(const ComplexMatrix& sigma, std::size_t q);

/// Generalized Gibbs ensemble fixed by the charge expectations of rho.
struct GGEState {
    std::size_t q = 0;
    std::size_t n = 0;
    std::vector<double> mu_a;  // -inf sentinel when the weight was clamped
    double mu = 0.0;
    ComplexMatrix matrix;  // always well defined, built from linear weights
};

/// mu_a = ln tr(rho c_a), mu = ln[(1 - sum tr(rho c_b))/(q-n)];
/// matrix = sum e^{mu_a} c_a + e^{mu} (1 - sum c_b).
GGEState gge_state(const ComplexMatrix& rho, const std::vector<ComplexMatrix>& charges,
                   std::size_t q);

/// Non-decaying part of rho under M: projection onto the orthonormal
/// unit-eigenvalue basis of the channel.
ComplexMatrix steady_state(const ComplexMatrix& rho, const QuantumChannel& m, double tol = 1e-8);

/// ln(2)/(1 - |lambda_sub|); throws when the subleading modulus is >= 1.
double decay_time(const QuantumChannel& m);

struct PrethermalRun {
    double epsilon = 0.0;
    CorrelationSeries series;
    double subleading_modulus = 0.0;
    std::optional<double> decay;  // empty when the spectrum has no gap
};

struct PrethermalSweep {
    std::vector<PrethermalRun> runs;  // first entry is the eps = 0 reference
    cplx gge_value = 0.0;             // plateau predicted from the eps = 0 charges
    cplx thermal = 0.0;
};

/// One series per epsilon sharing the unperturbed core (same seeds), plus the
/// eps = 0 reference.
PrethermalSweep prethermal_sweep(const GateSpec& base, const std::vector<double>& epsilons,
                                 const ComplexMatrix& rho, const ComplexMatrix& sigma,
                                 std::size_t t_max);

/// Exact finite-window brickwork contraction, the independent oracle for the
/// channel formula. Sites -t..t+1; rho at x = 0, sigma at x (default +t).
/// Normalized so that the on-light-cone value equals tr[M^t(rho) sigma].
cplx brute_force_correlation(const TwoSiteGate& gate, const ComplexMatrix& rho,
                             const ComplexMatrix& sigma, std::size_t t,
                             std::optional<long> x = std::nullopt,
                             std::size_t budget = 8192);

}  // namespace duc
