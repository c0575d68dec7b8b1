#pragma once

#include <cstdint>
#include <vector>

#include "duc/complex_matrix.hpp"
#include "duc/gate_factory.hpp"
#include "duc/rng.hpp"

namespace duc {

/// Periodic brickwork circuit on L sites for exact diagonalization.
struct CircuitSpec {
    GateSpec gate_spec;
    std::size_t num_sites = 6;   // L, even
    std::size_t realizations = 1;
    std::uint64_t seed = 0;
    bool fresh_per_slot = true;  // fresh gate per slot, breaking translational invariance
    std::size_t budget = 4096;   // max q^L for dense diagonalization

    void validate() const;
};

/// One Floquet period: layer of gates on pairs (1,2),(3,4),...,(L-1,0) times
/// layer on pairs (0,1),(2,3),... The wrap-around pair is embedded by
/// conjugating with the cyclic site translation.
ComplexMatrix floquet_operator(const GateEnsemble& ensemble, std::size_t num_sites, Rng& rng,
                               bool fresh_per_slot = true, std::size_t budget = 4096);

ComplexMatrix floquet_operator(const CircuitSpec& spec, Rng& rng);

struct SpectrumReport {
    std::vector<double> eigenphases;  // ascending in (-pi, pi]
    std::vector<double> spacings;     // cyclic, including wrap-around
    std::vector<double> ratios;       // min/max of consecutive spacings
    double mean_r = 0.0;
    std::size_t excluded_degeneracies = 0;  // spacings below 1e-12, dropped from ratios
};

/// Level-spacing ratios of a unitary operator's eigenphase spectrum.
SpectrumReport r_statistics(const ComplexMatrix& f);

struct EnsembleMeanR {
    double mean_r = 0.0;
    double stderr_mean = 0.0;
    std::size_t excluded_degeneracies = 0;
    std::vector<double> per_realization;
};

/// Mean of per-realization mean_r over independently seeded circuits.
EnsembleMeanR ensemble_mean_r(const CircuitSpec& spec);

/// ||[Q, F]||_max for Q = sum of c embedded on every other site starting at
/// `offset`. F is drawn from the spec's ensemble (shared w across slots).
double charge_commutator(const CircuitSpec& spec, const ComplexMatrix& charge, int offset);

}  // namespace duc
