#include "duc/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "duc/kernels.hpp"
#include "duc/linalg.hpp"

namespace duc {

namespace {

std::size_t ipow(std::size_t base, std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= base;
    return r;
}

constexpr double kDegenerateSpacing = 1e-12;

}  // namespace

void CircuitSpec::validate() const {
    gate_spec.validate();
    if (num_sites < 2 || num_sites % 2 != 0)
        throw std::invalid_argument("CircuitSpec: L must be even and >= 2");
    if (ipow(gate_spec.q, num_sites) > budget)
        throw std::runtime_error("CircuitSpec: q^L = " +
                                 std::to_string(ipow(gate_spec.q, num_sites)) +
                                 " exceeds budget " + std::to_string(budget));
    if (realizations < 1) throw std::invalid_argument("CircuitSpec: realizations must be >= 1");
}

ComplexMatrix floquet_operator(const GateEnsemble& ensemble, std::size_t num_sites, Rng& rng,
                               bool fresh_per_slot, std::size_t budget) {
    const std::size_t q = ensemble.spec().q;
    if (num_sites < 2 || num_sites % 2 != 0)
        throw std::invalid_argument("floquet_operator: L must be even and >= 2");
    const std::size_t dim = ipow(q, num_sites);
    if (dim > budget)
        throw std::runtime_error("floquet_operator: q^L = " + std::to_string(dim) +
                                 " exceeds budget " + std::to_string(budget));

    GateBundle fixed;
    if (!fresh_per_slot) fixed = ensemble.sample(rng);
    const auto next_gate = [&]() -> ComplexMatrix {
        return fresh_per_slot ? ensemble.sample(rng).gate.matrix : fixed.gate.matrix;
    };

    ComplexMatrix f = ComplexMatrix::identity(dim);
    // layer 1: pairs (0,1),(2,3),...
    for (std::size_t p = 0; p + 1 < num_sites; p += 2)
        kernels::apply_gate_rows(f, next_gate(), q, num_sites, p);
    // layer 2: pairs (1,2),(3,4),..., then the wrap-around pair (L-1,0)
    for (std::size_t p = 1; p + 1 < num_sites; p += 2)
        kernels::apply_gate_rows(f, next_gate(), q, num_sites, p);
    {
        const std::vector<std::size_t> perm = kernels::site_translation_perm(q, num_sites);
        std::vector<std::size_t> inv(perm.size());
        for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
        f = kernels::permute_rows(f, perm);
        kernels::apply_gate_rows(f, next_gate(), q, num_sites, 0);
        f = kernels::permute_rows(f, inv);
    }
    return f;
}

ComplexMatrix floquet_operator(const CircuitSpec& spec, Rng& rng) {
    spec.validate();
    GateEnsemble ens(spec.gate_spec);
    return floquet_operator(ens, spec.num_sites, rng, spec.fresh_per_slot, spec.budget);
}

SpectrumReport r_statistics(const ComplexMatrix& f) {
    SpectrumReport rep;
    rep.eigenphases = unitary_eigenphases(f);

    const std::size_t n = rep.eigenphases.size();
    rep.spacings.reserve(n);
    for (std::size_t i = 0; i + 1 < n; ++i)
        rep.spacings.push_back(rep.eigenphases[i + 1] - rep.eigenphases[i]);
    rep.spacings.push_back(rep.eigenphases.front() + 2.0 * M_PI - rep.eigenphases.back());

    std::vector<double> kept;
    kept.reserve(n);
    for (double s : rep.spacings) {
        if (s < kDegenerateSpacing)
            ++rep.excluded_degeneracies;
        else
            kept.push_back(s);
    }
    if (kept.size() >= 2) {
        for (std::size_t i = 0; i < kept.size(); ++i) {
            const double a = kept[i];
            const double b = kept[(i + 1) % kept.size()];
            rep.ratios.push_back(std::min(a, b) / std::max(a, b));
        }
        rep.mean_r = std::accumulate(rep.ratios.begin(), rep.ratios.end(), 0.0) /
                     static_cast<double>(rep.ratios.size());
    }
    return rep;
}

EnsembleMeanR ensemble_mean_r(const CircuitSpec& spec) {
    spec.validate();
    EnsembleMeanR out;
    out.per_realization.resize(spec.realizations);
    std::vector<std::size_t> excluded(spec.realizations);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t r = 0; r < spec.realizations; ++r) {
        GateSpec gs = spec.gate_spec;
        gs.seed = derive_seed(spec.seed, SeedLane::Realization, r);
        GateEnsemble ens(gs);
        Rng rng = make_rng(derive_seed(gs.seed, SeedLane::Gate, 2));
        const ComplexMatrix f =
            floquet_operator(ens, spec.num_sites, rng, spec.fresh_per_slot, spec.budget);
        const SpectrumReport rep = r_statistics(f);
        out.per_realization[r] = rep.mean_r;
        excluded[r] = rep.excluded_degeneracies;
    }
    const double mean =
        std::accumulate(out.per_realization.begin(), out.per_realization.end(), 0.0) /
        static_cast<double>(spec.realizations);
    double var = 0.0;
    for (double v : out.per_realization) var += (v - mean) * (v - mean);
    out.mean_r = mean;
    out.stderr_mean = spec.realizations > 1
                          ? std::sqrt(var / static_cast<double>(spec.realizations - 1)) /
                                std::sqrt(static_cast<double>(spec.realizations))
                          : 0.0;
    out.excluded_degeneracies = std::accumulate(excluded.begin(), excluded.end(), std::size_t{0});
    return out;
}

double charge_commutator(const CircuitSpec& spec, const ComplexMatrix& charge, int offset) {
    spec.validate();
    if (offset != 0 && offset != 1)
        throw std::invalid_argument("charge_commutator: offset must be 0 or 1");
    const std::size_t q = spec.gate_spec.q;
    const std::size_t L = spec.num_sites;
    const std::size_t dim = ipow(q, L);

    GateEnsemble ens(spec.gate_spec);
    Rng rng = make_rng(derive_seed(spec.seed, SeedLane::Gate, 3));
    const ComplexMatrix f = floquet_operator(ens, L, rng, spec.fresh_per_slot, spec.budget);

    ComplexMatrix big_q(dim, dim);
    for (std::size_t p = static_cast<std::size_t>(offset); p < L; p += 2) {
        const std::size_t lo_dim = ipow(q, L - p - 1);
        const std::size_t hi_dim = ipow(q, p);
        for (std::size_t hi = 0; hi < hi_dim; ++hi)
            for (std::size_t a = 0; a < q; ++a)
                for (std::size_t ap = 0; ap < q; ++ap) {
                    const cplx v = charge(a, ap);
                    if (v == cplx(0.0)) continue;
                    for (std::size_t lo = 0; lo < lo_dim; ++lo)
                        big_q((hi * q + a) * lo_dim + lo, (hi * q + ap) * lo_dim + lo) += v;
                }
    }
    return max_abs_diff(big_q * f, f * big_q);
}

}  // namespace duc
