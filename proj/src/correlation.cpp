#include "duc/correlation.hpp"

#include <cmath>
#include <limits>

#include "duc/kernels.hpp"

namespace duc {

namespace {

std::size_t ipow(std::size_t base, std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= base;
    return r;
}

}  // namespace

CorrelationSeries correlation_series(const QuantumChannel& m, const ComplexMatrix& rho,
                                     const ComplexMatrix& sigma, std::size_t t_max) {
    if (rho.rows() != m.q || rho.cols() != m.q || sigma.rows() != m.q || sigma.cols() != m.q)
        throw std::invalid_argument("correlation_series: operators must be q x q");
    CorrelationSeries s;
    s.q = m.q;
    s.direction = m.direction;
    s.values.reserve(t_max + 1);
    ComplexMatrix state = rho;
    for (std::size_t t = 0; t <= t_max; ++t) {
        if (t > 0) state = m.apply(state);
        s.values.push_back((state * sigma).trace());
    }
    return s;
}

cplx thermal_value(const ComplexMatrix& sigma, std::size_t q) {
    return sigma.trace() / static_cast<double>(q);
}

GGEState gge_state(const ComplexMatrix& rho, const std::vector<ComplexMatrix>& charges,
                   std::size_t q) {
    const std::size_t n = charges.size();
    if (n >= q) throw std::invalid_argument("gge_state: need n < q charges");
    constexpr double kClamp = 1e-30;

    GGEState g;
    g.q = q;
    g.n = n;
    ComplexMatrix matrix(q, q);
    ComplexMatrix charge_sum(q, q);
    double total = 0.0;
    for (const ComplexMatrix& c : charges) {
        const double weight = std::real((rho * c).trace());
        g.mu_a.push_back(weight > kClamp ? std::log(weight)
                                         : -std::numeric_limits<double>::infinity());
        ComplexMatrix term = c;
        term *= weight;
        matrix += term;
        charge_sum += c;
        total += weight;
    }
    const double residual = (1.0 - total) / static_cast<double>(q - n);
    g.mu = residual > kClamp ? std::log(residual) : -std::numeric_limits<double>::infinity();
    ComplexMatrix rest = ComplexMatrix::identity(q);
    rest -= charge_sum;
    rest *= residual;
    matrix += rest;
    g.matrix = std::move(matrix);
    return g;
}

ComplexMatrix steady_state(const ComplexMatrix& rho, const QuantumChannel& m, double tol) {
    const ConservedCharges cc = conserved_charges(m, tol);
    ComplexMatrix out(m.q, m.q);
    for (const ComplexMatrix& c : cc.basis) {
        ComplexMatrix term = c;
        term *= trace_inner(c, rho);
        out += term;
    }
    return out;
}

double decay_time(const QuantumChannel& m) {
    const ErgodicityReport r = classify(m);
    if (r.subleading_modulus >= 1.0)
        throw std::runtime_error("decay_time: subleading modulus is not below 1");
    return std::log(2.0) / (1.0 - r.subleading_modulus);
}

PrethermalSweep prethermal_sweep(const GateSpec& base, const std::vector<double>& epsilons,
                                 const ComplexMatrix& rho, const ComplexMatrix& sigma,
                                 std::size_t t_max) {
    if (base.cls != GateClass::Prethermal)
        throw std::invalid_argument("prethermal_sweep: base class must be prethermal");
    PrethermalSweep sweep;
    sweep.thermal = thermal_value(sigma, base.q);

    std::vector<double> eps_list{0.0};
    for (double e : epsilons)
        if (e != 0.0) eps_list.push_back(e);

    for (double eps : eps_list) {
        GateSpec spec = base;
        spec.epsilon = eps;
        const GateBundle bundle = make_gate(spec);
        const QuantumChannel m = build_channel(bundle.gate, Direction::Plus);
        PrethermalRun run;
        run.epsilon = eps;
        run.series = correlation_series(m, rho, sigma, t_max);
        run.series.spec = spec;
        run.subleading_modulus = classify(m).subleading_modulus;
        if (run.subleading_modulus < 1.0)
            run.decay = std::log(2.0) / (1.0 - run.subleading_modulus);
        if (eps == 0.0) {
            const GGEState gge = gge_state(rho, bundle.charges, base.q);
            sweep.gge_value = (gge.matrix * sigma).trace();
        }
        sweep.runs.push_back(std::move(run));
    }
    return sweep;
}

cplx brute_force_correlation(const TwoSiteGate& gate, const ComplexMatrix& rho,
                             const ComplexMatrix& sigma, std::size_t t, std::optional<long> x_opt,
                             std::size_t budget) {
    const std::size_t q = gate.q;
    if (rho.rows() != q || rho.cols() != q || sigma.rows() != q || sigma.cols() != q)
        throw std::invalid_argument("brute_force_correlation: operators must be q x q");
    if (t == 0) return (rho * sigma).trace();

    const long lt = static_cast<long>(t);
    const long x = x_opt.value_or(lt);
    if (x < -lt || x > lt + 1)
        throw std::invalid_argument("brute_force_correlation: x outside the window -t..t+1");

    const std::size_t num_sites = 2 * t + 2;
    const std::size_t dim = ipow(q, num_sites);
    if (dim > budget)
        throw std::runtime_error("brute_force_correlation: window needs q^L = " +
                                 std::to_string(dim) + " > budget " + std::to_string(budget));

    const std::size_t pos_rho = t;            // site 0
    const std::size_t pos_sigma = static_cast<std::size_t>(x + lt);

    // rho embedded at pos_rho, identity elsewhere
    ComplexMatrix state(dim, dim);
    const std::size_t lo_dim = ipow(q, num_sites - pos_rho - 1);
    const std::size_t hi_dim = ipow(q, pos_rho);
    for (std::size_t hi = 0; hi < hi_dim; ++hi)
        for (std::size_t a = 0; a < q; ++a)
            for (std::size_t ap = 0; ap < q; ++ap) {
                const cplx v = rho(a, ap);
                if (v == cplx(0.0)) continue;
                for (std::size_t lo = 0; lo < lo_dim; ++lo)
                    state((hi * q + a) * lo_dim + lo, (hi * q + ap) * lo_dim + lo) = v;
            }

    // Heisenberg evolution state <- G+ state G, one layer per time step. The
    // first layer couples (0,1) for the +t edge and (-1,0) for the -t edge;
    // each layer advances the light-cone edge by one site.
    const ComplexMatrix gdag = gate.matrix.adjoint();
    const std::size_t first_site_parity = x >= 0 ? 0 : 1;
    for (std::size_t layer = 0; layer < t; ++layer) {
        const std::size_t parity = (first_site_parity + t + layer) % 2;  // p = s + t
        for (std::size_t p = parity; p + 1 < num_sites; p += 2) {
            kernels::apply_gate_rows(state, gdag, q, num_sites, p);
            kernels::apply_gate_cols(state, gate.matrix, q, num_sites, p);
        }
    }

    // tr[state * sigma(pos_sigma)], normalized so untouched sites drop out
    const std::size_t s_lo = ipow(q, num_sites - pos_sigma - 1);
    const std::size_t s_hi = ipow(q, pos_sigma);
    cplx total = 0.0;
    for (std::size_t hi = 0; hi < s_hi; ++hi)
        for (std::size_t b = 0; b < q; ++b)
            for (std::size_t bp = 0; bp < q; ++bp) {
                const cplx sv = sigma(bp, b);
                if (sv == cplx(0.0)) continue;
                for (std::size_t lo = 0; lo < s_lo; ++lo)
                    total += state((hi * q + b) * s_lo + lo, (hi * q + bp) * s_lo + lo) * sv;
            }
    return total / static_cast<double>(ipow(q, num_sites - 1));
}

}  // namespace duc
