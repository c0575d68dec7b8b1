#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "duc/channel.hpp"
#include "duc/gate_factory.hpp"
#include "duc/kernels.hpp"
#include "duc/linalg.hpp"
#include "test_helpers.hpp"

using namespace duc;
using duc::testing::swap_gate;

TEST_CASE("build_channel: SWAP gives the identity map; unitality") {
    const TwoSiteGate s(2, swap_gate(2));
    const QuantumChannel m = build_channel(s, Direction::Plus);
    CHECK(max_abs_diff(m.matrix, ComplexMatrix::identity(4)) < 1e-14);

    GateSpec spec;
    spec.q = 4;
    spec.cls = GateClass::ErgodicMixing;
    spec.seed = 41;
    const GateBundle b = make_gate(spec);
    Rng rng = make_rng(42);
    for (Direction d : {Direction::Plus, Direction::Minus}) {
        const QuantumChannel ch = build_channel(b.gate, d);
        CHECK(max_abs_diff(ch.apply(ComplexMatrix::identity(4)), ComplexMatrix::identity(4)) <
              1e-12);
        const ComplexMatrix rho = random_density(4, rng);
        CHECK(std::abs(ch.apply(rho).trace() - rho.trace()) < 1e-10);
    }

    CHECK_THROWS(build_channel(TwoSiteGate(2, ComplexMatrix(4, 4)), Direction::Plus));
}

TEST_CASE("channel of build_V is diagonal with entries sigma_ab") {
    Rng rng = make_rng(43);
    std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
    for (std::size_t q = 2; q <= 5; ++q) {
        PhaseMatrix j(q);
        for (double& v : j.entries) v = u(rng);
        const QuantumChannel m = build_channel(build_V(j), Direction::Plus);
        const ComplexMatrix sig = sigma_values(j);
        double worst = 0.0;
        for (std::size_t r = 0; r < q * q; ++r)
            for (std::size_t c = 0; c < q * q; ++c) {
                const cplx expect = (r == c) ? sig(r / q, r % q) : cplx(0.0);
                worst = std::max(worst, std::abs(m.matrix(r, c) - expect));
            }
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("sigma_values structure: diagonal, conjugate symmetry, bounds") {
    Rng rng = make_rng(44);
    std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
    PhaseMatrix j(5);
    for (double& v : j.entries) v = u(rng);
    const ComplexMatrix sig = sigma_values(j);
    for (std::size_t a = 0; a < 5; ++a) {
        CHECK(sig(a, a) == cplx(1.0));
        for (std::size_t b = 0; b < 5; ++b) {
            CHECK(std::abs(sig(a, b) - std::conj(sig(b, a))) < 1e-14);
            CHECK(std::abs(sig(a, b)) <= 1.0 + 1e-14);
        }
    }
}

TEST_CASE("sigma_values special cases: equal rows, kicked-chain phases") {
    {
        PhaseMatrix j(4);
        Rng rng = make_rng(45);
        std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
        for (std::size_t f = 0; f < 4; ++f) {
            const double v = u(rng);
            for (std::size_t a = 0; a < 4; ++a) j.at(a, f) = v;
        }
        const ComplexMatrix sig = sigma_values(j);
        for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t b = 0; b < 4; ++b) CHECK(std::abs(sig(a, b) - cplx(1.0)) < 1e-13);
    }
    {
        const std::size_t q = 3;
        PhaseMatrix j(q);
        for (std::size_t a = 0; a < q; ++a)
            for (std::size_t b = 0; b < q; ++b) j.at(a, b) = 2.0 * M_PI * a * b / q;
        const ComplexMatrix sig = sigma_values(j);
        for (std::size_t a = 0; a < q; ++a)
            for (std::size_t b = 0; b < q; ++b)
                CHECK(std::abs(std::abs(sig(a, b)) - (a == b ? 1.0 : 0.0)) < 1e-13);
    }
}

TEST_CASE("equal rows up to a constant phase give conjugate eigenvalue pair") {
    // row 1 = row 0 + phi: direct summation of the defining formula gives
    // sigma_01 = e^{+i phi}, sigma_10 = e^{-i phi}; the channel spectrum
    // contains both. This fixes the sign convention.
    const double phi = 0.7;
    Rng rng = make_rng(46);
    std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
    PhaseMatrix j(4);
    for (double& v : j.entries) v = u(rng);
    for (std::size_t f = 0; f < 4; ++f) j.at(1, f) = j.at(0, f) + phi;
    const ComplexMatrix sig = sigma_values(j);

    cplx direct01 = 0.0;
    for (std::size_t f = 0; f < 4; ++f)
        direct01 += std::exp(cplx(0.0, -(j.at(0, f) - j.at(1, f))));
    direct01 /= 4.0;
    CHECK(std::abs(sig(0, 1) - direct01) < 1e-14);
    CHECK(std::abs(sig(0, 1) - std::exp(cplx(0.0, phi))) < 1e-12);
    CHECK(std::abs(sig(1, 0) - std::exp(cplx(0.0, -phi))) < 1e-12);

    const auto eigs = general_eigenvalues(build_channel(build_V(j), Direction::Plus).matrix);
    double best_p = 10.0, best_m = 10.0;
    for (const cplx& lam : eigs) {
        best_p = std::min(best_p, std::abs(lam - std::exp(cplx(0.0, phi))));
        best_m = std::min(best_m, std::abs(lam - std::exp(cplx(0.0, -phi))));
    }
    CHECK(best_p < 1e-10);
    CHECK(best_m < 1e-10);
}

TEST_CASE("classify: four classes and counts") {
    {
        QuantumChannel m;
        m.q = 2;
        m.matrix = ComplexMatrix::identity(4);
        const ErgodicityReport r = classify(m);
        CHECK(r.cls == ErgodicityClass::NonInteracting);
        CHECK(r.n_unit_one == 4);
    }
    {
        GateSpec spec;
        spec.q = 6;
        spec.cls = GateClass::NonErgodic;
        spec.n = 2;
        spec.seed = 47;
        const ErgodicityReport r =
            classify(build_channel(make_gate(spec).gate, Direction::Plus));
        CHECK(r.cls == ErgodicityClass::NonErgodic);
        CHECK(r.n_unit_one == 3);
        CHECK(r.subleading_modulus < 1.0);
    }
    {
        GateSpec spec;
        spec.q = 6;
        spec.cls = GateClass::ErgodicNonmixing;
        spec.seed = 48;
        const ErgodicityReport r =
            classify(build_channel(make_gate(spec).gate, Direction::Plus));
        CHECK(r.cls == ErgodicityClass::ErgodicNonmixing);
        CHECK(r.n_unit_modulus == 6);
        CHECK(r.n_unit_one == 1);
    }
    {
        GateSpec spec;
        spec.q = 5;
        spec.cls = GateClass::ErgodicMixing;
        spec.seed = 49;
        const ErgodicityReport r =
            classify(build_channel(make_gate(spec).gate, Direction::Plus));
        CHECK(r.cls == ErgodicityClass::ErgodicMixing);
        CHECK(r.n_unit_one == 1);
        CHECK(r.n_unit_modulus == 1);
        CHECK(r.subleading_modulus < 1.0 - 1e-6);
    }
}

TEST_CASE("channel eigenvalue moduli never exceed 1") {
    std::uint64_t seed = 50;
    for (GateClass cls : {GateClass::ErgodicMixing, GateClass::NonErgodic,
                          GateClass::ErgodicNonmixing, GateClass::Prethermal}) {
        GateSpec spec;
        spec.q = 4;
        spec.cls = cls;
        spec.n = 1;
        spec.epsilon = 0.1;
        spec.seed = seed++;
        const ErgodicityReport r =
            classify(build_channel(make_gate(spec).gate, Direction::Plus));
        for (const cplx& lam : r.eigenvalues) CHECK(std::abs(lam) <= 1.0 + 1e-10);
    }
}

TEST_CASE("V[J] channel has exactly q unit eigenvalues for generic J") {
    Rng rng = make_rng(51);
    std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
    for (std::size_t q = 2; q <= 5; ++q) {
        PhaseMatrix j(q);
        for (double& v : j.entries) v = u(rng);
        const ErgodicityReport r = classify(build_channel(build_V(j), Direction::Plus));
        CHECK(r.n_unit_one == q);  // the diagonal sigma_aa = 1 entries
    }
}

TEST_CASE("conserved_charges: full space for SWAP, known span, trivial for mixing") {
    {
        const QuantumChannel m = build_channel(TwoSiteGate(2, swap_gate(2)), Direction::Plus);
        const ConservedCharges cc = conserved_charges(m);
        CHECK(cc.basis.size() == 4);
        ComplexMatrix idn = ComplexMatrix::identity(2);
        idn *= 1.0 / std::sqrt(2.0);
        CHECK(max_abs_diff(cc.basis[cc.identity_index], idn) < 1e-12);
    }
    {
        GateSpec spec;
        spec.q = 5;
        spec.cls = GateClass::NonErgodic;
        spec.n = 2;
        spec.seed = 52;
        const GateBundle b = make_gate(spec);
        const QuantumChannel m = build_channel(b.gate, Direction::Plus);
        const ConservedCharges cc = conserved_charges(m);
        CHECK(cc.basis.size() == 3);
        // trace-orthonormality
        for (std::size_t i = 0; i < cc.basis.size(); ++i)
            for (std::size_t k = 0; k < cc.basis.size(); ++k) {
                const cplx g = trace_inner(cc.basis[i], cc.basis[k]);
                CHECK(std::abs(g - (i == k ? cplx(1.0) : cplx(0.0))) < 1e-10);
            }
        // span check against the analytic charges: project each analytic
        // charge onto the numerical basis and require zero residual
        for (const ComplexMatrix& c : b.charges) {
            ComplexMatrix res = c;
            for (const ComplexMatrix& e : cc.basis) {
                ComplexMatrix term = e;
                term *= trace_inner(e, c);
                res -= term;
            }
            CHECK(res.frobenius_norm() < 1e-6);
        }
        for (const ComplexMatrix& c : cc.basis) CHECK(max_abs_diff(m.apply(c), c) < 1e-7);
    }
    {
        GateSpec spec;
        spec.q = 4;
        spec.cls = GateClass::ErgodicMixing;
        spec.seed = 53;
        const QuantumChannel m = build_channel(make_gate(spec).gate, Direction::Plus);
        CHECK(conserved_charges(m).basis.size() == 1);
    }
}

TEST_CASE("channel singular values match |sigma_ab| for every bundle") {
    std::uint64_t seed = 54;
    for (GateClass cls : {GateClass::ErgodicMixing, GateClass::NonErgodic,
                          GateClass::NonErgodicNoncommuting, GateClass::ErgodicNonmixing,
                          GateClass::NonInteracting, GateClass::Prethermal}) {
        GateSpec spec;
        spec.q = 5;
        spec.cls = cls;
        spec.n = 2;
        spec.m = 2;
        spec.epsilon = 0.05;
        spec.seed = seed++;
        const SvdCheckReport r = channel_svd_check(make_gate(spec));
        CHECK(r.ok);
        CHECK(r.max_mismatch < 1e-10);
    }
}

TEST_CASE("channel_svd_check on appendix gates and non-interacting") {
    {
        GateSpec spec;
        spec.q = 3;
        spec.cls = GateClass::NonInteracting;
        spec.seed = 60;
        const auto s =
            singular_values(build_channel(make_gate(spec).gate, Direction::Plus).matrix);
        for (double v : s) CHECK(std::abs(v - 1.0) < 1e-12);
    }
}
