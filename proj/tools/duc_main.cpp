// Command-line frontend: gate generation, verification, correlation and GGE
// runs, prethermal sweeps, and level statistics. Exit codes: 0 success,
// 1 validation failure, 2 I/O or configuration error.
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "duc/channel.hpp"
#include "duc/correlation.hpp"
#include "duc/gate_factory.hpp"
#include "duc/io.hpp"
#include "duc/kernels.hpp"
#include "duc/spectra.hpp"

using namespace duc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;

/// Memory budget (max q^L) taken from DUC_BUDGET when set.
std::size_t env_budget(std::size_t fallback) {
    const char* s = std::getenv("DUC_BUDGET");
    if (!s || !*s) return fallback;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (end == s || *end != '\0' || v == 0)
        throw std::runtime_error("DUC_BUDGET must be a positive integer");
    return static_cast<std::size_t>(v);
}

struct SpecOptions {
    std::size_t q = 2;
    std::string cls = "ergodic_mixing";
    std::size_t n = 0;
    std::size_t m = 0;
    double epsilon = 0.0;
    double j_scalar = 0.0;
    std::vector<double> thetas;
    std::uint64_t seed = 0;

    GateSpec to_spec() const {
        GateSpec spec;
        spec.q = q;
        spec.cls = gate_class_from_string(cls);
        spec.n = n;
        spec.m = m;
        spec.epsilon = epsilon;
        spec.j_scalar = j_scalar;
        spec.thetas = thetas;
        spec.seed = seed;
        spec.validate();
        return spec;
    }
};

void add_spec_options(CLI::App* cmd, SpecOptions& opt, bool with_seed = true) {
    cmd->add_option("--q", opt.q, "local dimension");
    cmd->add_option("--class", opt.cls,
                    "gate class: ergodic_mixing | non_ergodic | non_ergodic_noncommuting | "
                    "ergodic_nonmixing | non_interacting | prethermal | dft | qubit");
    cmd->add_option("--n", opt.n, "number of commuting charges");
    cmd->add_option("--m", opt.m, "number of equal phase-matrix rows");
    cmd->add_option("--epsilon", opt.epsilon, "prethermal perturbation strength");
    cmd->add_option("--J", opt.j_scalar, "qubit-gate coupling");
    cmd->add_option("--theta", opt.thetas, "shift-matrix phases");
    if (with_seed) cmd->add_option("--seed", opt.seed, "master seed");
}

/// Build the gate for a spec, including the closed-form classes.
TwoSiteGate gate_for(const GateSpec& spec) {
    if (spec.cls == GateClass::DftKicked) return dft_kicked_gate(spec.q);
    if (spec.cls == GateClass::Qubit) return qubit_gate(spec.j_scalar);
    return make_gate(spec).gate;
}

void write_gnuplot(const std::string& csv_path, const std::string& title) {
    const std::string gp = csv_path + ".gp";
    std::string script;
    script += "set datafile separator ','\n";
    script += "set xlabel 't'\nset ylabel 'Re c(t,t)'\n";
    script += "set title '" + title + "'\n";
    script += "plot '" + csv_path + "' every ::1 using 1:2 with linespoints title 're', \\\n";
    script += "     '" + csv_path + "' every ::1 using 1:3 with linespoints title 'im'\n";
    io::atomic_write(gp, script);
}

int cmd_gen(const SpecOptions& opt, const std::string& out) {
    const GateSpec spec = opt.to_spec();
    const TwoSiteGate gate = gate_for(spec);
    io::write_gate(out, gate, to_string(spec.cls), spec.seed);
    const ErgodicityReport rep = classify(build_channel(gate, Direction::Plus));
    io::json sidecar = io::ergodicity_report_to_json(rep);
    sidecar["seed"] = spec.seed;
    io::atomic_write(out + ".report.json", sidecar.dump(2) + "\n");
    std::printf("wrote %s (class %s, n_unit_one %zu)\n", out.c_str(),
                to_string(rep.cls).c_str(), rep.n_unit_one);
    return kExitOk;
}

int cmd_verify(const std::string& path, double tol) {
    io::GateFile f;
    try {
        f = io::read_gate(path);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    }
    const GateValidation v = validate_gate(f.gate.matrix, tol);
    std::printf("unitary: %s (defect %.3e)\n", v.unitary ? "true" : "false",
                v.unitarity_defect);
    std::printf("dual_unitary: %s (defect %.3e)\n", v.dual_unitary ? "true" : "false",
                v.dual_defect);
    if (!v.unitary || !v.dual_unitary) return kExitValidation;
    const ErgodicityReport rep = classify(build_channel(f.gate, Direction::Plus));
    std::printf("class: %s\n", to_string(rep.cls).c_str());
    std::printf("n_unit_one: %zu  n_unit_modulus: %zu  subleading_modulus: %.12g\n",
                rep.n_unit_one, rep.n_unit_modulus, rep.subleading_modulus);
    for (const cplx& lam : rep.eigenvalues)
        std::printf("eigenvalue: %+.12g %+.12gi\n", lam.real(), lam.imag());
    return kExitOk;
}

int cmd_correlate(const SpecOptions& opt, const std::string& gate_path,
                  const std::string& out, std::size_t t_max, const std::string& direction,
                  bool gnuplot) {
    GateSpec spec;
    TwoSiteGate gate;
    std::vector<ComplexMatrix> charges;
    if (!gate_path.empty()) {
        const io::GateFile f = io::read_gate(gate_path);
        spec.q = f.q;
        spec.cls = gate_class_from_string(f.cls);
        spec.seed = f.seed;
        gate = f.gate;
    } else {
        spec = opt.to_spec();
        if (spec.cls == GateClass::DftKicked || spec.cls == GateClass::Qubit) {
            gate = gate_for(spec);
        } else {
            const GateBundle b = make_gate(spec);
            gate = b.gate;
            charges = b.charges;
        }
    }
    const Direction dir = direction == "minus" ? Direction::Minus : Direction::Plus;
    const QuantumChannel m = build_channel(gate, dir);

    Rng orng = make_rng(derive_seed(opt.seed, SeedLane::Operator, 0));
    const ComplexMatrix rho = random_density(spec.q, orng);
    const ComplexMatrix sig = random_traceless(spec.q, orng);

    CorrelationSeries series = correlation_series(m, rho, sig, t_max);
    series.spec = spec;
    series.rho_desc = "random_density";
    series.sigma_desc = "random_traceless";
    io::atomic_write(out, io::series_to_csv(series));

    io::json meta;
    meta["q"] = spec.q;
    meta["class"] = to_string(spec.cls);
    meta["direction"] = direction;
    meta["seed"] = opt.seed;
    meta["t_max"] = t_max;
    meta["rho"] = series.rho_desc;
    meta["sigma"] = series.sigma_desc;
    const cplx th = thermal_value(sig, spec.q);
    meta["thermal_value"] = io::json::array({th.real(), th.imag()});
    if (!charges.empty()) {
        const cplx g = (gge_state(rho, charges, spec.q).matrix * sig).trace();
        meta["gge_value"] = io::json::array({g.real(), g.imag()});
    }
    const ErgodicityReport rep = classify(m);
    meta["subleading_modulus"] = rep.subleading_modulus;
    if (rep.subleading_modulus < 1.0)
        meta["decay_time"] = std::log(2.0) / (1.0 - rep.subleading_modulus);
    io::atomic_write(out + ".json", meta.dump(2) + "\n");
    if (gnuplot) write_gnuplot(out, "correlation " + to_string(spec.cls));
    std::printf("wrote %s and %s.json\n", out.c_str(), out.c_str());
    return kExitOk;
}

int cmd_gge(const SpecOptions& opt, const std::string& out) {
    const GateSpec spec = opt.to_spec();
    if (spec.cls == GateClass::DftKicked || spec.cls == GateClass::Qubit)
        throw std::runtime_error("gge: needs a parametrized gate class with charges");
    const GateBundle b = make_gate(spec);
    Rng orng = make_rng(derive_seed(opt.seed, SeedLane::Operator, 0));
    const ComplexMatrix rho = random_density(spec.q, orng);
    const GGEState g = gge_state(rho, b.charges, spec.q);

    io::json j;
    j["q"] = spec.q;
    j["class"] = to_string(spec.cls);
    j["n"] = g.n;
    j["seed"] = opt.seed;
    j["mu_a"] = g.mu_a;
    j["mu"] = g.mu;
    io::json expectations = io::json::array();
    for (const ComplexMatrix& c : b.charges) {
        const cplx init = (rho * c).trace();
        const cplx rebuilt = (g.matrix * c).trace();
        expectations.push_back(io::json{{"initial", {init.real(), init.imag()}},
                                        {"gge", {rebuilt.real(), rebuilt.imag()}}});
    }
    j["charge_expectations"] = std::move(expectations);
    io::json matrix_re = io::json::array(), matrix_im = io::json::array();
    for (std::size_t r = 0; r < spec.q; ++r) {
        io::json re_row = io::json::array(), im_row = io::json::array();
        for (std::size_t cidx = 0; cidx < spec.q; ++cidx) {
            re_row.push_back(g.matrix(r, cidx).real());
            im_row.push_back(g.matrix(r, cidx).imag());
        }
        matrix_re.push_back(std::move(re_row));
        matrix_im.push_back(std::move(im_row));
    }
    j["matrix_re"] = std::move(matrix_re);
    j["matrix_im"] = std::move(matrix_im);
    io::atomic_write(out, j.dump(2) + "\n");
    std::printf("wrote %s\n", out.c_str());
    return kExitOk;
}

int cmd_prethermal(const SpecOptions& opt, const std::vector<double>& epsilons,
                   const std::string& out_prefix, std::size_t t_max, bool gnuplot) {
    SpecOptions base_opt = opt;
    base_opt.cls = "prethermal";
    const GateSpec base = base_opt.to_spec();
    Rng orng = make_rng(derive_seed(opt.seed, SeedLane::Operator, 0));
    const ComplexMatrix rho = random_density(base.q, orng);
    const ComplexMatrix sig = random_traceless(base.q, orng);
    const PrethermalSweep sweep = prethermal_sweep(base, epsilons, rho, sig, t_max);

    io::json summary;
    summary["q"] = base.q;
    summary["n"] = base.n;
    summary["seed"] = opt.seed;
    summary["t_max"] = t_max;
    summary["gge_value"] =
        io::json::array({sweep.gge_value.real(), sweep.gge_value.imag()});
    summary["thermal_value"] = io::json::array({sweep.thermal.real(), sweep.thermal.imag()});
    io::json runs = io::json::array();
    for (const PrethermalRun& run : sweep.runs) {
        char name[64];
        std::snprintf(name, sizeof(name), "%s_eps%g.csv", out_prefix.c_str(), run.epsilon);
        io::atomic_write(name, io::series_to_csv(run.series));
        if (gnuplot) write_gnuplot(name, "prethermal eps=" + std::to_string(run.epsilon));
        io::json entry;
        entry["epsilon"] = run.epsilon;
        entry["csv"] = name;
        entry["subleading_modulus"] = run.subleading_modulus;
        if (run.decay) entry["decay_time"] = *run.decay;
        runs.push_back(std::move(entry));
    }
    summary["runs"] = std::move(runs);
    io::atomic_write(out_prefix + ".json", summary.dump(2) + "\n");
    std::printf("wrote %s.json and %zu series\n", out_prefix.c_str(), sweep.runs.size());
    return kExitOk;
}

int cmd_levelstats(const SpecOptions& opt, std::size_t num_sites, std::size_t realizations,
                   const std::vector<double>& epsilons, const std::string& out) {
    CircuitSpec spec;
    spec.gate_spec = opt.to_spec();
    spec.num_sites = num_sites;
    spec.realizations = realizations;
    spec.seed = opt.seed;
    spec.budget = env_budget(spec.budget);

    io::json j;
    if (epsilons.empty()) {
        spec.validate();
        const EnsembleMeanR r = ensemble_mean_r(spec);
        j = io::spectrum_summary_to_json(spec, r);
    } else {
        // epsilon sweep for the Poisson-to-GUE crossover
        io::json sweep = io::json::array();
        for (double e : epsilons) {
            spec.gate_spec.epsilon = e;
            spec.validate();
            const EnsembleMeanR r = ensemble_mean_r(spec);
            io::json entry = io::spectrum_summary_to_json(spec, r);
            entry["epsilon"] = e;
            sweep.push_back(std::move(entry));
        }
        j["sweep"] = std::move(sweep);
    }
    io::atomic_write(out, j.dump(2) + "\n");
    std::printf("wrote %s\n", out.c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dual-unitary brickwork circuit toolkit"};
    app.require_subcommand(1);

    SpecOptions gen_opt;
    std::string gen_out = "gate.json";
    CLI::App* gen = app.add_subcommand("gen", "generate a gate file with a class report");
    add_spec_options(gen, gen_opt);
    gen->add_option("--out", gen_out, "output gate file");

    std::string verify_path;
    double verify_tol = 1e-10;
    CLI::App* verify = app.add_subcommand("verify", "validate a gate file and classify it");
    verify->add_option("file", verify_path, "gate file")->required();
    verify->add_option("--tol", verify_tol, "validation tolerance");

    SpecOptions corr_opt;
    std::string corr_gate, corr_out = "series.csv", corr_dir = "plus";
    std::size_t corr_tmax = 40;
    bool corr_gnuplot = false;
    CLI::App* corr = app.add_subcommand("correlate", "light-cone correlation series");
    add_spec_options(corr, corr_opt);
    corr->add_option("--gate", corr_gate, "read the gate from a file instead of generating");
    corr->add_option("--out", corr_out, "output CSV path");
    corr->add_option("--t-max", corr_tmax, "number of time steps");
    corr->add_option("--direction", corr_dir, "plus | minus")
        ->check(CLI::IsMember({"plus", "minus"}));
    corr->add_flag("--gnuplot", corr_gnuplot, "also emit a gnuplot script");

    SpecOptions gge_opt;
    std::string gge_out = "gge.json";
    CLI::App* gge = app.add_subcommand("gge", "GGE prediction for a random initial state");
    add_spec_options(gge, gge_opt);
    gge->add_option("--out", gge_out, "output JSON path");

    SpecOptions pre_opt;
    std::vector<double> pre_eps{0.001, 0.01, 0.1};
    std::string pre_out = "prethermal";
    std::size_t pre_tmax = 40;
    bool pre_gnuplot = false;
    CLI::App* pre = app.add_subcommand("prethermal", "prethermalization sweep over epsilon");
    add_spec_options(pre, pre_opt);
    pre->add_option("--epsilon-list", pre_eps, "perturbation strengths");
    pre->add_option("--out-prefix", pre_out, "output file prefix");
    pre->add_option("--t-max", pre_tmax, "number of time steps");
    pre->add_flag("--gnuplot", pre_gnuplot, "also emit gnuplot scripts");

    SpecOptions lvl_opt;
    std::size_t lvl_sites = 6, lvl_real = 10;
    std::vector<double> lvl_eps;
    std::string lvl_out = "levelstats.json";
    CLI::App* lvl = app.add_subcommand("levelstats", "Floquet level-spacing statistics");
    add_spec_options(lvl, lvl_opt);
    lvl->add_option("--L", lvl_sites, "number of sites (even)");
    lvl->add_option("--realizations", lvl_real, "circuit realizations");
    lvl->add_option("--epsilon-sweep", lvl_eps, "sweep prethermal epsilon values");
    lvl->add_option("--out", lvl_out, "output JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (gen->parsed()) return cmd_gen(gen_opt, gen_out);
        if (verify->parsed()) return cmd_verify(verify_path, verify_tol);
        if (corr->parsed())
            return cmd_correlate(corr_opt, corr_gate, corr_out, corr_tmax, corr_dir,
                                 corr_gnuplot);
        if (gge->parsed()) return cmd_gge(gge_opt, gge_out);
        if (pre->parsed())
            return cmd_prethermal(pre_opt, pre_eps, pre_out, pre_tmax, pre_gnuplot);
        if (lvl->parsed())
            return cmd_levelstats(lvl_opt, lvl_sites, lvl_real, lvl_eps, lvl_out);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    }
    return kExitConfig;
}
