#include "duc/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace duc::io {

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("atomic_write: cannot open " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("atomic_write: write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

json gate_to_json(const TwoSiteGate& gate, const std::string& cls, std::uint64_t seed) {
    const std::size_t d = gate.q * gate.q;
    json re = json::array(), im = json::array();
    for (std::size_t i = 0; i < d; ++i) {
        json re_row = json::array(), im_row = json::array();
        for (std::size_t j = 0; j < d; ++j) {
            re_row.push_back(gate.matrix(i, j).real());
            im_row.push_back(gate.matrix(i, j).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return json{{"q", gate.q}, {"class", cls}, {"seed", seed}, {"re", std::move(re)},
                {"im", std::move(im)}};
}

GateFile gate_from_json(const json& j) {
    GateFile f;
    f.q = j.at("q").get<std::size_t>();
    f.cls = j.at("class").get<std::string>();
    f.seed = j.at("seed").get<std::uint64_t>();
    const std::size_t d = f.q * f.q;
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (re.size() != d || im.size() != d)
        throw std::runtime_error("gate_from_json: matrix shape does not match q");
    ComplexMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        if (re[i].size() != d || im[i].size() != d)
            throw std::runtime_error("gate_from_json: ragged matrix rows");
        for (std::size_t k = 0; k < d; ++k)
            m(i, k) = cplx(re[i][k].get<double>(), im[i][k].get<double>());
    }
    f.gate = TwoSiteGate(f.q, std::move(m));
    return f;
}

void write_gate(const std::filesystem::path& path, const TwoSiteGate& gate,
                const std::string& cls, std::uint64_t seed) {
    atomic_write(path, gate_to_json(gate, cls, seed).dump(2) + "\n");
}

GateFile read_gate(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_gate: cannot open " + path.string());
    json j;
    in >> j;
    return gate_from_json(j);
}

json ergodicity_report_to_json(const ErgodicityReport& r) {
    json eigs = json::array();
    for (const cplx& lam : r.eigenvalues) eigs.push_back(json::array({lam.real(), lam.imag()}));
    return json{{"class", to_string(r.cls)},
                {"eigenvalues", std::move(eigs)},
                {"n_unit_one", r.n_unit_one},
                {"n_unit_modulus", r.n_unit_modulus},
                {"subleading_modulus", r.subleading_modulus}};
}

json spectrum_summary_to_json(const CircuitSpec& spec, const EnsembleMeanR& result) {
    return json{{"q", spec.gate_spec.q},
                {"L", spec.num_sites},
                {"class", to_string(spec.gate_spec.cls)},
                {"realizations", spec.realizations},
                {"mean_r", result.mean_r},
                {"stderr", result.stderr_mean},
                {"excluded_degeneracies", result.excluded_degeneracies}};
}

std::string series_to_csv(const CorrelationSeries& s) {
    std::string out = "t,re,im\n";
    char buf[80];
    for (std::size_t t = 0; t < s.values.size(); ++t) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g\n", t, s.values[t].real(),
                      s.values[t].imag());
        out += buf;
    }
    return out;
}

}  // namespace duc::io
