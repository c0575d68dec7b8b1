#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "duc/channel.hpp"
#include "duc/correlation.hpp"
#include "duc/io.hpp"
#include "duc/kernels.hpp"

using namespace duc;

namespace {

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("gate JSON round-trips bit-identically") {
    GateSpec spec;
    spec.q = 3;
    spec.cls = GateClass::ErgodicMixing;
    spec.seed = 111;
    const GateBundle b = make_gate(spec);

    const io::json j = io::gate_to_json(b.gate, to_string(spec.cls), spec.seed);
    const io::GateFile f = io::gate_from_json(j);
    CHECK(f.q == 3);
    CHECK(f.cls == "ergodic_mixing");
    CHECK(f.seed == 111);
    CHECK(max_abs_diff(f.gate.matrix, b.gate.matrix) == 0.0);

    // through the filesystem, twice: identical bytes
    const auto p1 = temp_file("duc_gate_a.json"), p2 = temp_file("duc_gate_b.json");
    io::write_gate(p1, b.gate, to_string(spec.cls), spec.seed);
    io::write_gate(p2, b.gate, to_string(spec.cls), spec.seed);
    CHECK(slurp(p1) == slurp(p2));
    const io::GateFile rf = io::read_gate(p1);
    CHECK(max_abs_diff(rf.gate.matrix, b.gate.matrix) == 0.0);
    std::filesystem::remove(p1);
    std::filesystem::remove(p2);
}

TEST_CASE("gate_from_json rejects malformed shapes") {
    io::json j{{"q", 2}, {"class", "qubit"}, {"seed", 0}};
    j["re"] = io::json::array({io::json::array({1.0, 0.0})});  // wrong row count
    j["im"] = j["re"];
    CHECK_THROWS(io::gate_from_json(j));
}

TEST_CASE("atomic_write leaves no temp file and replaces content") {
    const auto p = temp_file("duc_atomic.txt");
    io::atomic_write(p, "first");
    io::atomic_write(p, "second");
    CHECK(slurp(p) == "second");
    CHECK_FALSE(std::filesystem::exists(p.string() + ".tmp"));
    std::filesystem::remove(p);
}

TEST_CASE("ergodicity report JSON carries the documented keys") {
    GateSpec spec;
    spec.q = 4;
    spec.cls = GateClass::NonErgodic;
    spec.n = 1;
    spec.seed = 112;
    const ErgodicityReport rep = classify(build_channel(make_gate(spec).gate, Direction::Plus));
    const io::json j = io::ergodicity_report_to_json(rep);
    CHECK(j.at("class") == "non_ergodic");
    CHECK(j.at("n_unit_one") == 2);
    CHECK(j.at("eigenvalues").size() == 16);
    CHECK(j.at("eigenvalues")[0].size() == 2);
    CHECK(j.at("subleading_modulus").get<double>() < 1.0);
}

TEST_CASE("series CSV format: header, rows, full precision") {
    CorrelationSeries s;
    s.q = 2;
    s.values = {cplx(1.0, 0.0), cplx(0.123456789012345678, -0.25)};
    const std::string csv = io::series_to_csv(s);
    CHECK(csv.rfind("t,re,im\n", 0) == 0);
    CHECK(csv.find("0,1,0\n") != std::string::npos);
    CHECK(csv.find("1,0.12345678901234568,-0.25\n") != std::string::npos);
}

TEST_CASE("spectrum summary JSON") {
    CircuitSpec spec;
    spec.gate_spec.q = 3;
    spec.gate_spec.cls = GateClass::ErgodicMixing;
    spec.num_sites = 6;
    spec.realizations = 2;
    EnsembleMeanR r;
    r.mean_r = 0.6;
    r.stderr_mean = 0.01;
    const io::json j = io::spectrum_summary_to_json(spec, r);
    CHECK(j.at("q") == 3);
    CHECK(j.at("L") == 6);
    CHECK(j.at("class") == "ergodic_mixing");
    CHECK(j.at("mean_r") == 0.6);
}
