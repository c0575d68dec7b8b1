#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "duc/channel.hpp"
#include "duc/correlation.hpp"
#include "duc/gate_factory.hpp"
#include "duc/linalg.hpp"
#include "duc/spectra.hpp"

namespace duc::io {

using json = nlohmann::ordered_json;

/// Write content to path via a temp file and rename.
void atomic_write(const std::filesystem::path& path, const std::string& content);

struct GateFile {
    std::size_t q = 0;
    std::string cls;
    std::uint64_t seed = 0;
    TwoSiteGate gate;
};

json gate_to_json(const TwoSiteGate& gate, const std::string& cls, std::uint64_t seed);
GateFile gate_from_json(const json& j);

void write_gate(const std::filesystem::path& path, const TwoSiteGate& gate,
                const std::string& cls, std::uint64_t seed);
GateFile read_gate(const std::filesystem::path& path);

json ergodicity_report_to_json(const ErgodicityReport& r);

json spectrum_summary_to_json(const CircuitSpec& spec, const EnsembleMeanR& result);

/// CSV with header "t,re,im", one row per period, 17 significant digits.
std::string series_to_csv(const CorrelationSeries& s);

}  // namespace duc::io
