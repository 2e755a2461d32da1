#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "nclab/algebra.hpp"
#include "nclab/dynamics.hpp"

namespace nclab {

inline constexpr std::string_view kToolVersion = "0.3.0";

enum class RatioMode { single_theta, symmetric };

std::string_view to_string(RatioMode mode);
RatioMode ratio_mode_from_string(std::string_view s);

/// Target gamma/Omega and how to split it between theta and eta.
struct RatioSpec {
    double ratio = 0.0;
    RatioMode mode = RatioMode::single_theta;
};

/// Physical parameters realising gamma/Omega = spec.ratio exactly.
/// single_theta: eta = 0, gamma = r omega / sqrt(1 - r^2), theta = 2 hbar gamma / (m omega^2).
/// symmetric: theta = eta = s with s solving gamma(s)/Omega(s) = r.
/// Throws UnreachableRatio unless 0 <= ratio < 1.
PhysicalParams params_from_ratio(const RatioSpec& spec, double m = 1.0, double omega = 1.0, double hbar = 1.0);

struct Check {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double threshold = 0.0;
};

struct OutputFile {
    std::string path;  // relative to the manifest's directory
    std::string sha256;
};

/// Provenance of one command invocation. Serialised next to its data files.
struct RunManifest {
    PhysicalParams params;
    GaugeChoice gauge;
    DerivedConstants dc;
    std::string command;
    std::vector<std::string> arguments;
    nlohmann::json config;
    nlohmann::json measured_constants = nlohmann::json::object();
    std::vector<Check> checks;
    std::vector<OutputFile> outputs;

    void add_check(std::string name, bool pass, double measured, double threshold);
    bool all_pass() const;

    /// Everything except the timestamp; run_id is its SHA-256.
    nlohmann::json body() const;
    std::string run_id() const;
    nlohmann::json to_json(bool with_timestamp = true) const;
};

std::string sha256_hex(std::string_view data);

/// Writes text to dir/name and records its hash in the manifest.
void write_output(RunManifest& manifest, const std::filesystem::path& dir, const std::string& name,
                  const std::string& text);

/// Writes dir/manifest_name; returns the run id.
std::string write_manifest(const RunManifest& manifest, const std::filesystem::path& dir,
                           const std::string& manifest_name = "manifest.json");

}  // namespace nclab
