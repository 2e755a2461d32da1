#include "nclab/report.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <string>

#include "nclab/errors.hpp"

namespace nclab {

std::string_view to_string(RatioMode mode) {
    return mode == RatioMode::single_theta ? "single_theta" : "symmetric";
}

RatioMode ratio_mode_from_string(std::string_view s) {
    if (s == "single_theta") return RatioMode::single_theta;
    if (s == "symmetric") return RatioMode::symmetric;
    throw ConfigError("mode must be single_theta or symmetric, got '" + std::string(s) + "'");
}

PhysicalParams params_from_ratio(const RatioSpec& spec, double m, double omega, double hbar) {
    const double r = spec.ratio;
    if (!(r >= 0.0 && r < 1.0)) {
        throw UnreachableRatio("gamma/Omega must lie in [0, 1), got " + std::to_string(r));
    }
    PhysicalParams p{m, omega, hbar, 0.0, 0.0};
    validate(p);
    if (r == 0.0) return p;

    if (spec.mode == RatioMode::single_theta) {
        const double gamma = r * omega / std::sqrt(1.0 - r * r);
        p.theta = 2.0 * hbar * gamma / (m * omega * omega);
        return p;
    }
    // theta = eta = s: gamma = k s, Omega^2 = omega^2 (1 - s^2/hbar^2) + gamma^2.
    const double k = (m * omega * omega + 1.0 / m) / (2.0 * hbar);
    const double s = r * omega / std::sqrt(k * k * (1.0 - r * r) + r * r * omega * omega / (hbar * hbar));
    p.theta = p.eta = s;
    return p;
}

void RunManifest::add_check(std::string name, bool pass, double measured, double threshold) {
    checks.push_back({std::move(name), pass, measured, threshold});
}

bool RunManifest::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

nlohmann::json RunManifest::body() const {
    using nlohmann::json;
    json j;
    j["tool_version"] = std::string(kToolVersion);
    j["command"] = {{"name", command}, {"arguments", arguments}};
    j["config"] = config;
    j["params"] = {{"m", params.m}, {"omega", params.omega}, {"hbar", params.hbar},
                   {"theta", params.theta}, {"eta", params.eta}};
    j["gauge"] = {{"lambda", gauge.lambda}, {"mu", gauge.mu}};
    j["derived_constants"] = {{"alpha", dc.alpha}, {"beta", dc.beta}, {"gamma", dc.gamma},
                              {"omega_big", dc.omega_big}, {"product_lm", dc.product_lm}};
    j["measured_constants"] = measured_constants;
    json cs = json::array();
    for (const auto& c : checks) {
        cs.push_back({{"name", c.name}, {"pass", c.pass}, {"measured", c.measured}, {"threshold", c.threshold}});
    }
    j["checks"] = cs;
    json outs = json::array();
    for (const auto& o : outputs) outs.push_back({{"path", o.path}, {"sha256", o.sha256}});
    j["outputs"] = outs;
    j["all_checks_pass"] = all_pass();
    return j;
}

std::string RunManifest::run_id() const { return sha256_hex(body().dump()); }

nlohmann::json RunManifest::to_json(bool with_timestamp) const {
    nlohmann::json j = body();
    j["run_id"] = run_id();
    if (with_timestamp) {
        const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        std::tm tm{};
        gmtime_r(&now, &tm);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
        j["timestamp"] = buf;
    }
    return j;
}

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error("SHA-256 computation failed");
    }
    std::string hex;
    hex.reserve(2 * len);
    char byte[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(byte, sizeof byte, "%02x", digest[i]);
        hex += byte;
    }
    return hex;
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw Error("failed writing " + path.string());
}

}  // namespace

void write_output(RunManifest& manifest, const std::filesystem::path& dir, const std::string& name,
                  const std::string& text) {
    std::filesystem::create_directories(dir);
    write_text(dir / name, text);
    manifest.outputs.push_back({name, sha256_hex(text)});
}

std::string write_manifest(const RunManifest& manifest, const std::filesystem::path& dir,
                           const std::string& manifest_name) {
    std::filesystem::create_directories(dir);
    const nlohmann::json j = manifest.to_json();
    write_text(dir / manifest_name, j.dump(2) + "\n");
    return j["run_id"].get<std::string>();
}

}  // namespace nclab
