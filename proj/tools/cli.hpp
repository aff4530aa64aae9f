#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "treecochain/cusp.hpp"
#include "treecochain/eisenstein.hpp"

namespace tc::cli {

/// Exit 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
/// Exit 3.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    FieldPtr F;
    std::vector<int> modulus;  // empty for prime fields
    std::optional<Level> level;
    std::vector<std::string> level_text;
    std::optional<EpsVector> eps;
    int ell = 0;  // 0: not given
    int r = 1;
    int depth = 6;
    int samples = 200;
    std::uint64_t seed = 1;
    std::string out = "-";
    std::string format;
};

/// Defaults for q = 4, 8, 9 when --ext-modulus is absent.
std::vector<int> default_modulus(int q);
FieldPtr make_field(int q, const std::vector<int>& modulus);
std::vector<int> parse_int_list(const std::string& s);
std::vector<std::string> split(const std::string& s, char sep);
Level parse_level(const Field& F, const std::string& text);

struct Check {
    std::string name, paper_tag, status, details;  // status: pass, fail or info
};

struct Report {
    std::string suite;
    std::vector<Check> checks;

    void add(std::string name, std::string tag, bool ok, std::string details) {
        checks.push_back({std::move(name), std::move(tag), ok ? "pass" : "fail", std::move(details)});
    }
    void info(std::string name, std::string tag, std::string details) {
        checks.push_back({std::move(name), std::move(tag), "info", std::move(details)});
    }
    bool failed() const;
};

const std::vector<std::string>& suite_names();
/// Throws UsageError for unknown suites or missing flags.
Report run_suite(const RunConfig& cfg, const std::string& suite);

std::string config_json(const RunConfig& cfg);
/// Writes to cfg.out ("-" is stdout).
void emit(const RunConfig& cfg, const std::string& text);
std::string report_text(const RunConfig& cfg, const Report& rep);
std::string csv_field(const std::string& s);

struct SweepRanges {
    std::vector<int> qs, ss, degs;
    std::optional<std::string> level;
    int ell = 0, r = 1;
    std::vector<int> modulus;
};

/// Returns the table text and whether every row passed.
std::pair<std::string, bool> run_sweep(const SweepRanges& ranges, const std::string& format);

}  // namespace tc::cli
