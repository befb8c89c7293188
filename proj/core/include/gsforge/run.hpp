#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gsforge/error.hpp"

namespace gsforge {

/// Invalid configuration: unknown keys, wrong types, out-of-range values.
class ConfigError : public Error {
public:
    ConfigError(const std::string& what, std::vector<std::string> keys)
        : Error(what), keys_(std::move(keys)) {}
    const char* kind() const noexcept override { return "schema"; }
    const std::vector<std::string>& offending_keys() const { return keys_; }

private:
    std::vector<std::string> keys_;
};

inline const std::vector<std::string>& task_names() {
    static const std::vector<std::string> names{"euler-build", "euler-localize", "multiscale",
                                                "boussinesq",  "ipm",            "verify"};
    return names;
}

/// Every knob of a run. Unset optional values fall back to task defaults
/// when the run starts; the resolved values are echoed to config.json.
struct RunConfig {
    std::string task = "euler-build";
    std::string out = "gsforge-out";
    std::string format = "csv";
    std::optional<std::array<int, 2>> grid;  ///< node counts (nx, ny); for multiscale, the template grid
    int levels = 1;                          ///< grid levels, each refined by 2; orders need >= 3
    int order = 12;

    // Euler / template
    double ell = 1.0;
    double tau = 0.5;
    double half_width = 0.12;
    double shell_radius = 0.1;
    double margin = 0.02;
    std::optional<double> p_lo;
    std::optional<double> p_hi;

    // multiscale
    double alpha_target = 1.0 / 3.0;
    int shells = 20;
    double rho = 1.0 / 12.0;
    double scale0 = 0.1;
    double helix_a = 1.0;
    double helix_b = 0.5;
    double alpha_probe = 0.4;  ///< exponent above the target, expected to diverge
    std::uint64_t seed = 20240611;
    int pairs = 400;

    // Boussinesq / IPM
    double k = 1.0;
    double s = 0.5;
    double bous_half_x1 = 0.025;
    double bous_half_x2 = 0.2;
    double ipm_x0 = 0.0;
    double ipm_y0 = 0.0;
    double ipm_extent = 1.0;
    double strip_center = 0.5;
    double strip_half_width = 0.2;

    // verify
    std::optional<std::string> golden;
    double golden_rtol = 1e-6;
};

/// Parses a JSON object; throws ConfigError listing unknown or ill-typed keys.
RunConfig config_from_json(const std::string& text);
/// Resolved configuration (task defaults filled in) as pretty JSON.
std::string config_to_json(const RunConfig& config);
/// Range checks; throws ConfigError.
void validate(const RunConfig& config);
/// Node counts used for the task when none are given.
std::array<int, 2> default_grid(const std::string& task);

/// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitModule = 3;

/// Executes the task, writing config.json, report.json and field files into
/// config.out. Progress goes to `log`; failures are reported on `err` as
/// {"error":{"kind":...,"message":...}} and mapped to the exit codes above.
int run(const RunConfig& config, std::ostream& log, std::ostream& err);

/// Error JSON for an exception (includes offending_keys for ConfigError).
std::string error_json(const Error& e);

/// Compares two report.json documents: structure, strings and booleans must
/// match, numbers within rtol relative to the larger magnitude plus 1e-14
/// absolute. Returns the mismatching paths.
std::vector<std::string> compare_reports(const std::string& expected, const std::string& actual, double rtol);

}  // namespace gsforge
