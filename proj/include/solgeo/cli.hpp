#pragma once

// Plumbing behind the solgeo command-line tool: key/value job configs,
// line-oriented reports and the four subcommands. Every command writes to
// the given streams and returns the process exit code.

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "solgeo/families.hpp"
#include "solgeo/hypersurface.hpp"
#include "solgeo/oracles.hpp"

namespace solgeo::cli {

inline constexpr const char* kVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Ordered `key: value` pairs. Blank lines and lines starting with '#' are
/// skipped.
using KeyValues = std::vector<std::pair<std::string, std::string>>;
KeyValues parse_key_values(const std::string& text);

struct JobConfig {
    std::string family;  ///< zplane, tplane, vplane, cylinder, umbilical
    double c = 0.0;
    double a = 1.0;
    double b = 0.0;
    double beta0 = 0.785398163397448;
    std::array<double, 2> interval{0.0, 0.25};
    double profile_step = kProfileStep;
    std::string gamma1;  ///< curvedsl text for cylinders
    std::string gamma2;
    std::array<double, 2> curve_interval{-1.0, 1.0};
    ClassifyOptions classify;
    std::optional<std::string> out;
    KeyValues echo;  ///< the accepted keys, in input order
};

/// Reads a config; throws ConfigError on unknown keys, malformed numbers,
/// missing family parameters or non-positive tolerances.
JobConfig parse_config(const std::string& text);
/// Applies a single key to a config. Used by both files and flags.
void apply_key(JobConfig& cfg, const std::string& key, const std::string& value);
void validate(const JobConfig& cfg);

/// Builds the immersion named by the config.
Immersion build_immersion(const JobConfig& cfg);

/// %.17g formatting.
std::string fmt(double x);

struct Check {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct Report {
    std::string command;
    KeyValues job;
    KeyValues values;  ///< extra header fields (results that are not checks)
    std::vector<Check> checks;
    bool summary_pass() const;
    void write(std::ostream& os) const;
};

/// Number of worker threads from SOLGEO_JOBS, or 1 when unset or invalid.
int default_jobs();

int cmd_verify(const std::string& scope, std::ostream& out, std::ostream& err);
int cmd_curvature(const Point& p, const FrameComponents& u, const FrameComponents& v, std::ostream& out,
                  std::ostream& err);
/// `params` are config keys given on the command line (c, beta0, gamma1, ...).
int cmd_family(const std::string& name, const KeyValues& params, int grid_points, const std::string& out_path,
               std::ostream& out, std::ostream& err);
int cmd_classify(const std::string& config_path, const std::optional<std::string>& out_path, int jobs,
                 std::ostream& out, std::ostream& err);

}  // namespace solgeo::cli
