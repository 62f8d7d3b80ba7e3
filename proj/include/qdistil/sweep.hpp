#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qdistil/oracle.hpp"

namespace qdistil::sweep {

enum class Protocol {
    bell_twocopy,
    bell_bisection,
    bell_nonmax,
    ghz,
    w_state,
    w_ratio,
    w_asymptotic,
    optimal_w,
};

// Maps the CLI spelling ("bell-twocopy", "w-state", ...) to the enum.
Protocol protocol_from_name(const std::string& name);
const char* protocol_name(Protocol p);

struct AxisSpec {
    std::string name;
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;

    // Materializes start, start+step, ... ; the stop value is included when
    // it sits on the step lattice (within 1e-9 steps).
    std::vector<double> values() const;
};

// Parses "start:stop:step" into a range, or a bare scalar into a one-point
// axis.
AxisSpec parse_axis(const std::string& name, const std::string& text);

struct SweepConfig {
    Protocol protocol = Protocol::bell_twocopy;
    std::vector<AxisSpec> axes;           // row-major; last axis varies fastest
    std::map<std::string, double> fixed;  // per-point scalar overrides
    int parties = 3;                      // N, unless given per point
    int rounds = 10;                      // m, unless given per point
    int copies = 32;                      // n, unless given per point
    double epsilon = 1e-6;
    int jobs = 1;                         // worker threads; no effect on bytes
};

struct SweepResult {
    std::vector<std::string> columns;  // axis names, value columns, "status"
    std::vector<std::string> rows;     // one formatted CSV line per grid point
};

// Evaluates every grid point. Output is deterministic for a given config and
// independent of cfg.jobs; rows are emitted in row-major axis order.
SweepResult run_sweep(const SweepConfig& cfg);

void write_csv(const SweepResult& result, const std::string& path);

// Writes the full config, tool version and column list next to the CSV, at
// `<path minus .csv>.meta.json`.
void write_sidecar(const SweepConfig& cfg, const SweepResult& result,
                   const std::string& csv_path);
std::string sidecar_path(const std::string& csv_path);

// Built-in sweep configs behind the `figure` subcommand: "1a".."1d", "2".."9".
SweepConfig figure_preset(const std::string& id);
const std::vector<std::string>& figure_ids();

// 17-significant-digit formatting used for every float in the CSV output;
// round trips double values exactly.
std::string format_double(double v);

// Runs the oracle cross-validation; writes a CSV report when report_path is
// nonempty.
oracle::ValidationSummary run_validation(std::uint64_t seed, int samples,
                                         const std::string& report_path);

}  // namespace qdistil::sweep
