#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hyperan/classifier.hpp"
#include "hyperan/function.hpp"

namespace hyperan {

enum class Command { classify, residual_map, convergence, table };
enum class OutputFormat { json, csv };

const char* command_name(Command command);
std::optional<Command> command_from_name(const std::string& name);
const char* format_name(OutputFormat format);
std::optional<OutputFormat> format_from_name(const std::string& name);
const char* algebra_name(int dim);
std::optional<int> algebra_dim_from_name(const std::string& name);

/// One CLI invocation, fully resolved except for the function spec text.
struct JobConfig {
    Command command = Command::classify;
    std::optional<std::string> spec_path;
    std::optional<std::string> spec_json;
    /// Algebra dimension from --algebra; must match the spec when both given.
    std::optional<int> dim;
    double h = kDefaultStep;
    std::optional<double> tolerance;
    /// Grid axis ranges; empty uses defaults, one entry applies to all axes.
    std::vector<AxisRange> grid_axes;
    double axis_exclusion_radius = kDefaultAxisExclusion;
    std::uint64_t seed = kDefaultGridSeed;
    double jitter = 0.0;
    /// t-range override for plane-restricted functions.
    std::optional<AxisRange> plane_t;
    /// Operator for residual-map and convergence; convergence covers every
    /// applicable condition when the flag was not given.
    OperatorKind op = OperatorKind::local_conj_radial;
    bool op_given = false;
    double convergence_h0 = kDefaultConvergenceStep;
    /// Convergence rows sample at most this many grid points (strided).
    int max_points = 16;
    OutputFormat format = OutputFormat::json;
    std::optional<std::string> out_path;
};

/// Parses a function-spec JSON document. Rejects unknown fields, wrong
/// component lengths, unknown builtin names and non-unit iota vectors, each
/// with a message naming the offending field.
FunctionSpec parse_function_spec(const std::string& text);

/// Canonical JSON echo of a spec; parse_function_spec inverts it.
std::string serialize_function_spec(const FunctionSpec& spec);

std::string serialize_report(const RegularityReport& report, OutputFormat format);

/// Rebuilds a classification report from its JSON serialization.
RegularityReport classify_report_from_json(const std::string& text);

std::string serialize_basis_table(int dim, OutputFormat format);

/// Executes one job: report text goes to `out` (or the config's output path),
/// diagnostics to `err`. Returns the process exit code: 0 success, 1 input
/// error, 2 numerical-domain error.
int run_job(const JobConfig& config, std::ostream& out, std::ostream& err);

}  // namespace hyperan
