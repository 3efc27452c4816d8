#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hyperan/report.hpp"

namespace {

std::optional<hyperan::AxisRange> parse_axis_range(const std::string& text) {
    hyperan::AxisRange axis{};
    char tail = 0;
    if (std::sscanf(text.c_str(), "%lf,%lf,%d%c", &axis.lo, &axis.hi, &axis.count, &tail) != 3) {
        return std::nullopt;
    }
    return axis;
}

struct Flags {
    std::string spec_path;
    std::string spec_json;
    std::string algebra;
    std::string plane_t;
    std::string op;
    std::string format = "json";
    std::string out;
    std::vector<std::string> grid;
    double h = hyperan::kDefaultStep;
    double tol = 0.0;
    double exclude = hyperan::kDefaultAxisExclusion;
    double jitter = 0.0;
    double convergence_h0 = hyperan::kDefaultConvergenceStep;
    std::uint64_t seed = hyperan::kDefaultGridSeed;
    int max_points = 16;
};

}  // namespace

int main(int argc, char** argv) {
    using namespace hyperan;

    CLI::App app{"numerical regularity toolkit for quaternion- and octonion-valued functions"};
    // --h is the finite-difference step, so help must not claim the short -h.
    app.set_help_flag("--help", "print help and exit");
    app.require_subcommand(1);

    Flags flags;
    std::vector<std::string> op_names;
    for (OperatorKind op : kAllOperators) {
        op_names.emplace_back(operator_name(op));
    }

    const std::pair<const char*, const char*> commands[] = {
        {"classify", "evaluate every regularity condition over a grid"},
        {"residual-map", "per-point residuals of one operator over a grid"},
        {"convergence", "finite-difference order estimates at sampled points"},
        {"table", "basis multiplication table"},
    };
    for (const auto& [name, desc] : commands) {
        CLI::App* cmd = app.add_subcommand(name, desc);
        cmd->set_help_flag("--help", "print help and exit");
        cmd->add_option("--spec", flags.spec_path, "function spec JSON file");
        cmd->add_option("--spec-json", flags.spec_json, "function spec JSON text");
        cmd->add_option("--algebra", flags.algebra, "quaternion|octonion")
            ->check(CLI::IsMember({"quaternion", "octonion"}));
        cmd->add_option("--h", flags.h, "finite-difference step");
        cmd->add_option("--tol", flags.tol, "fixed verdict tolerance (classify only)");
        cmd->add_option("--grid", flags.grid,
                        "axis range lo,hi,n; repeat per axis (write --grid=-1,1,5 for "
                        "ranges that start with a dash)");
        cmd->add_option("--exclude-axis-radius", flags.exclude,
                        "drop grid points whose imaginary part is shorter than this");
        cmd->add_option("--seed", flags.seed, "seed of the jittered grid");
        cmd->add_option("--jitter", flags.jitter,
                        "lattice jitter as a fraction of the half cell (default 0, exact lattice)");
        cmd->add_option("--plane-t", flags.plane_t,
                        "t range lo,hi,n of the sampling plane (plane-restricted specs)");
        cmd->add_option("--operator", flags.op,
                        "operator for residual-map (default local_conj_radial) and convergence "
                        "(default: every applicable condition)")
            ->check(CLI::IsMember(op_names));
        cmd->add_option("--convergence-h0", flags.convergence_h0,
                        "coarsest step of the order estimate");
        cmd->add_option("--max-points", flags.max_points,
                        "sample at most this many grid points per operator (convergence)");
        cmd->add_option("--format", flags.format, "json|csv")
            ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--out", flags.out, "write the report to FILE instead of stdout");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    CLI::App* sub = app.get_subcommands().front();
    JobConfig config;
    config.command = *command_from_name(sub->get_name());
    if (sub->count("--spec") > 0) {
        config.spec_path = flags.spec_path;
    }
    if (sub->count("--spec-json") > 0) {
        config.spec_json = flags.spec_json;
    }
    if (sub->count("--algebra") > 0) {
        config.dim = algebra_dim_from_name(flags.algebra);
    }
    config.h = flags.h;
    if (sub->count("--tol") > 0) {
        config.tolerance = flags.tol;
    }
    for (const auto& text : flags.grid) {
        const auto axis = parse_axis_range(text);
        if (!axis) {
            std::cerr << "error: --grid expects lo,hi,n, got \"" << text << "\"\n";
            return 1;
        }
        config.grid_axes.push_back(*axis);
    }
    config.axis_exclusion_radius = flags.exclude;
    config.seed = flags.seed;
    config.jitter = flags.jitter;
    if (sub->count("--plane-t") > 0) {
        const auto axis = parse_axis_range(flags.plane_t);
        if (!axis) {
            std::cerr << "error: --plane-t expects lo,hi,n, got \"" << flags.plane_t << "\"\n";
            return 1;
        }
        config.plane_t = *axis;
    }
    if (sub->count("--operator") > 0) {
        config.op = *operator_from_name(flags.op);
        config.op_given = true;
    }
    config.convergence_h0 = flags.convergence_h0;
    config.max_points = flags.max_points;
    config.format = *format_from_name(flags.format);
    if (sub->count("--out") > 0) {
        config.out_path = flags.out;
    }

    return run_job(config, std::cout, std::cerr);
}
