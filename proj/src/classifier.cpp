#include "hyperan/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hyperan/errors.hpp"

namespace hyperan {

GridSpec GridSpec::defaults(int dim) {
    GridSpec grid;
    grid.dim = dim;
    const int count = dim == kQuaternionDim ? 5 : 3;
    grid.axes.assign(static_cast<std::size_t>(dim), AxisRange{-1.0, 1.0, count});
    return grid;
}

namespace {

void validate_axis(const AxisRange& axis, const char* what) {
    if (axis.count < 1) {
        throw ConfigError(std::string(what) + ": point count must be >= 1");
    }
    if (!(axis.lo <= axis.hi)) {
        throw ConfigError(std::string(what) + ": range lo must not exceed hi");
    }
}

void validate_grid(const GridSpec& grid) {
    if (!valid_dim(grid.dim)) {
        throw ConfigError("grid: dim must be 4 or 8");
    }
    if (grid.plane) {
        if (grid.axes.empty()) {
            throw ConfigError("grid: plane sampling needs the first axis as the x0 range");
        }
        if (grid.plane->iota.dim() != grid.dim) {
            throw ConfigError("grid: plane direction dim does not match grid dim");
        }
        validate_axis(grid.plane->t_range, "grid plane t-range");
    } else if (grid.axes.size() != static_cast<std::size_t>(grid.dim)) {
        throw ConfigError("grid: expected " + std::to_string(grid.dim) + " axis ranges, got " +
                          std::to_string(grid.axes.size()));
    }
    for (const auto& axis : grid.axes) {
        validate_axis(axis, "grid axis");
    }
    if (grid.axis_exclusion_radius < 0.0) {
        throw ConfigError("grid: axis exclusion radius must be >= 0");
    }
    if (grid.jitter < 0.0 || grid.jitter > 1.0) {
        throw ConfigError("grid: jitter must lie in [0, 1]");
    }
}

double axis_value(const AxisRange& axis, int index) {
    if (axis.count == 1) {
        return 0.5 * (axis.lo + axis.hi);
    }
    return axis.lo + (axis.hi - axis.lo) * index / (axis.count - 1);
}

double axis_half_cell(const AxisRange& axis) {
    if (axis.count == 1) {
        return 0.5 * (axis.hi - axis.lo);
    }
    return 0.5 * (axis.hi - axis.lo) / (axis.count - 1);
}

std::string point_context(const char* what, std::size_t index, const Hypercomplex& q) {
    return std::string(what) + " (grid point " + std::to_string(index) + " = " + q.to_string() +
           ")";
}

template <typename Fn>
auto at_point(std::size_t index, const Hypercomplex& q, Fn&& fn) {
    try {
        return fn();
    } catch (const RealAxisError& e) {
        throw RealAxisError(point_context(e.what(), index, q));
    } catch (const SingularityError& e) {
        throw SingularityError(point_context(e.what(), index, q));
    } catch (const PlaneMembershipError& e) {
        throw PlaneMembershipError(point_context(e.what(), index, q));
    }
}

double flat_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

}  // namespace

std::vector<Hypercomplex> sample_grid(const GridSpec& grid) {
    validate_grid(grid);
    std::mt19937_64 gen(grid.seed);
    auto jittered = [&](const AxisRange& axis, int index) {
        double value = axis_value(axis, index);
        if (grid.jitter > 0.0) {
            value += grid.jitter * axis_half_cell(axis) * (2.0 * uniform_unit(gen()) - 1.0);
        }
        return value;
    };

    std::vector<Hypercomplex> points;
    if (grid.plane) {
        const auto direction = grid.plane->iota.as_element();
        const auto& x0_axis = grid.axes.front();
        const auto& t_axis = grid.plane->t_range;
        for (int i = 0; i < x0_axis.count; ++i) {
            for (int j = 0; j < t_axis.count; ++j) {
                const double x0 = jittered(x0_axis, i);
                const double t = jittered(t_axis, j);
                if (std::abs(t) < grid.axis_exclusion_radius) {
                    continue;
                }
                points.push_back(Hypercomplex::real(grid.dim, x0) + direction * t);
            }
        }
    } else {
        std::vector<int> index(static_cast<std::size_t>(grid.dim), 0);
        while (true) {
            std::array<double, kMaxDim> coords{};
            for (int a = 0; a < grid.dim; ++a) {
                coords[static_cast<std::size_t>(a)] =
                    jittered(grid.axes[static_cast<std::size_t>(a)], index[static_cast<std::size_t>(a)]);
            }
            auto q = Hypercomplex::from_components(
                {coords.data(), static_cast<std::size_t>(grid.dim)});
            if (q.imaginary_norm() >= grid.axis_exclusion_radius) {
                points.push_back(q);
            }
            int axis = grid.dim - 1;
            while (axis >= 0) {
                auto& i = index[static_cast<std::size_t>(axis)];
                if (++i < grid.axes[static_cast<std::size_t>(axis)].count) {
                    break;
                }
                i = 0;
                --axis;
            }
            if (axis < 0) {
                break;
            }
        }
    }
    if (points.empty()) {
        throw EmptyGridError("grid sampling left no points after the axis exclusion");
    }
    return points;
}

ResidualStats residual_stats(const FunctionSpec& f, OperatorKind op,
                             const std::vector<Hypercomplex>& points, double h) {
    if (points.empty()) {
        throw EmptyGridError("residual_stats: empty point list");
    }
    const std::size_t n = points.size();
    std::vector<double> residuals(n, 0.0);
    ResidualStats stats;
    stats.op = op;
    stats.count = static_cast<std::int64_t>(n);

    if (op == OperatorKind::global_left) {
        std::vector<Hypercomplex> values;
        values.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            values.push_back(
                at_point(i, points[i], [&] { return apply_global_left(f, points[i], h); }));
        }
        auto mean = Hypercomplex::zero(f.dim());
        for (const auto& v : values) {
            mean = mean + v;
        }
        mean = mean / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
            residuals[i] = (values[i] - mean).norm();
        }
        stats.mean_value = mean;
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            residuals[i] = at_point(
                i, points[i], [&] { return residual_norm(apply_operator(f, op, points[i], h)); });
        }
    }

    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sum += residuals[i];
        sum_sq += residuals[i] * residuals[i];
        if (residuals[i] > stats.max_abs) {
            stats.max_abs = residuals[i];
            stats.argmax_index = static_cast<std::int64_t>(i);
        }
    }
    stats.mean_abs = sum / static_cast<double>(n);
    stats.l2 = std::sqrt(sum_sq);
    return stats;
}

OrderEstimate estimate_convergence_order(const FunctionSpec& f, OperatorKind op,
                                         const Hypercomplex& q, double h0,
                                         const std::optional<std::vector<Hypercomplex>>& reference,
                                         std::optional<double> noise_floor) {
    if (!(h0 > 0.0)) {
        throw ConfigError("convergence estimation: h0 must be positive");
    }
    const double floor =
        noise_floor.value_or(kNoiseFloorFactor * std::max(1.0, f.evaluate_extended(q).norm()));

    const auto coarse = operator_value_vector(f, op, q, h0);
    const auto middle = operator_value_vector(f, op, q, h0 / 2.0);
    if (reference) {
        std::vector<double> ref;
        for (const auto& v : *reference) {
            for (double c : v.components()) {
                ref.push_back(c);
            }
        }
        if (ref.size() != coarse.size()) {
            throw DimensionError("convergence estimation: reference shape does not match operator");
        }
        const double e1 = flat_distance(coarse, ref);
        const double e2 = flat_distance(middle, ref);
        if (e1 < floor || e2 < floor) {
            return OrderEstimate::indeterminate();
        }
        return OrderEstimate::of(std::log2(e1 / e2));
    }

    const auto fine = operator_value_vector(f, op, q, h0 / 4.0);
    const double d1 = flat_distance(coarse, middle);
    const double d2 = flat_distance(middle, fine);
    if (d1 < floor || d2 < floor) {
        return OrderEstimate::indeterminate();
    }
    return OrderEstimate::of(std::log2(d1 / d2));
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::regular: return "regular";
        case Verdict::not_regular: return "not_regular";
        case Verdict::not_applicable: return "not_applicable";
    }
    throw ConfigError("verdict_name: unknown verdict");
}

std::optional<Verdict> verdict_from_name(const std::string& name) {
    for (Verdict v : {Verdict::regular, Verdict::not_regular, Verdict::not_applicable}) {
        if (name == verdict_name(v)) {
            return v;
        }
    }
    return std::nullopt;
}

double auto_tolerance(double h, double function_scale) {
    return kToleranceFactor * h * h * std::max(1.0, function_scale);
}

RegularityReport classify(const FunctionSpec& f, ClassifyConfig config) {
    if (!(config.h > 0.0)) {
        throw ConfigError("classify: h must be positive");
    }
    if (!(config.convergence_h0 > 0.0)) {
        throw ConfigError("classify: convergence h0 must be positive");
    }
    if (config.tolerance && !(*config.tolerance > 0.0)) {
        throw ConfigError("classify: tolerance must be positive");
    }

    auto& grid = config.grid;
    grid.dim = f.dim();
    if (grid.axes.empty()) {
        grid.axes = GridSpec::defaults(f.dim()).axes;
    }
    if (f.plane_restricted() && !grid.plane) {
        grid.plane = PlaneRestriction{
            f.plane_direction(),
            AxisRange{kDefaultPlaneTLo, kDefaultPlaneTHi, grid.axes.front().count}};
    }
    const double needed = kOperatorAxisEps + std::max(config.h, config.convergence_h0);
    if (grid.axis_exclusion_radius < needed) {
        throw ConfigError("classify: axis exclusion radius " +
                          std::to_string(grid.axis_exclusion_radius) +
                          " is below the local-operator minimum " + std::to_string(needed));
    }

    const auto points = sample_grid(grid);

    double scale = 0.0;
    for (const auto& q : points) {
        scale = std::max(scale, f.evaluate_extended(q).norm());
    }
    const double tolerance = config.tolerance.value_or(auto_tolerance(config.h, scale));
    const double floor = kNoiseFloorFactor * std::max(1.0, scale);

    RegularityReport report{f, config, scale, static_cast<std::int64_t>(points.size()), {}};
    for (OperatorKind op : kClassifyOperators) {
        if (!operator_supports_dim(op, f.dim())) {
            report.operators.push_back(
                {op, Verdict::not_applicable, std::nullopt, std::nullopt, OrderEstimate::absent()});
            continue;
        }
        auto stats = residual_stats(f, op, points, config.h);
        if (op == OperatorKind::third_order_probe) {
            report.operators.push_back(
                {op, Verdict::not_applicable, stats, std::nullopt, OrderEstimate::absent()});
            continue;
        }
        const Verdict verdict =
            stats.max_abs <= tolerance ? Verdict::regular : Verdict::not_regular;
        const auto& rep_point = points[static_cast<std::size_t>(stats.argmax_index)];
        const auto order = estimate_convergence_order(f, op, rep_point, config.convergence_h0,
                                                      std::nullopt, floor);
        report.operators.push_back({op, verdict, stats, tolerance, order});
    }
    return report;
}

}  // namespace hyperan
