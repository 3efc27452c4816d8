#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hyperan/function.hpp"
#include "hyperan/operators.hpp"

namespace hyperan {

inline constexpr double kDefaultAxisExclusion = 0.5;
inline constexpr std::uint64_t kDefaultGridSeed = 42;
inline constexpr double kDefaultPlaneTLo = 0.5;
inline constexpr double kDefaultPlaneTHi = 2.0;

/// Default coarsest step of convergence-order estimation.
inline constexpr double kDefaultConvergenceStep = 1e-3;
/// Residual magnitudes below kNoiseFloorFactor * max(1, |f|) count as noise.
inline constexpr double kNoiseFloorFactor = 1e-12;
/// Auto verdict tolerance = kToleranceFactor * h^2 * max(1, function scale).
inline constexpr double kToleranceFactor = 100.0;

struct AxisRange {
    double lo;
    double hi;
    int count;

    bool operator==(const AxisRange&) const = default;
};

/// Restricts sampling to the plane q = x0 + iota*t; the x0 range comes from
/// the grid's first axis.
struct PlaneRestriction {
    ImaginaryDirection iota;
    AxisRange t_range;

    bool operator==(const PlaneRestriction&) const = default;
};

struct GridSpec {
    int dim = kQuaternionDim;
    std::vector<AxisRange> axes;
    double axis_exclusion_radius = kDefaultAxisExclusion;
    std::optional<PlaneRestriction> plane;
    std::uint64_t seed = kDefaultGridSeed;
    /// Per-coordinate jitter amplitude as a fraction of the half cell; 0
    /// keeps the exact lattice and draws nothing from the seed.
    double jitter = 0.0;

    /// [-1,1] on every axis, 5 points per axis for quaternions and 3 for
    /// octonions, exclusion radius 0.5.
    static GridSpec defaults(int dim);

    bool operator==(const GridSpec&) const = default;
};

/// Deterministic point list; all points respect the axis exclusion. Throws
/// EmptyGridError when nothing survives.
std::vector<Hypercomplex> sample_grid(const GridSpec& grid);

struct ResidualStats {
    OperatorKind op;
    std::int64_t count = 0;
    double max_abs = 0.0;
    double mean_abs = 0.0;
    double l2 = 0.0;
    /// Index (into the sampled point list) of the largest residual.
    std::int64_t argmax_index = 0;
    /// global_left only: the grid-mean operator value, i.e. the estimated
    /// derivative. Its per-point residual is the deviation from this mean.
    std::optional<Hypercomplex> mean_value;

    bool operator==(const ResidualStats&) const = default;
};

/// Aggregates |residual| over the points. For the trio the per-point residual
/// is the largest of the three equation norms; for global_left it is the
/// deviation of the operator value from the grid mean (a derivative is only
/// considered to exist when it is the same everywhere); for every other
/// operator it is the norm of the operator value.
ResidualStats residual_stats(const FunctionSpec& f, OperatorKind op,
                             const std::vector<Hypercomplex>& points, double h = kDefaultStep);

struct OrderEstimate {
    enum class State { absent, indeterminate, value };

    State state = State::absent;
    double order = 0.0;

    static OrderEstimate absent() { return {State::absent, 0.0}; }
    static OrderEstimate indeterminate() { return {State::indeterminate, 0.0}; }
    static OrderEstimate of(double order) { return {State::value, order}; }

    bool operator==(const OrderEstimate&) const = default;
};

/// Convergence order of the finite-difference operator at one point, from
/// steps h0, h0/2 (and h0/4).
///
/// With an analytic reference value the order is log2 of the ratio of the two
/// error norms |FD(h) - reference|. Without one, three levels are compared
/// pairwise: the unknown limit cancels in FD(h0)-FD(h0/2) and
/// FD(h0/2)-FD(h0/4), whose norm ratio again approaches 2^order. Either way
/// a norm below the noise floor (default kNoiseFloorFactor * max(1, |f(q)|))
/// makes the estimate indeterminate, as happens whenever the stencil is exact.
OrderEstimate estimate_convergence_order(
    const FunctionSpec& f, OperatorKind op, const Hypercomplex& q,
    double h0 = kDefaultConvergenceStep,
    const std::optional<std::vector<Hypercomplex>>& reference = std::nullopt,
    std::optional<double> noise_floor = std::nullopt);

enum class Verdict { regular, not_regular, not_applicable };

const char* verdict_name(Verdict v);
std::optional<Verdict> verdict_from_name(const std::string& name);

struct OperatorReport {
    OperatorKind op;
    Verdict verdict;
    std::optional<ResidualStats> stats;
    std::optional<double> tolerance;
    OrderEstimate order;

    bool operator==(const OperatorReport&) const = default;
};

struct ClassifyConfig {
    double h = kDefaultStep;
    /// Fixed verdict tolerance for every operator; automatic when absent.
    std::optional<double> tolerance;
    GridSpec grid;
    double convergence_h0 = kDefaultConvergenceStep;

    bool operator==(const ClassifyConfig&) const = default;
};

double auto_tolerance(double h, double function_scale);

struct RegularityReport {
    FunctionSpec function;
    ClassifyConfig config;
    /// max |f| over the grid (reported raw; tolerances floor it at 1).
    double function_scale = 0.0;
    std::int64_t point_count = 0;
    std::vector<OperatorReport> operators;

    bool operator==(const RegularityReport&) const = default;
};

/// The conditions a classification evaluates, in report order. The probe has
/// no pass/fail semantics (it always reports not_applicable with stats), and
/// the derivative-valued local operator is not a regularity condition at all,
/// so it is absent here.
inline constexpr OperatorKind kClassifyOperators[] = {
    OperatorKind::holomorphy_trio,      OperatorKind::global_left,
    OperatorKind::crf,                  OperatorKind::local_conj_radial,
    OperatorKind::local_conj_coordinate, OperatorKind::third_order_probe,
};

/// Runs every condition in kClassifyOperators over the grid and assembles the
/// full report. Plane-restricted functions get an automatic plane grid
/// (t in [0.5, 2]) when the config does not supply one.
RegularityReport classify(const FunctionSpec& f, ClassifyConfig config);

}  // namespace hyperan
