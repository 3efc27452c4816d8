#include "hyperan/operators.hpp"

#include <algorithm>
#include <cmath>

#include "hyperan/errors.hpp"

namespace hyperan {

const char* operator_name(OperatorKind op) {
    switch (op) {
        case OperatorKind::holomorphy_trio: return "holomorphy_trio";
        case OperatorKind::global_left: return "global_left";
        case OperatorKind::crf: return "crf";
        case OperatorKind::local_conj_radial: return "local_conj_radial";
        case OperatorKind::local_conj_coordinate: return "local_conj_coordinate";
        case OperatorKind::local_derivative: return "local_derivative";
        case OperatorKind::third_order_probe: return "third_order_probe";
    }
    throw ConfigError("operator_name: unknown operator");
}

std::optional<OperatorKind> operator_from_name(const std::string& name) {
    for (OperatorKind op : kAllOperators) {
        if (name == operator_name(op)) {
            return op;
        }
    }
    return std::nullopt;
}

bool operator_supports_dim(OperatorKind op, int dim) {
    switch (op) {
        case OperatorKind::holomorphy_trio:
        case OperatorKind::global_left:
        case OperatorKind::crf:
        case OperatorKind::third_order_probe:
            return dim == kQuaternionDim;
        case OperatorKind::local_conj_radial:
        case OperatorKind::local_conj_coordinate:
        case OperatorKind::local_derivative:
            return dim == kQuaternionDim || dim == kOctonionDim;
    }
    return false;
}

bool operator_requires_off_axis(OperatorKind op) {
    switch (op) {
        case OperatorKind::local_conj_radial:
        case OperatorKind::local_conj_coordinate:
        case OperatorKind::local_derivative:
            return true;
        default:
            return false;
    }
}

namespace {

void check_step(double h) {
    if (!(h > 0.0)) {
        throw ConfigError("finite-difference step must be positive");
    }
}

void check_op_point(OperatorKind op, const FunctionSpec& f, const Hypercomplex& q, double h) {
    if (f.dim() != q.dim()) {
        throw DimensionError("operator point dim does not match function dim");
    }
    if (!operator_supports_dim(op, f.dim())) {
        throw DimensionError(std::string(operator_name(op)) + " is unsupported for dim " +
                             std::to_string(f.dim()));
    }
    if (operator_requires_off_axis(op) && q.imaginary_norm() < kOperatorAxisEps + h) {
        throw RealAxisError(std::string(operator_name(op)) + ": point " + q.to_string() +
                            " is within " + std::to_string(kOperatorAxisEps + h) +
                            " of the real axis");
    }
}

Hypercomplex partial_unchecked(const FunctionSpec& f, const Hypercomplex& q, int axis, double h) {
    const auto step = Hypercomplex::unit(q.dim(), axis) * h;
    return (f.evaluate_extended(q + step) - f.evaluate_extended(q - step)) / (2.0 * h);
}

/// Second central difference along one axis, (f(q+he) - 2f(q) + f(q-he))/h^2.
Hypercomplex second_partial_fd(const FunctionSpec& f, const Hypercomplex& q, int axis, double h) {
    const auto step = Hypercomplex::unit(q.dim(), axis) * h;
    const auto center = f.evaluate_extended(q);
    return (f.evaluate_extended(q + step) - center * 2.0 + f.evaluate_extended(q - step)) /
           (h * h);
}

Hypercomplex laplacian_fd(const FunctionSpec& f, const Hypercomplex& q, double h) {
    auto sum = Hypercomplex::zero(q.dim());
    for (int axis = 0; axis < q.dim(); ++axis) {
        sum = sum + second_partial_fd(f, q, axis, h);
    }
    return sum;
}

}  // namespace

Hypercomplex partial_fd(const FunctionSpec& f, const Hypercomplex& q, int axis, double h) {
    check_step(h);
    if (f.dim() != q.dim()) {
        throw DimensionError("partial_fd: point dim does not match function dim");
    }
    if (axis < 0 || axis >= q.dim()) {
        throw DimensionError("partial_fd: axis out of range");
    }
    return partial_unchecked(f, q, axis, h);
}

Hypercomplex directional_fd(const FunctionSpec& f, const Hypercomplex& q,
                            const Hypercomplex& direction, double h) {
    check_step(h);
    if (f.dim() != q.dim() || direction.dim() != q.dim()) {
        throw DimensionError("directional_fd: dimension mismatch");
    }
    const auto step = direction * h;
    return (f.evaluate_extended(q + step) - f.evaluate_extended(q - step)) / (2.0 * h);
}

double TrioResiduals::max_norm() const {
    return std::max({r1.norm(), r2.norm(), r3.norm()});
}

TrioResiduals apply_holomorphy_trio(const FunctionSpec& f, const Hypercomplex& q, double h) {
    check_step(h);
    check_op_point(OperatorKind::holomorphy_trio, f, q, h);
    const auto d0 = partial_unchecked(f, q, 0, h);
    TrioResiduals out{d0, d0, d0};
    out.r1 = d0 + Hypercomplex::unit(4, 1) * partial_unchecked(f, q, 1, h);
    out.r2 = d0 + Hypercomplex::unit(4, 2) * partial_unchecked(f, q, 2, h);
    out.r3 = d0 + Hypercomplex::unit(4, 3) * partial_unchecked(f, q, 3, h);
    return out;
}

Hypercomplex apply_global_left(const FunctionSpec& f, const Hypercomplex& q, double h) {
    check_step(h);
    check_op_point(OperatorKind::global_left, f, q, h);
    auto sum = Hypercomplex::zero(4);
    for (int m = 1; m <= 3; ++m) {
        sum = sum + Hypercomplex::unit(4, m) * partial_unchecked(f, q, m, h);
    }
    return (partial_unchecked(f, q, 0, h) - sum / 3.0) * 0.5;
}

Hypercomplex apply_crf(const FunctionSpec& f, const Hypercomplex& q, double h) {
    check_step(h);
    check_op_point(OperatorKind::crf, f, q, h);
    auto sum = partial_unchecked(f, q, 0, h);
    for (int m = 1; m <= 3; ++m) {
        sum = sum + Hypercomplex::unit(4, m) * partial_unchecked(f, q, m, h);
    }
    return sum;
}

Hypercomplex apply_local_conj_radial(const FunctionSpec& f, const Hypercomplex& q, double h) {
    check_step(h);
    check_op_point(OperatorKind::local_conj_radial, f, q, h);
    const auto iota = unit_imaginary(q).as_element();
    const auto ray = directional_fd(f, q, iota, h);
    return (partial_unchecked(f, q, 0, h) + iota * ray) * 0.5;
}

Hypercomplex apply_local_conj_coordinate(const FunctionSpec& f, const Hypercomplex& q, double h) {
    check_step(h);
    check_op_point(OperatorKind::local_conj_coordinate, f, q, h);
    auto weighted = Hypercomplex::zero(q.dim());
    for (int m = 1; m < q.dim(); ++m) {
        if (q[m] != 0.0) {
            weighted = weighted + partial_unchecked(f, q, m, h) * q[m];
        }
    }
    const auto x_vec = q.imaginary_part();
    const double inv_len_sq = 1.0 / x_vec.norm_sq();
    return (partial_unchecked(f, q, 0, h) + (x_vec * weighted) * inv_len_sq) * 0.5;
}

Hypercomplex apply_local_derivative(const FunctionSpec& f, const Hypercomplex& q, double h) {
    check_step(h);
    check_op_point(OperatorKind::local_derivative, f, q, h);
    const auto iota = unit_imaginary(q).as_element();
    const auto ray = directional_fd(f, q, iota, h);
    return (partial_unchecked(f, q, 0, h) - iota * ray) * 0.5;
}

Hypercomplex apply_third_order_probe(const FunctionSpec& f, const Hypercomplex& q, double h) {
    check_step(h);
    check_op_point(OperatorKind::third_order_probe, f, q, h);
    // crf form applied to an inner Laplacian stage, every derivative a central
    // difference with the same step.
    auto lap_partial = [&](int axis) {
        const auto step = Hypercomplex::unit(q.dim(), axis) * h;
        return (laplacian_fd(f, q + step, h) - laplacian_fd(f, q - step, h)) / (2.0 * h);
    };
    auto sum = lap_partial(0);
    for (int m = 1; m <= 3; ++m) {
        sum = sum + Hypercomplex::unit(4, m) * lap_partial(m);
    }
    return sum;
}

std::vector<Hypercomplex> apply_operator(const FunctionSpec& f, OperatorKind op,
                                         const Hypercomplex& q, double h) {
    switch (op) {
        case OperatorKind::holomorphy_trio: {
            const auto trio = apply_holomorphy_trio(f, q, h);
            return {trio.r1, trio.r2, trio.r3};
        }
        case OperatorKind::global_left: return {apply_global_left(f, q, h)};
        case OperatorKind::crf: return {apply_crf(f, q, h)};
        case OperatorKind::local_conj_radial: return {apply_local_conj_radial(f, q, h)};
        case OperatorKind::local_conj_coordinate: return {apply_local_conj_coordinate(f, q, h)};
        case OperatorKind::local_derivative: return {apply_local_derivative(f, q, h)};
        case OperatorKind::third_order_probe: return {apply_third_order_probe(f, q, h)};
    }
    throw ConfigError("apply_operator: unknown operator");
}

double residual_norm(const std::vector<Hypercomplex>& values) {
    double best = 0.0;
    for (const auto& v : values) {
        best = std::max(best, v.norm());
    }
    return best;
}

std::vector<double> operator_value_vector(const FunctionSpec& f, OperatorKind op,
                                          const Hypercomplex& q, double h) {
    const auto values = apply_operator(f, op, q, h);
    std::vector<double> out;
    out.reserve(values.size() * static_cast<std::size_t>(f.dim()));
    for (const auto& v : values) {
        for (double c : v.components()) {
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace hyperan
