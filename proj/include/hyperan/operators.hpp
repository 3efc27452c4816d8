#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hyperan/algebra.hpp"
#include "hyperan/function.hpp"

namespace hyperan {

/// The differential conditions the library can apply. All of them act from
/// the left and are built from central second-order differences.
///
/// Normalization: crf carries no 1/2 factor, while local_conj_coordinate
/// includes the 1/2 that its usual display drops, so the two local-conjugate
/// forms return identical values. Rescaling never moves a zero set.
enum class OperatorKind {
    holomorphy_trio,       // r_m = d0 f + e_m dm f, m = 1..3
    global_left,           // (d0 f - (e1 d1 f + e2 d2 f + e3 d3 f)/3) / 2
    crf,                   // d0 f + e1 d1 f + e2 d2 f + e3 d3 f
    local_conj_radial,     // (d0 f + iota * D_ray f) / 2
    local_conj_coordinate, // (d0 f + (x_vec/|x_vec|^2) * sum_m x_m dm f) / 2
    local_derivative,      // (d0 f - iota * D_ray f) / 2
    third_order_probe,     // crf form applied to the 4D Laplacian of f
};

inline constexpr OperatorKind kAllOperators[] = {
    OperatorKind::holomorphy_trio,      OperatorKind::global_left,
    OperatorKind::crf,                  OperatorKind::local_conj_radial,
    OperatorKind::local_conj_coordinate, OperatorKind::local_derivative,
    OperatorKind::third_order_probe,
};

const char* operator_name(OperatorKind op);
std::optional<OperatorKind> operator_from_name(const std::string& name);

/// The trio, global-left, crf and third-order operators are quaternion-only;
/// the local operators work for both dims.
bool operator_supports_dim(OperatorKind op, int dim);

/// True for the operators built around the point's own imaginary direction,
/// which is undefined on the real axis.
bool operator_requires_off_axis(OperatorKind op);

/// Default central-difference step.
inline constexpr double kDefaultStep = 1e-4;

/// Local operators refuse points with |imaginary part| < kOperatorAxisEps + h
/// so the stencil cannot straddle the real axis.
inline constexpr double kOperatorAxisEps = 1e-3;

/// Central difference (f(q + h e_axis) - f(q - h e_axis)) / 2h.
Hypercomplex partial_fd(const FunctionSpec& f, const Hypercomplex& q, int axis, double h);

/// Central difference of f along an arbitrary direction held fixed across the
/// stencil.
Hypercomplex directional_fd(const FunctionSpec& f, const Hypercomplex& q,
                            const Hypercomplex& direction, double h);

struct TrioResiduals {
    Hypercomplex r1;
    Hypercomplex r2;
    Hypercomplex r3;

    double max_norm() const;
};

TrioResiduals apply_holomorphy_trio(const FunctionSpec& f, const Hypercomplex& q,
                                    double h = kDefaultStep);
Hypercomplex apply_global_left(const FunctionSpec& f, const Hypercomplex& q,
                               double h = kDefaultStep);
Hypercomplex apply_crf(const FunctionSpec& f, const Hypercomplex& q, double h = kDefaultStep);
Hypercomplex apply_local_conj_radial(const FunctionSpec& f, const Hypercomplex& q,
                                     double h = kDefaultStep);
Hypercomplex apply_local_conj_coordinate(const FunctionSpec& f, const Hypercomplex& q,
                                         double h = kDefaultStep);
Hypercomplex apply_local_derivative(const FunctionSpec& f, const Hypercomplex& q,
                                    double h = kDefaultStep);
Hypercomplex apply_third_order_probe(const FunctionSpec& f, const Hypercomplex& q,
                                     double h = kDefaultStep);

/// Applies `op` and returns its value(s): three entries for the trio, one for
/// every other operator.
std::vector<Hypercomplex> apply_operator(const FunctionSpec& f, OperatorKind op,
                                         const Hypercomplex& q, double h = kDefaultStep);

/// Residual magnitude of an operator output: the largest norm among entries.
double residual_norm(const std::vector<Hypercomplex>& values);

/// Operator output flattened to a plain component vector (3*dim entries for
/// the trio, dim otherwise); used by convergence-order estimation.
std::vector<double> operator_value_vector(const FunctionSpec& f, OperatorKind op,
                                          const Hypercomplex& q, double h = kDefaultStep);

}  // namespace hyperan
