#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hyperan/algebra.hpp"

namespace hyperan {

/// Polynomial in one hypercomplex variable with right-acting coefficients,
/// f(q) = sum_n q^n c_n. Powers of q are unambiguous for octonions too
/// (power associativity), so evaluation uses right-bracketed Horner form.
class RightPolynomial {
public:
    RightPolynomial(int dim, std::vector<Hypercomplex> coeffs);

    int dim() const { return dim_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Hypercomplex>& coeffs() const { return coeffs_; }

    Hypercomplex evaluate(const Hypercomplex& q) const;

    /// Exact local derivative, sum_n n q^(n-1) c_n.
    RightPolynomial formal_local_derivative() const;

    /// The polynomial q * f(q), i.e. coefficients shifted up one power.
    RightPolynomial premultiplied_by_variable() const;

    RightPolynomial scaled(double factor) const;

    bool operator==(const RightPolynomial&) const = default;

private:
    int dim_;
    std::vector<Hypercomplex> coeffs_;
};

/// Deterministic test-corpus polynomial: components uniform in
/// [-coeff_bound, coeff_bound], reproducible for a fixed seed.
RightPolynomial random_right_poly(std::uint64_t seed, int dim, int degree, double coeff_bound);

/// Polynomial in the complex coordinate of one fixed plane (1, iota). Its
/// values on the plane agree with the right polynomial with the same
/// coefficients, since the plane coordinate of q is q itself there.
struct PlanePolynomial {
    ImaginaryDirection iota;
    std::vector<Hypercomplex> coeffs;

    int dim() const { return iota.dim(); }
    bool operator==(const PlanePolynomial&) const = default;
};

/// Complex Taylor series in z = x0 + e_axis * x_axis, embedded in the algebra.
/// Depends on the two plane coordinates only; coefficients live in the same
/// plane as the variable.
struct CanonicalSeries {
    int dim;
    int axis;  // 1, 2 or 3: the imaginary unit of the canonical plane
    std::vector<std::complex<double>> coeffs;

    bool operator==(const CanonicalSeries&) const = default;
};

enum class BuiltinFunction {
    conj_q,
    identity,
    constant,
    fueter_kernel,  // conj(q) / norm_sq(q)^2
    exp_canonical,  // complex exponential in the first canonical plane
};

const char* builtin_name(BuiltinFunction name);
std::optional<BuiltinFunction> builtin_from_name(const std::string& name);

struct BuiltinSpec {
    int dim;
    BuiltinFunction name;

    bool operator==(const BuiltinSpec&) const = default;
};

/// Declarative description of a function of one hypercomplex variable.
class FunctionSpec {
public:
    enum class Kind { right_poly, plane_poly, canonical, builtin };

    static FunctionSpec make_right_poly(RightPolynomial poly);
    static FunctionSpec make_plane_poly(PlanePolynomial poly);
    static FunctionSpec make_canonical(CanonicalSeries series);
    static FunctionSpec make_builtin(BuiltinSpec builtin);

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }

    const RightPolynomial& right_poly() const { return std::get<RightPolynomial>(payload_); }
    const PlanePolynomial& plane_poly() const { return std::get<PlanePolynomial>(payload_); }
    const CanonicalSeries& canonical() const { return std::get<CanonicalSeries>(payload_); }
    const BuiltinSpec& builtin() const { return std::get<BuiltinSpec>(payload_); }

    /// True for functions defined through one complex plane (canonical series,
    /// plane polynomials, the canonical exponential); classification samples
    /// those on their plane.
    bool plane_restricted() const;
    /// The plane direction of a plane-restricted spec.
    ImaginaryDirection plane_direction() const;

    /// Evaluates the function. Plane polynomials require q on their plane
    /// (within kPlaneMembershipTol) and throw PlaneMembershipError otherwise.
    Hypercomplex evaluate(const Hypercomplex& q) const;

    /// Evaluation used by finite-difference stencils: identical to evaluate()
    /// except that plane polynomials are continued off their plane as the
    /// polynomial in q with the same coefficients (the coordinate ζ of an
    /// on-plane point is the point itself, and stencil legs must be allowed
    /// to leave the plane).
    Hypercomplex evaluate_extended(const Hypercomplex& q) const;

    bool operator==(const FunctionSpec&) const = default;

private:
    using Payload = std::variant<RightPolynomial, PlanePolynomial, CanonicalSeries, BuiltinSpec>;

    FunctionSpec(Kind kind, int dim, Payload payload)
        : kind_(kind), dim_(dim), payload_(std::move(payload)) {}

    Kind kind_;
    int dim_;
    Payload payload_;
};

inline constexpr double kPlaneMembershipTol = 1e-9;

/// Uniform double in [0, 1) drawn from a raw 64-bit generator output; used
/// instead of std::uniform_real_distribution so streams are identical across
/// standard library implementations.
double uniform_unit(std::uint64_t raw);

}  // namespace hyperan
