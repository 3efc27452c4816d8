#include "hyperan/function.hpp"

#include <cmath>
#include <random>

#include "hyperan/errors.hpp"

namespace hyperan {

namespace {

void check_dim(int dim, const char* what) {
    if (dim != kQuaternionDim && dim != kOctonionDim) {
        throw DimensionError(std::string(what) + ": dim must be 4 or 8, got " +
                             std::to_string(dim));
    }
}

}  // namespace

RightPolynomial::RightPolynomial(int dim, std::vector<Hypercomplex> coeffs)
    : dim_(dim), coeffs_(std::move(coeffs)) {
    check_dim(dim_, "RightPolynomial");
    if (coeffs_.empty()) {
        throw ConfigError("RightPolynomial: at least one coefficient required");
    }
    for (const auto& c : coeffs_) {
        if (c.dim() != dim_) {
            throw DimensionError("RightPolynomial: coefficient dim does not match");
        }
    }
}

Hypercomplex RightPolynomial::evaluate(const Hypercomplex& q) const {
    // Right-bracketed Horner: acc := c_n, then acc := q*acc + c_{n-1}, ...
    // Every product is q times something, so only the subalgebra generated by
    // q and one other element is exercised; that subalgebra is associative
    // (Artin), making the grouping immaterial for octonions as well.
    auto acc = coeffs_.back();
    for (auto it = coeffs_.rbegin() + 1; it != coeffs_.rend(); ++it) {
        acc = q * acc + *it;
    }
    return acc;
}

RightPolynomial RightPolynomial::formal_local_derivative() const {
    if (coeffs_.size() == 1) {
        return RightPolynomial(dim_, {Hypercomplex::zero(dim_)});
    }
    std::vector<Hypercomplex> out;
    out.reserve(coeffs_.size() - 1);
    for (std::size_t n = 1; n < coeffs_.size(); ++n) {
        out.push_back(coeffs_[n] * static_cast<double>(n));
    }
    return RightPolynomial(dim_, std::move(out));
}

RightPolynomial RightPolynomial::premultiplied_by_variable() const {
    std::vector<Hypercomplex> out;
    out.reserve(coeffs_.size() + 1);
    out.push_back(Hypercomplex::zero(dim_));
    out.insert(out.end(), coeffs_.begin(), coeffs_.end());
    return RightPolynomial(dim_, std::move(out));
}

RightPolynomial RightPolynomial::scaled(double factor) const {
    std::vector<Hypercomplex> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) {
        out.push_back(c * factor);
    }
    return RightPolynomial(dim_, std::move(out));
}

double uniform_unit(std::uint64_t raw) {
    return static_cast<double>(raw >> 11) * 0x1.0p-53;
}

RightPolynomial random_right_poly(std::uint64_t seed, int dim, int degree, double coeff_bound) {
    check_dim(dim, "random_right_poly");
    if (degree < 0) {
        throw ConfigError("random_right_poly: degree must be >= 0");
    }
    std::mt19937_64 gen(seed);
    std::vector<Hypercomplex> coeffs;
    coeffs.reserve(static_cast<std::size_t>(degree) + 1);
    for (int n = 0; n <= degree; ++n) {
        std::array<double, kMaxDim> comps{};
        for (int a = 0; a < dim; ++a) {
            comps[static_cast<std::size_t>(a)] = coeff_bound * (2.0 * uniform_unit(gen()) - 1.0);
        }
        coeffs.push_back(Hypercomplex::from_components(
            std::span<const double>(comps.data(), static_cast<std::size_t>(dim))));
    }
    return RightPolynomial(dim, std::move(coeffs));
}

const char* builtin_name(BuiltinFunction name) {
    switch (name) {
        case BuiltinFunction::conj_q: return "conj_q";
        case BuiltinFunction::identity: return "identity";
        case BuiltinFunction::constant: return "constant";
        case BuiltinFunction::fueter_kernel: return "fueter_kernel";
        case BuiltinFunction::exp_canonical: return "exp_canonical";
    }
    throw ConfigError("builtin_name: unknown builtin");
}

std::optional<BuiltinFunction> builtin_from_name(const std::string& name) {
    if (name == "conj_q") return BuiltinFunction::conj_q;
    if (name == "identity") return BuiltinFunction::identity;
    if (name == "constant") return BuiltinFunction::constant;
    if (name == "fueter_kernel") return BuiltinFunction::fueter_kernel;
    if (name == "exp_canonical") return BuiltinFunction::exp_canonical;
    return std::nullopt;
}

FunctionSpec FunctionSpec::make_right_poly(RightPolynomial poly) {
    int dim = poly.dim();
    return FunctionSpec(Kind::right_poly, dim, Payload(std::move(poly)));
}

FunctionSpec FunctionSpec::make_plane_poly(PlanePolynomial poly) {
    int dim = poly.dim();
    if (poly.coeffs.empty()) {
        throw ConfigError("plane_poly: at least one coefficient required");
    }
    for (const auto& c : poly.coeffs) {
        if (c.dim() != dim) {
            throw DimensionError("plane_poly: coefficient dim does not match iota");
        }
    }
    return FunctionSpec(Kind::plane_poly, dim, Payload(std::move(poly)));
}

FunctionSpec FunctionSpec::make_canonical(CanonicalSeries series) {
    check_dim(series.dim, "canonical");
    if (series.axis < 1 || series.axis >= series.dim) {
        throw ConfigError("canonical: axis must be in [1, dim)");
    }
    if (series.coeffs.empty()) {
        throw ConfigError("canonical: at least one coefficient required");
    }
    int dim = series.dim;
    return FunctionSpec(Kind::canonical, dim, Payload(std::move(series)));
}

FunctionSpec FunctionSpec::make_builtin(BuiltinSpec builtin) {
    check_dim(builtin.dim, "builtin");
    return FunctionSpec(Kind::builtin, builtin.dim, Payload(builtin));
}

bool FunctionSpec::plane_restricted() const {
    switch (kind_) {
        case Kind::right_poly:
            return false;
        case Kind::plane_poly:
        case Kind::canonical:
            return true;
        case Kind::builtin:
            return builtin().name == BuiltinFunction::exp_canonical;
    }
    return false;
}

ImaginaryDirection FunctionSpec::plane_direction() const {
    switch (kind_) {
        case Kind::plane_poly:
            return plane_poly().iota;
        case Kind::canonical:
            return ImaginaryDirection::canonical(dim_, canonical().axis);
        case Kind::builtin:
            if (builtin().name == BuiltinFunction::exp_canonical) {
                return ImaginaryDirection::canonical(dim_, 1);
            }
            break;
        default:
            break;
    }
    throw ConfigError("plane_direction: function is not plane-restricted");
}

namespace {

/// Distance of q from the plane spanned by 1 and iota.
double plane_distance(const Hypercomplex& q, const ImaginaryDirection& iota) {
    auto u = iota.as_element();
    double t = 0.0;
    for (int a = 1; a < q.dim(); ++a) {
        t += q[a] * u[a];
    }
    auto off = q - (Hypercomplex::real(q.dim(), q[0]) + u * t);
    return off.norm();
}

Hypercomplex evaluate_plane_poly_extended(const PlanePolynomial& poly, const Hypercomplex& q) {
    // On the plane the complex coordinate of q is q itself, so the polynomial
    // in the coordinate coincides with the polynomial in q. Using the latter
    // everywhere is the continuation applied when stencil legs step off the
    // plane.
    return RightPolynomial(poly.dim(), poly.coeffs).evaluate(q);
}

Hypercomplex evaluate_canonical(const CanonicalSeries& series, const Hypercomplex& q) {
    // Complex series in z = x0 + i x_axis, mapped back into the plane.
    std::complex<double> z(q[0], q[series.axis]);
    std::complex<double> acc = series.coeffs.back();
    for (auto it = series.coeffs.rbegin() + 1; it != series.coeffs.rend(); ++it) {
        acc = z * acc + *it;
    }
    auto iota = ImaginaryDirection::canonical(series.dim, series.axis);
    return Hypercomplex::real(series.dim, acc.real()) + iota.as_element() * acc.imag();
}

Hypercomplex evaluate_builtin(const BuiltinSpec& spec, const Hypercomplex& q) {
    switch (spec.name) {
        case BuiltinFunction::conj_q:
            return q.conjugate();
        case BuiltinFunction::identity:
            return q;
        case BuiltinFunction::constant:
            return Hypercomplex::one(spec.dim);
        case BuiltinFunction::fueter_kernel: {
            double n2 = q.norm_sq();
            if (n2 == 0.0) {
                throw SingularityError("fueter_kernel: evaluation at the origin");
            }
            return q.conjugate() * (1.0 / (n2 * n2));
        }
        case BuiltinFunction::exp_canonical: {
            // exp of the complex coordinate in the (1, e_1) plane.
            std::complex<double> z(q[0], q[1]);
            auto w = std::exp(z);
            auto out = Hypercomplex::real(spec.dim, w.real());
            return out + Hypercomplex::unit(spec.dim, 1) * w.imag();
        }
    }
    throw ConfigError("evaluate_builtin: unknown builtin");
}

}  // namespace

Hypercomplex FunctionSpec::evaluate(const Hypercomplex& q) const {
    if (q.dim() != dim_) {
        throw DimensionError("FunctionSpec::evaluate: point dim does not match function dim");
    }
    if (kind_ == Kind::plane_poly) {
        const auto& poly = plane_poly();
        if (plane_distance(q, poly.iota) > kPlaneMembershipTol) {
            throw PlaneMembershipError("plane_poly: point is off the function's plane");
        }
        return evaluate_plane_poly_extended(poly, q);
    }
    return evaluate_extended(q);
}

Hypercomplex FunctionSpec::evaluate_extended(const Hypercomplex& q) const {
    if (q.dim() != dim_) {
        throw DimensionError("FunctionSpec::evaluate: point dim does not match function dim");
    }
    switch (kind_) {
        case Kind::right_poly:
            return right_poly().evaluate(q);
        case Kind::plane_poly:
            return evaluate_plane_poly_extended(plane_poly(), q);
        case Kind::canonical:
            return evaluate_canonical(canonical(), q);
        case Kind::builtin:
            return evaluate_builtin(builtin(), q);
    }
    throw ConfigError("FunctionSpec::evaluate: unknown kind");
}

}  // namespace hyperan
