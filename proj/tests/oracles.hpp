#pragma once

// Analytic reference values for the finite-difference operators, computed
// against right polynomials by a route the library does not share: explicit
// partial derivatives from the product rule, summed term by term.

#include <array>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include "hyperan/classifier.hpp"

namespace hyperan::oracles {

inline Hypercomplex element(std::initializer_list<double> components) {
    const std::vector<double> v(components);
    return Hypercomplex::from_components(v);
}

inline Hypercomplex seeded_point(std::uint64_t seed, int dim, double min_imag = 0.0,
                                 double bound = 1.0) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    while (true) {
        std::array<double, kMaxDim> comps{};
        for (int a = 0; a < dim; ++a) {
            comps[static_cast<std::size_t>(a)] = bound * (2.0 * uniform_unit(rng()) - 1.0);
        }
        const auto q = Hypercomplex::from_components({comps.data(), static_cast<std::size_t>(dim)});
        if (q.imaginary_norm() >= min_imag) {
            return q;
        }
    }
}

/// q^n with the same right-bracketed association the evaluator uses.
inline Hypercomplex power(const Hypercomplex& q, int n) {
    auto acc = Hypercomplex::one(q.dim());
    for (int i = 0; i < n; ++i) {
        acc = q * acc;
    }
    return acc;
}

/// d/dx_axis of sum_n q^n c_n at q, via the product rule:
/// sum_n [sum_{r+s=n-1} q^r e_axis q^s] c_n. The bracket lives in the
/// subalgebra generated by q and e_axis, which is associative even for
/// octonions, so the term is well defined.
inline Hypercomplex exact_partial(const RightPolynomial& f, const Hypercomplex& q, int axis) {
    const int dim = f.dim();
    const auto e = Hypercomplex::unit(dim, axis);
    auto total = Hypercomplex::zero(dim);
    const auto& coeffs = f.coeffs();
    for (std::size_t n = 1; n < coeffs.size(); ++n) {
        auto bracket = Hypercomplex::zero(dim);
        for (std::size_t r = 0; r < n; ++r) {
            bracket = bracket +
                      (power(q, static_cast<int>(r)) * e) * power(q, static_cast<int>(n - 1 - r));
        }
        total = total + bracket * coeffs[n];
    }
    return total;
}

/// Analytic value of each operator on a right polynomial, mirroring the
/// left-multiplication structure of the finite-difference forms.
inline std::vector<Hypercomplex> exact_operator(const RightPolynomial& f, OperatorKind op,
                                                const Hypercomplex& q) {
    const int dim = f.dim();
    std::vector<Hypercomplex> partials;
    partials.reserve(static_cast<std::size_t>(dim));
    for (int a = 0; a < dim; ++a) {
        partials.push_back(exact_partial(f, q, a));
    }
    switch (op) {
        case OperatorKind::holomorphy_trio: {
            std::vector<Hypercomplex> out;
            for (int m = 1; m <= 3; ++m) {
                out.push_back(partials[0] + Hypercomplex::unit(dim, m) * partials[m]);
            }
            return out;
        }
        case OperatorKind::global_left: {
            auto sum = Hypercomplex::zero(dim);
            for (int m = 1; m <= 3; ++m) {
                sum = sum + Hypercomplex::unit(dim, m) * partials[m];
            }
            return {(partials[0] - sum / 3.0) * 0.5};
        }
        case OperatorKind::crf: {
            auto sum = partials[0];
            for (int m = 1; m < dim; ++m) {
                sum = sum + Hypercomplex::unit(dim, m) * partials[m];
            }
            return {sum};
        }
        case OperatorKind::local_conj_radial: {
            const auto iota = unit_imaginary(q).as_element();
            auto ray = Hypercomplex::zero(dim);
            for (int m = 1; m < dim; ++m) {
                ray = ray + partials[m] * iota[m];
            }
            return {(partials[0] + iota * ray) * 0.5};
        }
        case OperatorKind::local_conj_coordinate: {
            auto weighted = Hypercomplex::zero(dim);
            for (int m = 1; m < dim; ++m) {
                weighted = weighted + partials[m] * q[m];
            }
            const auto x_vec = q.imaginary_part();
            return {(partials[0] + (x_vec * weighted) / x_vec.norm_sq()) * 0.5};
        }
        case OperatorKind::local_derivative: {
            const auto iota = unit_imaginary(q).as_element();
            auto ray = Hypercomplex::zero(dim);
            for (int m = 1; m < dim; ++m) {
                ray = ray + partials[m] * iota[m];
            }
            return {(partials[0] - iota * ray) * 0.5};
        }
        case OperatorKind::third_order_probe:
            break;
    }
    throw Error("exact_operator: no analytic form for this operator");
}

}  // namespace hyperan::oracles
