#include "hyperan/algebra.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace hyperan {

namespace {

using Quat = std::array<double, 4>;

Quat quat_conj(const Quat& a) { return {a[0], -a[1], -a[2], -a[3]}; }

// i*j = k, j*k = i, k*i = j, anticommuting imaginary units.
Quat quat_mul(const Quat& a, const Quat& b) {
    return {
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    };
}

}  // namespace

bool valid_dim(int dim) { return dim == kQuaternionDim || dim == kOctonionDim; }

Hypercomplex::Hypercomplex(int dim) : dim_(dim) {
    if (!valid_dim(dim)) {
        throw DimensionError("algebra dimension must be 4 or 8, got " + std::to_string(dim));
    }
}

Hypercomplex Hypercomplex::from_components(std::span<const double> components) {
    Hypercomplex result(static_cast<int>(components.size()));
    for (std::size_t i = 0; i < components.size(); ++i) {
        result.components_[i] = components[i];
    }
    return result;
}

Hypercomplex Hypercomplex::real(int dim, double value) {
    Hypercomplex result(dim);
    result.components_[0] = value;
    return result;
}

Hypercomplex Hypercomplex::unit(int dim, int axis) {
    Hypercomplex result(dim);
    if (axis < 0 || axis >= dim) {
        throw DimensionError("basis axis " + std::to_string(axis) + " out of range for dim " +
                             std::to_string(dim));
    }
    result.components_[static_cast<std::size_t>(axis)] = 1.0;
    return result;
}

Hypercomplex Hypercomplex::imaginary_part() const {
    Hypercomplex result(dim_);
    result.components_ = components_;
    result.components_[0] = 0.0;
    return result;
}

double Hypercomplex::imaginary_norm() const {
    double sum = 0.0;
    for (int i = 1; i < dim_; ++i) {
        sum += components_[static_cast<std::size_t>(i)] * components_[static_cast<std::size_t>(i)];
    }
    return std::sqrt(sum);
}

Hypercomplex Hypercomplex::conjugate() const {
    Hypercomplex result(dim_);
    result.components_[0] = components_[0];
    for (int i = 1; i < dim_; ++i) {
        result.components_[static_cast<std::size_t>(i)] = -components_[static_cast<std::size_t>(i)];
    }
    return result;
}

double Hypercomplex::norm_sq() const {
    double sum = 0.0;
    for (int i = 0; i < dim_; ++i) {
        sum += components_[static_cast<std::size_t>(i)] * components_[static_cast<std::size_t>(i)];
    }
    return sum;
}

double Hypercomplex::norm() const { return std::sqrt(norm_sq()); }

Hypercomplex Hypercomplex::inverse() const {
    const double n2 = norm_sq();
    if (n2 == 0.0) {
        throw SingularityError("inverse of the zero element");
    }
    return conjugate() / n2;
}

Hypercomplex Hypercomplex::operator-() const {
    Hypercomplex result(dim_);
    for (int i = 0; i < dim_; ++i) {
        result.components_[static_cast<std::size_t>(i)] = -components_[static_cast<std::size_t>(i)];
    }
    return result;
}

Hypercomplex Hypercomplex::operator+(const Hypercomplex& rhs) const {
    if (dim_ != rhs.dim_) {
        throw DimensionError("dimension mismatch in addition");
    }
    Hypercomplex result(dim_);
    for (int i = 0; i < dim_; ++i) {
        result.components_[static_cast<std::size_t>(i)] =
            components_[static_cast<std::size_t>(i)] + rhs.components_[static_cast<std::size_t>(i)];
    }
    return result;
}

Hypercomplex Hypercomplex::operator-(const Hypercomplex& rhs) const {
    if (dim_ != rhs.dim_) {
        throw DimensionError("dimension mismatch in subtraction");
    }
    Hypercomplex result(dim_);
    for (int i = 0; i < dim_; ++i) {
        result.components_[static_cast<std::size_t>(i)] =
            components_[static_cast<std::size_t>(i)] - rhs.components_[static_cast<std::size_t>(i)];
    }
    return result;
}

Hypercomplex Hypercomplex::operator*(const Hypercomplex& rhs) const {
    if (dim_ != rhs.dim_) {
        throw DimensionError("dimension mismatch in multiplication");
    }
    Hypercomplex result(dim_);
    if (dim_ == kQuaternionDim) {
        const Quat a{components_[0], components_[1], components_[2], components_[3]};
        const Quat b{rhs.components_[0], rhs.components_[1], rhs.components_[2], rhs.components_[3]};
        const Quat p = quat_mul(a, b);
        for (std::size_t i = 0; i < 4; ++i) {
            result.components_[i] = p[i];
        }
        return result;
    }
    // Octonion (p, r)(s, t) = (ps - conj(t) r, tp + r conj(s)).
    const Quat p{components_[0], components_[1], components_[2], components_[3]};
    const Quat r{components_[4], components_[5], components_[6], components_[7]};
    const Quat s{rhs.components_[0], rhs.components_[1], rhs.components_[2], rhs.components_[3]};
    const Quat t{rhs.components_[4], rhs.components_[5], rhs.components_[6], rhs.components_[7]};
    const Quat ps = quat_mul(p, s);
    const Quat tbar_r = quat_mul(quat_conj(t), r);
    const Quat tp = quat_mul(t, p);
    const Quat r_sbar = quat_mul(r, quat_conj(s));
    for (std::size_t i = 0; i < 4; ++i) {
        result.components_[i] = ps[i] - tbar_r[i];
        result.components_[i + 4] = tp[i] + r_sbar[i];
    }
    return result;
}

Hypercomplex Hypercomplex::operator*(double scalar) const {
    Hypercomplex result(dim_);
    for (int i = 0; i < dim_; ++i) {
        result.components_[static_cast<std::size_t>(i)] =
            components_[static_cast<std::size_t>(i)] * scalar;
    }
    return result;
}

Hypercomplex Hypercomplex::operator/(double scalar) const { return *this * (1.0 / scalar); }

std::string Hypercomplex::to_string() const {
    std::ostringstream out;
    out << "[";
    for (int i = 0; i < dim_; ++i) {
        if (i > 0) {
            out << ", ";
        }
        char buffer[40];
        std::snprintf(buffer, sizeof(buffer), "%.17g", components_[static_cast<std::size_t>(i)]);
        out << buffer;
    }
    out << "]";
    return out.str();
}

Hypercomplex commutator(const Hypercomplex& a, const Hypercomplex& b) { return a * b - b * a; }

Hypercomplex associator(const Hypercomplex& a, const Hypercomplex& b, const Hypercomplex& c) {
    return (a * b) * c - a * (b * c);
}

ImaginaryDirection ImaginaryDirection::from_components(std::span<const double> components,
                                                       double unit_tolerance) {
    const int dim = static_cast<int>(components.size()) + 1;
    if (!valid_dim(dim)) {
        throw DimensionError("imaginary direction needs 3 or 7 components, got " +
                             std::to_string(components.size()));
    }
    double sum = 0.0;
    for (double c : components) {
        sum += c * c;
    }
    const double length = std::sqrt(sum);
    if (std::abs(length - 1.0) > unit_tolerance) {
        throw Error("imaginary direction is not unit length (|v| = " + std::to_string(length) +
                    ")");
    }
    std::array<double, kMaxDim - 1> normalized{};
    for (std::size_t i = 0; i < components.size(); ++i) {
        normalized[i] = components[i] / length;
    }
    return ImaginaryDirection(dim, normalized);
}

ImaginaryDirection ImaginaryDirection::canonical(int dim, int axis) {
    if (!valid_dim(dim) || axis < 1 || axis >= dim) {
        throw DimensionError("canonical axis " + std::to_string(axis) + " invalid for dim " +
                             std::to_string(dim));
    }
    std::array<double, kMaxDim - 1> components{};
    components[static_cast<std::size_t>(axis - 1)] = 1.0;
    return ImaginaryDirection(dim, components);
}

Hypercomplex ImaginaryDirection::as_element() const {
    Hypercomplex result(dim_);
    std::array<double, kMaxDim> full{};
    for (int i = 1; i < dim_; ++i) {
        full[static_cast<std::size_t>(i)] = components_[static_cast<std::size_t>(i - 1)];
    }
    return Hypercomplex::from_components({full.data(), static_cast<std::size_t>(dim_)});
}

ImaginaryDirection unit_imaginary(const Hypercomplex& a, double eps_axis) {
    const double length = a.imaginary_norm();
    if (length < eps_axis) {
        throw RealAxisError("point " + a.to_string() + " lies within " + std::to_string(eps_axis) +
                            " of the real axis; its complex plane is not unique");
    }
    std::array<double, kMaxDim - 1> components{};
    for (int i = 1; i < a.dim(); ++i) {
        components[static_cast<std::size_t>(i - 1)] = a[i] / length;
    }
    // Already normalized; keep a loose tolerance for the constructor check.
    return ImaginaryDirection::from_components(
        {components.data(), static_cast<std::size_t>(a.dim() - 1)}, 1e-9);
}

BasisTable::BasisTable(int dim) : dim_(dim) {
    if (!valid_dim(dim)) {
        throw DimensionError("basis table dimension must be 4 or 8, got " + std::to_string(dim));
    }
    for (int row = 0; row < dim; ++row) {
        for (int col = 0; col < dim; ++col) {
            const Hypercomplex product = Hypercomplex::unit(dim, row) * Hypercomplex::unit(dim, col);
            BasisEntry entry{0, -1};
            for (int i = 0; i < dim; ++i) {
                const double c = product[i];
                if (c == 0.0) {
                    continue;
                }
                if (entry.sign != 0 || (c != 1.0 && c != -1.0)) {
                    throw Error("basis product is not a signed basis element");
                }
                entry = {c > 0 ? 1 : -1, i};
            }
            entries_[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] = entry;
        }
    }
}

BasisEntry BasisTable::entry(int row, int col) const {
    if (row < 0 || row >= dim_ || col < 0 || col >= dim_) {
        throw DimensionError("basis table index out of range");
    }
    return entries_[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
}

std::string BasisTable::cell_string(int row, int col) const {
    const BasisEntry e = entry(row, col);
    return (e.sign > 0 ? "+" : "-") + std::to_string(e.index);
}

BasisTable basis_table(int dim) { return BasisTable(dim); }

}  // namespace hyperan
