#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hyperan/errors.hpp"

namespace hyperan {

inline constexpr int kQuaternionDim = 4;
inline constexpr int kOctonionDim = 8;
inline constexpr int kMaxDim = 8;

/// Default proximity threshold below which the unit imaginary direction of a
/// point is treated as undefined (the local complex plane degenerates there).
inline constexpr double kUnitImaginaryEps = 1e-9;

bool valid_dim(int dim);

class ImaginaryDirection;

/// A quaternion (dim 4) or octonion (dim 8) with double components.
///
/// Values are immutable after construction; all operations return new values.
/// Octonion products use the Cayley-Dickson doubling of the quaternions with
/// the convention (a,b)(c,d) = (ac - conj(d) b, da + b conj(c)).
class Hypercomplex {
public:
    explicit Hypercomplex(int dim);

    /// Builds an element from 4 or 8 components; the count fixes the dimension.
    static Hypercomplex from_components(std::span<const double> components);
    static Hypercomplex zero(int dim) { return Hypercomplex(dim); }
    static Hypercomplex one(int dim) { return real(dim, 1.0); }
    static Hypercomplex real(int dim, double value);
    /// The basis element e_axis (axis 0 is the real unit).
    static Hypercomplex unit(int dim, int axis);

    int dim() const { return dim_; }
    double operator[](int i) const { return components_[static_cast<std::size_t>(i)]; }
    std::span<const double> components() const {
        return {components_.data(), static_cast<std::size_t>(dim_)};
    }

    double real_part() const { return components_[0]; }
    Hypercomplex imaginary_part() const;
    /// Euclidean norm of the imaginary part, |x⃗|.
    double imaginary_norm() const;

    Hypercomplex conjugate() const;
    double norm_sq() const;
    double norm() const;
    /// conj(a)/norm_sq(a). Throws SingularityError for the zero element.
    Hypercomplex inverse() const;

    Hypercomplex operator-() const;
    Hypercomplex operator+(const Hypercomplex& rhs) const;
    Hypercomplex operator-(const Hypercomplex& rhs) const;
    Hypercomplex operator*(const Hypercomplex& rhs) const;
    Hypercomplex operator*(double scalar) const;
    Hypercomplex operator/(double scalar) const;

    bool operator==(const Hypercomplex& rhs) const = default;

    std::string to_string() const;

private:
    int dim_;
    std::array<double, kMaxDim> components_{};  // entries at [dim, 8) stay zero
};

inline Hypercomplex operator*(double scalar, const Hypercomplex& value) { return value * scalar; }

Hypercomplex commutator(const Hypercomplex& a, const Hypercomplex& b);
Hypercomplex associator(const Hypercomplex& a, const Hypercomplex& b, const Hypercomplex& c);

/// Unit vector along the imaginary part of a point; defines, together with the
/// real axis, the unique complex plane through that point.
class ImaginaryDirection {
public:
    /// dim-1 components. Rejects vectors further than `unit_tolerance` from
    /// unit length, then renormalizes exactly.
    static ImaginaryDirection from_components(std::span<const double> components,
                                              double unit_tolerance = 1e-9);
    /// Direction of the single imaginary axis `axis` (1 <= axis < dim).
    static ImaginaryDirection canonical(int dim, int axis);

    int dim() const { return dim_; }
    double operator[](int i) const { return components_[static_cast<std::size_t>(i)]; }
    std::span<const double> components() const {
        return {components_.data(), static_cast<std::size_t>(dim_ - 1)};
    }

    /// The direction as a pure-imaginary element of the algebra.
    Hypercomplex as_element() const;

    bool operator==(const ImaginaryDirection& rhs) const = default;

private:
    ImaginaryDirection(int dim, std::array<double, kMaxDim - 1> components)
        : dim_(dim), components_(components) {}

    int dim_;
    std::array<double, kMaxDim - 1> components_{};
};

/// Extracts the unit imaginary direction of `a`. Throws RealAxisError when the
/// imaginary part is shorter than `eps_axis`: the plane is not unique there.
ImaginaryDirection unit_imaginary(const Hypercomplex& a, double eps_axis = kUnitImaginaryEps);

/// Signed basis product: e_row * e_col = sign * e_index.
struct BasisEntry {
    int sign;   // -1 or +1
    int index;  // 0 .. dim-1
    bool operator==(const BasisEntry&) const = default;
};

/// Full multiplication table of the basis elements of one algebra.
class BasisTable {
public:
    explicit BasisTable(int dim);

    int dim() const { return dim_; }
    BasisEntry entry(int row, int col) const;

    /// Cell text for table dumps: sign then 0-based index, e.g. "+3" or "-0".
    std::string cell_string(int row, int col) const;

private:
    int dim_;
    std::array<std::array<BasisEntry, kMaxDim>, kMaxDim> entries_{};
};

BasisTable basis_table(int dim);

}  // namespace hyperan
