#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "hyperan/algebra.hpp"
#include "hyperan/errors.hpp"

using namespace hyperan;
using oracles::element;

namespace {

Hypercomplex random_element(std::mt19937_64& rng, int dim, double bound = 1.0) {
    std::array<double, kMaxDim> comps{};
    for (int a = 0; a < dim; ++a) {
        comps[static_cast<std::size_t>(a)] = bound * (2.0 * uniform_unit(rng()) - 1.0);
    }
    return Hypercomplex::from_components({comps.data(), static_cast<std::size_t>(dim)});
}

}  // namespace

TEST_CASE("quaternion unit products") {
    const auto i = Hypercomplex::unit(4, 1);
    const auto j = Hypercomplex::unit(4, 2);
    const auto k = Hypercomplex::unit(4, 3);
    CHECK(i * j == k);
    CHECK(j * k == i);
    CHECK(k * i == j);
    CHECK(j * i == -k);
    CHECK(i * i == -Hypercomplex::one(4));
    CHECK(j * j == -Hypercomplex::one(4));
    CHECK(k * k == -Hypercomplex::one(4));
}

TEST_CASE("quaternion product example") {
    const auto a = element({1, 1, 0, 0});
    const auto b = element({1, 0, 1, 0});
    CHECK(a * b == element({1, 1, 1, 1}));
    CHECK(b * a == element({1, 1, 1, -1}));
}

TEST_CASE("conjugation and norm") {
    const auto q = element({1, -2, 3, -4});
    CHECK(q.conjugate() == element({1, 2, -3, 4}));
    CHECK(q.norm_sq() == doctest::Approx(30.0));
    CHECK(q.real_part() == 1.0);
    CHECK(q.imaginary_part() == element({0, -2, 3, -4}));
    CHECK(q.imaginary_norm() == doctest::Approx(std::sqrt(29.0)));
    CHECK((q * q.conjugate() - Hypercomplex::real(4, q.norm_sq())).norm() < 1e-14);
}

TEST_CASE("inverse") {
    const auto q = element({1, 1, 1, 1});
    CHECK((q * q.inverse() - Hypercomplex::one(4)).norm() < 1e-15);
    CHECK((q.inverse() * q - Hypercomplex::one(4)).norm() < 1e-15);
    CHECK_THROWS_AS(Hypercomplex::zero(4).inverse(), SingularityError);

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const auto o = random_element(rng, 8) + Hypercomplex::one(8) * 2.0;
        CHECK((o * o.inverse() - Hypercomplex::one(8)).norm() < 1e-13);
    }
}

TEST_CASE("mixed dimensions are rejected") {
    CHECK_THROWS_AS(Hypercomplex::one(4) * Hypercomplex::one(8), DimensionError);
    CHECK_THROWS_AS(Hypercomplex::one(4) + Hypercomplex::one(8), DimensionError);
    CHECK_THROWS_AS(Hypercomplex(5), DimensionError);
    const std::vector<double> five(5, 0.0);
    CHECK_THROWS_AS(Hypercomplex::from_components(five), DimensionError);
}

TEST_CASE("octonion embedding of quaternion products") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const auto a4 = random_element(rng, 4);
        const auto b4 = random_element(rng, 4);
        std::array<double, 8> ea{};
        std::array<double, 8> eb{};
        for (int m = 0; m < 4; ++m) {
            ea[static_cast<std::size_t>(m)] = a4[m];
            eb[static_cast<std::size_t>(m)] = b4[m];
        }
        const auto a8 = Hypercomplex::from_components(ea);
        const auto b8 = Hypercomplex::from_components(eb);
        const auto p4 = a4 * b4;
        const auto p8 = a8 * b8;
        for (int m = 0; m < 4; ++m) {
            CHECK(p8[m] == doctest::Approx(p4[m]).epsilon(1e-14));
        }
        for (int m = 4; m < 8; ++m) {
            CHECK(p8[m] == 0.0);
        }
    }
}

TEST_CASE("quaternions associate, octonions only alternate") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = random_element(rng, 4);
        const auto b = random_element(rng, 4);
        const auto c = random_element(rng, 4);
        CHECK(associator(a, b, c).norm() < 1e-13);
    }
    const auto e1 = Hypercomplex::unit(8, 1);
    const auto e2 = Hypercomplex::unit(8, 2);
    const auto e4 = Hypercomplex::unit(8, 4);
    CHECK(associator(e1, e2, e4) == Hypercomplex::unit(8, 7) * 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = random_element(rng, 8);
        const auto b = random_element(rng, 8);
        CHECK(associator(a, a, b).norm() < 1e-12);
        CHECK(associator(a, b, b).norm() < 1e-12);
        CHECK(associator(a, b, a).norm() < 1e-12);
    }
}

TEST_CASE("norm is multiplicative") {
    std::mt19937_64 rng(17);
    for (int dim : {4, 8}) {
        for (int trial = 0; trial < 50; ++trial) {
            const auto a = random_element(rng, dim);
            const auto b = random_element(rng, dim);
            const double lhs = (a * b).norm();
            const double rhs = a.norm() * b.norm();
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, rhs));
        }
    }
}

TEST_CASE("commutator") {
    const auto i = Hypercomplex::unit(4, 1);
    const auto j = Hypercomplex::unit(4, 2);
    CHECK(commutator(i, j) == Hypercomplex::unit(4, 3) * 2.0);
    CHECK(commutator(i, i).norm() == 0.0);
}

TEST_CASE("unit imaginary direction") {
    const auto q = element({1, 1, 1, 1});
    const auto iota = unit_imaginary(q).as_element();
    const double s = 1.0 / std::sqrt(3.0);
    CHECK((iota - element({0, s, s, s})).norm() < 1e-15);
    CHECK(iota.norm() == doctest::Approx(1.0));
    CHECK((iota * iota + Hypercomplex::one(4)).norm() < 1e-15);

    CHECK_THROWS_AS(unit_imaginary(element({1, 1e-12, 0, 0})), RealAxisError);
    CHECK_THROWS_AS(unit_imaginary(Hypercomplex::real(4, 2.0)), RealAxisError);
}

TEST_CASE("imaginary direction validation") {
    const std::vector<double> not_unit{0.5, 0.0, 0.0};
    CHECK_THROWS_AS(ImaginaryDirection::from_components(not_unit), Error);
    const std::vector<double> wrong_len{1.0, 0.0};
    CHECK_THROWS_AS(ImaginaryDirection::from_components(wrong_len), DimensionError);
    const auto canonical = ImaginaryDirection::canonical(4, 2);
    CHECK(canonical.as_element() == Hypercomplex::unit(4, 2));
}

TEST_CASE("basis table") {
    const auto quat = basis_table(4);
    CHECK(quat.cell_string(0, 0) == "+0");
    CHECK(quat.cell_string(1, 1) == "-0");
    CHECK(quat.cell_string(1, 2) == "+3");
    CHECK(quat.cell_string(2, 1) == "-3");
    CHECK(quat.cell_string(3, 1) == "+2");

    const auto oct = basis_table(8);
    CHECK(oct.cell_string(1, 2) == "+3");
    for (int m = 1; m < 8; ++m) {
        CHECK(oct.cell_string(m, m) == "-0");
        CHECK(oct.cell_string(0, m) == "+" + std::to_string(m));
        CHECK(oct.cell_string(m, 0) == "+" + std::to_string(m));
    }
    // Antisymmetry off the diagonal for imaginary rows and columns.
    for (int row = 1; row < 8; ++row) {
        for (int col = 1; col < 8; ++col) {
            if (row == col) {
                continue;
            }
            const auto fwd = oct.entry(row, col);
            const auto rev = oct.entry(col, row);
            CHECK(fwd.index == rev.index);
            CHECK(fwd.sign == -rev.sign);
        }
    }
}

TEST_CASE("to_string format") {
    CHECK(element({1, 0, -2, 0}).to_string() == "[1, 0, -2, 0]");
}
