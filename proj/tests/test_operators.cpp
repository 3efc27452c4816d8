#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"

#include "hyperan/errors.hpp"
#include "hyperan/operators.hpp"

using namespace hyperan;
using oracles::element;
using oracles::exact_operator;
using oracles::seeded_point;

namespace {

FunctionSpec square_poly(int dim) {
    return FunctionSpec::make_right_poly(RightPolynomial(
        dim, {Hypercomplex::zero(dim), Hypercomplex::zero(dim), Hypercomplex::one(dim)}));
}

FunctionSpec builtin(int dim, BuiltinFunction name) {
    return FunctionSpec::make_builtin(BuiltinSpec{dim, name});
}

double flat_error(const std::vector<Hypercomplex>& a, const std::vector<Hypercomplex>& b) {
    REQUIRE(a.size() == b.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sum += (a[i] - b[i]).norm_sq();
    }
    return std::sqrt(sum);
}

}  // namespace

TEST_CASE("crf on the identity is the constant -2") {
    const auto f = builtin(4, BuiltinFunction::identity);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto q = seeded_point(seed, 4);
        const auto value = apply_crf(f, q);
        CHECK((value + Hypercomplex::real(4, 2.0)).norm() < 1e-10);
    }
}

TEST_CASE("crf on the square is -4 x0") {
    const auto f = square_poly(4);
    for (std::uint64_t seed = 20; seed < 30; ++seed) {
        const auto q = seeded_point(seed, 4);
        const auto value = apply_crf(f, q);
        CHECK((value - Hypercomplex::real(4, -4.0 * q[0])).norm() < 1e-9);
    }
    // At q = j the analytic value is 0: x0 = 0.
    const auto at_j = apply_crf(f, Hypercomplex::unit(4, 2));
    CHECK(at_j.norm() < 1e-10);
}

TEST_CASE("global left derivative of linear functions") {
    // f = c1 + q c2 has everywhere-constant derivative c2.
    const auto c1 = element({0.3, -0.4, 0.5, 0.6});
    const auto c2 = element({-0.2, 0.9, 0.1, -0.8});
    const auto f = FunctionSpec::make_right_poly(RightPolynomial(4, {c1, c2}));
    for (std::uint64_t seed = 40; seed < 50; ++seed) {
        const auto q = seeded_point(seed, 4);
        CHECK((apply_global_left(f, q) - c2).norm() < 1e-10);
    }
}

TEST_CASE("global left derivative of the conjugate vanishes") {
    const auto f = builtin(4, BuiltinFunction::conj_q);
    for (std::uint64_t seed = 60; seed < 70; ++seed) {
        const auto q = seeded_point(seed, 4);
        CHECK(apply_global_left(f, q).norm() < 1e-10);
    }
}

TEST_CASE("global left derivative of the square") {
    // Analytically (4q + 2 x0)/3; at q = i that is 4i/3.
    const auto f = square_poly(4);
    const auto at_i = apply_global_left(f, Hypercomplex::unit(4, 1));
    CHECK((at_i - Hypercomplex::unit(4, 1) * (4.0 / 3.0)).norm() < 1e-9);
    for (std::uint64_t seed = 80; seed < 90; ++seed) {
        const auto q = seeded_point(seed, 4);
        const auto expected = (q * 4.0 + Hypercomplex::real(4, 2.0 * q[0])) / 3.0;
        CHECK((apply_global_left(f, q) - expected).norm() < 1e-9);
    }
}

TEST_CASE("left multiplication discipline") {
    // f = q * j: the derivative is j, not a conjugated variant.
    const auto f = FunctionSpec::make_right_poly(
        RightPolynomial(4, {Hypercomplex::zero(4), Hypercomplex::unit(4, 2)}));
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
        const auto q = seeded_point(seed, 4);
        CHECK((apply_global_left(f, q) - Hypercomplex::unit(4, 2)).norm() < 1e-10);
    }
}

TEST_CASE("holomorphy trio on linear and quadratic functions") {
    const auto c0 = element({0.1, 0.2, -0.3, 0.4});
    const auto c1 = element({-0.7, 0.5, 0.2, -0.1});
    const auto linear = FunctionSpec::make_right_poly(RightPolynomial(4, {c0, c1}));
    for (std::uint64_t seed = 120; seed < 130; ++seed) {
        const auto trio = apply_holomorphy_trio(linear, seeded_point(seed, 4));
        CHECK(trio.max_norm() < 1e-10);
    }

    // r1 of the square is 2 x2 j + 2 x3 k; at q = j that is 2j.
    const auto f = square_poly(4);
    const auto at_j = apply_holomorphy_trio(f, Hypercomplex::unit(4, 2));
    CHECK((at_j.r1 - Hypercomplex::unit(4, 2) * 2.0).norm() < 1e-9);
    CHECK(at_j.r2.norm() < 1e-9);
    CHECK((at_j.r3 - Hypercomplex::unit(4, 2) * 2.0).norm() < 1e-9);

    for (std::uint64_t seed = 130; seed < 140; ++seed) {
        const auto q = seeded_point(seed, 4);
        const auto got = apply_holomorphy_trio(f, q);
        const auto e2 = Hypercomplex::unit(4, 2);
        const auto e3 = Hypercomplex::unit(4, 3);
        const auto r1 = e2 * (2.0 * q[2]) + e3 * (2.0 * q[3]);
        CHECK((got.r1 - r1).norm() < 1e-9);
    }
}

TEST_CASE("trio against the analytic oracle") {
    for (std::uint64_t seed = 140; seed < 152; ++seed) {
        const auto poly = random_right_poly(seed, 4, 3, 0.5);
        const auto f = FunctionSpec::make_right_poly(poly);
        const auto q = seeded_point(seed, 4);
        const auto got = apply_operator(f, OperatorKind::holomorphy_trio, q);
        const auto want = exact_operator(poly, OperatorKind::holomorphy_trio, q);
        CHECK(flat_error(got, want) < 1e-7);
    }
}

TEST_CASE("canonical series reduce the crf operator to the complex conjugate derivative") {
    // For a function of one canonical plane the quaternion operator collapses
    // to d/dx + e_axis d/dy, which is the embedded complex combination
    // 2 d/dzbar; the comparison below recomputes that with plain complex
    // arithmetic and the same step.
    const std::vector<std::complex<double>> coeffs{{0.4, -0.3}, {0.0, 1.0}, {0.5, 0.5}, {1.0, 0.0}};
    const double h = kDefaultStep;
    for (int axis = 1; axis <= 3; ++axis) {
        const auto f = FunctionSpec::make_canonical(CanonicalSeries{4, axis, coeffs});
        auto horner = [&](std::complex<double> z) {
            std::complex<double> acc = coeffs.back();
            for (auto it = coeffs.rbegin() + 1; it != coeffs.rend(); ++it) {
                acc = z * acc + *it;
            }
            return acc;
        };
        for (std::uint64_t seed = 160; seed < 166; ++seed) {
            const auto q = seeded_point(seed, 4);
            const std::complex<double> z(q[0], q[axis]);
            const auto dx = (horner(z + h) - horner(z - h)) / (2.0 * h);
            const auto dy = (horner(z + std::complex<double>(0.0, h)) -
                             horner(z - std::complex<double>(0.0, h))) /
                            (2.0 * h);
            const auto two_dzbar = dx + std::complex<double>(0.0, 1.0) * dy;
            const auto embedded = Hypercomplex::real(4, two_dzbar.real()) +
                                  Hypercomplex::unit(4, axis) * two_dzbar.imag();
            CHECK((apply_crf(f, q) - embedded).norm() < 1e-10);
        }
        // Holomorphic series: the value itself is zero up to stencil error.
        for (std::uint64_t seed = 166; seed < 170; ++seed) {
            CHECK(apply_crf(f, seeded_point(seed, 4)).norm() < 1e-6);
        }
    }
}

TEST_CASE("trio on a canonical series is plane selective") {
    const auto f = FunctionSpec::make_canonical(CanonicalSeries{4, 1, {{0, 0}, {0, 0}, {1, 0}}});
    const auto q = element({0.8, 0.6, 0, 0});
    const auto trio = apply_holomorphy_trio(f, q);
    CHECK(trio.r1.norm() < 1e-8);
    // r2 = d0 f since the series has no x2 dependence; d0(z^2) = 2z != 0.
    CHECK(trio.r2.norm() > 1.0);
}

TEST_CASE("local operators on special functions") {
    const auto conj = builtin(4, BuiltinFunction::conj_q);
    const auto ident = builtin(4, BuiltinFunction::identity);
    const auto kernel = builtin(4, BuiltinFunction::fueter_kernel);

    const auto q1 = Hypercomplex::unit(4, 1);
    CHECK((apply_local_conj_radial(conj, q1) - Hypercomplex::one(4)).norm() < 1e-9);
    CHECK(apply_local_conj_radial(ident, q1).norm() < 1e-10);
    CHECK((apply_local_conj_radial(kernel, q1) + Hypercomplex::one(4)).norm() < 1e-6);

    const auto q2 = element({1, 1, 1, 0});
    CHECK((apply_local_conj_radial(kernel, q2) + Hypercomplex::real(4, 1.0 / 9.0)).norm() < 1e-6);
    CHECK((apply_local_conj_coordinate(kernel, q2) + Hypercomplex::real(4, 1.0 / 9.0)).norm() <
          1e-6);

    for (std::uint64_t seed = 180; seed < 190; ++seed) {
        const auto q = seeded_point(seed, 4, 0.5);
        CHECK((apply_local_conj_radial(conj, q) - Hypercomplex::one(4)).norm() < 1e-9);
        CHECK(apply_local_conj_radial(ident, q).norm() < 1e-9);
    }
}

TEST_CASE("local conjugate operators annihilate right polynomials") {
    for (std::uint64_t seed = 200; seed < 212; ++seed) {
        const int dim = seed % 2 == 0 ? 4 : 8;
        const auto poly = random_right_poly(seed, dim, 4, 0.35);
        const auto f = FunctionSpec::make_right_poly(poly);
        const auto q = seeded_point(seed, dim, 0.5);
        CHECK(apply_local_conj_radial(f, q).norm() < 1e-6);
        CHECK(apply_local_conj_coordinate(f, q).norm() < 1e-6);
    }
}

TEST_CASE("radial and coordinate forms agree") {
    for (std::uint64_t seed = 220; seed < 240; ++seed) {
        const int dim = seed % 2 == 0 ? 4 : 8;
        const auto poly = random_right_poly(seed, dim, 4, 0.35);
        const auto f = FunctionSpec::make_right_poly(poly);
        const auto q = seeded_point(seed, dim, 0.5);
        const auto radial = apply_local_conj_radial(f, q);
        const auto coordinate = apply_local_conj_coordinate(f, q);
        CHECK((radial - coordinate).norm() < 1e-6);
    }
    const auto kernel8 = builtin(8, BuiltinFunction::fueter_kernel);
    const auto q8 = seeded_point(3, 8, 0.6);
    CHECK((apply_local_conj_radial(kernel8, q8) - apply_local_conj_coordinate(kernel8, q8)).norm() <
          1e-6);
}

TEST_CASE("local derivative matches the formal polynomial derivative") {
    for (std::uint64_t seed = 240; seed < 252; ++seed) {
        const int dim = seed % 2 == 0 ? 4 : 8;
        const auto poly = random_right_poly(seed, dim, 4, 0.35);
        const auto f = FunctionSpec::make_right_poly(poly);
        const auto q = seeded_point(seed, dim, 0.5);
        const auto formal = poly.formal_local_derivative().evaluate(q);
        CHECK((apply_local_derivative(f, q) - formal).norm() < 1e-6);
    }
}

TEST_CASE("premultiplication commutes through the local conjugate operator") {
    for (std::uint64_t seed = 260; seed < 272; ++seed) {
        const int dim = seed % 2 == 0 ? 4 : 8;
        const auto poly = random_right_poly(seed, dim, 3, 0.5);
        const auto f = FunctionSpec::make_right_poly(poly);
        const auto qf = FunctionSpec::make_right_poly(poly.premultiplied_by_variable());
        const auto q = seeded_point(seed, dim, 0.5);
        const auto lhs = apply_local_conj_radial(qf, q);
        const auto rhs = q * apply_local_conj_radial(f, q);
        CHECK((lhs - rhs).norm() < 1e-6);
    }
}

TEST_CASE("every operator matches its analytic oracle on polynomials") {
    const OperatorKind ops4[] = {OperatorKind::holomorphy_trio, OperatorKind::global_left,
                                 OperatorKind::crf, OperatorKind::local_conj_radial,
                                 OperatorKind::local_conj_coordinate, OperatorKind::local_derivative};
    for (std::uint64_t seed = 280; seed < 290; ++seed) {
        const auto poly = random_right_poly(seed, 4, 4, 0.5);
        const auto f = FunctionSpec::make_right_poly(poly);
        const auto q = seeded_point(seed, 4, 0.5);
        for (OperatorKind op : ops4) {
            const auto got = apply_operator(f, op, q);
            const auto want = exact_operator(poly, op, q);
            CHECK(flat_error(got, want) < 1e-6);
        }
    }
    const OperatorKind ops8[] = {OperatorKind::local_conj_radial,
                                 OperatorKind::local_conj_coordinate,
                                 OperatorKind::local_derivative};
    for (std::uint64_t seed = 290; seed < 296; ++seed) {
        const auto poly = random_right_poly(seed, 8, 3, 0.5);
        const auto f = FunctionSpec::make_right_poly(poly);
        const auto q = seeded_point(seed, 8, 0.5);
        for (OperatorKind op : ops8) {
            CHECK(flat_error(apply_operator(f, op, q), exact_operator(poly, op, q)) < 1e-6);
        }
    }
}

TEST_CASE("halving the step quarters the stencil error") {
    const OperatorKind ops[] = {OperatorKind::holomorphy_trio, OperatorKind::global_left,
                                OperatorKind::crf, OperatorKind::local_conj_radial,
                                OperatorKind::local_conj_coordinate};
    const double h0 = 1e-2;
    int checked = 0;
    for (std::uint64_t seed = 300; seed < 330 && checked < 24; ++seed) {
        const auto poly = random_right_poly(seed, 4, 4, 1.0);
        const auto f = FunctionSpec::make_right_poly(poly);
        const auto q = seeded_point(seed, 4, 0.5);
        const auto op = ops[seed % 5];
        const auto want = exact_operator(poly, op, q);
        const double coarse = flat_error(apply_operator(f, op, q, h0), want);
        const double fine = flat_error(apply_operator(f, op, q, h0 / 2.0), want);
        if (fine < 1e-10) {
            continue;  // third derivative too small along this slice
        }
        const double ratio = coarse / fine;
        CHECK(ratio > 3.2);
        CHECK(ratio < 4.8);
        ++checked;
    }
    CHECK(checked >= 20);
}

TEST_CASE("third order probe") {
    const auto ident = builtin(4, BuiltinFunction::identity);
    const auto q = element({0.4, 0.7, -0.2, 0.1});
    CHECK(apply_third_order_probe(ident, q, 1e-2).norm() < 1e-7);

    const auto kernel = builtin(4, BuiltinFunction::fueter_kernel);
    const auto value = apply_third_order_probe(kernel, element({0, 1.5, 0, 0}), 1e-2);
    CHECK(std::isfinite(value.norm()));
}

TEST_CASE("operator domain errors") {
    const auto f = square_poly(4);
    const auto q = element({0.5, 0.5, 0.5, 0.5});
    CHECK_THROWS_AS(apply_crf(f, q, 0.0), ConfigError);
    CHECK_THROWS_AS(apply_crf(f, q, -1e-4), ConfigError);
    CHECK_THROWS_AS(apply_crf(f, Hypercomplex::one(8)), DimensionError);
    CHECK_THROWS_AS(apply_crf(square_poly(8), Hypercomplex::one(8)), DimensionError);
    CHECK_THROWS_AS(apply_holomorphy_trio(square_poly(8), Hypercomplex::one(8)), DimensionError);
    CHECK_THROWS_AS(apply_global_left(square_poly(8), Hypercomplex::one(8)), DimensionError);

    const auto near_axis = element({0.5, 1e-4, 0, 0});
    CHECK_THROWS_AS(apply_local_conj_radial(f, near_axis), RealAxisError);
    CHECK_THROWS_AS(apply_local_conj_coordinate(f, near_axis), RealAxisError);
    CHECK_THROWS_AS(apply_local_derivative(f, near_axis), RealAxisError);
    // Just outside the guard band the operators work.
    const auto outside = element({0.5, 2e-3, 0, 0});
    CHECK_NOTHROW(apply_local_conj_radial(f, outside));

    CHECK_THROWS_AS(partial_fd(f, q, 4, kDefaultStep), DimensionError);
    CHECK_THROWS_AS(partial_fd(f, q, -1, kDefaultStep), DimensionError);
}

TEST_CASE("operator names round trip") {
    for (OperatorKind op : kAllOperators) {
        const auto name = operator_name(op);
        CHECK(operator_from_name(name) == op);
    }
    CHECK_FALSE(operator_from_name("bogus").has_value());
}
