#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "solgeo/solgroup.hpp"

using namespace solgeo;

namespace {

Point random_point(std::mt19937& rng, double r = 1.0) {
    std::uniform_real_distribution<double> d(-r, r);
    return {d(rng), d(rng), d(rng), d(rng)};
}

FrameComponents random_comps(std::mt19937& rng) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    return {d(rng), d(rng), d(rng), d(rng)};
}

double max_diff(const Point& a, const Point& b) {
    return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z), std::abs(a.t - b.t)});
}

bool same(const FrameComponents& a, const FrameComponents& b) { return a == b; }

}  // namespace

TEST_CASE("group law examples") {
    const Point q{0.3, -1.2, 2.5, 0.7};
    CHECK(group_mul(identity(), q) == q);
    const Point r = group_mul({1, 2, 3, 1}, {1, 0, 0, 0});
    CHECK(r.x == doctest::Approx(1 + std::exp(1.0)).epsilon(1e-15));
    CHECK(r.y == 2);
    CHECK(r.z == 3);
    CHECK(r.t == 1);

    CHECK(group_inv(identity()) == identity());
    const Point inv = group_inv({1, 0, 0, 1});
    CHECK(inv.x == doctest::Approx(-std::exp(-1.0)).epsilon(1e-15));
    CHECK(inv.t == -1);
}

TEST_CASE("group axioms on random samples") {
    std::mt19937 rng(11);
    double assoc = 0, inverse = 0, invol = 0;
    for (int n = 0; n < 100; ++n) {
        const Point a = random_point(rng), b = random_point(rng), c = random_point(rng);
        assoc = std::max(assoc, max_diff(group_mul(group_mul(a, b), c), group_mul(a, group_mul(b, c))));
        inverse = std::max(inverse, max_diff(group_mul(a, group_inv(a)), identity()));
        inverse = std::max(inverse, max_diff(group_mul(group_inv(a), a), identity()));
        invol = std::max(invol, max_diff(group_inv(group_inv(a)), a));
    }
    CHECK(assoc < 1e-12);
    CHECK(inverse < 1e-12);
    CHECK(invol < 1e-12);
}

TEST_CASE("group operations never throw") {
    const Point bad{0, 0, 0, std::nan("")};
    Point r;
    CHECK_NOTHROW(r = group_inv(bad));
    CHECK_FALSE(is_finite(r));
    CHECK_NOTHROW(r = group_mul(bad, identity()));
    CHECK_FALSE(is_finite(r));
}

TEST_CASE("frame in coordinates") {
    CHECK(frame_at({0, 0, 0, 0})[0][0] == 1.0);
    CHECK(frame_at({0, 0, 0, 1})[2][2] == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
    const Point p{0, 0, 0, 0.5};
    CHECK(metric_eval_coords(p, {0, 0, 1, 0}, {0, 0, 1, 0}) == doctest::Approx(std::exp(2.0)).epsilon(1e-15));

    std::mt19937 rng(3);
    double worst = 0;
    for (int n = 0; n < 100; ++n) {
        const Point q = random_point(rng);
        const auto frame = frame_at(q);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                worst = std::max(worst, std::abs(metric_eval_coords(q, frame[i], frame[j]) - (i == j ? 1.0 : 0.0)));
    }
    CHECK(worst < 1e-14);
}

TEST_CASE("coordinate round trip") {
    std::mt19937 rng(5);
    for (int n = 0; n < 20; ++n) {
        const Point p = random_point(rng);
        const TangentVector v{p, random_comps(rng)};
        const auto back = from_coordinates(p, to_coordinates(v));
        for (int i = 0; i < 4; ++i) CHECK(back.comps[i] == doctest::Approx(v.comps[i]).epsilon(1e-14));
    }
}

TEST_CASE("metric on frame vectors") {
    const Point p{0.1, 0.2, 0.3, 0.4};
    CHECK(metric_eval(p, frame_vector(p, 1), frame_vector(p, 1)) == 1.0);
    CHECK(metric_eval(p, frame_vector(p, 1), frame_vector(p, 3)) == 0.0);
    CHECK_THROWS_AS(metric_eval(p, frame_vector(p, 1), frame_vector(identity(), 1)), BasePointMismatch);
}

TEST_CASE("brackets") {
    CHECK(same(lie_bracket_frame(1, 2), {0, 0, 0, 0}));
    CHECK(same(lie_bracket_frame(3, 4), {0, 0, 2, 0}));
    CHECK(same(lie_bracket_frame(4, 1), {1, 0, 0, 0}));
    CHECK(same(lie_bracket_frame(1, 4), {-1, 0, 0, 0}));
    CHECK(same(lie_bracket_frame(2, 4), {0, -1, 0, 0}));
    CHECK_THROWS_AS(lie_bracket_frame(0, 1), std::out_of_range);
    CHECK_THROWS_AS(lie_bracket_frame(1, 5), std::out_of_range);
}

TEST_CASE("connection table") {
    CHECK(same(nabla_frame(3, 3), {0, 0, 0, -2}));
    CHECK(same(nabla_frame(1, 1), {0, 0, 0, 1}));
    CHECK(same(nabla_frame(2, 2), {0, 0, 0, 1}));
    CHECK(same(nabla_frame(1, 4), {-1, 0, 0, 0}));
    CHECK(same(nabla_frame(3, 4), {0, 0, 2, 0}));
    for (int j = 1; j <= 4; ++j) CHECK(same(nabla_frame(4, j), {0, 0, 0, 0}));
}

TEST_CASE("connection is metric and torsion free") {
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j) {
            CHECK(same(nabla_frame(i, j) - nabla_frame(j, i), lie_bracket_frame(i, j)));
            for (int k = 1; k <= 4; ++k) CHECK(dot(nabla_frame(i, j), unit(k)) + dot(unit(j), nabla_frame(i, k)) == 0.0);
        }
}

TEST_CASE("covariant derivative of vector fields") {
    const Point p{0.2, -0.4, 0.1, 0.6};
    const auto e3 = constant_field(unit(3));
    const auto d33 = covariant_derivative(e3, e3, p);
    CHECK(same(d33.comps, {0, 0, 0, -2}));

    const auto e4 = constant_field(unit(4));
    std::mt19937 rng(1);
    const auto y = constant_field(random_comps(rng));
    const auto d4y = covariant_derivative(e4, y, p);
    for (double c : d4y.comps) CHECK(c == 0.0);

    // Y = f E1 with f vanishing at p: nabla_{E1} Y = (E1 f)(p) E1 = e^t E1 for f = x - p.x.
    VectorFieldFn fy{[p](const Point& q) { return FrameComponents{q.x - p.x, 0, 0, 0}; }, nullptr};
    const auto e1 = constant_field(unit(1));
    const auto r = covariant_derivative(e1, fy, p);
    CHECK(r.comps[0] == doctest::Approx(std::exp(p.t)).epsilon(1e-9));
    CHECK(std::abs(r.comps[1]) + std::abs(r.comps[2]) + std::abs(r.comps[3]) < 1e-9);

    // The exact directional callback agrees with the difference fallback.
    VectorFieldFn exact = fy;
    exact.directional = [](const Point&, const CoordComponents& dir) { return FrameComponents{dir[0], 0, 0, 0}; };
    CHECK(covariant_derivative(e1, exact, p).comps[0] == doctest::Approx(std::exp(p.t)).epsilon(1e-14));

    VectorFieldFn bad{[](const Point&) { return FrameComponents{std::nan(""), 0, 0, 0}; }, nullptr};
    CHECK_THROWS_AS(covariant_derivative(e1, bad, p), NonFiniteError);
}

TEST_CASE("curvature table entries") {
    CHECK(same(curvature_table(1, 3, 3), {2, 0, 0, 0}));
    CHECK(same(curvature_table(2, 4, 4), {0, -1, 0, 0}));
    CHECK(same(curvature_table(1, 2, 2), {-1, 0, 0, 0}));
    CHECK(same(curvature_table(2, 3, 3), {0, 2, 0, 0}));
    CHECK(same(curvature_table(1, 2, 3), {0, 0, 0, 0}));
    for (int k = 1; k <= 4; ++k) CHECK(same(curvature_table(1, 1, k), {0, 0, 0, 0}));
}

TEST_CASE("invariant curvature formula") {
    const Point p{0, 0, 0, 0.3};
    auto e = [&](int i) { return frame_vector(p, i); };
    CHECK(same(curvature_invariant(e(1), e(2), e(2)).comps, {-1, 0, 0, 0}));
    CHECK(same(curvature_invariant(e(3), e(4), e(4)).comps, {0, 0, -4, 0}));
    std::mt19937 rng(9);
    const TangentVector x{p, random_comps(rng)}, z{p, random_comps(rng)};
    for (double c : curvature_invariant(x, x, z).comps) CHECK(c == doctest::Approx(0.0).epsilon(1e-15));
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j)
            for (int k = 1; k <= 4; ++k) CHECK(same(curvature_invariant(e(i), e(j), e(k)).comps, curvature_table(i, j, k)));
}

TEST_CASE("curvature symmetries on the frame") {
    auto R = [](int i, int j, int k, int l) { return dot(curvature_table(i, j, k), unit(l)); };
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j)
            for (int k = 1; k <= 4; ++k)
                for (int l = 1; l <= 4; ++l) {
                    CHECK(R(i, j, k, l) == -R(j, i, k, l));
                    CHECK(R(i, j, k, l) == -R(i, j, l, k));
                    CHECK(R(i, j, k, l) == R(k, l, i, j));
                    CHECK(R(i, j, k, l) + R(j, k, i, l) + R(k, i, j, l) == 0.0);
                }
}

TEST_CASE("sectional curvatures") {
    const Point p{0.5, -0.5, 1.0, -0.2};
    auto e = [&](int i) { return frame_vector(p, i); };
    CHECK(sectional_curvature(p, e(1), e(3)) == 2.0);
    CHECK(sectional_curvature(p, e(1), e(2)) == -1.0);
    CHECK(sectional_curvature(p, e(3), e(4)) == -4.0);
    const double expected[4][4] = {{0, -1, 2, -1}, {-1, 0, 2, -1}, {2, 2, 0, -4}, {-1, -1, -4, 0}};
    for (int i = 1; i <= 4; ++i)
        for (int j = i + 1; j <= 4; ++j) CHECK(sectional_curvature(p, e(i), e(j)) == expected[i - 1][j - 1]);

    std::mt19937 rng(2);
    for (int n = 0; n < 20; ++n) {
        const TangentVector v{p, random_comps(rng)}, w{p, random_comps(rng)};
        const double k = sectional_curvature(p, v, w);
        const TangentVector v2{p, 2.0 * v.comps}, w2{p, w.comps + v.comps};
        CHECK(sectional_curvature(p, v2, w2) == doctest::Approx(k).epsilon(1e-12));
    }
    CHECK_THROWS_AS(sectional_curvature(p, e(1), e(1)), DegenerateError);
    CHECK_THROWS_AS(sectional_curvature(p, e(1), frame_vector(identity(), 2)), BasePointMismatch);
}

TEST_CASE("complex structures") {
    const Point p{};
    auto e = [&](int i) { return frame_vector(p, i); };
    CHECK(same(apply_Jplus(e(3)).comps, unit(4)));
    CHECK(same(apply_Jminus(e(4)).comps, unit(3)));
    CHECK(same(apply_P(TangentVector{p, unit(1) + unit(4)}).comps, unit(4)));

    std::mt19937 rng(4);
    for (int n = 0; n < 10; ++n) {
        const TangentVector x{p, random_comps(rng)}, y{p, random_comps(rng)};
        for (Sign s : {Sign::Plus, Sign::Minus}) {
            const auto jj = apply_J(s, apply_J(s, x));
            for (int i = 0; i < 4; ++i) CHECK(jj.comps[i] == -x.comps[i]);
            CHECK(metric_eval(p, apply_J(s, x), apply_J(s, y)) == doctest::Approx(metric_eval(p, x, y)).epsilon(1e-15));
        }
        CHECK(same(apply_Jplus(apply_Jminus(x)).comps, apply_Jminus(apply_Jplus(x)).comps));
    }
}

TEST_CASE("nabla E4 formula") {
    const Point p{};
    CHECK(same(nabla_E4(frame_vector(p, 4)).comps, {0, 0, 0, 0}));
    CHECK(same(nabla_E4(frame_vector(p, 3)).comps, {0, 0, 2, 0}));
    for (int i = 1; i <= 4; ++i) CHECK(same(nabla_E4(frame_vector(p, i)).comps, nabla_frame(i, 4)));
}

TEST_CASE("isometries preserve the metric") {
    std::mt19937 rng(6);
    const std::vector<Isometry> maps{LeftTranslation{{1, -2, 0.5, 0.3}}, XYRotation{M_PI / 2}, XYRotation{0.7},
                                     ZReflection{}};
    for (const auto& phi : maps) {
        double worst = 0;
        for (int n = 0; n < 20; ++n) {
            const Point p = random_point(rng);
            const TangentVector v{p, random_comps(rng)}, w{p, random_comps(rng)};
            worst = std::max(worst, isometry_check(phi, p, v, w));
        }
        CHECK(worst < 1e-12);
    }
    const Point p{0.1, 0.2, 0.3, 0.4};
    CHECK(isometry_check(LeftTranslation{{3, 1, -1, 2}}, p, frame_vector(p, 2), frame_vector(p, 3)) == 0.0);
    CHECK(isometry_check(XYRotation{M_PI / 2}, p, frame_vector(p, 1), frame_vector(p, 1)) < 1e-15);
    CHECK(isometry_check(ZReflection{}, p, frame_vector(p, 3), frame_vector(p, 3)) == 0.0);
}
