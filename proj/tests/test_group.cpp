#include <doctest.h>

#include <cmath>
#include <random>

#include "carnot/group.hpp"

using namespace carnot;

namespace {

// Numeric directional-derivative oracle for vector fields: (V f)(x) along the
// field's value at x, independent of the symbolic bracket path.
double apply_field_fd(const PolyVectorField& v, const std::function<double(const Point&)>& f,
                      const Point& x, double h = 1e-4) {
    Point xp = x, xm = x;
    for (unsigned i = 0; i < v.nvars(); ++i) {
        const double c = v.components[i].eval(x);
        xp[i] += h * c;
        xm[i] -= h * c;
    }
    return (f(xp) - f(xm)) / (2.0 * h);
}

Polynomial half_var(int n, int var, int sign) {
    return Polynomial::variable(n, var, Rational(sign, 2));
}

}  // namespace

TEST_CASE("euclidean groups: dimensions and homogeneous dimension") {
    auto g3 = StratifiedGroup::make_euclidean(3);
    CHECK(g3.first_stratum_dim() == 3);
    CHECK(g3.dim() == 3);
    CHECK(g3.step() == 1);
    CHECK(g3.homogeneous_dimension() == 3);

    auto g1 = StratifiedGroup::make_euclidean(1);
    CHECK(g1.first_stratum_dim() == 1);
    CHECK(g1.homogeneous_dimension() == 1);

    CHECK_THROWS_AS(StratifiedGroup::make_euclidean(0), std::invalid_argument);
}

TEST_CASE("heisenberg groups: Q = sum k N_k") {
    auto h1 = StratifiedGroup::make_heisenberg(1);
    CHECK(h1.first_stratum_dim() == 2);
    CHECK(h1.dim() == 3);
    CHECK(h1.homogeneous_dimension() == 4);

    auto h2 = StratifiedGroup::make_heisenberg(2);
    CHECK(h2.first_stratum_dim() == 4);
    CHECK(h2.dim() == 5);
    CHECK(h2.homogeneous_dimension() == 6);

    CHECK_THROWS_AS(StratifiedGroup::make_heisenberg(0), std::invalid_argument);
}

TEST_CASE("dilations scale stratum k by lambda^k") {
    auto h1 = StratifiedGroup::make_heisenberg(1);
    Point x{1.0, 1.0, 1.0};
    Point y = h1.dilate(2.0, x);
    CHECK(y[0] == doctest::Approx(2.0));
    CHECK(y[1] == doctest::Approx(2.0));
    CHECK(y[2] == doctest::Approx(4.0));

    Point z = h1.dilate(1.0, x);
    for (int i = 0; i < 3; ++i) CHECK(z[i] == x[i]);

    CHECK_THROWS_AS(h1.dilate(0.0, x), std::invalid_argument);
    CHECK_THROWS_AS(h1.dilate(-2.0, x), std::invalid_argument);
}

TEST_CASE("dilation composition: delta_l(delta_m(x)) == delta_lm(x)") {
    auto g = StratifiedGroup::make_h1xr();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int t = 0; t < 25; ++t) {
        Point x{u(rng), u(rng), u(rng), u(rng)};
        const double l = std::exp(u(rng) * 0.3), m = std::exp(u(rng) * 0.3);
        Point a = g.dilate(l, g.dilate(m, x));
        Point b = g.dilate(l * m, x);
        for (int i = 0; i < 4; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
    }
}

TEST_CASE("bracket [X1, X2] on H^1 equals d/dt") {
    auto h1 = StratifiedGroup::make_heisenberg(1);
    PolyVectorField br = lie_bracket(h1.generator(0), h1.generator(1));
    CHECK(br.components[0].is_zero());
    CHECK(br.components[1].is_zero());
    CHECK(br.components[2] == Polynomial::constant(3, Rational(1)));

    // Independent oracle: nested directional finite differences on f,
    // [X1,X2]f = X1(X2 f) - X2(X1 f), compared at a generic point.
    auto f = [](const Point& p) { return p[2] + 0.3 * p[0] * p[1]; };
    Point x{0.7, -0.4, 0.2};
    auto X2f = [&](const Point& p) { return apply_field_fd(h1.generator(1), f, p); };
    auto X1f = [&](const Point& p) { return apply_field_fd(h1.generator(0), f, p); };
    const double lhs = apply_field_fd(h1.generator(0), X2f, x) -
                       apply_field_fd(h1.generator(1), X1f, x);
    const double want = br.apply(Polynomial::variable(3, 2)).eval(x) +
                        0.3 * br.apply(Polynomial::variable(3, 0) * Polynomial::variable(3, 1))
                            .eval(x);
    CHECK(lhs == doctest::Approx(want).epsilon(1e-6));
    CHECK(want == doctest::Approx(1.0));  // f's dt part contributes 1, xy part 0
}

TEST_CASE("bracket antisymmetry and abelian fields") {
    auto e2 = StratifiedGroup::make_euclidean(2);
    PolyVectorField z = lie_bracket(e2.generator(0), e2.generator(1));
    for (const auto& c : z.components) CHECK(c.is_zero());

    auto h1 = StratifiedGroup::make_heisenberg(1);
    PolyVectorField self = lie_bracket(h1.generator(0), h1.generator(0));
    for (const auto& c : self.components) CHECK(c.is_zero());
}

TEST_CASE("custom group with Heisenberg coefficients matches the built-in") {
    std::vector<GeneratorCoeff> coeffs;
    coeffs.push_back({1, 2, 1, half_var(3, 1, -1)});
    coeffs.push_back({2, 2, 1, half_var(3, 0, +1)});
    auto g = StratifiedGroup::make_custom({2, 1}, coeffs, "h1-custom");
    auto h1 = StratifiedGroup::make_heisenberg(1);
    CHECK(g.homogeneous_dimension() == h1.homogeneous_dimension());
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 3; ++i)
            CHECK(g.generator(k).components[i] == h1.generator(k).components[i]);
}

TEST_CASE("custom H1 x R accepted with N=3, Q=5") {
    std::vector<GeneratorCoeff> coeffs;
    coeffs.push_back({1, 2, 1, half_var(4, 1, -1)});
    coeffs.push_back({2, 2, 1, half_var(4, 0, +1)});
    coeffs.push_back({3, 2, 1, Polynomial(4)});  // identically zero is fine
    auto g = StratifiedGroup::make_custom({3, 1}, coeffs, "h1xr-custom");
    CHECK(g.first_stratum_dim() == 3);
    CHECK(g.dim() == 4);
    CHECK(g.homogeneous_dimension() == 5);
    CHECK(g.euler_radial_exact());
}

TEST_CASE("abelian coefficients cannot span the second stratum") {
    CHECK_THROWS_AS(StratifiedGroup::make_custom({2, 1}, {}), RankDeficient);
}

TEST_CASE("wrong weighted degree is a homogeneity violation") {
    // Degree-0 coefficient where degree 1 is required.
    std::vector<GeneratorCoeff> c1;
    c1.push_back({1, 2, 1, Polynomial::constant(3, Rational(1))});
    CHECK_THROWS_AS(StratifiedGroup::make_custom({2, 1}, c1), HomogeneityViolation);

    // Quadratic first-stratum monomial: weighted degree 2 != 1.
    std::vector<GeneratorCoeff> c2;
    MultiIndex sq{2, 0, 0};
    c2.push_back({1, 2, 1, Polynomial::monomial(3, sq, Rational(1))});
    CHECK_THROWS_AS(StratifiedGroup::make_custom({2, 1}, c2), HomogeneityViolation);
}

TEST_CASE("group description files round-trip bit-exactly") {
    auto names = {std::string("heisenberg2"), std::string("h1xr"), std::string("euclidean3")};
    for (const auto& nm : names) {
        auto g = StratifiedGroup::from_name(nm);
        const std::string s1 = g.to_json().dump(2);
        auto g2 = StratifiedGroup::from_json(nlohmann::json::parse(s1));
        const std::string s2 = g2.to_json().dump(2);
        CHECK(s1 == s2);
        CHECK(g2.homogeneous_dimension() == g.homogeneous_dimension());
    }
}

TEST_CASE("built-in name resolution") {
    CHECK(StratifiedGroup::from_name("euclidean2").dim() == 2);
    CHECK(StratifiedGroup::from_name("heisenberg1").dim() == 3);
    CHECK(StratifiedGroup::from_name("h1xr").dim() == 4);
    CHECK_THROWS_AS(StratifiedGroup::from_name("borel7"), std::invalid_argument);
    CHECK_THROWS_AS(StratifiedGroup::from_name("euclidean"), std::invalid_argument);
}

TEST_CASE("euler cancellation flag: exact on built-ins") {
    CHECK(StratifiedGroup::make_euclidean(3).euler_radial_exact());
    CHECK(StratifiedGroup::make_heisenberg(1).euler_radial_exact());
    CHECK(StratifiedGroup::make_heisenberg(2).euler_radial_exact());
    CHECK(StratifiedGroup::make_h1xr().euler_radial_exact());

    // A group where the cancellation fails: X_1 = d1 + x_2 dt, X_2 = d2.
    // Homogeneous and bracket-generating, but sum_k x_k a_{k,1} = x_1 x_2.
    std::vector<GeneratorCoeff> coeffs;
    coeffs.push_back({1, 2, 1, Polynomial::variable(3, 1, Rational(1))});
    auto g = StratifiedGroup::make_custom({2, 1}, coeffs, "skew");
    CHECK_FALSE(g.euler_radial_exact());
}

TEST_CASE("rational arithmetic stays exact") {
    Rational a(1, 2), b(-1, 2);
    CHECK((a + b).is_zero());
    CHECK((a * b) == Rational(-1, 4));
    CHECK(Rational::from_double(0.5) == a);
    CHECK(Rational::from_double(-0.375) == Rational(-3, 8));
    CHECK(Rational::from_double(3.0) == Rational(3));
}
