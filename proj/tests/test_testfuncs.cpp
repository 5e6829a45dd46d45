#include <doctest.h>

#include <cmath>
#include <random>

#include "carnot/hcalc.hpp"
#include "carnot/testfuncs.hpp"

using namespace carnot;

namespace {

Point radial_point(const StratifiedGroup& g, double rho, double tval = 0.0) {
    Point x(g.dim(), 0.0);
    x[0] = rho;
    for (int i = g.first_stratum_dim(); i < g.dim(); ++i) x[i] = tval;
    return x;
}

// One-sided second difference of the radial profile, for seam checks.
double second_diff(const std::function<double(double)>& f, double t, double h) {
    return (f(t + 2 * h) - 2.0 * f(t + h) + f(t)) / (h * h);
}

}  // namespace

TEST_CASE("h1 exponents match the sharp-constant formula") {
    auto e3 = StratifiedGroup::make_euclidean(3);
    auto f = extremizer_h1(e3, 0.0, 2.0, 1e-2, 1e2, 1e2);
    // beta = -|3 - 0|/2 = -3/2: check the pure power on the annulus.
    Point x = radial_point(e3, 1.0);
    CHECK(f.value(x) == doctest::Approx(1.0));
    Point y = radial_point(e3, 2.0);
    CHECK(f.value(y) == doctest::Approx(std::pow(2.0, -1.5)));

    auto h1g = StratifiedGroup::make_heisenberg(1);
    auto f2 = extremizer_h1(h1g, 0.0, 2.0, 1e-2, 1e2, 1e2);
    Point z = radial_point(h1g, 2.0);
    CHECK(f2.value(z) == doctest::Approx(std::pow(2.0, -1.0)));  // beta = -1

    auto e2 = StratifiedGroup::make_euclidean(2);
    CHECK_THROWS_AS(extremizer_h1(e2, 1.0, 2.0, 1e-2, 1e2, 1e2), ConstraintViolated);
}

TEST_CASE("h2 exponent formula and the p=q rejection") {
    auto e3 = StratifiedGroup::make_euclidean(3);
    auto f = extremizer_h2(e3, 2.0, 4.0, 0.0, 0.5, 1e-2, 1e2, 1e2);
    // beta = (p(1-a)+bq)/(p-q) = (2+2)/(-2) = -2.
    Point x = radial_point(e3, 2.0);
    CHECK(f.value(x) == doctest::Approx(std::pow(2.0, -2.0)));

    auto fz = extremizer_h2(e3, 2.0, 3.0, 1.0, 0.0, 1e-2, 1e2, 1e2);
    CHECK(fz.value(x) == doctest::Approx(1.0));  // beta = 0

    CHECK_THROWS_AS(extremizer_h2(e3, 2.0, 2.0, 0.0, 0.5, 1e-2, 1e2, 1e2), ConstraintViolated);
}

TEST_CASE("h2 satisfies the Hoelder equality condition on the annulus") {
    // |h2|^p / |x'|^{p(1-a)} == |h2|^q / |x'|^{-bq} pointwise where the field
    // is the pure power, i.e. (p-q) beta = p(1-a) + b q.
    auto g = StratifiedGroup::make_heisenberg(1);
    const double p = 2.0, q = 4.0, a = 0.25, b = -0.5;
    auto f = extremizer_h2(g, p, q, a, b, 1e-2, 1e2, 1e3);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 30; ++t) {
        const double rho = 1e-2 * std::pow(1e4, u(rng));
        if (rho < 1e-2 || rho > 1e2) continue;
        Point x = radial_point(g, rho);
        const double v = std::abs(f.value(x));
        const double lhs = std::pow(v, p) / std::pow(rho, p * (1.0 - a));
        const double rhs = std::pow(v, q) / std::pow(rho, -b * q);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("h3 pure power and rejection of C == 0") {
    auto g = StratifiedGroup::make_euclidean(2);
    auto f = extremizer_h3(g, -1.5, 1e-2, 1e2, 1.0);
    Point x = radial_point(g, 3.0);
    CHECK(f.value(x) == doctest::Approx(std::pow(3.0, -1.5)));
    CHECK_THROWS_AS(extremizer_h3(g, 0.0, 1e-2, 1e2, 1.0), ConstraintViolated);
}

TEST_CASE("support contract: vanishing zones and the pure-power annulus") {
    auto g = StratifiedGroup::make_heisenberg(1);
    const double eps = 1e-2, R = 1e2, Rp = 5.0, zeta = 10.0;
    auto f = extremizer_h1(g, 0.0, 2.0, eps, R, Rp, zeta);
    CHECK(f.support().rho_min == doctest::Approx(eps / zeta));

    // Inside the tube and beyond the outer radius: zero.
    CHECK(f.value(radial_point(g, eps / zeta * 0.999)) == 0.0);
    CHECK(f.value(radial_point(g, eps / (2.0 * zeta))) == 0.0);
    CHECK(f.value(radial_point(g, zeta * R * 1.001)) == 0.0);
    // Beyond the higher-strata plateau: zero.
    CHECK(f.value(radial_point(g, 1.0, 2.0 * Rp * 1.001)) == 0.0);
    // Pure power on [eps, R], plateau == 1 on |t| <= Rp.
    for (double rho : {eps, 0.5, 1.0, 7.0, R})
        CHECK(f.value(radial_point(g, rho, 0.3 * Rp)) == doctest::Approx(std::pow(rho, -1.0)));
    // Mid-transition: strictly between 0 and the pure power.
    const double mid = eps / 3.0;
    const double v = f.value(radial_point(g, mid));
    CHECK(v > 0.0);
    CHECK(v < std::pow(mid, -1.0));
}

TEST_CASE("cutoff profile is C^2 at the seams") {
    auto g = StratifiedGroup::make_euclidean(2);
    const double eps = 1e-1, R = 1e1, zeta = 10.0;
    auto f = extremizer_h1(g, 0.0, 2.0, eps, R, 1.0, zeta);
    const auto& rs = *f.radial();
    const double h = 1e-6;
    for (double seam : f.support().radial_seams) {
        if (seam <= eps / zeta * 1.001) continue;  // value is identically 0 below
        // Central difference straddling the seam matches the analytic
        // derivative (rules out value or slope jumps), one-sided slopes agree.
        const double cd = (rs.value(seam + h) - rs.value(seam - h)) / (2.0 * h);
        const double dl = rs.deriv(seam - h), dr = rs.deriv(seam + h);
        CHECK(cd == doctest::Approx(0.5 * (dl + dr)).epsilon(1e-6));
        CHECK(dl == doctest::Approx(dr).epsilon(1e-4).scale(1.0));
        // One-sided second differences agree (C^2 seam).
        const double d2l = second_diff(rs.value, seam - 40 * h, 10 * h);
        const double d2r = second_diff(rs.value, seam + 10 * h, 10 * h);
        const double scale = std::max({std::abs(d2l), std::abs(d2r), 1.0});
        CHECK(std::abs(d2l - d2r) / scale < 2e-2);
    }
}

TEST_CASE("extremizer partials agree with finite differences") {
    for (const char* nm : {"euclidean3", "heisenberg1"}) {
        auto g = StratifiedGroup::from_name(nm);
        auto f = extremizer_h1(g, 0.5, 2.0, 1e-1, 1e1, 2.0);
        std::mt19937_64 rng(8);
        std::uniform_real_distribution<double> u(-1.5, 1.5);
        int checked = 0;
        while (checked < 20) {
            Point x(g.dim());
            for (int i = 0; i < g.dim(); ++i) x[i] = u(rng);
            if (g.rho(x) < 0.3) continue;
            ++checked;
            auto fd = fd_gradient(f, x);
            std::vector<double> an(g.dim());
            f.gradient(x, an);
            for (int i = 0; i < g.dim(); ++i)
                CHECK(fd[i] == doctest::Approx(an[i]).epsilon(1e-5).scale(1.0));
        }
    }
}

TEST_CASE("random fields are deterministic in the seed") {
    auto g = StratifiedGroup::make_heisenberg(1);
    auto f1 = random_field(g, 99, 3);
    auto f2 = random_field(g, 99, 3);
    auto f3 = random_field(g, 100, 3);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-2.5, 2.5);
    bool any_different = false;
    for (int t = 0; t < 40; ++t) {
        Point x{u(rng), u(rng), u(rng)};
        CHECK(f1.value(x) == f2.value(x));
        if (f1.value(x) != f3.value(x)) any_different = true;
    }
    CHECK(any_different);
}

TEST_CASE("random fields vanish inside the declared tube") {
    auto g = StratifiedGroup::make_euclidean(3);
    auto f = random_field(g, 7, 4);
    const double rho_min = f.support().rho_min;
    CHECK(rho_min > 0.0);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 50; ++t) {
        Point x{u(rng), u(rng), u(rng)};
        const double r = g.rho(x);
        if (r == 0.0) continue;
        for (int i = 0; i < 3; ++i) x[i] *= (rho_min / 2.0) / r;
        CHECK(f.value(x) == 0.0);
    }
}

TEST_CASE("random field partials match finite differences to 1e-6") {
    auto g = StratifiedGroup::make_h1xr();
    auto f = random_field(g, 31, 3);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    int checked = 0;
    while (checked < 25) {
        Point x(4);
        for (int i = 0; i < 4; ++i) x[i] = u(rng);
        if (std::abs(f.value(x)) < 1e-6) continue;
        ++checked;
        auto fd = fd_gradient(f, x);
        std::vector<double> an(4);
        f.gradient(x, an);
        for (int i = 0; i < 4; ++i) CHECK(fd[i] == doctest::Approx(an[i]).epsilon(1e-6).scale(1.0));
    }
}

TEST_CASE("parameter validation") {
    auto g = StratifiedGroup::make_euclidean(2);
    ExtremizerParams bad;
    bad.eps = 2.0;
    bad.R = 1.0;  // eps >= R
    CHECK_THROWS_AS(mollified_power(g, bad), std::invalid_argument);
    CHECK_THROWS_AS(random_field(g, 1, 0), std::invalid_argument);
}
