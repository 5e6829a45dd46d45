#include <doctest.h>

#include <cmath>
#include <random>

#include "carnot/hcalc.hpp"
#include "carnot/testfuncs.hpp"

using namespace carnot;

namespace {

// Random points with |x'| in [0.5, 2] and higher strata in [-1, 1].
std::vector<Point> sample_points(const StratifiedGroup& g, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Point> pts;
    const int N = g.first_stratum_dim(), n = g.dim();
    while ((int)pts.size() < count) {
        Point x(n);
        for (int i = 0; i < n; ++i) x[i] = u(rng);
        double r = g.rho(x);
        if (r < 1e-3) continue;
        const double target = 0.5 + 1.5 * std::abs(u(rng));
        for (int i = 0; i < N; ++i) x[i] *= target / r;
        pts.push_back(std::move(x));
    }
    return pts;
}

}  // namespace

TEST_CASE("euclidean horizontal gradient is the full gradient") {
    auto g = StratifiedGroup::make_euclidean(3);
    auto f = random_field(g, 5, 2);
    for (const Point& x : sample_points(g, 10, 7)) {
        HVector h = horizontal_gradient(g, f, x, DerivMode::Analytic);
        std::vector<double> grad(3);
        f.gradient(x, grad);
        for (int i = 0; i < 3; ++i) CHECK(h[i] == doctest::Approx(grad[i]));
    }
}

TEST_CASE("H^1: grad_H of f = t is (-x2/2, x1/2)") {
    auto g = StratifiedGroup::make_heisenberg(1);
    Support sup{{-10, -10, -10}, {10, 10, 10}, 0.0, {}, {}};
    ScalarField f(3, [](std::span<const double> x) { return x[2]; }, sup, "t");
    f.set_gradient([](std::span<const double>, std::span<double> out) {
        out[0] = 0.0;
        out[1] = 0.0;
        out[2] = 1.0;
    });
    Point x{0.8, -0.3, 0.5};
    HVector h = horizontal_gradient(g, f, x, DerivMode::Analytic);
    CHECK(h[0] == doctest::Approx(-x[1] / 2));
    CHECK(h[1] == doctest::Approx(x[0] / 2));
}

TEST_CASE("fields depending only on x' see the plain x'-gradient") {
    auto g = StratifiedGroup::make_heisenberg(2);
    Support sup{Point(5, -10.0), Point(5, 10.0), 0.0, {}, {}};
    ScalarField f(5, [](std::span<const double> x) { return x[0] * x[0] + 2.0 * x[3]; }, sup,
                  "xonly");
    f.set_gradient([](std::span<const double> x, std::span<double> out) {
        out[0] = 2.0 * x[0];
        out[1] = 0.0;
        out[2] = 0.0;
        out[3] = 2.0;
        out[4] = 0.0;
    });
    Point x{0.4, 0.9, -0.2, 0.7, 0.1};
    HVector h = horizontal_gradient(g, f, x, DerivMode::Analytic);
    CHECK(h[0] == doctest::Approx(2.0 * x[0]));
    CHECK(h[1] == doctest::Approx(0.0));
    CHECK(h[2] == doctest::Approx(0.0));
    CHECK(h[3] == doctest::Approx(2.0));
}

TEST_CASE("analytic mode without partials is an error") {
    auto g = StratifiedGroup::make_euclidean(2);
    Support sup{{-1, -1}, {1, 1}, 0.0, {}, {}};
    ScalarField f(2, [](std::span<const double> x) { return x[0]; }, sup, "bare");
    Point x{0.5, 0.5};
    CHECK_THROWS_AS(horizontal_gradient(g, f, x, DerivMode::Analytic), MissingPartials);
    CHECK_NOTHROW(horizontal_gradient(g, f, x, DerivMode::FiniteDifference));
}

TEST_CASE("fd gradient matches analytic partials to O(h^2)") {
    auto g = StratifiedGroup::make_heisenberg(1);
    auto f = random_field(g, 42, 3);
    for (const Point& x : sample_points(g, 20, 3)) {
        HVector ha = horizontal_gradient(g, f, x, DerivMode::Analytic);
        HVector hf = horizontal_gradient(g, f, x, DerivMode::FiniteDifference);
        for (int k = 0; k < 2; ++k)
            CHECK(hf[k] == doctest::Approx(ha[k]).epsilon(1e-5).scale(1.0));
    }
}

TEST_CASE("horizontal divergence basics") {
    auto h1 = StratifiedGroup::make_heisenberg(1);
    HVectorField vx;  // v(x) = x'
    vx.eval = [](std::span<const double> x) { return HVector{x[0], x[1]}; };
    vx.jacobian = [](std::span<const double>) {
        return std::vector<double>{1, 0, 0, 0, 1, 0};
    };
    Point x{0.3, 0.8, -0.4};
    CHECK(horizontal_divergence(h1, vx, x, DerivMode::Analytic) == doctest::Approx(2.0));
    CHECK(horizontal_divergence(h1, vx, x, DerivMode::FiniteDifference) ==
          doctest::Approx(2.0).epsilon(1e-8));

    HVectorField vc;  // constant field
    vc.eval = [](std::span<const double>) { return HVector{3.0, -1.0}; };
    CHECK(horizontal_divergence(h1, vc, x, DerivMode::FiniteDifference) ==
          doctest::Approx(0.0).scale(1.0).epsilon(1e-10));

    // v = x/|x|^3 on R^3 is divergence-free away from 0 (N - gamma = 0).
    auto e3 = StratifiedGroup::make_euclidean(3);
    HVectorField vr;
    vr.eval = [](std::span<const double> x) {
        const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
        const double s = 1.0 / (r * r * r);
        return HVector{x[0] * s, x[1] * s, x[2] * s};
    };
    Point y{0.9, -0.2, 0.6};
    CHECK(horizontal_divergence(e3, vr, y, DerivMode::FiniteDifference) ==
          doctest::Approx(0.0).scale(1.0).epsilon(1e-8));
}

TEST_CASE("gradient identity across groups and gammas") {
    for (const char* nm : {"euclidean2", "euclidean3", "heisenberg1", "heisenberg2", "h1xr"}) {
        auto g = StratifiedGroup::from_name(nm);
        auto pts = sample_points(g, 50, 123);
        for (double gamma : {-1.0, 0.0, 1.0, 2.0, (double)g.first_stratum_dim()}) {
            auto rep = check_gradient_identity(g, gamma, pts, DerivMode::Analytic);
            CHECK(rep.max_rel_err <= 1e-12);
            auto repf = check_gradient_identity(g, gamma, pts, DerivMode::FiniteDifference);
            CHECK(repf.max_rel_err <= 1e-6);
        }
    }
}

TEST_CASE("divergence identity across groups and gammas") {
    for (const char* nm : {"euclidean2", "euclidean3", "heisenberg1", "heisenberg2", "h1xr"}) {
        auto g = StratifiedGroup::from_name(nm);
        auto pts = sample_points(g, 50, 321);
        for (double gamma : {-1.0, 0.0, 1.0, 2.0, (double)g.first_stratum_dim()}) {
            auto rep = check_divergence_identity(g, gamma, pts, DerivMode::Analytic);
            CHECK(rep.max_rel_err <= 1e-12);
            auto repf = check_divergence_identity(g, gamma, pts, DerivMode::FiniteDifference);
            CHECK(repf.max_rel_err <= 1e-6);
        }
    }
}

TEST_CASE("divergence identity special values") {
    // R^3, gamma = 3: N - gamma = 0, identically zero.
    auto e3 = StratifiedGroup::make_euclidean(3);
    auto pts = sample_points(e3, 20, 9);
    auto rep = check_divergence_identity(e3, 3.0, pts, DerivMode::Analytic);
    CHECK(rep.max_rel_err <= 1e-10);

    // H^1 x R (N = 3), gamma = 1: expect 2/|x'|.
    auto g = StratifiedGroup::make_h1xr();
    auto pts2 = sample_points(g, 20, 10);
    HVectorField v;
    v.eval = [&g](std::span<const double> x) {
        const double r = g.rho(x);
        return HVector{x[0] / r, x[1] / r, x[2] / r};
    };
    for (const Point& x : pts2) {
        const double d = horizontal_divergence(g, v, x, DerivMode::FiniteDifference);
        CHECK(d == doctest::Approx(2.0 / g.rho(x)).epsilon(1e-7));
    }
}

TEST_CASE("singular points are rejected") {
    auto g = StratifiedGroup::make_heisenberg(1);
    std::vector<Point> pts{{0.0, 0.0, 1.0}};
    CHECK_THROWS_AS(check_gradient_identity(g, 2.0, pts, DerivMode::Analytic), SingularPoint);
    CHECK_THROWS_AS(check_divergence_identity(g, 2.0, pts, DerivMode::Analytic), SingularPoint);
}

TEST_CASE("field homogeneity: X_k(f o delta_l) = l (X_k f) o delta_l") {
    for (const char* nm : {"heisenberg1", "h1xr"}) {
        auto g = StratifiedGroup::from_name(nm);
        auto f = random_field(g, 17, 2);
        for (double lambda : {0.5, 2.0}) {
            ScalarField fd = dilate_field(g, f, lambda);
            for (const Point& x : sample_points(g, 10, 77)) {
                HVector lhs = horizontal_gradient(g, fd, x, DerivMode::Analytic);
                Point y = g.dilate(lambda, x);
                HVector rhs = horizontal_gradient(g, f, y, DerivMode::Analytic);
                for (int k = 0; k < g.first_stratum_dim(); ++k)
                    CHECK(lhs[k] ==
                          doctest::Approx(lambda * rhs[k]).epsilon(1e-10).scale(1.0));
            }
        }
    }
}

TEST_CASE("euler operator is rho d_rho on radial-times-plateau fields") {
    auto g = StratifiedGroup::make_heisenberg(1);
    ExtremizerParams ep;
    ep.beta = -0.8;
    ep.eps = 0.05;
    ep.R = 5.0;
    ep.Rp = 2.0;
    auto f = mollified_power(g, ep);
    const auto& rs = *f.radial();
    for (const Point& x : sample_points(g, 25, 99)) {
        const double rho = g.rho(x);
        const double psi = rs.plateaus[0].value(x[2]);
        const double want = rho * rs.deriv(rho) * psi;
        CHECK(euler_operator(g, f, x, DerivMode::Analytic) ==
              doctest::Approx(want).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("euler operator commutes with dilations at degree zero") {
    auto g = StratifiedGroup::make_heisenberg(1);
    auto f = random_field(g, 23, 2);
    for (double lambda : {0.5, 2.0}) {
        ScalarField fd = dilate_field(g, f, lambda);
        for (const Point& x : sample_points(g, 10, 13)) {
            const double lhs = euler_operator(g, fd, x, DerivMode::Analytic);
            Point y = g.dilate(lambda, x);
            const double rhs = euler_operator(g, f, y, DerivMode::Analytic);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10).scale(1.0));
        }
    }
}
