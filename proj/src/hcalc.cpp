#include "carnot/hcalc.hpp"

#include <cmath>

namespace carnot {

double fd_step(double xi) {
    double h = std::max(1e-5, 1e-5 * std::abs(xi));
    if (!(h > 0.0)) throw FDStepUnderflow("finite-difference step collapsed");
    return h;
}

std::vector<double> fd_gradient(const ScalarField& f, std::span<const double> x) {
    const int n = f.dim();
    std::vector<double> grad(n), p(x.begin(), x.end());
    for (int i = 0; i < n; ++i) {
        const double h = fd_step(x[i]);
        const double xi = p[i];
        p[i] = xi + h;
        const double fp = f.value(p);
        p[i] = xi - h;
        const double fm = f.value(p);
        p[i] = xi;
        grad[i] = (fp - fm) / (2.0 * h);
    }
    return grad;
}

HVector horizontal_gradient(const StratifiedGroup& g, const ScalarField& f,
                            std::span<const double> x, DerivMode mode) {
    const int n = g.dim();
    std::vector<double> grad(n);
    if (mode == DerivMode::Analytic) {
        f.gradient(x, grad);
    } else {
        grad = fd_gradient(f, x);
    }
    HVector out(g.first_stratum_dim());
    g.apply_generators(grad, x, out);
    return out;
}

double horizontal_divergence(const StratifiedGroup& g, const HVectorField& v,
                             std::span<const double> x, DerivMode mode) {
    const int n = g.dim();
    const int N = g.first_stratum_dim();
    // Jacobian J[k*n + i] = dv_k/dx_i.
    std::vector<double> J;
    if (mode == DerivMode::Analytic) {
        if (!v.jacobian) throw MissingPartials("horizontal_divergence: field has no Jacobian");
        J = v.jacobian(x);
    } else {
        J.assign(static_cast<std::size_t>(N) * n, 0.0);
        std::vector<double> p(x.begin(), x.end());
        for (int i = 0; i < n; ++i) {
            const double h = fd_step(x[i]);
            const double xi = p[i];
            p[i] = xi + h;
            HVector vp = v.eval(p);
            p[i] = xi - h;
            HVector vm = v.eval(p);
            p[i] = xi;
            for (int k = 0; k < N; ++k) J[k * n + i] = (vp[k] - vm[k]) / (2.0 * h);
        }
    }
    double div = 0.0;
    for (int k = 0; k < N; ++k) {
        div += J[k * n + k];
        for (const auto& [coord, poly] : g.generator_terms(k))
            div += poly.eval(x) * J[k * n + coord];
    }
    return div;
}

double euler_operator(const StratifiedGroup& g, const ScalarField& f,
                      std::span<const double> x, DerivMode mode) {
    HVector h = horizontal_gradient(g, f, x, mode);
    double s = 0.0;
    for (int k = 0; k < g.first_stratum_dim(); ++k) s += x[k] * h[k];
    return s;
}

nlohmann::ordered_json IdentityReport::to_json() const {
    nlohmann::ordered_json j;
    j["identity"] = identity;
    j["gamma"] = gamma;
    j["mode"] = mode;
    j["n_points"] = n_points;
    j["max_rel_err"] = max_rel_err;
    j["mean_rel_err"] = mean_rel_err;
    j["worst_point"] = worst_point;
    return j;
}

namespace {

constexpr double kRelFloor = 1e-300;

// |x'|^gamma as a ScalarField with analytic partials (no support clipping:
// identity checks evaluate pointwise away from the singular tube).
ScalarField power_field(const StratifiedGroup& g, double gamma) {
    const int n = g.dim();
    const int N = g.first_stratum_dim();
    Support sup;
    sup.lo.assign(n, -1e300);
    sup.hi.assign(n, 1e300);
    ScalarField f(n,
                  [&g, gamma](std::span<const double> x) {
                      return std::pow(g.rho(x), gamma);
                  },
                  sup, "|x'|^gamma");
    f.set_gradient([N, n, gamma](std::span<const double> x, std::span<double> out) {
        double r2 = 0.0;
        for (int i = 0; i < N; ++i) r2 += x[i] * x[i];
        const double r = std::sqrt(r2);
        const double s = gamma == 0.0 ? 0.0 : gamma * std::pow(r, gamma - 2.0);
        for (int i = 0; i < N; ++i) out[i] = s * x[i];
        for (int i = N; i < n; ++i) out[i] = 0.0;
    });
    return f;
}

// Relative error against max(|expected|, term scale): when the identity's
// value is identically zero (divergence with gamma == N) the residual is
// measured relative to the magnitude of the cancelled terms.
template <typename ComputeFn, typename ExpectFn, typename ScaleFn>
IdentityReport run_identity(const StratifiedGroup& g, const char* name, double gamma,
                            std::span<const Point> points, DerivMode mode,
                            ComputeFn&& compute, ExpectFn&& expect, ScaleFn&& scale) {
    IdentityReport rep;
    rep.identity = name;
    rep.gamma = gamma;
    rep.mode = mode == DerivMode::Analytic ? "analytic" : "fd";
    rep.n_points = points.size();
    double sum = 0.0;
    for (const Point& x : points) {
        if (!(g.rho(x) > 0.0))
            throw SingularPoint(std::string(name) + ": point on the singular set {x'=0}");
        const double got = compute(x);
        const double want = expect(x);
        const double den = std::max({std::abs(want), std::abs(scale(x)), kRelFloor});
        const double rel = std::abs(got - want) / den;
        sum += rel;
        if (rel >= rep.max_rel_err) {
            rep.max_rel_err = rel;
            rep.worst_point = x;
        }
    }
    if (!points.empty()) rep.mean_rel_err = sum / static_cast<double>(points.size());
    return rep;
}

}  // namespace

IdentityReport check_gradient_identity(const StratifiedGroup& g, double gamma,
                                       std::span<const Point> points, DerivMode mode) {
    ScalarField f = power_field(g, gamma);
    return run_identity(
        g, "gradient", gamma, points, mode,
        [&](const Point& x) {
            HVector h = horizontal_gradient(g, f, x, mode);
            double s = 0.0;
            for (double v : h) s += v * v;
            return std::sqrt(s);
        },
        [&](const Point& x) { return std::abs(gamma) * std::pow(g.rho(x), gamma - 1.0); },
        [&](const Point& x) { return std::abs(gamma) * std::pow(g.rho(x), gamma - 1.0); });
}

IdentityReport check_divergence_identity(const StratifiedGroup& g, double gamma,
                                         std::span<const Point> points, DerivMode mode) {
    const int n = g.dim();
    const int N = g.first_stratum_dim();
    HVectorField v;
    v.eval = [N, gamma, &g](std::span<const double> x) {
        const double r = g.rho(x);
        const double s = std::pow(r, -gamma);
        HVector out(N);
        for (int k = 0; k < N; ++k) out[k] = x[k] * s;
        return out;
    };
    v.jacobian = [N, n, gamma, &g](std::span<const double> x) {
        const double r = g.rho(x);
        const double rg = std::pow(r, -gamma);
        const double rg2 = gamma == 0.0 ? 0.0 : gamma * std::pow(r, -gamma - 2.0);
        std::vector<double> J(static_cast<std::size_t>(N) * n, 0.0);
        for (int k = 0; k < N; ++k)
            for (int i = 0; i < N; ++i)
                J[k * n + i] = (k == i ? rg : 0.0) - x[k] * x[i] * rg2;
        return J;
    };
    return run_identity(
        g, "divergence", gamma, points, mode,
        [&](const Point& x) { return horizontal_divergence(g, v, x, mode); },
        [&](const Point& x) { return (N - gamma) * std::pow(g.rho(x), -gamma); },
        [&](const Point& x) { return N * std::pow(g.rho(x), -gamma); });
}

}  // namespace carnot
