#include "carnot/testfuncs.hpp"

#include <cmath>
#include <memory>
#include <random>
#include <sstream>

namespace carnot {

double smoothstep(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

double smoothstep_d1(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double omt = 1.0 - t;
    return 30.0 * t * t * omt * omt;
}

namespace {

// Radial profile A(rho) = cut_in(rho) * rho^beta * cut_out(rho), transitions
// in log-radius over [eps/zeta, eps] and [R, zeta R].
struct RadialPower {
    double beta, eps, R, lnz;

    double cut_in(double rho) const { return smoothstep(std::log(rho / eps) / lnz + 1.0); }
    double cut_in_d(double rho) const {
        return smoothstep_d1(std::log(rho / eps) / lnz + 1.0) / (rho * lnz);
    }
    double cut_out(double rho) const { return 1.0 - smoothstep(std::log(rho / R) / lnz); }
    double cut_out_d(double rho) const {
        return -smoothstep_d1(std::log(rho / R) / lnz) / (rho * lnz);
    }

    double value(double rho) const {
        if (rho <= eps * std::exp(-lnz) || rho >= R * std::exp(lnz)) return 0.0;
        return cut_in(rho) * cut_out(rho) * std::pow(rho, beta);
    }
    double deriv(double rho) const {
        if (rho <= eps * std::exp(-lnz) || rho >= R * std::exp(lnz)) return 0.0;
        const double ci = cut_in(rho), co = cut_out(rho), pw = std::pow(rho, beta);
        return (cut_in_d(rho) * co + ci * cut_out_d(rho)) * pw +
               ci * co * beta * std::pow(rho, beta - 1.0);
    }
};

// 1-D plateau: 1 on |y| <= Rp, smoothstep down over [Rp, 2Rp].
struct Plateau1D {
    double Rp;
    double value(double y) const {
        const double a = std::abs(y);
        if (a <= Rp) return 1.0;
        if (a >= 2.0 * Rp) return 0.0;
        return 1.0 - smoothstep(a / Rp - 1.0);
    }
    double deriv(double y) const {
        const double a = std::abs(y);
        if (a <= Rp || a >= 2.0 * Rp) return 0.0;
        return -smoothstep_d1(a / Rp - 1.0) / Rp * (y < 0.0 ? -1.0 : 1.0);
    }
};

}  // namespace

ScalarField mollified_power(const StratifiedGroup& g, const ExtremizerParams& p,
                            std::string label) {
    if (!(p.eps > 0.0) || !(p.R > 0.0) || !(p.Rp > 0.0))
        throw std::invalid_argument("mollified_power: radii must be positive");
    if (!(p.eps < p.R)) throw std::invalid_argument("mollified_power: eps must be < R");
    if (!(p.zone_factor > 1.0))
        throw std::invalid_argument("mollified_power: zone_factor must exceed 1");

    const int n = g.dim();
    const int N = g.first_stratum_dim();
    const double zeta = p.zone_factor;
    RadialPower rad{p.beta, p.eps, p.R, std::log(zeta)};
    Plateau1D plat{p.Rp};

    Support sup;
    sup.lo.assign(n, 0.0);
    sup.hi.assign(n, 0.0);
    for (int i = 0; i < N; ++i) {
        sup.lo[i] = -zeta * p.R;
        sup.hi[i] = zeta * p.R;
    }
    sup.box_seams.resize(n);
    for (int i = N; i < n; ++i) {
        sup.lo[i] = -2.0 * p.Rp;
        sup.hi[i] = 2.0 * p.Rp;
        sup.box_seams[i] = {-2.0 * p.Rp, -p.Rp, p.Rp, 2.0 * p.Rp};
    }
    sup.rho_min = p.eps / zeta;
    sup.radial_seams = {p.eps / zeta, p.eps, p.R, zeta * p.R};

    auto eval = [rad, plat, N, n](std::span<const double> x) {
        double r2 = 0.0;
        for (int i = 0; i < N; ++i) r2 += x[i] * x[i];
        double v = rad.value(std::sqrt(r2));
        if (v == 0.0) return 0.0;
        for (int i = N; i < n; ++i) {
            v *= plat.value(x[i]);
            if (v == 0.0) return 0.0;
        }
        return v;
    };

    std::ostringstream os;
    os << label << "(beta=" << p.beta << ",eps=" << p.eps << ",R=" << p.R << ",Rp=" << p.Rp << ")";
    ScalarField f(n, eval, std::move(sup), os.str());

    f.set_gradient([rad, plat, N, n](std::span<const double> x, std::span<double> out) {
        double r2 = 0.0;
        for (int i = 0; i < N; ++i) r2 += x[i] * x[i];
        const double rho = std::sqrt(r2);
        double psi = 1.0;
        for (int i = N; i < n; ++i) psi *= plat.value(x[i]);
        const double A = rad.value(rho);
        const double dA = rho > 0.0 ? rad.deriv(rho) : 0.0;
        for (int i = 0; i < N; ++i) out[i] = rho > 0.0 ? dA * (x[i] / rho) * psi : 0.0;
        for (int i = N; i < n; ++i) {
            double rest = 1.0;
            for (int j = N; j < n; ++j)
                if (j != i) rest *= plat.value(x[j]);
            out[i] = A * rest * plat.deriv(x[i]);
        }
    });

    RadialStructure rs;
    rs.value = [rad](double rho) { return rad.value(rho); };
    rs.deriv = [rad](double rho) { return rad.deriv(rho); };
    for (int i = N; i < n; ++i)
        rs.plateaus.push_back({[plat](double y) { return plat.value(y); },
                               [plat](double y) { return plat.deriv(y); }});
    f.set_radial(std::move(rs));
    return f;
}

ScalarField extremizer_h1(const StratifiedGroup& g, double alpha, double p, double eps,
                          double R, double Rp, double zone_factor) {
    const double N = g.first_stratum_dim();
    if (std::abs(N - alpha * p) < 1e-12)
        throw ConstraintViolated("extremizer_h1: N == alpha p (exponent undefined)");
    ExtremizerParams ep;
    ep.beta = -std::abs(N - alpha * p) / p;
    ep.eps = eps;
    ep.R = R;
    ep.Rp = Rp;
    ep.zone_factor = zone_factor;
    return mollified_power(g, ep, "h1");
}

ScalarField extremizer_h2(const StratifiedGroup& g, double p, double q, double a, double b,
                          double eps, double R, double Rp, double zone_factor) {
    if (std::abs(p - q) < 1e-12)
        throw ConstraintViolated("extremizer_h2: requires p != q (use the h3 family)");
    ExtremizerParams ep;
    ep.beta = (p * (1.0 - a) + b * q) / (p - q);
    ep.eps = eps;
    ep.R = R;
    ep.Rp = Rp;
    ep.zone_factor = zone_factor;
    return mollified_power(g, ep, "h2");
}

ScalarField extremizer_h3(const StratifiedGroup& g, double C, double eps, double R, double Rp,
                          double zone_factor) {
    if (C == 0.0) throw ConstraintViolated("extremizer_h3: exponent C must be nonzero");
    ExtremizerParams ep;
    ep.beta = C;
    ep.eps = eps;
    ep.R = R;
    ep.Rp = Rp;
    ep.zone_factor = zone_factor;
    return mollified_power(g, ep, "h3");
}

ScalarField annulus_bump(const StratifiedGroup& g, double eps, double R, double Rp,
                         double zone_factor) {
    ExtremizerParams ep;
    ep.beta = 0.0;
    ep.eps = eps;
    ep.R = R;
    ep.Rp = Rp;
    ep.zone_factor = zone_factor;
    return mollified_power(g, ep, "bump");
}

namespace {

// C^7 compact profile in u = t^2: (1 - u)^8 on [0,1).
double bump_profile(double u) {
    if (u >= 1.0) return 0.0;
    double w = 1.0 - u;
    double w2 = w * w, w4 = w2 * w2;
    return w4 * w4;
}
double bump_profile_d(double u) {
    if (u >= 1.0) return 0.0;
    double w = 1.0 - u;
    double w2 = w * w, w4 = w2 * w2;
    return -8.0 * w4 * w2 * w;
}

struct Bump {
    double amp;
    std::vector<double> center;  // full point
    double wx;                   // radius of the x'-ball
    std::vector<double> wy;      // per higher coordinate half-widths

    // u0 = |x' - c'|^2 / wx^2, then per-coordinate factors in higher strata.
    double value(std::span<const double> x, int N, int n) const {
        double d2 = 0.0;
        for (int i = 0; i < N; ++i) {
            const double d = x[i] - center[i];
            d2 += d * d;
        }
        double v = amp * bump_profile(d2 / (wx * wx));
        if (v == 0.0) return 0.0;
        for (int i = N; i < n; ++i) {
            const double t = (x[i] - center[i]) / wy[i - N];
            v *= bump_profile(t * t);
            if (v == 0.0) return 0.0;
        }
        return v;
    }

    void add_gradient(std::span<const double> x, int N, int n, std::span<double> out) const {
        double d2 = 0.0;
        for (int i = 0; i < N; ++i) {
            const double d = x[i] - center[i];
            d2 += d * d;
        }
        const double u0 = d2 / (wx * wx);
        if (u0 >= 1.0) return;
        double p0 = bump_profile(u0);
        double rest = amp;
        std::vector<double> py(n - N), dpy(n - N);
        for (int i = N; i < n; ++i) {
            const double t = (x[i] - center[i]) / wy[i - N];
            py[i - N] = bump_profile(t * t);
            dpy[i - N] = bump_profile_d(t * t) * 2.0 * t / wy[i - N];
            if (py[i - N] == 0.0) return;
            rest *= py[i - N];
        }
        // d/dx'_i
        const double dp0 = bump_profile_d(u0) * 2.0 / (wx * wx);
        for (int i = 0; i < N; ++i) out[i] += rest * dp0 * (x[i] - center[i]);
        // d/dy_i
        for (int i = N; i < n; ++i) out[i] += rest * p0 / py[i - N] * dpy[i - N];
    }
};

}  // namespace

ScalarField random_field(const StratifiedGroup& g, std::uint64_t seed, int n_bumps) {
    if (n_bumps < 1) throw std::invalid_argument("random_field: n_bumps must be >= 1");
    const int n = g.dim();
    const int N = g.first_stratum_dim();

    std::mt19937_64 rng(seed);
    auto uniform = [&rng](double lo, double hi) {
        // Platform-stable uniform in [lo, hi).
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    };

    auto bumps = std::make_shared<std::vector<Bump>>();
    double min_center_rho = 1e300;
    for (int b = 0; b < n_bumps; ++b) {
        Bump bb;
        bb.amp = uniform(0.5, 1.5) * (uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0);
        // Direction on S^{N-1} via normalized Gaussians (Box-Muller on stable uniforms).
        std::vector<double> dir(N);
        double nrm = 0.0;
        do {
            nrm = 0.0;
            for (int i = 0; i < N; ++i) {
                const double u1 = std::max(uniform(0.0, 1.0), 1e-16);
                const double u2 = uniform(0.0, 1.0);
                dir[i] = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
                nrm += dir[i] * dir[i];
            }
            nrm = std::sqrt(nrm);
        } while (nrm < 1e-8);
        const double crho = uniform(1.0, 2.0);
        bb.center.assign(n, 0.0);
        for (int i = 0; i < N; ++i) bb.center[i] = crho * dir[i] / nrm;
        for (int i = N; i < n; ++i) bb.center[i] = uniform(-1.0, 1.0);
        bb.wx = crho / 2.0;  // inner edge at |x'_c| / 2
        for (int i = N; i < n; ++i) bb.wy.push_back(uniform(0.4, 0.8));
        min_center_rho = std::min(min_center_rho, crho);
        bumps->push_back(std::move(bb));
    }

    Support sup;
    sup.lo.assign(n, 1e300);
    sup.hi.assign(n, -1e300);
    sup.box_seams.resize(n);
    for (const Bump& b : *bumps) {
        for (int i = 0; i < N; ++i) {
            sup.lo[i] = std::min(sup.lo[i], b.center[i] - b.wx);
            sup.hi[i] = std::max(sup.hi[i], b.center[i] + b.wx);
        }
        for (int i = N; i < n; ++i) {
            sup.lo[i] = std::min(sup.lo[i], b.center[i] - b.wy[i - N]);
            sup.hi[i] = std::max(sup.hi[i], b.center[i] + b.wy[i - N]);
            sup.box_seams[i].push_back(b.center[i] - b.wy[i - N]);
            sup.box_seams[i].push_back(b.center[i] + b.wy[i - N]);
        }
    }
    sup.rho_min = min_center_rho / 2.0;

    ScalarField f(n,
                  [bumps, N, n](std::span<const double> x) {
                      double v = 0.0;
                      for (const Bump& b : *bumps) v += b.value(x, N, n);
                      return v;
                  },
                  std::move(sup), "random(seed)");
    f.set_gradient([bumps, N, n](std::span<const double> x, std::span<double> out) {
        for (int i = 0; i < n; ++i) out[i] = 0.0;
        for (const Bump& b : *bumps) b.add_gradient(x, N, n, out);
    });
    return f;
}

}  // namespace carnot
