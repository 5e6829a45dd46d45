#include "carnot/sharpness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "carnot/hcalc.hpp"

namespace carnot {

const char* family_kind_name(FamilyKind k) {
    switch (k) {
        case FamilyKind::H1: return "h1";
        case FamilyKind::H2: return "h2";
        case FamilyKind::H3: return "h3";
        case FamilyKind::Bump: return "bump";
    }
    return "?";
}

FamilyKind family_kind_from_name(const std::string& s) {
    if (s == "h1") return FamilyKind::H1;
    if (s == "h2") return FamilyKind::H2;
    if (s == "h3") return FamilyKind::H3;
    if (s == "bump") return FamilyKind::Bump;
    throw std::invalid_argument("unknown extremizer family: " + s);
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// integral of fn(rho) d rho over [lo, hi], log-substituted Gauss panels.
IntegralResult radial_integral(const std::function<double(double)>& fn, double lo, double hi,
                               std::span<const double> seams, int panels, int order, int level) {
    auto ps = log_panels(lo, hi, seams, panels);
    return integrate_panels(ps, order, level, [&fn](double u) {
        const double rho = std::exp(u);
        return fn(rho) * rho;
    });
}

IntegralResult plateau_integral(const RadialStructure::Plateau& plat, double exponent, double Rp,
                                int order, int level) {
    std::vector<double> seams{-Rp, Rp};
    auto ps = linear_panels(-2.0 * Rp, 2.0 * Rp, seams, 3);
    return integrate_panels(ps, order, level, [&](double y) {
        const double v = std::abs(plat.value(y));
        return v == 0.0 ? 0.0 : std::pow(v, exponent);
    });
}

struct SepContext {
    const StratifiedGroup& g;
    const RadialStructure& rs;
    double rho_lo, rho_hi;
    std::vector<double> seams;
    double Rp;
    int panels, order, level;

    // || rho^sigma * fn ||_s restricted to the radial factor, including the
    // sphere area and the plateau product.
    NormResult norm(const std::function<double(double)>& radial_fn, double sigma, double s,
                    bool include_plateau = true) const {
        IntegralResult ir = radial_integral(
            [&](double rho) {
                const double v = std::abs(radial_fn(rho));
                return (v == 0.0 ? 0.0 : std::pow(v, s)) * std::pow(rho, sigma * s) *
                       std::pow(rho, g.first_stratum_dim() - 1.0);
            },
            rho_lo, rho_hi, seams, panels, order, level);
        double I = ir.value * sphere_area(g.first_stratum_dim());
        double rel = ir.value > 0.0 ? ir.error / ir.value : 0.0;
        if (include_plateau) {
            for (const auto& plat : rs.plateaus) {
                IntegralResult ip = plateau_integral(plat, s, Rp, order, level);
                I *= ip.value;
                if (ip.value > 0.0) rel += ip.error / ip.value;
            }
        }
        NormResult r;
        if (I <= 0.0) return r;
        r.value = std::pow(I, 1.0 / s);
        r.error = r.value * rel / s;
        return r;
    }
};

bool separable_applicable(const InequalityCase& c, const ScalarField& f) {
    if (!f.radial().has_value()) return false;
    switch (c.kind) {
        case CaseKind::SobolevType: return c.group->euler_radial_exact();
        case CaseKind::Hardy: return c.group->step() == 1;
        case CaseKind::CKN: return c.delta == 0.0 || c.group->step() == 1;
    }
    return false;
}

// lhs, rhs (raw), via the separable product decomposition.
std::pair<NormResult, NormResult> separable_sides(const InequalityCase& c, const ScalarField& f,
                                                  const SharpnessOptions& opt) {
    const Support& sup = f.support();
    SepContext ctx{*c.group,
                   *f.radial(),
                   sup.rho_min,
                   0.0,
                   sup.radial_seams,
                   1.0,
                   0,
                   opt.radial_order,
                   opt.level};
    double r2 = 0.0;
    for (int i = 0; i < c.group->first_stratum_dim(); ++i) {
        const double m = std::max(std::abs(sup.lo[i]), std::abs(sup.hi[i]));
        r2 += m * m;
    }
    ctx.rho_hi = std::sqrt(r2);
    // Plateau half-width from the box (box spans [-2Rp, 2Rp]).
    ctx.Rp = c.group->dim() > c.group->first_stratum_dim()
                 ? 0.5 * sup.hi[c.group->first_stratum_dim()]
                 : 1.0;
    ctx.panels = std::max(8, (int)std::ceil(opt.radial_panels_per_efold *
                                            std::log(ctx.rho_hi / ctx.rho_lo)));

    const RadialStructure& rs = *f.radial();
    auto A = [&rs](double rho) { return rs.value(rho); };
    auto dA = [&rs](double rho) { return rs.deriv(rho); };

    NormResult lhs, rhs;
    if (c.kind == CaseKind::SobolevType) {
        lhs = ctx.norm(A, -c.alpha, c.p);
        rhs = ctx.norm([&](double rho) { return rho * dA(rho); }, -c.alpha, c.p);
    } else if (c.kind == CaseKind::Hardy) {
        lhs = ctx.norm(A, -c.alpha, c.p);
        rhs = ctx.norm(dA, 1.0 - c.alpha, c.p);
    } else {
        lhs = ctx.norm(A, c.c, c.r_exp);
        NormResult An{1.0, 0.0}, Bn{1.0, 0.0};
        if (c.delta > 0.0) An = ctx.norm(dA, c.a, c.p);
        if (c.delta < 1.0) Bn = ctx.norm(A, c.b, c.q);
        rhs.value = std::pow(An.value, c.delta) * std::pow(Bn.value, 1.0 - c.delta);
        rhs.error = 0.0;
        if (c.delta > 0.0 && An.value > 0.0) rhs.error += c.delta * rhs.value / An.value * An.error;
        if (c.delta < 1.0 && Bn.value > 0.0)
            rhs.error += (1.0 - c.delta) * rhs.value / Bn.value * Bn.error;
    }
    return {lhs, rhs};
}

ScalarField make_family(const InequalityCase& c, FamilyKind fam, const SchedulePoint& s,
                        const SharpnessOptions& opt) {
    const StratifiedGroup& g = *c.group;
    switch (fam) {
        case FamilyKind::H1:
            return extremizer_h1(g, c.alpha, c.p, s.eps, s.R, s.Rp, opt.zone_factor);
        case FamilyKind::H2:
            return extremizer_h2(g, c.p, c.q, c.a, c.b, s.eps, s.R, s.Rp, opt.zone_factor);
        case FamilyKind::H3: {
            double C = opt.h3_exponent;
            if (C == 0.0) {
                const double N = g.first_stratum_dim();
                C = -std::abs(N + c.p * (c.a - 1.0)) / c.p;
            }
            return extremizer_h3(g, C, s.eps, s.R, s.Rp, opt.zone_factor);
        }
        case FamilyKind::Bump: return annulus_bump(g, s.eps, s.R, s.Rp, opt.zone_factor);
    }
    throw std::invalid_argument("bad family");
}

void validate_family(const InequalityCase& c, FamilyKind fam) {
    const bool is_ckn = c.kind == CaseKind::CKN;
    if (fam == FamilyKind::H1 && is_ckn)
        throw std::invalid_argument("h1 family applies to sobolev/hardy cases");
    if (fam == FamilyKind::H2 && (!is_ckn || std::abs(c.p - c.q) < 1e-12))
        throw std::invalid_argument("h2 family applies to ckn cases with p != q");
    if (fam == FamilyKind::H3 && !is_ckn)
        throw std::invalid_argument("h3 family applies to ckn cases");
}

}  // namespace

RatioCurve ratio_curve(const InequalityCase& c, FamilyKind family,
                       std::span<const SchedulePoint> schedule, const SharpnessOptions& opt) {
    if (!c.sharpness_claimed)
        throw ConstraintViolated("ratio_curve: case carries no sharpness claim");
    if (schedule.empty()) throw std::invalid_argument("ratio_curve: empty schedule");
    validate_family(c, family);
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        const auto& s = schedule[i];
        if (!(s.eps > 0.0 && s.R > s.eps && s.Rp > 0.0))
            throw std::invalid_argument("ratio_curve: schedule point needs 0 < eps < R, Rp > 0");
        if (i > 0 && !(s.eps < schedule[i - 1].eps && s.R >= schedule[i - 1].R &&
                       s.Rp >= schedule[i - 1].Rp))
            throw std::invalid_argument(
                "ratio_curve: schedule must shrink eps and grow R, Rp monotonically");
    }

    RatioCurve curve;
    curve.the_case = c;
    curve.family = family_kind_name(family);
    const double front = c.front_constant();
    for (const SchedulePoint& s : schedule) {
        ScalarField f = make_family(c, family, s, opt);
        RatioCurvePoint pt;
        pt.sched = s;
        if (separable_applicable(c, f)) {
            auto [lhs, rhs] = separable_sides(c, f, opt);
            pt.lhs = lhs.value;
            pt.rhs = rhs.value;
            pt.ratio = rhs.value > 0.0 ? front * lhs.value / rhs.value : 0.0;
            pt.tol = rhs.value > 0.0
                         ? (front * lhs.error + pt.ratio * rhs.error) / rhs.value + 1e-9
                         : 1e-9;
        } else {
            GridSpec gs = opt.tensor_grid;
            QuadratureGrid grid = QuadratureGrid::build(*c.group, f.support(), gs);
            InequalityReport rep = evaluate(c, f, grid);
            pt.lhs = rep.lhs;
            pt.rhs = rep.rhs;
            pt.ratio = rep.ratio;
            pt.tol = rep.rhs > 0.0 ? rep.combined_tol / rep.rhs : 1e-9;
        }
        curve.points.push_back(pt);
    }
    return curve;
}

nlohmann::ordered_json RatioCurve::to_json() const {
    nlohmann::ordered_json j;
    j["case"] = the_case.to_json();
    j["family"] = family;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& p : points) {
        nlohmann::ordered_json jp;
        jp["eps"] = p.sched.eps;
        jp["R"] = p.sched.R;
        jp["Rp"] = p.sched.Rp;
        jp["lhs"] = p.lhs;
        jp["rhs"] = p.rhs;
        jp["ratio"] = p.ratio;
        jp["tol"] = p.tol;
        arr.push_back(std::move(jp));
    }
    j["points"] = std::move(arr);
    j["final_ratio"] = final_ratio();
    return j;
}

std::string RatioCurve::to_csv() const {
    std::string out = "eps,R,Rp,ratio\n";
    for (const auto& p : points)
        out += fmt_double(p.sched.eps) + "," + fmt_double(p.sched.R) + "," +
               fmt_double(p.sched.Rp) + "," + fmt_double(p.ratio) + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// Best-constant estimation over radial profiles.

namespace {

// Natural cubic spline through (u_i, y_i).
struct CubicSpline {
    std::vector<double> u, y, m;  // m = second derivatives

    void build(std::vector<double> uu, std::vector<double> yy) {
        u = std::move(uu);
        y = std::move(yy);
        const std::size_t K = u.size();
        m.assign(K, 0.0);
        if (K < 3) return;
        std::vector<double> a(K, 0.0), b(K, 0.0), cc(K, 0.0), d(K, 0.0);
        for (std::size_t i = 1; i + 1 < K; ++i) {
            const double h0 = u[i] - u[i - 1], h1 = u[i + 1] - u[i];
            a[i] = h0 / 6.0;
            b[i] = (h0 + h1) / 3.0;
            cc[i] = h1 / 6.0;
            d[i] = (y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0;
        }
        // Thomas solve on the interior unknowns.
        for (std::size_t i = 2; i + 1 < K; ++i) {
            const double w = a[i] / b[i - 1];
            b[i] -= w * cc[i - 1];
            d[i] -= w * d[i - 1];
        }
        for (std::size_t i = K - 2; i >= 1; --i) {
            m[i] = (d[i] - cc[i] * (i + 2 < K ? m[i + 1] : 0.0)) / b[i];
            if (i == 1) break;
        }
    }

    std::size_t segment(double x) const {
        auto it = std::upper_bound(u.begin(), u.end(), x);
        std::size_t i = it - u.begin();
        if (i == 0) i = 1;
        if (i >= u.size()) i = u.size() - 1;
        return i - 1;
    }

    double eval(double x) const {
        const std::size_t i = segment(x);
        const double h = u[i + 1] - u[i];
        const double A = (u[i + 1] - x) / h, B = (x - u[i]) / h;
        return A * y[i] + B * y[i + 1] +
               ((A * A * A - A) * m[i] + (B * B * B - B) * m[i + 1]) * h * h / 6.0;
    }

    double deriv(double x) const {
        const std::size_t i = segment(x);
        const double h = u[i + 1] - u[i];
        const double A = (u[i + 1] - x) / h, B = (x - u[i]) / h;
        return (y[i + 1] - y[i]) / h +
               ((3.0 * B * B - 1.0) * m[i + 1] - (3.0 * A * A - 1.0) * m[i]) * h / 6.0;
    }
};

// Positive compactly supported radial profile exp(S(ln rho)) * window.
struct Profile {
    CubicSpline spline;
    double u0, u1, uk0, uk1;  // window ramps over [u0,u1] and [uk0,uk1]

    double window(double up) const {
        return smoothstep((up - u0) / (u1 - u0)) * (1.0 - smoothstep((up - uk0) / (uk1 - uk0)));
    }
    double window_d(double up) const {
        return smoothstep_d1((up - u0) / (u1 - u0)) / (u1 - u0) *
                   (1.0 - smoothstep((up - uk0) / (uk1 - uk0))) -
               smoothstep((up - u0) / (u1 - u0)) *
                   smoothstep_d1((up - uk0) / (uk1 - uk0)) / (uk1 - uk0);
    }
    double value(double rho) const {
        const double up = std::log(rho);
        if (up <= u0 || up >= uk1) return 0.0;
        return std::exp(spline.eval(up)) * window(up);
    }
    double deriv(double rho) const {
        const double up = std::log(rho);
        if (up <= u0 || up >= uk1) return 0.0;
        const double e = std::exp(spline.eval(up));
        return (e * spline.deriv(up) * window(up) + e * window_d(up)) / rho;
    }
};

Profile make_profile(const std::vector<double>& knots_u, const std::vector<double>& theta) {
    Profile p;
    p.spline.build(knots_u, theta);
    const std::size_t K = knots_u.size();
    p.u0 = knots_u[0];
    p.u1 = knots_u[1];
    p.uk0 = knots_u[K - 2];
    p.uk1 = knots_u[K - 1];
    return p;
}

// Ratio of the case evaluated on the profile (radial-separable path).
struct ProfileObjective {
    const InequalityCase& c;
    const BestConstantOptions& opt;
    std::vector<double> knots_u;
    std::vector<double> seams_rho;
    int panels, order, level;

    double ratio(const std::vector<double>& theta) const {
        Profile prof = make_profile(knots_u, theta);
        const double lo = std::exp(knots_u.front()), hi = std::exp(knots_u.back());
        auto F = [&prof](double rho) { return prof.value(rho); };
        auto dF = [&prof](double rho) { return prof.deriv(rho); };
        const double N = c.group->first_stratum_dim();

        auto integ = [&](const std::function<double(double)>& fn, double sigma, double s) {
            return radial_integral(
                       [&](double rho) {
                           const double v = std::abs(fn(rho));
                           return (v == 0.0 ? 0.0 : std::pow(v, s)) *
                                  std::pow(rho, sigma * s + N - 1.0);
                       },
                       lo, hi, seams_rho, panels, order, level)
                .value;
        };

        const double front = c.front_constant();
        if (c.kind == CaseKind::SobolevType) {
            const double L = integ(F, -c.alpha, c.p);
            const double R = integ([&](double rho) { return rho * dF(rho); }, -c.alpha, c.p);
            return R > 0.0 ? front * std::pow(L / R, 1.0 / c.p) : 0.0;
        }
        if (c.kind == CaseKind::Hardy) {
            const double L = integ(F, -c.alpha, c.p);
            const double R = integ(dF, 1.0 - c.alpha, c.p);
            return R > 0.0 ? front * std::pow(L / R, 1.0 / c.p) : 0.0;
        }
        const double L = std::pow(integ(F, c.c, c.r_exp), 1.0 / c.r_exp);
        double A = 1.0, B = 1.0;
        if (c.delta > 0.0) A = std::pow(integ(dF, c.a, c.p), 1.0 / c.p);
        if (c.delta < 1.0) B = std::pow(integ(F, c.b, c.q), 1.0 / c.q);
        const double R = std::pow(A, c.delta) * std::pow(B, 1.0 - c.delta);
        return R > 0.0 ? front * L / R : 0.0;
    }
};

}  // namespace

ProfileEstimate estimate_best_constant(const InequalityCase& c, int dof, long budget,
                                       std::uint64_t seed, const BestConstantOptions& opt) {
    if (dof < 4) throw std::invalid_argument("estimate_best_constant: dof must be >= 4");
    if (budget < 2 * dof) throw std::invalid_argument("estimate_best_constant: budget too small");
    if (c.trivial) throw ConstraintViolated("trivial case has no sharp constant to estimate");
    if (c.kind != CaseKind::SobolevType && c.kind != CaseKind::Hardy && c.kind != CaseKind::CKN)
        throw std::invalid_argument("unsupported case kind");
    if (c.group->step() > 1 &&
        !(c.kind == CaseKind::SobolevType && c.group->euler_radial_exact()))
        throw ConstraintViolated(
            "estimate_best_constant: radial-profile search needs a separable case "
            "(step-1 group, or sobolev with exact Euler cancellation)");

    ProfileObjective obj{c, opt, {}, {}, 0, 10, 0};
    const int K = dof;
    const double ulo = std::log(opt.rho_lo), uhi = std::log(opt.rho_hi);
    for (int i = 0; i < K; ++i) {
        obj.knots_u.push_back(ulo + (uhi - ulo) * i / (K - 1));
        obj.seams_rho.push_back(std::exp(obj.knots_u.back()));
    }
    obj.panels = std::max(2 * K, (int)std::ceil(1.5 * (uhi - ulo)));
    obj.order = 8;
    obj.level = 0;

    // h1-style initialization: theta_i = beta * u_i.
    double beta;
    const double N = c.group->first_stratum_dim();
    if (c.kind == CaseKind::CKN)
        beta = std::abs(c.p - c.q) > 1e-12 ? (c.p * (1.0 - c.a) + c.b * c.q) / (c.p - c.q)
                                           : -std::abs(N + c.p * (c.a - 1.0)) / c.p;
    else
        beta = -std::abs(N - c.alpha * c.p) / c.p;
    std::vector<double> theta0(K);
    for (int i = 0; i < K; ++i) theta0[i] = beta * obj.knots_u[i];
    if (opt.init_values) {
        if ((int)opt.init_values->size() != K)
            throw std::invalid_argument("init_values size must equal dof");
        bool all_zero = true;
        for (double v : *opt.init_values) {
            if (v < 0.0) throw std::invalid_argument("init_values must be positive");
            if (v != 0.0) all_zero = false;
        }
        if (all_zero)
            throw std::invalid_argument("degenerate zero initial profile rejected (0/0 ratio)");
        for (double v : *opt.init_values)
            if (v == 0.0) throw std::invalid_argument("init_values must be positive");
        for (int i = 0; i < K; ++i) theta0[i] = std::log((*opt.init_values)[i]);
    }

    std::mt19937_64 rng(seed);
    auto uniform = [&rng](double lo, double hi) {
        return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };

    ProfileEstimate est;
    est.dof = K;
    for (double u : obj.knots_u) est.knots_rho.push_back(std::exp(u));

    long evals = 0;
    double best_f = -1e300;
    std::vector<double> best_theta = theta0;
    bool converged = false;

    auto eval_obj = [&](const std::vector<double>& th) {
        const double r = obj.ratio(th);
        ++evals;
        if (r > best_f) {
            best_f = r;
            best_theta = th;
        }
        est.best_history.push_back(best_f);
        return -r;  // minimized
    };

    const int restarts = std::max(1, opt.restarts);
    const long slice = budget / restarts;
    for (int rs = 0; rs < restarts && evals < budget; ++rs) {
        std::vector<double> x0 = theta0;
        if (rs > 0)
            for (double& v : x0) v += uniform(-opt.init_perturbation, opt.init_perturbation);
        const long stop_at = std::min(budget, evals + slice);

        // Nelder-Mead with standard coefficients.
        const double alpha = 1.0, gamma = 2.0, rho_c = 0.5, sigma = 0.5;
        std::vector<std::vector<double>> simplex{x0};
        for (int i = 0; i < K; ++i) {
            auto v = x0;
            v[i] += 0.3;
            simplex.push_back(std::move(v));
        }
        std::vector<double> fv;
        for (auto& v : simplex) {
            fv.push_back(eval_obj(v));
            if (evals >= stop_at) break;
        }
        while (fv.size() < simplex.size()) fv.push_back(1e300);

        while (evals < stop_at) {
            // Order simplex.
            std::vector<std::size_t> idx(simplex.size());
            for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
            std::sort(idx.begin(), idx.end(),
                      [&fv](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
            std::vector<std::vector<double>> s2;
            std::vector<double> f2;
            for (std::size_t i : idx) {
                s2.push_back(simplex[i]);
                f2.push_back(fv[i]);
            }
            simplex = std::move(s2);
            fv = std::move(f2);

            double spread = std::abs(fv.back() - fv.front());
            double size = 0.0;
            for (int i = 0; i < K; ++i)
                size = std::max(size, std::abs(simplex.back()[i] - simplex.front()[i]));
            if (spread < 1e-10 && size < 1e-6) {
                converged = true;
                break;
            }

            std::vector<double> centroid(K, 0.0);
            for (std::size_t v = 0; v + 1 < simplex.size(); ++v)
                for (int i = 0; i < K; ++i) centroid[i] += simplex[v][i];
            for (int i = 0; i < K; ++i) centroid[i] /= K;

            auto blend = [&](double t, const std::vector<double>& far) {
                std::vector<double> out(K);
                for (int i = 0; i < K; ++i) out[i] = centroid[i] + t * (centroid[i] - far[i]);
                return out;
            };

            auto xr = blend(alpha, simplex.back());
            double fr = eval_obj(xr);
            if (fr < fv.front()) {
                auto xe = blend(gamma, simplex.back());
                if (evals >= stop_at) {
                    simplex.back() = xr;
                    fv.back() = fr;
                    break;
                }
                double fe = eval_obj(xe);
                if (fe < fr) {
                    simplex.back() = xe;
                    fv.back() = fe;
                } else {
                    simplex.back() = xr;
                    fv.back() = fr;
                }
            } else if (fr < fv[fv.size() - 2]) {
                simplex.back() = xr;
                fv.back() = fr;
            } else {
                auto xc = blend(-rho_c, simplex.back());
                if (evals >= stop_at) break;
                double fc = eval_obj(xc);
                if (fc < fv.back()) {
                    simplex.back() = xc;
                    fv.back() = fc;
                } else {
                    // Shrink toward the best vertex.
                    for (std::size_t v = 1; v < simplex.size() && evals < stop_at; ++v) {
                        for (int i = 0; i < K; ++i)
                            simplex[v][i] =
                                simplex[0][i] + sigma * (simplex[v][i] - simplex[0][i]);
                        fv[v] = eval_obj(simplex[v]);
                    }
                }
            }
        }
    }

    est.iterations = evals;
    est.converged = converged;
    for (double th : best_theta) est.values.push_back(std::exp(th));

    // Refined final evaluation with an error estimate.
    ProfileObjective fine = obj;
    fine.panels *= 2;
    fine.order += 2;
    fine.level = 1;
    est.ratio = fine.ratio(best_theta);
    ProfileObjective mid = obj;
    est.ratio_err = std::abs(est.ratio - mid.ratio(best_theta));
    return est;
}

nlohmann::ordered_json ProfileEstimate::to_json() const {
    nlohmann::ordered_json j;
    j["dof"] = dof;
    j["knots_rho"] = knots_rho;
    j["values"] = values;
    j["ratio"] = ratio;
    j["ratio_err"] = ratio_err;
    j["iterations"] = iterations;
    j["converged"] = converged;
    return j;
}

std::string ProfileEstimate::to_csv() const {
    std::string out = "iteration,best_ratio\n";
    for (std::size_t i = 0; i < best_history.size(); ++i)
        out += std::to_string(i + 1) + "," + fmt_double(best_history[i]) + "\n";
    return out;
}

}  // namespace carnot
