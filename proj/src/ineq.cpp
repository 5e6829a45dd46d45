#include "carnot/ineq.hpp"

#include <cmath>
#include <sstream>

#include "carnot/hcalc.hpp"

namespace carnot {

const char* case_kind_name(CaseKind k) {
    switch (k) {
        case CaseKind::SobolevType: return "sobolev_type";
        case CaseKind::Hardy: return "hardy";
        case CaseKind::CKN: return "ckn";
    }
    return "?";
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Violated: return "violated";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

void require(bool ok, const std::string& hypothesis) {
    if (!ok) throw ConstraintViolated("hypothesis failed: " + hypothesis);
}

}  // namespace

InequalityCase sobolev_case(GroupPtr g, double p, double alpha) {
    require(p > 1.0 && std::isfinite(p), "1 < p < inf");
    InequalityCase c;
    c.kind = CaseKind::SobolevType;
    c.group = std::move(g);
    c.p = p;
    c.alpha = alpha;
    const double N = c.group->first_stratum_dim();
    c.trivial = std::abs(N - alpha * p) < 1e-12;
    if (!c.trivial) c.sharp_constant = p / std::abs(N - alpha * p);
    c.sharpness_claimed = !c.trivial;
    c.hypotheses_ok = {{"p_range", true}, {"nontrivial", !c.trivial}};
    return c;
}

InequalityCase hardy_case(GroupPtr g, double p, double alpha) {
    InequalityCase c = sobolev_case(std::move(g), p, alpha);
    c.kind = CaseKind::Hardy;
    return c;
}

InequalityCase ckn_case(GroupPtr g, double p, double q, double r_exp, double delta, double a,
                        double b) {
    InequalityCase c;
    c.kind = CaseKind::CKN;
    c.group = std::move(g);
    c.p = p;
    c.q = q;
    c.r_exp = r_exp;
    c.delta = delta;
    c.a = a;
    c.b = b;
    const double N = c.group->first_stratum_dim();

    require(p > 1.0 && std::isfinite(p), "1 < p < inf");
    require(q > 1.0 && std::isfinite(q), "1 < q < inf");
    require(r_exp > 0.0 && std::isfinite(r_exp), "0 < r < inf");
    require(p + q >= r_exp, "p + q >= r");
    require(delta >= 0.0 && delta <= 1.0, "delta in [0,1]");
    require(delta >= (r_exp - q) / r_exp - 1e-12, "delta >= (r-q)/r");
    require(delta <= p / r_exp + 1e-12, "delta <= p/r");
    require(std::abs(delta * r_exp / p + (1.0 - delta) * r_exp / q - 1.0) <= 1e-12,
            "delta r/p + (1-delta) r/q = 1");
    require(std::abs(N - p * (1.0 - a)) > 1e-12, "N != p(1-a)");

    c.c = delta * (a - 1.0) + b * (1.0 - delta);
    c.sharp_constant = std::pow(std::abs(p / (N + p * (a - 1.0))), delta);
    const bool pq_equal = std::abs(p - q) < 1e-12;
    c.sharpness_claimed = (pq_equal && std::abs(a - b - 1.0) < 1e-12) ||
                          (!pq_equal && std::abs(p * (1.0 - a) + b * q) > 1e-12) ||
                          delta == 0.0 || delta == 1.0;
    c.hypotheses_ok = {{"p_range", true},
                       {"q_range", true},
                       {"r_range", true},
                       {"p_plus_q_ge_r", true},
                       {"delta_range", true},
                       {"balance", true},
                       {"N_ne_p_1ma", true}};
    return c;
}

nlohmann::ordered_json InequalityCase::to_json() const {
    nlohmann::ordered_json j;
    j["kind"] = case_kind_name(kind);
    j["group"] = group ? group->name() : "";
    j["p"] = p;
    if (kind == CaseKind::CKN) {
        j["q"] = q;
        j["r"] = r_exp;
        j["delta"] = delta;
        j["a"] = a;
        j["b"] = b;
        j["c"] = c;
    } else {
        j["alpha"] = alpha;
    }
    if (trivial)
        j["constant"] = nullptr;
    else
        j["constant"] = sharp_constant;
    j["trivial"] = trivial;
    j["sharpness_claimed"] = sharpness_claimed;
    return j;
}

namespace {

// Reusable buffers for per-node horizontal-gradient evaluation.
struct HGradEval {
    const StratifiedGroup& g;
    const ScalarField& f;
    bool analytic;
    std::vector<double> grad, h;

    HGradEval(const StratifiedGroup& g_, const ScalarField& f_)
        : g(g_), f(f_), analytic(f_.has_gradient()), grad(g_.dim()), h(g_.first_stratum_dim()) {}

    // Fills h with (X_1 f, ..., X_N f)(x).
    void operator()(std::span<const double> x) {
        if (analytic) {
            f.gradient(x, grad);
        } else {
            auto fg = fd_gradient(f, x);
            std::copy(fg.begin(), fg.end(), grad.begin());
        }
        g.apply_generators(grad, x, h);
    }

    double euler(std::span<const double> x) {
        (*this)(x);
        double s = 0.0;
        for (int k = 0; k < g.first_stratum_dim(); ++k) s += x[k] * h[k];
        return s;
    }

    double norm(std::span<const double> x) {
        (*this)(x);
        double s = 0.0;
        for (double v : h) s += v * v;
        return std::sqrt(s);
    }
};

void check_admissible(const ScalarField& f) {
    if (!(f.support().rho_min > 0.0))
        throw InadmissibleSupport("field support must avoid the tube {x'=0}");
}

Verdict decide(double front_lhs, double rhs, double tol) {
    if (front_lhs - rhs > tol) return rhs == 0.0 ? Verdict::Inconclusive : Verdict::Violated;
    return Verdict::Holds;
}

}  // namespace

InequalityReport evaluate(const InequalityCase& c, const ScalarField& f,
                          const QuadratureGrid& grid) {
    check_admissible(f);
    const StratifiedGroup& g = *c.group;
    InequalityReport rep;
    rep.the_case = c;

    NormResult lhs, rhs;
    if (c.kind == CaseKind::SobolevType || c.kind == CaseKind::Hardy) {
        lhs = weighted_lp_norm(f, -c.alpha, c.p, grid);
        HGradEval hg(g, f);
        if (c.kind == CaseKind::SobolevType) {
            rhs = weighted_lp_norm(
                [&hg](std::span<const double> x) { return hg.euler(x); }, -c.alpha, c.p, grid);
        } else {
            rhs = weighted_lp_norm(
                [&hg](std::span<const double> x) { return hg.norm(x); }, 1.0 - c.alpha, c.p,
                grid);
        }
    } else {
        lhs = weighted_lp_norm(f, c.c, c.r_exp, grid);
        NormResult A{1.0, 0.0}, B{1.0, 0.0};
        if (c.delta > 0.0) {
            HGradEval hg(g, f);
            A = weighted_lp_norm([&hg](std::span<const double> x) { return hg.norm(x); }, c.a,
                                 c.p, grid);
        }
        if (c.delta < 1.0) B = weighted_lp_norm(f, c.b, c.q, grid);
        const double Ad = std::pow(A.value, c.delta);
        const double Bd = std::pow(B.value, 1.0 - c.delta);
        rhs.value = Ad * Bd;
        rhs.error = 0.0;
        if (c.delta > 0.0 && A.value > 0.0) rhs.error += c.delta * rhs.value / A.value * A.error;
        if (c.delta < 1.0 && B.value > 0.0)
            rhs.error += (1.0 - c.delta) * rhs.value / B.value * B.error;
    }

    const double front = c.front_constant();
    rep.lhs = lhs.value;
    rep.lhs_err = lhs.error;
    rep.rhs = rhs.value;
    rep.rhs_err = rhs.error;
    rep.combined_tol = front * lhs.error + rhs.error + 1e-9;
    rep.ratio = rhs.value > 0.0 ? front * lhs.value / rhs.value : (lhs.value == 0.0 ? 0.0 : -1.0);
    rep.verdict = decide(front * lhs.value, rhs.value, rep.combined_tol);
    return rep;
}

nlohmann::ordered_json InequalityReport::to_json() const {
    nlohmann::ordered_json j;
    j["case"] = the_case.to_json();
    j["lhs"] = lhs;
    j["rhs"] = rhs;
    j["constant"] = the_case.trivial ? nlohmann::ordered_json(nullptr)
                                     : nlohmann::ordered_json(the_case.sharp_constant);
    j["ratio"] = ratio;
    j["errors"] = {{"lhs", lhs_err}, {"rhs", rhs_err}, {"combined_tol", combined_tol}};
    j["verdict"] = verdict_name(verdict);
    return j;
}

ConditionReport classical_ckn_conditions(int n, double p, double q, double r_exp, double a,
                                         double b, double d, double delta) {
    if (n < 1) throw std::invalid_argument("classical_ckn_conditions: n must be >= 1");
    if (!(p >= 1.0 && q >= 1.0)) throw std::invalid_argument("classical conditions need p,q >= 1");
    if (!(r_exp > 0.0)) throw std::invalid_argument("classical conditions need r > 0");
    if (!(delta >= 0.0 && delta <= 1.0))
        throw std::invalid_argument("classical conditions need delta in [0,1]");

    const double c = delta * d + (1.0 - delta) * b;
    ConditionReport rep;
    auto push = [&rep](std::string name, bool applicable, bool ok, double value) {
        rep.conditions.push_back({std::move(name), applicable, ok, value});
        if (applicable && !ok) ++rep.failed_count;
    };

    const double pos_p = 1.0 / p + a / n;
    const double pos_q = 1.0 / q + b / n;
    const double pos_r = 1.0 / r_exp + c / n;
    push("positivity_1/p+a/n", true, pos_p > 0.0, pos_p);
    push("positivity_1/q+b/n", true, pos_q > 0.0, pos_q);
    push("positivity_1/r+c/n", true, pos_r > 0.0, pos_r);

    const double bal_l = pos_r;
    const double bal_r = delta * (1.0 / p + (a - 1.0) / n) + (1.0 - delta) * pos_q;
    push("balance", true, std::abs(bal_l - bal_r) <= 1e-12, bal_l - bal_r);

    push("a-d>=0 (delta>0)", delta > 0.0, a - d >= 0.0, a - d);
    const bool critical = delta > 0.0 && std::abs(pos_r - (1.0 / p + (a - 1.0) / n)) <= 1e-12;
    push("a-d<=1 (critical)", critical, a - d <= 1.0, a - d);
    return rep;
}

nlohmann::ordered_json ConditionReport::to_json() const {
    nlohmann::ordered_json j;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : conditions) {
        nlohmann::ordered_json jc;
        jc["name"] = c.name;
        jc["applicable"] = c.applicable;
        jc["ok"] = c.ok;
        jc["value"] = c.value;
        arr.push_back(std::move(jc));
    }
    j["conditions"] = std::move(arr);
    j["failed_count"] = failed_count;
    j["all_hold"] = failed_count == 0;
    return j;
}

EquivalenceReport equivalence_check(GroupPtr gp, const ScalarField& fld,
                                    const QuadratureGrid& grid) {
    const StratifiedGroup& g = *gp;
    const int N = g.first_stratum_dim();
    if (N < 3) throw ConstraintViolated("equivalence_check requires N >= 3");
    check_admissible(fld);
    if (!fld.has_gradient()) throw MissingPartials("equivalence_check needs analytic partials");

    EquivalenceReport rep;
    HGradEval hg(g, fld);

    // (a)  ||f||_2 <= (2/N) ||x'.grad_H f||_2  with f the given field.
    NormResult a_l = weighted_lp_norm(fld, 0.0, 2.0, grid);
    NormResult a_r = weighted_lp_norm(
        [&hg](std::span<const double> x) { return hg.euler(x); }, 0.0, 2.0, grid);
    rep.a_lhs = a_l.value;
    rep.a_rhs = a_r.value;
    rep.a_ratio = a_r.value > 0.0 ? (N / 2.0) * a_l.value / a_r.value : 0.0;
    rep.a_verdict = decide((N / 2.0) * a_l.value, a_r.value,
                           (N / 2.0) * a_l.error + a_r.error + 1e-9);

    // (b)  ||g/|x'|||_2 <= (2/(N-2)) ||(x'/|x'|).grad_H g||_2  with g the field.
    NormResult b_l = weighted_lp_norm(fld, -1.0, 2.0, grid);
    NormResult b_r = weighted_lp_norm(
        [&hg](std::span<const double> x) { return hg.euler(x); }, -1.0, 2.0, grid);
    rep.b_lhs = b_l.value;
    rep.b_rhs = b_r.value;
    rep.b_ratio = b_r.value > 0.0 ? ((N - 2.0) / 2.0) * b_l.value / b_r.value : 0.0;
    rep.b_verdict = decide(((N - 2.0) / 2.0) * b_l.value, b_r.value,
                           ((N - 2.0) / 2.0) * b_l.error + b_r.error + 1e-9);

    // Bridge: -2 int (g/|x'|)(x'/|x'|).grad_H g = (N-2) int g^2/|x'|^2.
    IntegralResult bl = integrate(grid, [&](std::span<const double> x, double rho) {
        return -2.0 * fld.value(x) * hg.euler(x) / (rho * rho);
    });
    IntegralResult br = integrate(grid, [&](std::span<const double> x, double rho) {
        const double v = fld.value(x);
        return (N - 2.0) * v * v / (rho * rho);
    });
    rep.bridge_lhs = bl.value;
    rep.bridge_rhs = br.value;
    rep.bridge_rel_mismatch =
        std::abs(bl.value - br.value) / std::max(std::abs(br.value), 1e-300);

    // Termwise: with f = g/|x'|,
    // ||x'.grad_H f||^2 = (N-1) ||g/|x'|||^2 + ||(x'/|x'|).grad_H g||^2.
    auto base = std::make_shared<ScalarField>(fld);
    ScalarField fdiv(g.dim(),
                     [base, &g](std::span<const double> x) {
                         return base->value(x) / g.rho(x);
                     },
                     fld.support(), fld.label() + "/rho");
    const int n = g.dim();
    fdiv.set_gradient([base, &g, N, n](std::span<const double> x, std::span<double> out) {
        const double rho = g.rho(x);
        const double v = base->value(x);
        base->gradient(x, out);
        for (int i = 0; i < n; ++i) out[i] /= rho;
        for (int i = 0; i < N; ++i) out[i] -= v * x[i] / (rho * rho * rho);
    });
    HGradEval hgf(g, fdiv);
    IntegralResult t_full = integrate(grid, [&](std::span<const double> x, double) {
        const double e = hgf.euler(x);
        return e * e;
    });
    IntegralResult t_b = integrate(grid, [&](std::span<const double> x, double rho) {
        const double v = fld.value(x);
        return v * v / (rho * rho);
    });
    IntegralResult t_d = integrate(grid, [&](std::span<const double> x, double rho) {
        const double e = hg.euler(x) / rho;
        return e * e;
    });
    rep.term_lhs = t_full.value;
    rep.term_rhs = (N - 1.0) * t_b.value + t_d.value;
    rep.term_rel_mismatch =
        std::abs(rep.term_lhs - rep.term_rhs) / std::max(std::abs(rep.term_rhs), 1e-300);
    return rep;
}

nlohmann::ordered_json EquivalenceReport::to_json() const {
    nlohmann::ordered_json j;
    j["statement_a"] = {{"lhs", a_lhs},
                        {"rhs", a_rhs},
                        {"ratio", a_ratio},
                        {"verdict", verdict_name(a_verdict)}};
    j["statement_b"] = {{"lhs", b_lhs},
                        {"rhs", b_rhs},
                        {"ratio", b_ratio},
                        {"verdict", verdict_name(b_verdict)}};
    j["bridge"] = {{"lhs", bridge_lhs}, {"rhs", bridge_rhs}, {"rel_mismatch", bridge_rel_mismatch}};
    j["termwise"] = {{"lhs", term_lhs}, {"rhs", term_rhs}, {"rel_mismatch", term_rel_mismatch}};
    return j;
}

}  // namespace carnot
