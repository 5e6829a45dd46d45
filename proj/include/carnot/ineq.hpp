#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "carnot/field.hpp"
#include "carnot/group.hpp"
#include "carnot/quad.hpp"

namespace carnot {

enum class CaseKind { SobolevType, Hardy, CKN };
const char* case_kind_name(CaseKind k);

/// A checkable inequality instance: validated parameters, the sharp constant,
/// and which sharpness claim (if any) applies.
///
/// sobolev_type:  (|N-ap|/p) ||f/|x'|^a||_p <= ||x'.grad_H f / |x'|^a||_p
/// hardy:         (|N-ap|/p) ||f/|x'|^a||_p <= ||grad_H f / |x'|^{a-1}||_p
/// ckn:           |||x'|^c f||_r <= K |||x'|^a grad_H f||_p^d |||x'|^b f||_q^{1-d}
///                with K = |p/(N+p(a-1))|^d, d the interpolation exponent.
struct InequalityCase {
    CaseKind kind = CaseKind::SobolevType;
    GroupPtr group;
    double p = 2.0;
    double q = 2.0;       // ckn
    double r_exp = 2.0;   // ckn Lebesgue exponent
    double delta = 1.0;   // ckn interpolation exponent
    double alpha = 0.0;   // sobolev/hardy weight
    double a = 0.0, b = 0.0, c = 0.0;  // ckn weights
    bool trivial = false;              // sobolev/hardy with N == alpha p
    double sharp_constant = 1.0;       // RHS multiplier; unused when trivial
    bool sharpness_claimed = false;
    std::map<std::string, bool> hypotheses_ok;

    /// LHS multiplier form of the constant (0 when trivial).
    double front_constant() const { return trivial ? 0.0 : 1.0 / sharp_constant; }

    nlohmann::ordered_json to_json() const;
};

InequalityCase sobolev_case(GroupPtr g, double p, double alpha);
InequalityCase hardy_case(GroupPtr g, double p, double alpha);
/// Validates every hypothesis of the CKN case; throws ConstraintViolated
/// naming the first failed one. c is computed as delta(a-1) + b(1-delta).
InequalityCase ckn_case(GroupPtr g, double p, double q, double r_exp, double delta, double a,
                        double b);

enum class Verdict { Holds, Violated, Inconclusive };
const char* verdict_name(Verdict v);

struct InequalityReport {
    InequalityCase the_case;
    double lhs = 0.0, lhs_err = 0.0;
    double rhs = 0.0, rhs_err = 0.0;  // raw right side, before the constant
    double ratio = 0.0;               // front * lhs / rhs
    double combined_tol = 0.0;        // front*lhs_err + rhs_err + 1e-9
    Verdict verdict = Verdict::Holds;

    nlohmann::ordered_json to_json() const;
};

/// Evaluate both sides on a test field. Requires support away from {x'=0}.
InequalityReport evaluate(const InequalityCase& c, const ScalarField& f,
                          const QuadratureGrid& grid);

/// Classical Euclidean CKN existence conditions, checked as pure predicates.
struct ConditionReport {
    struct Condition {
        std::string name;
        bool applicable = true;
        bool ok = true;
        double value = 0.0;  // the tested quantity
    };
    std::vector<Condition> conditions;
    int failed_count = 0;
    nlohmann::ordered_json to_json() const;
};

ConditionReport classical_ckn_conditions(int n, double p, double q, double r_exp, double a,
                                         double b, double d, double delta);

/// L^2 equivalence data (N >= 3): statement (a) with constant 2/N, statement
/// (b) with constant 2/(N-2), the integration-by-parts bridge identity, and
/// the termwise expansion of ||x'.grad_H f||^2 with f = g/|x'|.
struct EquivalenceReport {
    double a_lhs = 0, a_rhs = 0, a_ratio = 0;
    Verdict a_verdict = Verdict::Holds;
    double b_lhs = 0, b_rhs = 0, b_ratio = 0;
    Verdict b_verdict = Verdict::Holds;
    double bridge_lhs = 0, bridge_rhs = 0, bridge_rel_mismatch = 0;
    double term_lhs = 0, term_rhs = 0, term_rel_mismatch = 0;
    nlohmann::ordered_json to_json() const;
};

EquivalenceReport equivalence_check(GroupPtr g, const ScalarField& fld,
                                    const QuadratureGrid& grid);

}  // namespace carnot
