#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "carnot/ineq.hpp"
#include "carnot/testfuncs.hpp"

namespace carnot {

enum class FamilyKind { H1, H2, H3, Bump };
const char* family_kind_name(FamilyKind k);
FamilyKind family_kind_from_name(const std::string& s);

struct SchedulePoint {
    double eps = 0.0, R = 0.0, Rp = 0.0;
};

struct RatioCurvePoint {
    SchedulePoint sched;
    double lhs = 0.0, rhs = 0.0, ratio = 0.0, tol = 0.0;
};

struct RatioCurve {
    InequalityCase the_case;
    std::string family;
    std::vector<RatioCurvePoint> points;

    double final_ratio() const { return points.empty() ? 0.0 : points.back().ratio; }
    nlohmann::ordered_json to_json() const;
    std::string to_csv() const;  // header: eps,R,Rp,ratio
};

struct SharpnessOptions {
    double zone_factor = 10.0;
    /// Exponent for the h3 family; 0 selects -|N+p(a-1)|/p.
    double h3_exponent = 0.0;
    int radial_order = 8;
    int radial_panels_per_efold = 2;  // at least this density in log rho
    int level = 1;
    GridSpec tensor_grid;  // fallback grid for non-separable cases
};

/// Evaluate the case along a mollified extremizer schedule (eps strictly
/// decreasing, R and Rp nondecreasing). Requires case.sharpness_claimed.
/// Separable product quadrature is used when the case/group structure allows
/// it (exact symbolic gate); otherwise the full tensor grid.
RatioCurve ratio_curve(const InequalityCase& c, FamilyKind family,
                       std::span<const SchedulePoint> schedule,
                       const SharpnessOptions& opt = {});

struct BestConstantOptions {
    double rho_lo = 1e-4;
    double rho_hi = 1e4;
    double plateau_Rp = 10.0;  // fixed higher-strata plateau half-width
    int restarts = 3;
    double init_perturbation = 0.25;
    std::optional<std::vector<double>> init_values;  // knot values, all > 0
    SharpnessOptions eval;
};

struct ProfileEstimate {
    int dof = 0;
    std::vector<double> knots_rho;
    std::vector<double> values;  // optimized knot values
    double ratio = 0.0;          // achieved, on the refined grid
    double ratio_err = 0.0;
    long iterations = 0;  // objective evaluations used
    bool converged = false;
    std::vector<double> best_history;  // best-so-far per evaluation

    nlohmann::ordered_json to_json() const;
    std::string to_csv() const;  // header: iteration,best_ratio
};

/// Maximize LHS/(C * RHS) over positive radial profiles (C^2 interpolation of
/// log-values on log-spaced knots, fixed plateau in higher strata) with a
/// seeded Nelder-Mead simplex and restarts. The achieved ratio lower-bounds 1.
ProfileEstimate estimate_best_constant(const InequalityCase& c, int dof, long budget,
                                       std::uint64_t seed, const BestConstantOptions& opt = {});

}  // namespace carnot
