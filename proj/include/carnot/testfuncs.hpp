#pragma once

#include <cstdint>
#include <span>

#include "carnot/field.hpp"
#include "carnot/group.hpp"

namespace carnot {

/// C^2 quintic smoothstep s(t) = t^3 (10 - 15 t + 6 t^2), clamped to [0,1].
double smoothstep(double t);
double smoothstep_d1(double t);

/// Mollified power family |x'|^beta, cut off in log-radius:
/// 0 for rho <= eps/zone_factor, smoothstep up to the pure power at rho = eps,
/// pure power on [eps, R], smoothstep down to 0 at rho = zone_factor*R.
/// Higher strata carry a plateau: 1 on |y| <= Rp, 0 beyond 2*Rp, per coordinate.
struct ExtremizerParams {
    double beta = 0.0;
    double eps = 1e-2;
    double R = 1e2;
    double Rp = 1e2;           // higher-strata plateau half-width
    double zone_factor = 10.0; // log-radial transition width (both ends)
};

/// Generic mollified power field; analytic partials and radial structure set.
ScalarField mollified_power(const StratifiedGroup& g, const ExtremizerParams& p,
                            std::string label = "power");

/// Extremizer of the Sobolev-type inequality: beta = -|N - alpha p| / p.
/// Rejects N == alpha p.
ScalarField extremizer_h1(const StratifiedGroup& g, double alpha, double p, double eps,
                          double R, double Rp, double zone_factor = 10.0);

/// Extremizer for p != q: beta = (p(1-a) + b q) / (p - q). Rejects p == q.
ScalarField extremizer_h2(const StratifiedGroup& g, double p, double q, double a, double b,
                          double eps, double R, double Rp, double zone_factor = 10.0);

/// Pure power |x'|^C, C != 0 (the p == q family).
ScalarField extremizer_h3(const StratifiedGroup& g, double C, double eps, double R, double Rp,
                          double zone_factor = 10.0);

/// Plateau bump (beta = 0): 1 on the annulus, smooth cutoffs.
ScalarField annulus_bump(const StratifiedGroup& g, double eps, double R, double Rp,
                         double zone_factor = 10.0);

/// Deterministic-from-seed sum of smooth compact bumps whose supports avoid
/// the singular tube. Centers have |x'| in [1,2] and each bump's inner edge
/// sits at |x'_c|/2, so rho_min = min |x'_c| / 2 and all centers satisfy
/// |x'_c| >= 2 rho_min. Analytic partials.
ScalarField random_field(const StratifiedGroup& g, std::uint64_t seed, int n_bumps);

}  // namespace carnot
