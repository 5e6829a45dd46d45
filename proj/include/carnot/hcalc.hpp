#pragma once

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "carnot/field.hpp"
#include "carnot/group.hpp"

namespace carnot {

enum class DerivMode { Analytic, FiniteDifference };

/// Central-difference step per coordinate: h = max(1e-5, 1e-5 |x_i|).
double fd_step(double xi);

/// Full Euclidean gradient of f at x, central differences.
std::vector<double> fd_gradient(const ScalarField& f, std::span<const double> x);

/// Horizontal gradient (X_1 f, ..., X_N f) at x.
HVector horizontal_gradient(const StratifiedGroup& g, const ScalarField& f,
                            std::span<const double> x, DerivMode mode);

/// Horizontal divergence sum_k X_k(v_k) at x. Analytic mode requires the
/// field's Jacobian.
double horizontal_divergence(const StratifiedGroup& g, const HVectorField& v,
                             std::span<const double> x, DerivMode mode);

/// Euler operator x'.grad_H f at x.
double euler_operator(const StratifiedGroup& g, const ScalarField& f,
                      std::span<const double> x, DerivMode mode);

/// Outcome of a pointwise identity sweep. Relative error uses
/// max(|expected|, 1e-300) in the denominator.
struct IdentityReport {
    std::string identity;
    double gamma = 0.0;
    std::string mode;
    std::size_t n_points = 0;
    double max_rel_err = 0.0;
    double mean_rel_err = 0.0;
    Point worst_point;

    nlohmann::ordered_json to_json() const;
};

/// Verify |grad_H |x'|^gamma| == |gamma| |x'|^{gamma-1} over the sample.
IdentityReport check_gradient_identity(const StratifiedGroup& g, double gamma,
                                       std::span<const Point> points, DerivMode mode);

/// Verify div_H(x'/|x'|^gamma) == (N - gamma)/|x'|^gamma over the sample.
IdentityReport check_divergence_identity(const StratifiedGroup& g, double gamma,
                                         std::span<const Point> points, DerivMode mode);

}  // namespace carnot
