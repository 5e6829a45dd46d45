#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "carnot/errors.hpp"
#include "carnot/field.hpp"
#include "carnot/group.hpp"

namespace carnot {

/// Gauss-Legendre rule on (-1, 1); nodes/weights cached per order.
struct GaussRule {
    std::vector<double> nodes, weights;
};
const GaussRule& gauss_legendre(int order);

/// Surface measure of the unit sphere S^{N-1}.
double sphere_area(int N);

struct Panel1D {
    double a = 0.0, b = 0.0;
};

/// Log-spaced panels on [lo, hi] in u = ln(t), split at the given seams,
/// roughly `count` panels distributed by log width (at least one per segment).
std::vector<Panel1D> log_panels(double lo, double hi, std::span<const double> seams, int count);
/// Linearly spaced panels on [lo, hi] split at seams.
std::vector<Panel1D> linear_panels(double lo, double hi, std::span<const double> seams, int count);

struct IntegralResult {
    double value = 0.0;
    double error = 0.0;  // |value(level) - value(level-1)|
};

/// Composite Gauss integral over the panels, each subdivided 2^level times.
/// Error estimate compares against level-1 (order-reduced rule at level 0).
/// Deterministic panel-major compensated summation.
IntegralResult integrate_panels(std::span<const Panel1D> panels, int order, int level,
                                const std::function<double(double)>& f);

/// Quadrature over the group's R^n in polar first-stratum coordinates
/// rho = |x'|: log-spaced Gauss panels in rho (seam-aware), a sphere rule on
/// S^{N-1}, and tensor Gauss panels over the higher-strata box. All nodes
/// satisfy |x'| > 0.
struct GridSpec {
    int radial_panels = 12;
    int radial_order = 6;
    int angular_res = 16;  // trapezoid count; N=3 also uses angular_res/2 Gauss in cos(phi)
    int box_panels = 3;    // per higher coordinate
    int box_order = 6;
    int level = 1;
    double rho_lo = 0.0;  // 0 = support's rho_min (or eps guard)
    double rho_hi = 0.0;  // 0 = radius enclosing the support box
    bool allow_high_dim_sphere = false;
};

class QuadratureGrid {
public:
    static QuadratureGrid build(const StratifiedGroup& g, const Support& sup, const GridSpec& spec);

    int level() const { return spec_.level; }
    const GridSpec& spec() const { return spec_; }
    std::size_t node_count() const;

    QuadratureGrid with_level(int level) const;

    /// f(point, rho) summed with the full product weight (rho^{N-1} included).
    /// Throws SingularEvaluation on a non-finite integrand value.
    double sum_nodes(const std::function<double(std::span<const double>, double)>& f) const;

private:
    QuadratureGrid() = default;
    int N_ = 0, n_ = 0;
    GridSpec spec_;
    Support sup_;
    std::vector<Panel1D> radial_;                 // in u = ln rho
    std::vector<std::vector<Panel1D>> box_;       // per higher coordinate
    std::vector<std::vector<double>> dirs_;       // unit directions
    std::vector<double> dir_w_;

    void materialize();
    void build_sphere();
    friend IntegralResult integrate(const QuadratureGrid& grid,
                                    const std::function<double(std::span<const double>, double)>& f);
};

/// Integral with refinement-difference error estimate.
IntegralResult integrate(const QuadratureGrid& grid,
                         const std::function<double(std::span<const double>, double)>& f);

struct NormResult {
    double value = 0.0;
    double error = 0.0;
};

/// ( integral |f|^p |x'|^{sigma p} dx )^{1/p}; sigma may be negative since
/// nodes avoid {x'=0}. p > 0 (quasi-norms allowed).
NormResult weighted_lp_norm(const std::function<double(std::span<const double>)>& f, double sigma,
                            double p, const QuadratureGrid& grid);
NormResult weighted_lp_norm(const ScalarField& f, double sigma, double p,
                            const QuadratureGrid& grid);

}  // namespace carnot
