#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "carnot/errors.hpp"
#include "carnot/group.hpp"

namespace carnot {

/// Support metadata: bounding box in R^n plus an inner exclusion tube
/// |x'| < rho_min around the singular set. Seam lists are quadrature hints
/// (radii / per-coordinate abscissae where the field is only C^2).
struct Support {
    std::vector<double> lo, hi;
    double rho_min = 0.0;
    std::vector<double> radial_seams;
    std::vector<std::vector<double>> box_seams;  // indexed by global coordinate

    bool contains(std::span<const double> x) const {
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (x[i] < lo[i] || x[i] > hi[i]) return false;
        return true;
    }
};

/// Product structure f(x) = radial(|x'|) * prod_j plateau_j(y_j) over the
/// higher-strata coordinates, when the field has one. Enables separable
/// quadrature paths.
struct RadialStructure {
    std::function<double(double)> value;   // A(rho)
    std::function<double(double)> deriv;   // A'(rho)
    struct Plateau {
        std::function<double(double)> value;
        std::function<double(double)> deriv;
    };
    std::vector<Plateau> plateaus;  // one per higher-strata coordinate, in order
};

/// Evaluable scalar test function on the group's R^n, modelling
/// f in C_0^inf(G \ {x'=0}): vanishes outside the support box and inside
/// the tube |x'| < rho_min. Gradient, when present, is analytic.
class ScalarField {
public:
    using Eval = std::function<double(std::span<const double>)>;
    using Grad = std::function<void(std::span<const double>, std::span<double>)>;

    ScalarField() = default;
    ScalarField(int dim, Eval eval, Support support, std::string label = "")
        : dim_(dim), eval_(std::move(eval)), support_(std::move(support)),
          label_(std::move(label)) {}

    int dim() const { return dim_; }
    const Support& support() const { return support_; }
    const std::string& label() const { return label_; }

    double value(std::span<const double> x) const { return eval_(x); }

    bool has_gradient() const { return static_cast<bool>(grad_); }
    void gradient(std::span<const double> x, std::span<double> out) const {
        if (!grad_) throw MissingPartials("field '" + label_ + "' has no analytic partials");
        grad_(x, out);
    }

    void set_gradient(Grad g) { grad_ = std::move(g); }

    const std::optional<RadialStructure>& radial() const { return radial_; }
    void set_radial(RadialStructure r) { radial_ = std::move(r); }

private:
    int dim_ = 0;
    Eval eval_;
    Grad grad_;
    Support support_;
    std::string label_;
    std::optional<RadialStructure> radial_;
};

/// Horizontal vector: (X_1 f, ..., X_N f) at a point.
using HVector = std::vector<double>;

/// Horizontal vector field v: point -> HVector with optional analytic
/// Jacobian dv_k/dx_i (row-major N x n), needed for analytic divergence.
struct HVectorField {
    std::function<HVector(std::span<const double>)> eval;
    std::function<std::vector<double>(std::span<const double>)> jacobian;  // may be empty
};

/// Pull a field back through the dilation: (f o delta_lambda)(x), with
/// gradient and support transformed accordingly.
ScalarField dilate_field(const StratifiedGroup& g, const ScalarField& f, double lambda);

}  // namespace carnot
