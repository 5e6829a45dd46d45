#include "carnot/field.hpp"

#include <cmath>
#include <memory>

namespace carnot {

ScalarField dilate_field(const StratifiedGroup& g, const ScalarField& f, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("dilate_field: lambda must be positive");
    const int n = g.dim();
    auto base = std::make_shared<ScalarField>(f);

    Support sup = f.support();
    for (int i = 0; i < n; ++i) {
        const double s = std::pow(lambda, g.coord_weight(i));
        sup.lo[i] = f.support().lo[i] / s;
        sup.hi[i] = f.support().hi[i] / s;
        if (static_cast<std::size_t>(i) < sup.box_seams.size())
            for (double& v : sup.box_seams[i]) v /= s;
    }
    sup.rho_min = f.support().rho_min / lambda;
    for (double& v : sup.radial_seams) v /= lambda;

    ScalarField out(n,
                    [base, &g, lambda](std::span<const double> x) {
                        Point y = g.dilate(lambda, x);
                        return base->value(y);
                    },
                    std::move(sup), f.label() + "@dilate");
    if (f.has_gradient()) {
        out.set_gradient([base, &g, lambda, n](std::span<const double> x, std::span<double> grad) {
            Point y = g.dilate(lambda, x);
            base->gradient(y, grad);
            for (int i = 0; i < n; ++i) grad[i] *= std::pow(lambda, g.coord_weight(i));
        });
    }
    return out;
}

}  // namespace carnot
