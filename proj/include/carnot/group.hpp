#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "carnot/errors.hpp"
#include "carnot/polynomial.hpp"

namespace carnot {

using Point = std::vector<double>;

/// One generator coefficient a_{k,m}^{(l)}: a polynomial multiplying
/// d/dx_m^{(l)} in the k-th generator. Indices are 1-based as in the
/// group description file format (k in 1..N, l in 2..step, m in 1..N_l).
struct GeneratorCoeff {
    int k = 0;
    int l = 0;
    int m = 0;
    Polynomial poly;
};

/// Stratified (homogeneous Carnot) group presented on R^n: strata dimensions
/// [N_1,...,N_r], anisotropic dilations scaling stratum k by lambda^k, and
/// first-stratum generators
///   X_k = d/dx'_k + sum_{l,m} a_{k,m}^{(l)}(x) d/dx_m^{(l)}.
/// Construction validates delta-homogeneity of every coefficient (each
/// monomial's weighted degree must equal l-1) and the bracket-generating rank
/// condition at the origin. Immutable after construction; all operations are
/// pure and safe to share across threads.
class StratifiedGroup {
public:
    static StratifiedGroup make_euclidean(int n);
    static StratifiedGroup make_heisenberg(int m);
    /// H^1 x R: strata [3,1], third generator commutes.
    static StratifiedGroup make_h1xr();
    static StratifiedGroup make_custom(std::vector<int> strata_dims,
                                       std::vector<GeneratorCoeff> coeffs,
                                       std::string name = "custom");
    /// Resolve a built-in name: euclidean{n}, heisenberg{m}, h1xr.
    static StratifiedGroup from_name(const std::string& name);

    static StratifiedGroup from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    const std::string& name() const { return name_; }
    const std::vector<int>& strata_dims() const { return strata_; }
    int first_stratum_dim() const { return strata_[0]; }  // N
    int dim() const { return n_; }                        // n
    int step() const { return static_cast<int>(strata_.size()); }
    long long homogeneous_dimension() const { return q_; }  // Q = sum k*N_k

    /// Dilation weight of coordinate i (its stratum number, 1-based).
    int coord_weight(int i) const { return weights_[i]; }
    /// Global coordinate index of x_m^{(l)} (1-based l, m).
    int coord_index(int l, int m) const { return offsets_[l - 1] + (m - 1); }

    /// delta_lambda(x): stratum-k coordinates scale by lambda^k.
    Point dilate(double lambda, std::span<const double> x) const;

    /// Generator X_k (0-based k) as a symbolic polynomial field.
    const PolyVectorField& generator(int k) const { return generators_[k]; }
    const std::vector<GeneratorCoeff>& coeffs() const { return coeffs_; }

    /// X_k f at x from the full Euclidean gradient of f:
    /// out[k] = grad[k] + sum a_{k,m}^{(l)}(x) * grad[coord(l,m)].
    void apply_generators(std::span<const double> grad, std::span<const double> x,
                          std::span<double> out) const;

    /// Evaluate a_{k,m} contributions only (used by divergence of fields that
    /// carry their own Jacobians). term list for generator k: (coord, poly).
    const std::vector<std::pair<int, Polynomial>>& generator_terms(int k) const {
        return terms_[k];
    }

    /// True when sum_k x'_k a_{k,m}^{(l)} == 0 identically for every (l,m):
    /// the Euler operator x'.grad_H of a field radial in x' has no
    /// higher-strata contribution. Exact symbolic check, cached.
    bool euler_radial_exact() const { return euler_radial_exact_; }

    /// |x'| for a full point.
    double rho(std::span<const double> x) const {
        double s = 0.0;
        for (int i = 0; i < strata_[0]; ++i) s += x[i] * x[i];
        return std::sqrt(s);
    }

private:
    StratifiedGroup(std::vector<int> strata, std::vector<GeneratorCoeff> coeffs,
                    std::string name);

    void validate_homogeneity() const;
    void validate_rank() const;
    void build_generators();
    void check_indices() const;

    std::vector<int> strata_;
    std::vector<GeneratorCoeff> coeffs_;
    std::string name_;
    int n_ = 0;
    long long q_ = 0;
    std::vector<int> weights_;   // per-coordinate stratum number
    std::vector<int> offsets_;   // offsets_[l-1] = first coordinate of stratum l
    std::vector<PolyVectorField> generators_;
    std::vector<std::vector<std::pair<int, Polynomial>>> terms_;
    bool euler_radial_exact_ = false;
};

using GroupPtr = std::shared_ptr<const StratifiedGroup>;

}  // namespace carnot
