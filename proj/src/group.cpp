#include "carnot/group.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace carnot {

StratifiedGroup::StratifiedGroup(std::vector<int> strata, std::vector<GeneratorCoeff> coeffs,
                                 std::string name)
    : strata_(std::move(strata)), coeffs_(std::move(coeffs)), name_(std::move(name)) {
    if (strata_.empty()) throw std::invalid_argument("StratifiedGroup: empty strata list");
    for (int d : strata_)
        if (d <= 0) throw std::invalid_argument("StratifiedGroup: strata dims must be positive");

    n_ = 0;
    q_ = 0;
    offsets_.resize(strata_.size());
    for (std::size_t l = 0; l < strata_.size(); ++l) {
        offsets_[l] = n_;
        n_ += strata_[l];
        q_ += static_cast<long long>(l + 1) * strata_[l];
        for (int i = 0; i < strata_[l]; ++i) weights_.push_back(static_cast<int>(l + 1));
    }

    check_indices();
    validate_homogeneity();
    build_generators();
    validate_rank();

    // Exact Euler-radial check: sum_k x'_k a_{k,m} == 0 for every target coord.
    euler_radial_exact_ = true;
    const int N = strata_[0];
    for (int m = N; m < n_ && euler_radial_exact_; ++m) {
        Polynomial acc(static_cast<unsigned>(n_));
        for (int k = 0; k < N; ++k) {
            const Polynomial& a = generators_[k].components[m];
            if (a.is_zero()) continue;
            acc = acc + Polynomial::variable(static_cast<unsigned>(n_), k) * a;
        }
        if (!acc.is_zero()) euler_radial_exact_ = false;
    }
}

void StratifiedGroup::check_indices() const {
    const int N = strata_[0];
    const int r = step();
    std::set<std::tuple<int, int, int>> seen;
    for (const auto& c : coeffs_) {
        if (c.k < 1 || c.k > N) throw std::invalid_argument("coefficient index k out of range");
        if (c.l < 2 || c.l > r) throw std::invalid_argument("coefficient index l out of range");
        if (c.m < 1 || c.m > strata_[c.l - 1])
            throw std::invalid_argument("coefficient index m out of range");
        if (c.poly.nvars() != static_cast<unsigned>(n_))
            throw std::invalid_argument("coefficient polynomial arity != n");
        if (!seen.insert({c.k, c.l, c.m}).second)
            throw std::invalid_argument("duplicate coefficient (k,l,m)");
    }
}

void StratifiedGroup::validate_homogeneity() const {
    for (const auto& c : coeffs_) {
        for (const auto& [mi, coef] : c.poly.terms()) {
            long long wdeg = 0;
            for (int i = 0; i < n_; ++i) wdeg += static_cast<long long>(mi[i]) * weights_[i];
            if (wdeg != c.l - 1) {
                std::ostringstream os;
                os << "a_{" << c.k << "," << c.m << "}^{(" << c.l << ")}: monomial of weighted degree "
                   << wdeg << ", expected " << (c.l - 1);
                throw HomogeneityViolation(os.str());
            }
        }
    }
}

void StratifiedGroup::build_generators() {
    const int N = strata_[0];
    generators_.clear();
    terms_.clear();
    for (int k = 0; k < N; ++k) {
        PolyVectorField v;
        v.components.assign(n_, Polynomial(static_cast<unsigned>(n_)));
        v.components[k] = Polynomial::constant(static_cast<unsigned>(n_), Rational(1));
        generators_.push_back(std::move(v));
        terms_.emplace_back();
    }
    for (const auto& c : coeffs_) {
        int coord = coord_index(c.l, c.m);
        generators_[c.k - 1].components[coord] = generators_[c.k - 1].components[coord] + c.poly;
    }
    for (int k = 0; k < N; ++k)
        for (int i = N; i < n_; ++i)
            if (!generators_[k].components[i].is_zero())
                terms_[k].emplace_back(i, generators_[k].components[i]);
}

namespace {

// Exact rank over Q via fraction-free row reduction into a pivot basis.
class RationalRank {
public:
    explicit RationalRank(int dim) : dim_(dim) {}

    // Returns true if the row increased the rank.
    bool insert(std::vector<Rational> row) {
        for (const auto& p : pivots_) {
            const int c = p.first;
            if (row[c].is_zero()) continue;
            Rational f = row[c] / p.second[c];
            for (int i = 0; i < dim_; ++i) row[i] = row[i] - f * p.second[i];
        }
        int lead = -1;
        for (int i = 0; i < dim_; ++i)
            if (!row[i].is_zero()) {
                lead = i;
                break;
            }
        if (lead < 0) return false;
        pivots_.emplace_back(lead, std::move(row));
        return true;
    }

    int rank() const { return static_cast<int>(pivots_.size()); }

private:
    int dim_;
    std::vector<std::pair<int, std::vector<Rational>>> pivots_;
};

}  // namespace

void StratifiedGroup::validate_rank() const {
    const int N = strata_[0];
    RationalRank rank(n_);
    auto value_at_origin = [&](const PolyVectorField& v) {
        std::vector<Rational> row;
        row.reserve(n_);
        for (int i = 0; i < n_; ++i) row.push_back(v.components[i].constant_term());
        return row;
    };

    std::vector<PolyVectorField> level;
    for (int k = 0; k < N; ++k) {
        level.push_back(generators_[k]);
        rank.insert(value_at_origin(generators_[k]));
    }
    for (int len = 2; len <= step() && rank.rank() < n_; ++len) {
        std::vector<PolyVectorField> next;
        for (const auto& b : level)
            for (int k = 0; k < N; ++k) {
                PolyVectorField br = lie_bracket(generators_[k], b);
                rank.insert(value_at_origin(br));
                next.push_back(std::move(br));
            }
        level = std::move(next);
    }
    if (rank.rank() < n_) {
        std::ostringstream os;
        os << "brackets of length <= " << step() << " span only a rank-" << rank.rank()
           << " subspace of R^" << n_ << " at the origin";
        throw RankDeficient(os.str());
    }
}

StratifiedGroup StratifiedGroup::make_euclidean(int n) {
    if (n < 1) throw std::invalid_argument("make_euclidean: n must be >= 1");
    return StratifiedGroup({n}, {}, "euclidean" + std::to_string(n));
}

StratifiedGroup StratifiedGroup::make_heisenberg(int m) {
    if (m < 1) throw std::invalid_argument("make_heisenberg: m must be >= 1");
    const int n = 2 * m + 1;
    std::vector<GeneratorCoeff> coeffs;
    for (int j = 1; j <= m; ++j) {
        // X_j = d/dx_j - (x_{m+j}/2) d/dt,  X_{m+j} = d/dx_{m+j} + (x_j/2) d/dt
        coeffs.push_back({j, 2, 1,
                          Polynomial::variable(n, static_cast<unsigned>(m + j - 1), Rational(-1, 2))});
        coeffs.push_back({m + j, 2, 1,
                          Polynomial::variable(n, static_cast<unsigned>(j - 1), Rational(1, 2))});
    }
    return StratifiedGroup({2 * m, 1}, std::move(coeffs), "heisenberg" + std::to_string(m));
}

StratifiedGroup StratifiedGroup::make_h1xr() {
    const int n = 4;
    std::vector<GeneratorCoeff> coeffs;
    coeffs.push_back({1, 2, 1, Polynomial::variable(n, 1, Rational(-1, 2))});
    coeffs.push_back({2, 2, 1, Polynomial::variable(n, 0, Rational(1, 2))});
    return StratifiedGroup({3, 1}, std::move(coeffs), "h1xr");
}

StratifiedGroup StratifiedGroup::make_custom(std::vector<int> strata_dims,
                                             std::vector<GeneratorCoeff> coeffs,
                                             std::string name) {
    return StratifiedGroup(std::move(strata_dims), std::move(coeffs), std::move(name));
}

StratifiedGroup StratifiedGroup::from_name(const std::string& name) {
    auto parse_suffix = [&](const std::string& prefix) -> int {
        std::string suf = name.substr(prefix.size());
        if (suf.empty() || suf.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("unknown group name: " + name);
        return std::stoi(suf);
    };
    if (name == "h1xr") return make_h1xr();
    if (name.rfind("euclidean", 0) == 0) return make_euclidean(parse_suffix("euclidean"));
    if (name.rfind("heisenberg", 0) == 0) return make_heisenberg(parse_suffix("heisenberg"));
    throw std::invalid_argument("unknown group name: " + name);
}

Point StratifiedGroup::dilate(double lambda, std::span<const double> x) const {
    if (!(lambda > 0.0)) throw std::invalid_argument("dilate: lambda must be positive");
    if (x.size() != static_cast<std::size_t>(n_))
        throw std::invalid_argument("dilate: point dimension mismatch");
    Point y(n_);
    for (int i = 0; i < n_; ++i) y[i] = std::pow(lambda, weights_[i]) * x[i];
    return y;
}

void StratifiedGroup::apply_generators(std::span<const double> grad, std::span<const double> x,
                                       std::span<double> out) const {
    const int N = strata_[0];
    for (int k = 0; k < N; ++k) {
        double v = grad[k];
        for (const auto& [coord, poly] : terms_[k]) v += poly.eval(x) * grad[coord];
        out[k] = v;
    }
}

nlohmann::json StratifiedGroup::to_json() const {
    nlohmann::ordered_json j;
    j["name"] = name_;
    j["strata"] = strata_;
    auto coeffs = nlohmann::ordered_json::array();
    for (const auto& c : coeffs_) {
        nlohmann::ordered_json jc;
        jc["k"] = c.k;
        jc["l"] = c.l;
        jc["m"] = c.m;
        auto monos = nlohmann::ordered_json::array();
        for (const auto& [mi, coef] : c.poly.terms()) {
            nlohmann::ordered_json jm;
            jm["exponents"] = mi;
            jm["value"] = coef.to_double();
            monos.push_back(std::move(jm));
        }
        jc["monomials"] = std::move(monos);
        coeffs.push_back(std::move(jc));
    }
    j["coeffs"] = std::move(coeffs);
    return j;
}

StratifiedGroup StratifiedGroup::from_json(const nlohmann::json& j) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "name" && it.key() != "strata" && it.key() != "coeffs")
            throw std::invalid_argument("group file: unknown key '" + it.key() + "'");
    std::vector<int> strata = j.at("strata").get<std::vector<int>>();
    int n = 0;
    for (int d : strata) n += d;
    std::vector<GeneratorCoeff> coeffs;
    if (j.contains("coeffs")) {
        for (const auto& jc : j.at("coeffs")) {
            GeneratorCoeff c;
            c.k = jc.at("k").get<int>();
            c.l = jc.at("l").get<int>();
            c.m = jc.at("m").get<int>();
            Polynomial p(static_cast<unsigned>(n));
            for (const auto& jm : jc.at("monomials")) {
                MultiIndex mi = jm.at("exponents").get<MultiIndex>();
                if (mi.size() != static_cast<std::size_t>(n))
                    throw std::invalid_argument("group file: exponent arity != n");
                p = p + Polynomial::monomial(static_cast<unsigned>(n), mi,
                                             Rational::from_double(jm.at("value").get<double>()));
            }
            c.poly = std::move(p);
            coeffs.push_back(std::move(c));
        }
    }
    std::string name = j.contains("name") ? j.at("name").get<std::string>() : "custom";
    return make_custom(std::move(strata), std::move(coeffs), std::move(name));
}

}  // namespace carnot
