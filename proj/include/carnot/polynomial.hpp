#pragma once

#include <map>
#include <span>
#include <vector>

#include "carnot/rational.hpp"

namespace carnot {

/// Exponent vector over the group's n coordinates.
using MultiIndex = std::vector<unsigned>;

/// Sparse multivariate polynomial with exact rational coefficients.
/// Immutable value semantics; all algebra is exact.
class Polynomial {
public:
    explicit Polynomial(unsigned nvars = 0) : nvars_(nvars) {}

    static Polynomial constant(unsigned nvars, const Rational& c) {
        Polynomial p(nvars);
        if (!c.is_zero()) p.terms_[MultiIndex(nvars, 0)] = c;
        return p;
    }
    /// Single variable x_i (0-based).
    static Polynomial variable(unsigned nvars, unsigned i, const Rational& c = Rational(1)) {
        Polynomial p(nvars);
        if (!c.is_zero()) {
            MultiIndex mi(nvars, 0);
            mi.at(i) = 1;
            p.terms_[mi] = c;
        }
        return p;
    }
    static Polynomial monomial(unsigned nvars, const MultiIndex& exps, const Rational& c) {
        Polynomial p(nvars);
        if (exps.size() != nvars) throw std::invalid_argument("monomial: exponent arity mismatch");
        if (!c.is_zero()) p.terms_[exps] = c;
        return p;
    }

    unsigned nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<MultiIndex, Rational>& terms() const { return terms_; }

    Rational constant_term() const {
        auto it = terms_.find(MultiIndex(nvars_, 0));
        return it == terms_.end() ? Rational(0) : it->second;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        check_arity(a, b);
        Polynomial r = a;
        for (const auto& [mi, c] : b.terms_) r.add_term(mi, c);
        return r;
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        check_arity(a, b);
        Polynomial r = a;
        for (const auto& [mi, c] : b.terms_) r.add_term(mi, -c);
        return r;
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        check_arity(a, b);
        Polynomial r(a.nvars_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                MultiIndex m(a.nvars_);
                for (unsigned i = 0; i < a.nvars_; ++i) m[i] = ma[i] + mb[i];
                r.add_term(m, ca * cb);
            }
        return r;
    }
    Polynomial operator-() const {
        Polynomial r(nvars_);
        for (const auto& [mi, c] : terms_) r.terms_[mi] = -c;
        return r;
    }

    Polynomial derivative(unsigned var) const {
        Polynomial r(nvars_);
        for (const auto& [mi, c] : terms_) {
            if (mi[var] == 0) continue;
            MultiIndex m = mi;
            m[var] -= 1;
            r.add_term(m, c * Rational(static_cast<std::int64_t>(mi[var])));
        }
        return r;
    }

    double eval(std::span<const double> x) const {
        double sum = 0.0;
        for (const auto& [mi, c] : terms_) {
            double t = c.to_double();
            for (unsigned i = 0; i < nvars_; ++i)
                for (unsigned e = 0; e < mi[i]; ++e) t *= x[i];
            sum += t;
        }
        return sum;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

private:
    unsigned nvars_;
    std::map<MultiIndex, Rational> terms_;

    void add_term(const MultiIndex& mi, const Rational& c) {
        auto it = terms_.find(mi);
        if (it == terms_.end()) {
            if (!c.is_zero()) terms_[mi] = c;
            return;
        }
        Rational s = it->second + c;
        if (s.is_zero())
            terms_.erase(it);
        else
            it->second = s;
    }
    static void check_arity(const Polynomial& a, const Polynomial& b) {
        if (a.nvars_ != b.nvars_) throw std::invalid_argument("Polynomial arity mismatch");
    }
};

/// First-order differential operator with polynomial coefficients:
/// V = sum_i components[i] * d/dx_i.
struct PolyVectorField {
    std::vector<Polynomial> components;

    unsigned nvars() const { return static_cast<unsigned>(components.size()); }

    /// Apply to a polynomial: V(p) = sum_i components[i] * dp/dx_i.
    Polynomial apply(const Polynomial& p) const {
        Polynomial r(p.nvars());
        for (unsigned i = 0; i < components.size(); ++i) {
            if (components[i].is_zero()) continue;
            r = r + components[i] * p.derivative(i);
        }
        return r;
    }
};

/// Exact symbolic commutator [V, W]_i = V(W_i) - W(V_i).
inline PolyVectorField lie_bracket(const PolyVectorField& v, const PolyVectorField& w) {
    if (v.nvars() != w.nvars()) throw std::invalid_argument("lie_bracket: arity mismatch");
    PolyVectorField r;
    r.components.reserve(v.nvars());
    for (unsigned i = 0; i < v.nvars(); ++i)
        r.components.push_back(v.apply(w.components[i]) - w.apply(v.components[i]));
    return r;
}

}  // namespace carnot
