#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace carnot {

/// Thrown when exact rational arithmetic would exceed 64-bit storage.
class OverflowError : public std::runtime_error {
public:
    explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

/// Exact rational number with 64-bit numerator/denominator, always normalized
/// (den > 0, gcd(num, den) == 1). Group coefficient polynomials stay exact
/// through products and brackets; evaluation happens in double.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
        if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
        normalize();
    }

    /// Exact conversion: every finite double is sign * mantissa * 2^e.
    static Rational from_double(double v) {
        if (!std::isfinite(v)) throw std::invalid_argument("Rational: non-finite value");
        if (v == 0.0) return Rational(0);
        int e = 0;
        double m = std::frexp(v, &e);  // v = m * 2^e, |m| in [0.5, 1)
        auto n = static_cast<std::int64_t>(std::ldexp(m, 53));
        int e2 = e - 53;
        Rational r;
        if (e2 >= 0) {
            if (e2 > 10) throw OverflowError("Rational::from_double: magnitude too large");
            r.num_ = n << e2;
            r.den_ = 1;
        } else {
            if (-e2 > 62) throw OverflowError("Rational::from_double: magnitude too small");
            r.num_ = n;
            r.den_ = std::int64_t(1) << (-e2);
        }
        r.normalize();
        return r;
    }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_zero() const { return num_ == 0; }

    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = (__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_;
        __int128 d = (__int128)a.den_ * b.den_;
        return make_checked(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make_checked((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::invalid_argument("Rational: division by zero");
        return make_checked((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

    std::string str() const {
        return den_ == 1 ? std::to_string(num_)
                         : std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;

    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    static Rational make_checked(__int128 n, __int128 d) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw OverflowError("Rational: 64-bit overflow in arithmetic");
        Rational r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        if (r.num_ == 0) r.den_ = 1;
        return r;
    }

    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a < 0 ? -a : a;
    }
};

}  // namespace carnot
