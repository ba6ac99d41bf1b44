#pragma once

// Exact rational arithmetic. All market data is rational; no floating point
// is used anywhere in the core. Backed by Boost.Multiprecision's cpp_rational,
// which keeps values normalized (lowest terms, positive denominator).

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fttc {

using BigInt = boost::multiprecision::cpp_int;

class Rational {
public:
    Rational() : v_(0) {}
    Rational(std::int64_t n) : v_(n) {}
    Rational(std::int64_t num, std::int64_t den) {
        if (den == 0) throw std::invalid_argument("rational: zero denominator");
        v_ = backend(num);
        v_ /= den;
    }
    Rational(const BigInt& num, const BigInt& den) {
        if (den == 0) throw std::invalid_argument("rational: zero denominator");
        v_ = backend(num);
        v_ /= backend(den);
    }

    BigInt num() const { return numerator(v_); }
    BigInt den() const { return denominator(v_); }

    bool is_zero() const { return v_.is_zero(); }
    bool is_integer() const { return denominator(v_) == 1; }
    bool is_negative() const { return v_ < 0; }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::invalid_argument("rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { Rational r; r.v_ = -a.v_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    int sign() const { return v_.sign(); }

    /// Renders "p/q" in lowest terms, or just "p" for integers.
    std::string str() const;

private:
    using backend = boost::multiprecision::cpp_rational;
    backend v_;
};

/// Parses "p/q", an integer string, or a finite decimal string ("0.99" -> 99/100).
/// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace fttc
