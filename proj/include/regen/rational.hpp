#pragma once

#include <string>

#include "regen/bigint.hpp"

namespace regen {

// Exact rational number. Always normalized: positive denominator, gcd(num, den) = 1,
// zero stored as 0/1. Equality on Rational is therefore true value equality, which
// is what the code-parameter contracts rely on.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t v) : num_(v), den_(1) {}
    Rational(std::int64_t num, std::int64_t den) : Rational(BigInt(num), BigInt(den)) {}
    Rational(BigInt num, BigInt den);

    // Accepts "p/q", plain integers, and decimal literals such as "3.6" or "-0.125".
    static Rational from_string(const std::string& s);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_negative() const { return num_.is_negative(); }
    bool is_integer() const { return den_.is_one(); }

    double to_double() const;
    // "p/q", or just "p" when the denominator is 1.
    std::string to_string() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const;

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b);
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

private:
    BigInt num_;
    BigInt den_;  // > 0
    void normalize();
};

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace regen
