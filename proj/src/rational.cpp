#include "regen/rational.hpp"

#include <stdexcept>

namespace regen {

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
    normalize();
}

void Rational::normalize() {
    if (den_.is_negative()) {
        num_ = num_.negated();
        den_ = den_.negated();
    }
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    if (!g.is_one()) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
}

Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational: division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

Rational Rational::operator-() const {
    Rational out = *this;
    out.num_ = out.num_.negated();
    return out;
}

bool operator<(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
}

double Rational::to_double() const { return num_.to_double() / den_.to_double(); }

std::string Rational::to_string() const {
    if (den_.is_one()) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

Rational Rational::from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Rational: empty string");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        BigInt num = BigInt::from_string(s.substr(0, slash));
        BigInt den = BigInt::from_string(s.substr(slash + 1));
        return Rational(std::move(num), std::move(den));
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(BigInt::from_string(s), BigInt(1));
    std::string head = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    if (frac.empty()) return Rational(BigInt::from_string(head), BigInt(1));
    bool neg = !head.empty() && head[0] == '-';
    std::string digits = (head == "-" || head == "+" || head.empty())
                             ? frac
                             : (neg || head[0] == '+' ? head.substr(1) : head) + frac;
    BigInt num = BigInt::from_string(digits);
    BigInt den(1);
    for (std::size_t i = 0; i < frac.size(); ++i) den = den * BigInt(10);
    if (neg) num = num.negated();
    return Rational(std::move(num), std::move(den));
}

}  // namespace regen
