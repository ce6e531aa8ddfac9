#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace regen {

// Arbitrary-precision signed integer: sign plus base-2^32 magnitude limbs,
// little endian, no leading zero limbs. Covers what the exact-rational layer
// needs (ring ops, divmod, gcd, decimal I/O); not a general bignum.
class BigInt {
public:
    BigInt() = default;
    BigInt(std::int64_t v);

    static BigInt from_string(const std::string& s);

    bool is_zero() const { return sign_ == 0; }
    bool is_one() const { return sign_ == 1 && limbs_.size() == 1 && limbs_[0] == 1; }
    bool is_negative() const { return sign_ < 0; }
    int sign() const { return sign_; }

    BigInt abs() const;
    BigInt negated() const;

    std::string to_string() const;
    double to_double() const;
    // Throws std::overflow_error when the value does not fit.
    std::int64_t to_int64() const;
    bool fits_int64() const;

    friend BigInt operator+(const BigInt& a, const BigInt& b);
    friend BigInt operator-(const BigInt& a, const BigInt& b);
    friend BigInt operator*(const BigInt& a, const BigInt& b);
    friend BigInt operator/(const BigInt& a, const BigInt& b);  // truncating
    friend BigInt operator%(const BigInt& a, const BigInt& b);

    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

    // Truncating division: q = a / b, r = a - q*b (sign of r follows a).
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
    static BigInt gcd(BigInt a, BigInt b);  // non-negative
    static BigInt lcm(const BigInt& a, const BigInt& b);

    // Total order.
    friend bool operator==(const BigInt& a, const BigInt& b);
    friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
    friend bool operator<(const BigInt& a, const BigInt& b);
    friend bool operator>(const BigInt& a, const BigInt& b) { return b < a; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return !(b < a); }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return !(a < b); }

private:
    int sign_ = 0;                      // -1, 0, +1
    std::vector<std::uint32_t> limbs_;  // empty iff zero

    void trim();
    static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    // Requires |a| >= |b|.
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> mul_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    static void divmod_mag(const std::vector<std::uint32_t>& num,
                           const std::vector<std::uint32_t>& den,
                           std::vector<std::uint32_t>& q,
                           std::vector<std::uint32_t>& r);
    std::uint32_t div_small(std::uint32_t d);  // in place, returns remainder
    void mul_small_add(std::uint32_t m, std::uint32_t add);
};

}  // namespace regen
