#include "regen/bigint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace regen {

namespace {
constexpr std::uint64_t kBase = 1ull << 32;
}

BigInt::BigInt(std::int64_t v) {
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    // Avoid overflow on INT64_MIN.
    std::uint64_t mag = v < 0 ? ~static_cast<std::uint64_t>(v) + 1 : static_cast<std::uint64_t>(v);
    limbs_.push_back(static_cast<std::uint32_t>(mag & 0xFFFFFFFFu));
    if (mag >> 32) limbs_.push_back(static_cast<std::uint32_t>(mag >> 32));
}

void BigInt::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) sign_ = 0;
}

int BigInt::cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    const auto& big = a.size() >= b.size() ? a : b;
    const auto& small = a.size() >= b.size() ? b : a;
    std::vector<std::uint32_t> out(big.size() + 1, 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < big.size(); ++i) {
        std::uint64_t s = carry + big[i] + (i < small.size() ? small[i] : 0);
        out[i] = static_cast<std::uint32_t>(s & 0xFFFFFFFFu);
        carry = s >> 32;
    }
    out[big.size()] = static_cast<std::uint32_t>(carry);
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out(a.size(), 0);
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::int64_t s = static_cast<std::int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
        if (s < 0) {
            s += static_cast<std::int64_t>(kBase);
            borrow = 1;
        } else {
            borrow = 0;
        }
        out[i] = static_cast<std::uint32_t>(s);
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

std::vector<std::uint32_t> BigInt::mul_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint32_t> out(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::uint64_t carry = 0;
        std::uint64_t ai = a[i];
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::uint64_t cur = out[i + j] + ai * b[j] + carry;
            out[i + j] = static_cast<std::uint32_t>(cur & 0xFFFFFFFFu);
            carry = cur >> 32;
        }
        std::size_t pos = i + b.size();
        while (carry) {
            std::uint64_t cur = out[pos] + carry;
            out[pos] = static_cast<std::uint32_t>(cur & 0xFFFFFFFFu);
            carry = cur >> 32;
            ++pos;
        }
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

// Bitwise shift-subtract long division; fine at the limb counts this project sees.
void BigInt::divmod_mag(const std::vector<std::uint32_t>& num,
                        const std::vector<std::uint32_t>& den,
                        std::vector<std::uint32_t>& q,
                        std::vector<std::uint32_t>& r) {
    q.assign(num.size(), 0);
    r.clear();
    if (cmp_mag(num, den) < 0) {
        q.clear();
        r = num;
        return;
    }
    int top_bit = 0;
    {
        std::uint32_t hi = num.back();
        while (hi) {
            ++top_bit;
            hi >>= 1;
        }
    }
    int total_bits = static_cast<int>((num.size() - 1) * 32) + top_bit;
    for (int bit = total_bits - 1; bit >= 0; --bit) {
        // r = (r << 1) | num[bit]
        std::uint32_t carry = (num[bit / 32] >> (bit % 32)) & 1u;
        for (std::size_t i = 0; i < r.size(); ++i) {
            std::uint32_t next = r[i] >> 31;
            r[i] = (r[i] << 1) | carry;
            carry = next;
        }
        if (carry) r.push_back(carry);
        if (cmp_mag(r, den) >= 0) {
            r = sub_mag(r, den);
            q[bit / 32] |= (1u << (bit % 32));
        }
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
}

BigInt BigInt::abs() const {
    BigInt out = *this;
    if (out.sign_ < 0) out.sign_ = 1;
    return out;
}

BigInt BigInt::negated() const {
    BigInt out = *this;
    out.sign_ = -out.sign_;
    return out;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    BigInt out;
    if (a.sign_ == b.sign_) {
        out.sign_ = a.sign_;
        out.limbs_ = BigInt::add_mag(a.limbs_, b.limbs_);
    } else {
        int c = BigInt::cmp_mag(a.limbs_, b.limbs_);
        if (c == 0) return BigInt();
        if (c > 0) {
            out.sign_ = a.sign_;
            out.limbs_ = BigInt::sub_mag(a.limbs_, b.limbs_);
        } else {
            out.sign_ = b.sign_;
            out.limbs_ = BigInt::sub_mag(b.limbs_, a.limbs_);
        }
    }
    out.trim();
    return out;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + b.negated(); }

BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
    BigInt out;
    out.sign_ = a.sign_ * b.sign_;
    out.limbs_ = BigInt::mul_mag(a.limbs_, b.limbs_);
    out.trim();
    return out;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.sign_ == 0) throw std::domain_error("BigInt: division by zero");
    std::vector<std::uint32_t> qm, rm;
    divmod_mag(a.limbs_, b.limbs_, qm, rm);
    q.limbs_ = std::move(qm);
    r.limbs_ = std::move(rm);
    q.sign_ = q.limbs_.empty() ? 0 : a.sign_ * b.sign_;
    r.sign_ = r.limbs_.empty() ? 0 : a.sign_;
    q.trim();
    r.trim();
}

BigInt operator/(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    return q;
}

BigInt operator%(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    return r;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a.sign_ = a.limbs_.empty() ? 0 : 1;
    b.sign_ = b.limbs_.empty() ? 0 : 1;
    while (!b.is_zero()) {
        BigInt r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

BigInt BigInt::lcm(const BigInt& a, const BigInt& b) {
    if (a.is_zero() || b.is_zero()) return BigInt();
    BigInt g = gcd(a, b);
    return (a.abs() / g) * b.abs();
}

bool operator==(const BigInt& a, const BigInt& b) {
    return a.sign_ == b.sign_ && a.limbs_ == b.limbs_;
}

bool operator<(const BigInt& a, const BigInt& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
    int c = BigInt::cmp_mag(a.limbs_, b.limbs_);
    return a.sign_ >= 0 ? c < 0 : c > 0;
}

std::uint32_t BigInt::div_small(std::uint32_t d) {
    std::uint64_t rem = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        std::uint64_t cur = (rem << 32) | limbs_[i];
        limbs_[i] = static_cast<std::uint32_t>(cur / d);
        rem = cur % d;
    }
    trim();
    return static_cast<std::uint32_t>(rem);
}

void BigInt::mul_small_add(std::uint32_t m, std::uint32_t add) {
    std::uint64_t carry = add;
    for (auto& limb : limbs_) {
        std::uint64_t cur = static_cast<std::uint64_t>(limb) * m + carry;
        limb = static_cast<std::uint32_t>(cur & 0xFFFFFFFFu);
        carry = cur >> 32;
    }
    while (carry) {
        limbs_.push_back(static_cast<std::uint32_t>(carry & 0xFFFFFFFFu));
        carry >>= 32;
    }
    if (!limbs_.empty()) {
        if (sign_ == 0) sign_ = 1;
    }
    trim();
}

BigInt BigInt::from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("BigInt: empty string");
    std::size_t pos = 0;
    int sign = 1;
    if (s[0] == '-' || s[0] == '+') {
        sign = s[0] == '-' ? -1 : 1;
        pos = 1;
    }
    if (pos == s.size()) throw std::invalid_argument("BigInt: no digits in '" + s + "'");
    BigInt out;
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        if (c < '0' || c > '9') throw std::invalid_argument("BigInt: bad digit in '" + s + "'");
        out.mul_small_add(10, static_cast<std::uint32_t>(c - '0'));
    }
    if (!out.limbs_.empty()) out.sign_ = sign;
    return out;
}

std::string BigInt::to_string() const {
    if (is_zero()) return "0";
    BigInt tmp = abs();
    std::vector<std::uint32_t> chunks;  // base 1e9, little endian
    while (!tmp.is_zero()) chunks.push_back(tmp.div_small(1000000000u));
    std::string out = sign_ < 0 ? "-" : "";
    out += std::to_string(chunks.back());
    for (std::size_t i = chunks.size() - 1; i-- > 0;) {
        std::string part = std::to_string(chunks[i]);
        out += std::string(9 - part.size(), '0') + part;
    }
    return out;
}

double BigInt::to_double() const {
    double mag = 0.0;
    for (std::size_t i = limbs_.size(); i-- > 0;) mag = mag * 4294967296.0 + limbs_[i];
    return sign_ < 0 ? -mag : mag;
}

bool BigInt::fits_int64() const {
    if (limbs_.size() > 2) return false;
    if (limbs_.size() < 2) return true;
    std::uint64_t mag = (static_cast<std::uint64_t>(limbs_[1]) << 32) | limbs_[0];
    return sign_ < 0 ? mag <= (1ull << 63) : mag < (1ull << 63);
}

std::int64_t BigInt::to_int64() const {
    if (!fits_int64()) throw std::overflow_error("BigInt: value does not fit int64");
    if (is_zero()) return 0;
    std::uint64_t mag = limbs_[0];
    if (limbs_.size() == 2) mag |= static_cast<std::uint64_t>(limbs_[1]) << 32;
    return sign_ < 0 ? -static_cast<std::int64_t>(mag - 1) - 1 : static_cast<std::int64_t>(mag);
}

}  // namespace regen
