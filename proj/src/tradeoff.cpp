#include "regen/tradeoff.hpp"

namespace regen {

const char* family_name(Family f) {
    switch (f) {
        case Family::MSR: return "MSR";
        case Family::MBR: return "MBR";
        case Family::Interior: return "INTERIOR";
    }
    return "?";
}

CodePoint msr_point(const SystemParams& p) {
    Rational alpha = p.M / Rational(p.k);
    Rational beta = p.M / Rational(static_cast<std::int64_t>(p.k) * (p.d - p.k + 1));
    return CodePoint{alpha, beta, Rational(p.d) * beta, Family::MSR};
}

CodePoint mbr_point(const SystemParams& p) {
    std::int64_t den = static_cast<std::int64_t>(p.k) * (2ll * p.d - p.k + 1);
    Rational beta = Rational(2) * p.M / Rational(den);
    Rational alpha = Rational(p.d) * beta;
    return CodePoint{alpha, beta, alpha, Family::MBR};
}

Rational tradeoff_f(const SystemParams& p, int i) {
    if (i < 0 || i > p.k - 1) throw std::invalid_argument("tradeoff_f: i out of [0, k-1]");
    std::int64_t den = (2ll * p.k - i - 1) * i + 2ll * p.k * (p.d - p.k + 1);
    return Rational(2ll * p.d) * p.M / Rational(den);
}

Rational tradeoff_g(const SystemParams& p, int i) {
    if (i < 0 || i > p.k - 1) throw std::invalid_argument("tradeoff_g: i out of [0, k-1]");
    return Rational((2ll * p.d - 2ll * p.k + i + 1) * i, 2ll * p.d);
}

std::optional<Rational> tradeoff_alpha_star(const SystemParams& p, const Rational& gamma,
                                            const ChannelModel& ch) {
    if (!(gamma > Rational(0))) throw std::invalid_argument("tradeoff_alpha_star: gamma must be positive");
    const Rational s = ch.survive();
    // gamma >= f(0)/(1-eps): storage floor M/k.
    if (gamma * s >= tradeoff_f(p, 0)) return p.M / Rational(p.k);
    for (int i = 1; i <= p.k - 1; ++i) {
        if (gamma * s >= tradeoff_f(p, i)) {
            return (p.M - tradeoff_g(p, i) * s * gamma) / Rational(p.k - i);
        }
    }
    return std::nullopt;  // below the MBR bandwidth: no code exists
}

bool cut_feasible(const SystemParams& p, const Rational& alpha, const Rational& beta,
                  const ChannelModel& ch) {
    if (alpha.is_negative() || beta.is_negative())
        throw std::invalid_argument("cut_feasible: alpha and beta must be non-negative");
    const Rational delivered = ch.survive() * beta;  // expected per-helper delivery
    Rational total(0);
    for (int i = 0; i < p.k; ++i) {
        total += min(Rational(p.d - i) * delivered, alpha);
    }
    return total >= p.M;
}

}  // namespace regen
