#include "regen/reliability.hpp"

#include <cmath>

namespace regen {

namespace {

// Kahan-compensated accumulator.
struct Kahan {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        double y = x - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

double clamp01(double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); }

}  // namespace

std::uint64_t binomial_exact(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (n >= 63) throw std::invalid_argument("binomial_exact: n too large for exact 64-bit value");
    if (k > n - k) k = n - k;
    std::uint64_t c = 1;
    for (int i = 1; i <= k; ++i) {
        c = c * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return c;
}

double p_success_helpers(const HelperScheme& s, const ChannelModel& ch) {
    const double eps = ch.epsilon_d();
    const double q = 1.0 - eps;
    Kahan acc;
    for (int i = s.d; i <= s.d_prime; ++i) {
        acc.add(static_cast<double>(binomial_exact(s.d_prime, i)) * std::pow(q, i) *
                std::pow(eps, s.d_prime - i));
    }
    return clamp01(acc.sum);
}

double p_success_repetition(const RepetitionScheme& s, const ChannelModel& ch) {
    const double eps = ch.epsilon_d();
    double p = 1.0;
    for (int r : s.counts) p *= 1.0 - std::pow(eps, r);
    return clamp01(p);
}

Rational twolayer_threshold(const SystemParams& p, const TwoLayerAllocation& a) {
    Rational covered(0);
    for (int i = 1; i <= p.k - 1; ++i) {
        covered += min(a.alpha1, Rational(p.d - i) * a.beta1);
    }
    return p.M - covered;
}

bool regen_condition(const SystemParams& p, const TwoLayerAllocation& a, int d1, int d2) {
    if (d1 < 0 || d1 > p.d || d2 < 0 || d2 > p.d)
        throw std::invalid_argument("regen_condition: d1, d2 must lie in [0, d]");
    return Rational(d1) * a.beta1 + Rational(d2) * a.beta2 >= twolayer_threshold(p, a);
}

double p_success_twolayer(const SystemParams& p, const TwoLayerAllocation& a, const ChannelModel& ch) {
    const Rational threshold = twolayer_threshold(p, a);
    if (threshold <= Rational(0)) return 1.0;  // succeeds with zero arrivals

    const double eps = ch.epsilon_d();
    const double q = 1.0 - eps;
    const int d = p.d;

    std::vector<double> pmf(d + 1);
    for (int i = 0; i <= d; ++i) {
        pmf[i] = static_cast<double>(binomial_exact(d, i)) * std::pow(q, i) * std::pow(eps, d - i);
    }
    std::vector<double> tail(d + 2, 0.0);  // tail[j] = P[d2 >= j]
    for (int i = d; i >= 0; --i) tail[i] = tail[i + 1] + pmf[i];

    // Smallest sufficient d2 is non-increasing in d1, so one descending
    // pointer covers the whole (d1, d2) indicator grid.
    Kahan acc;
    int d2min = d + 1;
    for (int d1 = 0; d1 <= d; ++d1) {
        const Rational need = threshold - Rational(d1) * a.beta1;
        if (!(need > Rational(0))) {
            d2min = 0;
        } else if (!a.beta2.is_zero()) {
            while (d2min > 0 && Rational(d2min - 1) * a.beta2 >= need) --d2min;
        } else {
            d2min = d + 1;
        }
        acc.add(pmf[d1] * tail[d2min]);
    }
    return clamp01(acc.sum);
}

}  // namespace regen
