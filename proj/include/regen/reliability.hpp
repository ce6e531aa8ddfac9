#pragma once

#include <cstdint>
#include <vector>

#include "regen/model.hpp"

namespace regen {

// Repair that contacts d_prime >= d helpers, each sending beta fragments.
// A helper's whole batch survives or is lost as one unit (the per-node
// binomial model); regeneration succeeds when at least d batches arrive.
struct HelperScheme {
    int d = 0;        // helpers whose batches suffice
    int d_prime = 0;  // helpers actually transmitting
    Rational beta;    // fragments per helper

    HelperScheme(int d_, int d_prime_, Rational beta_) : d(d_), d_prime(d_prime_), beta(std::move(beta_)) {
        if (d < 1 || d_prime < d) throw std::invalid_argument("HelperScheme: need 1 <= d <= d_prime");
        if (!(beta > Rational(0))) throw std::invalid_argument("HelperScheme: beta must be positive");
    }
    Rational bandwidth() const { return Rational(d_prime) * beta; }  // gamma' = d' beta
};

// Per-fragment repetition repair: fragment j is sent r_j times and must
// arrive at least once.
struct RepetitionScheme {
    std::vector<int> counts;

    explicit RepetitionScheme(std::vector<int> counts_) : counts(std::move(counts_)) {
        if (counts.empty()) throw std::invalid_argument("RepetitionScheme: counts must be non-empty");
        for (int r : counts)
            if (r < 1) throw std::invalid_argument("RepetitionScheme: every count must be >= 1");
    }
};

// Split-storage repair scheme: each node stores alpha1 + alpha2 fragments.
// Any k nodes' alpha1 layers rebuild the file; each helper sends beta1
// fragments encoded from its alpha1 layer and beta2 extra fragments funded
// by the alpha2 surplus. The two batches of one helper ride independent
// links.
struct TwoLayerAllocation {
    Rational alpha1;
    Rational alpha2;
    Rational beta1;
    Rational beta2;

    TwoLayerAllocation(Rational a1, Rational a2, Rational b1, Rational b2)
        : alpha1(std::move(a1)), alpha2(std::move(a2)), beta1(std::move(b1)), beta2(std::move(b2)) {
        if (!(alpha1 > Rational(0))) throw std::invalid_argument("TwoLayerAllocation: alpha1 must be positive");
        if (alpha2.is_negative() || beta2.is_negative())
            throw std::invalid_argument("TwoLayerAllocation: alpha2, beta2 must be non-negative");
        if (!(beta1 > Rational(0))) throw std::invalid_argument("TwoLayerAllocation: beta1 must be positive");
        if (beta1 > alpha1) throw std::invalid_argument("TwoLayerAllocation: beta1 <= alpha1 required");
        if (beta2 > alpha2) throw std::invalid_argument("TwoLayerAllocation: beta2 <= alpha2 required");
    }
    Rational storage() const { return alpha1 + alpha2; }
    Rational bandwidth(int d) const { return Rational(d) * (beta1 + beta2); }
};

// Exact C(n, k); n must stay below 63 so the value fits in 64 bits.
std::uint64_t binomial_exact(int n, int k);

// P[at least d of d' helper batches arrive] = sum_{i=d}^{d'} C(d',i)(1-e)^i e^(d'-i).
double p_success_helpers(const HelperScheme& s, const ChannelModel& ch);

// P[every fragment arrives at least once] = prod_j (1 - eps^{r_j}).
double p_success_repetition(const RepetitionScheme& s, const ChannelModel& ch);

// Residual file mass the arriving batches must cover:
//   M - sum_{i=1}^{k-1} min(alpha1, (d-i) beta1).
Rational twolayer_threshold(const SystemParams& p, const TwoLayerAllocation& a);

// Regeneration indicator with d1 surviving beta1 batches and d2 surviving
// beta2 batches: d1 beta1 + d2 beta2 >= twolayer_threshold. Exact.
bool regen_condition(const SystemParams& p, const TwoLayerAllocation& a, int d1, int d2);

// P[successful regeneration] of the two-layer scheme: double binomial over
// (d1, d2) weighted by the regen_condition indicator. Returns exactly 1.0
// when the indicator holds even at (0, 0).
double p_success_twolayer(const SystemParams& p, const TwoLayerAllocation& a, const ChannelModel& ch);

}  // namespace regen
