#pragma once

#include <stdexcept>

#include "regen/rational.hpp"

namespace regen {

// Geometry of an (n, k, d) regenerating-code storage system holding a file of
// M fragments: any k of the n nodes can rebuild the file, and a lossless
// repair contacts d helpers.
struct SystemParams {
    Rational M;  // file size in fragments
    int n = 0;   // storage nodes
    int k = 0;   // reconstruction threshold
    int d = 0;   // helpers contacted in lossless repair

    SystemParams(Rational file_size, int n_, int k_, int d_) : M(std::move(file_size)), n(n_), k(k_), d(d_) {
        if (!(M > Rational(0))) throw std::invalid_argument("SystemParams: M must be positive");
        if (k < 1 || k > n - 1) throw std::invalid_argument("SystemParams: need 1 <= k <= n-1");
        if (d < k || d > n - 1) throw std::invalid_argument("SystemParams: need k <= d <= n-1");
    }
};

// Per-fragment erasure probability. Erasures are independent across fragments,
// links and repetitions. epsilon is kept exact so that the tradeoff breakpoints
// f(i)/(1-eps) and the cut test stay exact rationals; probability computations
// use the double view.
struct ChannelModel {
    Rational epsilon;

    explicit ChannelModel(Rational eps) : epsilon(std::move(eps)) {
        if (epsilon.is_negative() || epsilon >= Rational(1))
            throw std::invalid_argument("ChannelModel: need 0 <= epsilon < 1");
    }
    double epsilon_d() const { return epsilon.to_double(); }
    Rational survive() const { return Rational(1) - epsilon; }  // 1 - eps, exact
};

enum class Family { MSR, MBR, Interior };

const char* family_name(Family f);

// An (alpha, beta) operating point on the storage-bandwidth tradeoff.
// gamma = d * beta always holds exactly by construction.
struct CodePoint {
    Rational alpha;  // per-node storage, fragments
    Rational beta;   // fragments sent per helper
    Rational gamma;  // total repair bandwidth, d * beta
    Family family = Family::Interior;
};

}  // namespace regen
