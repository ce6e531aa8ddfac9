#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "regen/reliability.hpp"

using namespace regen;

namespace {

Rational rat(long n, long d = 1) { return Rational(n, d); }

// Independent oracle: enumerate every helper-survival pattern.
double enumerate_helpers(int d, int d_prime, double eps) {
    double total = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << d_prime); ++mask) {
        int arrived = 0;
        double w = 1.0;
        for (int b = 0; b < d_prime; ++b) {
            if (mask >> b & 1u) {
                ++arrived;
                w *= 1.0 - eps;
            } else {
                w *= eps;
            }
        }
        if (arrived >= d) total += w;
    }
    return total;
}

}  // namespace

TEST_CASE("binomial coefficients") {
    CHECK(binomial_exact(0, 0) == 1);
    CHECK(binomial_exact(9, 7) == 36);
    CHECK(binomial_exact(9, 0) == 1);
    CHECK(binomial_exact(9, 10) == 0);
    CHECK(binomial_exact(9, -1) == 0);
    CHECK(binomial_exact(52, 26) == 495918532948104ull);
    CHECK_THROWS_AS(binomial_exact(63, 31), std::invalid_argument);
}

TEST_CASE("helper scheme guards") {
    CHECK_THROWS_AS(HelperScheme(5, 4, rat(1)), std::invalid_argument);
    CHECK_THROWS_AS(HelperScheme(0, 4, rat(1)), std::invalid_argument);
    CHECK_THROWS_AS(HelperScheme(3, 4, rat(0)), std::invalid_argument);
    CHECK(HelperScheme(5, 6, rat(2, 3)).bandwidth() == rat(4));
}

TEST_CASE("p_success_helpers worked values") {
    ChannelModel ch{rat(1, 10)};
    CHECK(p_success_helpers(HelperScheme(7, 9, rat(2, 5)), ch) ==
          doctest::Approx(0.947027862).epsilon(1e-9));
    CHECK(p_success_helpers(HelperScheme(5, 6, rat(2, 3)), ch) ==
          doctest::Approx(0.885735).epsilon(1e-9));
    CHECK(p_success_helpers(HelperScheme(4, 4, rat(1)), ChannelModel{rat(0)}) == 1.0);
}

TEST_CASE("p_success_helpers equals pattern enumeration up to d'=12") {
    for (auto [d, dp] : {std::pair{3, 5}, std::pair{7, 9}, std::pair{5, 12}, std::pair{1, 8}}) {
        for (long e : {0l, 1l, 3l, 5l, 9l}) {
            ChannelModel ch{rat(e, 10)};
            const double direct = p_success_helpers(HelperScheme(d, dp, rat(1)), ch);
            CHECK(std::fabs(direct - enumerate_helpers(d, dp, ch.epsilon_d())) <= 1e-12);
        }
    }
}

TEST_CASE("repetition scheme") {
    ChannelModel ch{rat(1, 10)};
    CHECK(p_success_repetition(RepetitionScheme({2, 1, 1}), ch) ==
          doctest::Approx(0.8019).epsilon(1e-12));
    CHECK(p_success_repetition(RepetitionScheme({1}), ChannelModel{rat(3, 10)}) ==
          doctest::Approx(0.7).epsilon(1e-12));
    CHECK(p_success_repetition(RepetitionScheme({3, 3}), ChannelModel{rat(1, 2)}) ==
          doctest::Approx(0.765625).epsilon(1e-12));
    CHECK_THROWS_AS(RepetitionScheme({}), std::invalid_argument);
    CHECK_THROWS_AS(RepetitionScheme({2, 0}), std::invalid_argument);
}

TEST_CASE("two-layer allocation guards") {
    CHECK_THROWS_AS(TwoLayerAllocation(rat(0), rat(1), rat(1), rat(1)), std::invalid_argument);
    CHECK_THROWS_AS(TwoLayerAllocation(rat(2), rat(1), rat(3), rat(1)), std::invalid_argument);
    CHECK_THROWS_AS(TwoLayerAllocation(rat(2), rat(1), rat(1), rat(2)), std::invalid_argument);
    CHECK_THROWS_AS(TwoLayerAllocation(rat(2), rat(-1), rat(1), rat(0)), std::invalid_argument);
    const TwoLayerAllocation a(rat(2), rat(1), rat(1), rat(1));
    CHECK(a.storage() == rat(3));
    CHECK(a.bandwidth(3) == rat(6));
}

TEST_CASE("regeneration condition") {
    SystemParams p(rat(4), 4, 2, 3);
    TwoLayerAllocation a(rat(2), rat(1), rat(1), rat(1));
    CHECK(regen_condition(p, a, 1, 1));        // 1 + 1 + min(2,2) = 4
    CHECK_FALSE(regen_condition(p, a, 0, 1));  // 0 + 1 + 2 = 3
    CHECK_THROWS_AS(regen_condition(p, a, -1, 0), std::invalid_argument);
    CHECK_THROWS_AS(regen_condition(p, a, 0, 4), std::invalid_argument);

    // MSR point with no extra layer: d1 = d reduces to the lossless cut
    TwoLayerAllocation msr_like(rat(2), rat(0), rat(1), rat(0));
    CHECK(regen_condition(p, msr_like, 3, 0));
}

TEST_CASE("two-layer threshold") {
    SystemParams p(rat(4), 4, 2, 3);
    CHECK(twolayer_threshold(p, TwoLayerAllocation(rat(2), rat(1), rat(1), rat(1))) == rat(2));
    SystemParams p9(rat(1), 10, 5, 9);
    CHECK(twolayer_threshold(p9, TwoLayerAllocation(rat(1, 5), rat(0), rat(1, 25), rat(0))) ==
          rat(1, 5));
}

TEST_CASE("p_success_twolayer worked values") {
    SystemParams p(rat(4), 4, 2, 3);
    ChannelModel ch{rat(1, 10)};
    const double extra = p_success_twolayer(p, TwoLayerAllocation(rat(2), rat(1), rat(1), rat(1)), ch);
    // success iff d1 + d2 >= 2: 1 - eps^6 - 6(1-eps)eps^5
    const double eps = 0.1;
    const double hand = 1.0 - std::pow(eps, 6) - 6.0 * (1.0 - eps) * std::pow(eps, 5);
    CHECK(extra == doctest::Approx(hand).epsilon(1e-12));
    CHECK(extra == doctest::Approx(0.999945).epsilon(1e-9));

    const double bare = p_success_twolayer(p, TwoLayerAllocation(rat(2), rat(0), rat(1), rat(0)), ch);
    CHECK(bare == doctest::Approx(0.972).epsilon(1e-9));  // 3(0.81)(0.1) + 0.729
}

TEST_CASE("two-layer at eps = 0 collapses to the d,d indicator") {
    SystemParams p(rat(4), 4, 2, 3);
    ChannelModel lossless{rat(0)};
    TwoLayerAllocation good(rat(2), rat(1), rat(1), rat(1));
    CHECK(p_success_twolayer(p, good, lossless) == 1.0);
    TwoLayerAllocation weak(rat(1, 2), rat(0), rat(1, 2), rat(0));
    CHECK(regen_condition(p, weak, 3, 0) == false);
    CHECK(p_success_twolayer(p, weak, lossless) == 0.0);
}

TEST_CASE("beta2 = 0 degenerates to a single binomial with the same indicator") {
    std::mt19937_64 rng(41);
    for (int it = 0; it < 40; ++it) {
        const int k = 2 + static_cast<int>(rng() % 3);
        const int d = k + static_cast<int>(rng() % 3);
        SystemParams p(rat(2 + static_cast<long>(rng() % 6)), d + 2, k, d);
        const Rational alpha1 = p.M / rat(k) * rat(1 + static_cast<long>(rng() % 3));
        const Rational beta1 = alpha1 / rat(1 + static_cast<long>(rng() % 4));
        TwoLayerAllocation a(alpha1, rat(0), beta1, rat(0));
        ChannelModel ch{rat(1 + static_cast<long>(rng() % 8), 10)};
        const double eps = ch.epsilon_d();
        double expect = 0.0;
        for (int d1 = 0; d1 <= d; ++d1) {
            if (!regen_condition(p, a, d1, 0)) continue;
            expect += static_cast<double>(binomial_exact(d, d1)) * std::pow(1 - eps, d1) *
                      std::pow(eps, d - d1);
        }
        CHECK(p_success_twolayer(p, a, ch) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("reliability monotonicity properties") {
    // more helpers never hurt
    for (int d : {2, 4, 6}) {
        ChannelModel ch{rat(2, 10)};
        double prev = -1.0;
        for (int dp = d; dp <= 11; ++dp) {
            const double ps = p_success_helpers(HelperScheme(d, dp, rat(1)), ch);
            CHECK(ps >= prev - 1e-15);
            prev = ps;
        }
    }
    // non-increasing in eps, bounded in [0,1]
    SystemParams p(rat(4), 4, 2, 3);
    TwoLayerAllocation a(rat(2), rat(1), rat(1), rat(1));
    double prev_h = 2.0, prev_t = 2.0;
    for (int j = 0; j <= 19; ++j) {
        ChannelModel ch{rat(j, 20)};
        const double h = p_success_helpers(HelperScheme(5, 8, rat(1)), ch);
        const double t = p_success_twolayer(p, a, ch);
        CHECK(h >= 0.0);
        CHECK(h <= 1.0);
        CHECK(t >= 0.0);
        CHECK(t <= 1.0);
        CHECK(h <= prev_h + 1e-15);
        CHECK(t <= prev_t + 1e-15);
        prev_h = h;
        prev_t = t;
    }
    // indicator is monotone in (d1, d2)
    for (int d1 = 0; d1 <= 3; ++d1) {
        for (int d2 = 0; d2 <= 3; ++d2) {
            if (!regen_condition(p, a, d1, d2)) continue;
            if (d1 < 3) CHECK(regen_condition(p, a, d1 + 1, d2));
            if (d2 < 3) CHECK(regen_condition(p, a, d1, d2 + 1));
        }
    }
}
