#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "regen/validate.hpp"

using namespace regen;

namespace {
Rational rat(long n, long d = 1) { return Rational(n, d); }
}

TEST_CASE("system params invariants") {
    CHECK_THROWS_AS(SystemParams(rat(1), 10, 0, 9), std::invalid_argument);
    CHECK_THROWS_AS(SystemParams(rat(1), 10, 10, 9), std::invalid_argument);
    CHECK_THROWS_AS(SystemParams(rat(1), 10, 5, 4), std::invalid_argument);
    CHECK_THROWS_AS(SystemParams(rat(1), 10, 5, 10), std::invalid_argument);
    CHECK_THROWS_AS(SystemParams(rat(0), 10, 5, 9), std::invalid_argument);
    CHECK_THROWS_AS(ChannelModel{rat(1)}, std::invalid_argument);
    CHECK_THROWS_AS(ChannelModel{rat(-1, 10)}, std::invalid_argument);
    CHECK_NOTHROW(ChannelModel{rat(0)});
}

TEST_CASE("msr point") {
    // beta = M/(k(d-k+1)); for M=10, k=5, d=9 that is 10/25 = 2/5
    SystemParams p(rat(10), 10, 5, 9);
    const CodePoint msr = msr_point(p);
    CHECK(msr.alpha == rat(2));
    CHECK(msr.beta == rat(2, 5));
    CHECK(msr.gamma == rat(18, 5));
    CHECK(msr.family == Family::MSR);

    SystemParams p4(rat(4), 4, 2, 3);
    const CodePoint msr4 = msr_point(p4);
    CHECK(msr4.alpha == rat(2));
    CHECK(msr4.beta == rat(1));
    CHECK(msr4.gamma == rat(3));

    // d = k forces beta = M/k; with M = k both come out at 1
    SystemParams pk(rat(5), 7, 5, 5);
    CHECK(msr_point(pk).alpha == rat(1));
    CHECK(msr_point(pk).beta == rat(1));
}

TEST_CASE("mbr point reproduces the 3.6 and 4.0 bandwidth figures") {
    SystemParams p7(rat(10), 10, 5, 7);
    CHECK(mbr_point(p7).beta == rat(2, 5));
    CHECK(rat(9) * mbr_point(p7).beta == rat(18, 5));  // gamma' = 3.6

    SystemParams p5(rat(10), 10, 5, 5);
    CHECK(mbr_point(p5).beta == rat(2, 3));
    CHECK(rat(6) * mbr_point(p5).beta == rat(4));  // gamma' = 4

    for (int d = 5; d <= 9; ++d) {
        SystemParams p(rat(10), 10, 5, d);
        CHECK(mbr_point(p).alpha == mbr_point(p).gamma);  // MBR stores what it downloads
    }
}

TEST_CASE("code points never store less than an MDS share") {
    std::mt19937_64 rng(13);
    for (int it = 0; it < 60; ++it) {
        const int n = 3 + static_cast<int>(rng() % 10);
        const int k = 1 + static_cast<int>(rng() % (n - 1));
        const int d = k + static_cast<int>(rng() % (n - k));
        SystemParams p(rat(1 + static_cast<long>(rng() % 12), 1 + static_cast<long>(rng() % 5)), n, k, d);
        for (const CodePoint& pt : {msr_point(p), mbr_point(p)}) {
            CHECK(pt.alpha >= p.M / rat(k));
            CHECK(pt.gamma == rat(d) * pt.beta);
        }
        CHECK(mbr_point(p).alpha >= msr_point(p).alpha);
        CHECK(mbr_point(p).gamma <= msr_point(p).gamma);
    }
}

TEST_CASE("breakpoints f and coefficients g") {
    SystemParams p(rat(1), 10, 5, 9);
    CHECK(tradeoff_f(p, 0) == msr_point(p).gamma);
    CHECK(tradeoff_f(p, p.k - 1) == mbr_point(p).gamma);
    CHECK(tradeoff_g(p, 0) == rat(0));
    CHECK(tradeoff_g(p, 1) == rat(10, 18));
    CHECK_THROWS_AS(tradeoff_f(p, 5), std::invalid_argument);
    CHECK_THROWS_AS(tradeoff_g(p, -1), std::invalid_argument);
    for (int i = 1; i <= p.k - 1; ++i) CHECK(tradeoff_f(p, i) < tradeoff_f(p, i - 1));
}

TEST_CASE("tradeoff alpha* worked points") {
    SystemParams p(rat(1), 10, 5, 9);
    ChannelModel e0{rat(0)}, e01{rat(1, 10)};

    auto plateau = tradeoff_alpha_star(p, rat(36, 100), e0);
    REQUIRE(plateau.has_value());
    CHECK(*plateau == rat(1, 5));  // gamma = f(0) exactly: MSR plateau

    auto interior = tradeoff_alpha_star(p, rat(32, 100), e0);
    REQUIRE(interior.has_value());
    CHECK(*interior == rat(37, 180));  // (1 - (10/18)(8/25))/4
    CHECK(interior->to_double() == doctest::Approx(0.205556).epsilon(1e-5));

    CHECK_FALSE(tradeoff_alpha_star(p, rat(2, 10), e01).has_value());
    CHECK_THROWS_AS(tradeoff_alpha_star(p, rat(0), e0), std::invalid_argument);
    CHECK_THROWS_AS(tradeoff_alpha_star(p, rat(-1), e0), std::invalid_argument);
}

TEST_CASE("cut feasibility worked points") {
    SystemParams p(rat(1), 10, 5, 9);
    CHECK(cut_feasible(p, rat(1, 5), rat(1, 25), ChannelModel{rat(0)}));
    CHECK_FALSE(cut_feasible(p, rat(1, 5), rat(1, 25), ChannelModel{rat(1, 10)}));
    SystemParams p4(rat(4), 4, 2, 3);
    CHECK(cut_feasible(p4, rat(2), rat(1), ChannelModel{rat(0)}));
    CHECK_THROWS_AS(cut_feasible(p, rat(-1), rat(1), ChannelModel{rat(0)}), std::invalid_argument);
}

TEST_CASE("endpoint agreement, exact in rationals") {
    SystemParams p(rat(1), 10, 5, 9);
    for (long e : {0l, 1l, 2l, 3l}) {
        ChannelModel ch{rat(e, 10)};
        const Rational surv = Rational(1) - ch.epsilon;
        auto at_msr = tradeoff_alpha_star(p, msr_point(p).gamma / surv, ch);
        REQUIRE(at_msr.has_value());
        CHECK(*at_msr == msr_point(p).alpha);
        auto at_mbr = tradeoff_alpha_star(p, mbr_point(p).gamma / surv, ch);
        REQUIRE(at_mbr.has_value());
        CHECK(*at_mbr == mbr_point(p).alpha);
    }
}

TEST_CASE("continuity at every breakpoint") {
    for (auto [n, k, d] : {std::tuple{10, 5, 9}, std::tuple{10, 5, 7}, std::tuple{12, 7, 9}}) {
        SystemParams p(rat(3), n, k, d);
        for (long e : {0l, 1l, 3l}) {
            ChannelModel ch{rat(e, 10)};
            const Rational surv = Rational(1) - ch.epsilon;
            for (int i = 0; i <= k - 2; ++i) {
                // boundary f(i)/(1-eps) joins piece i+1 (below) to piece i
                const Rational boundary = tradeoff_f(p, i) / surv;
                const Rational just_above = boundary * rat(1000000001, 1000000000);
                auto lo = tradeoff_alpha_star(p, boundary, ch);
                auto hi = tradeoff_alpha_star(p, just_above, ch);
                REQUIRE(lo.has_value());
                REQUIRE(hi.has_value());
                CHECK(*hi <= *lo);
                // exact agreement of the two piece formulas at the boundary
                const Rational piece_i =
                    i == 0 ? p.M / rat(k)
                           : (p.M - tradeoff_g(p, i) * surv * boundary) / rat(k - i);
                const Rational piece_below =
                    (p.M - tradeoff_g(p, i + 1) * surv * boundary) / rat(k - i - 1);
                CHECK(piece_i == piece_below);
            }
        }
    }
}

TEST_CASE("alpha* equals the cut oracle on a dense gamma grid") {
    SystemParams p(rat(1), 10, 5, 9);
    for (long e : {0l, 1l, 2l, 3l}) {
        ChannelModel ch{rat(e, 10)};
        const Rational lo = mbr_point(p).gamma * rat(8, 10);
        const Rational hi = msr_point(p).gamma * rat(2);
        for (int j = 0; j < 97; ++j) {
            const Rational gamma = lo + (hi - lo) * rat(j, 96);
            const auto direct = tradeoff_alpha_star(p, gamma, ch);
            const auto oracle = cut_oracle_min_alpha(p, gamma, ch);
            REQUIRE(direct.has_value() == oracle.has_value());
            if (direct) {
                CHECK(*direct == *oracle);
                // minimality: feasible at alpha*, infeasible strictly below
                CHECK(cut_feasible(p, *direct, gamma / rat(p.d), ch));
                CHECK_FALSE(cut_feasible(p, *direct * rat(999999999, 1000000000),
                                         gamma / rat(p.d), ch));
            }
        }
    }
}

TEST_CASE("monotonicity in gamma and eps") {
    SystemParams p(rat(1), 10, 5, 9);
    std::vector<Rational> epsilons{rat(0), rat(1, 10), rat(1, 4), rat(2, 5)};
    std::vector<std::optional<Rational>> prev_curve;
    for (const auto& eps : epsilons) {
        ChannelModel ch{eps};
        std::vector<std::optional<Rational>> curve;
        std::optional<Rational> prev;
        for (int j = 0; j < 60; ++j) {
            const Rational gamma = rat(20 + 3 * j, 100);
            auto a = tradeoff_alpha_star(p, gamma, ch);
            if (a && prev) CHECK(*a <= *prev);  // non-increasing in gamma
            if (a) prev = a;
            curve.push_back(a);
        }
        if (!prev_curve.empty()) {
            for (std::size_t j = 0; j < curve.size(); ++j) {
                if (!curve[j]) continue;  // infeasible at higher eps dominates
                REQUIRE(prev_curve[j].has_value());
                CHECK(*prev_curve[j] <= *curve[j]);  // non-decreasing in eps
            }
        }
        prev_curve = curve;
    }
}

TEST_CASE("homogeneity in the file size") {
    std::mt19937_64 rng(31);
    SystemParams unit(rat(1), 10, 5, 9);
    for (int it = 0; it < 50; ++it) {
        const Rational M(1 + static_cast<long>(rng() % 20), 1 + static_cast<long>(rng() % 4));
        SystemParams p(M, 10, 5, 9);
        const Rational gamma(1 + static_cast<long>(rng() % 100), 50);
        ChannelModel ch{rat(static_cast<long>(rng() % 5), 10)};
        const auto scaled = tradeoff_alpha_star(p, gamma, ch);
        const auto base = tradeoff_alpha_star(unit, gamma / M, ch);
        REQUIRE(scaled.has_value() == base.has_value());
        if (scaled) CHECK(*scaled == M * *base);
    }
}
