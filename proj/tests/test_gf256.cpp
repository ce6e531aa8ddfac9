#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "regen/gf_matrix.hpp"

using namespace regen;

TEST_CASE("gf256 basics") {
    for (int x = 0; x < 256; ++x) {
        const auto v = static_cast<std::uint8_t>(x);
        CHECK(gf::mul(1, v) == v);
        CHECK(gf::mul(v, 1) == v);
        CHECK(gf::add(v, v) == 0);
        CHECK(gf::mul(0, v) == 0);
    }
    CHECK(gf::mul(0x02, 0x80) == 0x1D);  // 0x100 reduced by x^8+x^4+x^3+x^2+1
    CHECK(gf::mul(0x02, 0x02) == 0x04);
    CHECK_THROWS_AS(gf::inv(0), std::domain_error);
}

TEST_CASE("gf256 inverses and division, exhaustive") {
    for (int x = 1; x < 256; ++x) {
        const auto v = static_cast<std::uint8_t>(x);
        CHECK(gf::mul(v, gf::inv(v)) == 1);
        CHECK(gf::div(v, v) == 1);
    }
}

TEST_CASE("gf256 sampled field laws") {
    std::mt19937_64 rng(3);
    for (int it = 0; it < 10000; ++it) {
        const auto a = static_cast<std::uint8_t>(rng());
        const auto b = static_cast<std::uint8_t>(rng());
        const auto c = static_cast<std::uint8_t>(rng());
        CHECK(gf::mul(a, b) == gf::mul(b, a));
        CHECK(gf::mul(a, gf::mul(b, c)) == gf::mul(gf::mul(a, b), c));
        CHECK(gf::mul(a, gf::add(b, c)) == gf::add(gf::mul(a, b), gf::mul(a, c)));
    }
}

TEST_CASE("rank examples") {
    GfMatrix id2(2, 2);
    id2.at(0, 0) = 1;
    id2.at(1, 1) = 1;
    CHECK(rank(id2) == 2);

    // second row = 2 * first row, since 2*2 = 4 in the field
    GfMatrix dep(2, 2);
    dep.at(0, 0) = 1;
    dep.at(0, 1) = 2;
    dep.at(1, 0) = 2;
    dep.at(1, 1) = 4;
    CHECK(rank(dep) == 1);

    CHECK(rank(GfMatrix(3, 4)) == 0);
    CHECK(rank(GfMatrix(0, 4)) == 0);
}

namespace {

std::uint8_t det_laplace(const GfMatrix& m, std::vector<int> rows, std::vector<int> cols) {
    if (rows.size() == 1) return m.at(rows[0], cols[0]);
    std::uint8_t acc = 0;
    std::vector<int> sub_rows(rows.begin() + 1, rows.end());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (m.at(rows[0], cols[j]) == 0) continue;
        std::vector<int> sub_cols;
        for (std::size_t t = 0; t < cols.size(); ++t)
            if (t != j) sub_cols.push_back(cols[t]);
        acc ^= gf::mul(m.at(rows[0], cols[j]), det_laplace(m, sub_rows, sub_cols));
    }
    return acc;
}

}  // namespace

TEST_CASE("rank agrees with determinant oracle on square matrices") {
    std::mt19937_64 rng(19);
    for (int it = 0; it < 200; ++it) {
        const int n = 1 + static_cast<int>(rng() % 4);
        GfMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m.at(i, j) = static_cast<std::uint8_t>(rng() % 4 == 0 ? 0 : rng() & 0xFF);
        std::vector<int> idx(n);
        for (int i = 0; i < n; ++i) idx[i] = i;
        const bool full = det_laplace(m, idx, idx) != 0;
        CHECK((rank(m) == n) == full);
    }
}

TEST_CASE("rank_with_rows matches stacking") {
    std::mt19937_64 rng(23);
    for (int it = 0; it < 200; ++it) {
        const int cols = 3 + static_cast<int>(rng() % 6);
        GfMatrix a(2 + static_cast<int>(rng() % 4), cols);
        GfMatrix b(1 + static_cast<int>(rng() % 4), cols);
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < cols; ++j) a.at(i, j) = static_cast<std::uint8_t>(rng() & 0xFF);
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < cols; ++j)
                b.at(i, j) = static_cast<std::uint8_t>(rng() % 3 == 0 ? 0 : rng() & 0xFF);
        GfMatrix stacked = a;
        stacked.append_rows(b);
        CHECK(rank_with_rows(echelon_form(a), b) == rank(stacked));
    }
}
