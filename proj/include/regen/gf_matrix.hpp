#pragma once

#include <cstdint>
#include <vector>

#include "regen/gf256.hpp"

namespace regen {

// Dense byte matrix over GF(2^8), row-major.
class GfMatrix {
public:
    GfMatrix() = default;
    GfMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    std::uint8_t* row(int r) { return a_.data() + static_cast<std::size_t>(r) * cols_; }
    const std::uint8_t* row(int r) const { return a_.data() + static_cast<std::size_t>(r) * cols_; }

    std::uint8_t& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    std::uint8_t at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

    void append_row(const std::uint8_t* src);
    void append_rows(const GfMatrix& other);

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<std::uint8_t> a_;
};

// Row echelon form with unit pivots; rank() == pivot_cols.size().
struct Echelon {
    GfMatrix m;                  // pivot rows only, echelon order
    std::vector<int> pivot_cols;
    int rank() const { return static_cast<int>(pivot_cols.size()); }
};

// Row rank by Gaussian elimination. Empty matrices are rejected by the
// callers that care; a 0-row matrix ranks 0 here.
int rank(GfMatrix m);

Echelon echelon_form(GfMatrix m);

// rank(base ∪ extra) computed by reducing extra's rows against the cached
// echelon of base and eliminating the residue.
int rank_with_rows(const Echelon& base, GfMatrix extra);

}  // namespace regen
