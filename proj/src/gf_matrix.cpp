#include "regen/gf_matrix.hpp"

#include <cstring>
#include <stdexcept>

namespace regen {

void GfMatrix::append_row(const std::uint8_t* src) {
    a_.insert(a_.end(), src, src + cols_);
    ++rows_;
}

void GfMatrix::append_rows(const GfMatrix& other) {
    if (other.rows_ == 0) return;
    if (cols_ == 0 && rows_ == 0) cols_ = other.cols_;
    if (other.cols_ != cols_) throw std::invalid_argument("GfMatrix: column mismatch");
    a_.insert(a_.end(), other.a_.begin(), other.a_.end());
    rows_ += other.rows_;
}

namespace {

// dst ^= c * src over the row tail [from, cols).
inline void axpy(std::uint8_t* dst, const std::uint8_t* src, std::uint8_t c, int from, int cols) {
    if (c == 0) return;
    const std::uint8_t* mrow = gf::mul_row(c);
    for (int j = from; j < cols; ++j) dst[j] ^= mrow[src[j]];
}

inline void scale_row(std::uint8_t* r, std::uint8_t c, int from, int cols) {
    const std::uint8_t* mrow = gf::mul_row(c);
    for (int j = from; j < cols; ++j) r[j] = mrow[r[j]];
}

}  // namespace

Echelon echelon_form(GfMatrix m) {
    Echelon out;
    const int rows = m.rows();
    const int cols = m.cols();
    int next = 0;  // next pivot row slot
    for (int col = 0; col < cols && next < rows; ++col) {
        int pivot = -1;
        for (int r = next; r < rows; ++r) {
            if (m.at(r, col) != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        if (pivot != next) {
            for (int j = col; j < cols; ++j) std::swap(m.at(pivot, j), m.at(next, j));
        }
        std::uint8_t d = m.at(next, col);
        if (d != 1) scale_row(m.row(next), gf::inv(d), col, cols);
        for (int r = next + 1; r < rows; ++r) {
            std::uint8_t c = m.at(r, col);
            if (c) axpy(m.row(r), m.row(next), c, col, cols);
        }
        out.pivot_cols.push_back(col);
        ++next;
    }
    out.m = GfMatrix(next, cols);
    for (int r = 0; r < next; ++r) std::memcpy(out.m.row(r), m.row(r), static_cast<std::size_t>(cols));
    return out;
}

int rank(GfMatrix m) { return echelon_form(std::move(m)).rank(); }

int rank_with_rows(const Echelon& base, GfMatrix extra) {
    const int cols = base.m.cols();
    if (extra.rows() == 0) return base.rank();
    if (extra.cols() != cols && base.rank() > 0)
        throw std::invalid_argument("rank_with_rows: column mismatch");
    for (int r = 0; r < extra.rows(); ++r) {
        std::uint8_t* row = extra.row(r);
        for (int i = 0; i < base.rank(); ++i) {
            const int col = base.pivot_cols[i];
            if (row[col]) axpy(row, base.m.row(i), row[col], col, cols);
        }
    }
    return base.rank() + rank(std::move(extra));
}

}  // namespace regen
