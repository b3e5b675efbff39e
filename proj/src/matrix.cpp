#include "sfg/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace sfg {

FMatrix::FMatrix(PrimeField f, std::size_t rows, std::size_t cols)
    : f_(f), rows_(rows), cols_(cols), wpr_((cols + 63) / 64) {
    if (packed())
        bits_.assign(rows_ * wpr_, 0);
    else
        vals_.assign(rows_ * cols_, 0);
}

FMatrix FMatrix::identity(PrimeField f, std::size_t n) {
    FMatrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

FMatrix FMatrix::from_rows(PrimeField f, const std::vector<std::vector<uint8_t>>& rows,
                           std::size_t cols_if_empty) {
    std::size_t cols = rows.empty() ? cols_if_empty : rows.front().size();
    FMatrix m(f, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw std::invalid_argument("FMatrix: ragged rows");
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, f.reduce(rows[r][c]));
    }
    return m;
}

uint8_t FMatrix::at(std::size_t r, std::size_t c) const {
    if (packed())
        return static_cast<uint8_t>((bits_[r * wpr_ + c / 64] >> (c % 64)) & 1u);
    return vals_[r * cols_ + c];
}

void FMatrix::set(std::size_t r, std::size_t c, uint8_t v) {
    v = static_cast<uint8_t>(v % f_.p());
    if (packed()) {
        uint64_t& w = bits_[r * wpr_ + c / 64];
        uint64_t bit = uint64_t{1} << (c % 64);
        w = v ? (w | bit) : (w & ~bit);
    } else {
        vals_[r * cols_ + c] = v;
    }
}

std::vector<uint8_t> FMatrix::row(std::size_t r) const {
    std::vector<uint8_t> out(cols_);
    for (std::size_t c = 0; c < cols_; ++c) out[c] = at(r, c);
    return out;
}

void FMatrix::add_scaled_row(std::size_t dst, std::size_t src, uint8_t s) {
    s = static_cast<uint8_t>(s % f_.p());
    if (s == 0) return;
    if (packed()) {
        for (std::size_t w = 0; w < wpr_; ++w)
            bits_[dst * wpr_ + w] ^= bits_[src * wpr_ + w];
    } else {
        for (std::size_t c = 0; c < cols_; ++c)
            vals_[dst * cols_ + c] =
                f_.add(vals_[dst * cols_ + c], f_.mul(s, vals_[src * cols_ + c]));
    }
}

void FMatrix::scale_row(std::size_t r, uint8_t s) {
    s = static_cast<uint8_t>(s % f_.p());
    if (s == 1) return;
    if (packed()) {
        if (s == 0)
            std::fill_n(bits_.begin() + static_cast<std::ptrdiff_t>(r * wpr_), wpr_, 0);
        return;
    }
    for (std::size_t c = 0; c < cols_; ++c)
        vals_[r * cols_ + c] = f_.mul(vals_[r * cols_ + c], s);
}

void FMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    if (packed()) {
        for (std::size_t w = 0; w < wpr_; ++w)
            std::swap(bits_[i * wpr_ + w], bits_[j * wpr_ + w]);
    } else {
        for (std::size_t c = 0; c < cols_; ++c)
            std::swap(vals_[i * cols_ + c], vals_[j * cols_ + c]);
    }
}

bool FMatrix::row_is_zero(std::size_t r) const {
    if (packed()) {
        for (std::size_t w = 0; w < wpr_; ++w)
            if (bits_[r * wpr_ + w]) return false;
        return true;
    }
    for (std::size_t c = 0; c < cols_; ++c)
        if (vals_[r * cols_ + c]) return false;
    return true;
}

std::vector<uint8_t> FMatrix::apply(std::span<const uint8_t> v) const {
    if (v.size() != cols_)
        throw std::invalid_argument("FMatrix::apply: dimension mismatch");
    std::vector<uint8_t> out(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        unsigned acc = 0;
        for (std::size_t c = 0; c < cols_; ++c) acc += at(r, c) * v[c];
        out[r] = f_.reduce(static_cast<long long>(acc));
    }
    return out;
}

FMatrix FMatrix::with_rows_appended(const FMatrix& below) const {
    if (below.cols_ != cols_ || below.f_ != f_)
        throw std::invalid_argument("FMatrix: stacking shape mismatch");
    FMatrix out(f_, rows_ + below.rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out.set(r, c, at(r, c));
    for (std::size_t r = 0; r < below.rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out.set(rows_ + r, c, below.at(r, c));
    return out;
}

FMatrix FMatrix::selected_cols(const std::vector<std::size_t>& idx) const {
    FMatrix out(f_, rows_, idx.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < idx.size(); ++k) out.set(r, k, at(r, idx[k]));
    return out;
}

FMatrix FMatrix::without_zero_rows() const {
    std::vector<std::size_t> keep;
    for (std::size_t r = 0; r < rows_; ++r)
        if (!row_is_zero(r)) keep.push_back(r);
    FMatrix out(f_, keep.size(), cols_);
    for (std::size_t k = 0; k < keep.size(); ++k)
        for (std::size_t c = 0; c < cols_; ++c) out.set(k, c, at(keep[k], c));
    return out;
}

bool FMatrix::operator==(const FMatrix& o) const {
    if (f_ != o.f_ || rows_ != o.rows_ || cols_ != o.cols_) return false;
    if (packed()) return bits_ == o.bits_;
    return vals_ == o.vals_;
}

RrefResult rref(const FMatrix& m) {
    FMatrix a = m;
    PrimeField f = a.field();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t sel = a.rows();
        for (std::size_t i = r; i < a.rows(); ++i)
            if (a.at(i, c) != 0) { sel = i; break; }
        if (sel == a.rows()) continue;
        a.swap_rows(r, sel);
        a.scale_row(r, f.inv(a.at(r, c)));
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r) continue;
            uint8_t v = a.at(i, c);
            if (v) a.add_scaled_row(i, r, f.neg(v));
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(a), pivots.size(), std::move(pivots)};
}

std::size_t rank(const FMatrix& m) { return rref(m).rank; }

FMatrix kernel(const FMatrix& m) {
    RrefResult rr = rref(m);
    PrimeField f = m.field();
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : rr.pivot_cols) is_pivot[c] = true;

    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);

    FMatrix basis(f, free_cols.size(), m.cols());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        std::size_t fc = free_cols[k];
        basis.set(k, fc, 1);
        for (std::size_t piv = 0; piv < rr.rank; ++piv)
            basis.set(k, rr.pivot_cols[piv], f.neg(rr.m.at(piv, fc)));
    }
    return basis;
}

FMatrix canonical_row_space(const FMatrix& m) { return rref(m).m.without_zero_rows(); }

bool row_space_equal(const FMatrix& a, const FMatrix& b) {
    if (a.field() != b.field() || a.cols() != b.cols())
        throw std::invalid_argument("row_space_equal: dimension mismatch");
    return canonical_row_space(a) == canonical_row_space(b);
}

std::optional<std::vector<uint8_t>> solve(const FMatrix& m, std::span<const uint8_t> rhs) {
    if (rhs.size() != m.rows())
        throw std::invalid_argument("solve: rhs length must equal row count");
    PrimeField f = m.field();
    FMatrix aug(f, m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug.set(r, c, m.at(r, c));
        aug.set(r, m.cols(), f.reduce(rhs[r]));
    }
    RrefResult rr = rref(aug);
    for (std::size_t k = 0; k < rr.rank; ++k)
        if (rr.pivot_cols[k] == m.cols()) return std::nullopt;
    std::vector<uint8_t> x(m.cols(), 0);
    for (std::size_t k = 0; k < rr.rank; ++k)
        x[rr.pivot_cols[k]] = rr.m.at(k, m.cols());
    return x;
}

} // namespace sfg
