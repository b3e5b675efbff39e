#ifndef SFG_MATRIX_HPP
#define SFG_MATRIX_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sfg/field.hpp"

namespace sfg {

/*
 * Dense matrix over Z_p. Rows are bit-packed into 64-bit words when
 * p = 2; for p > 2 entries are stored one byte each. All mutating row
 * operations are internal; the public surface treats matrices as
 * values.
 *
 * Pivot selection in row reduction is deterministic (lowest column,
 * then lowest row), so reduced forms are identical across platforms.
 */
class FMatrix {
public:
    FMatrix(PrimeField f, std::size_t rows, std::size_t cols);

    static FMatrix identity(PrimeField f, std::size_t n);
    static FMatrix from_rows(PrimeField f,
                             const std::vector<std::vector<uint8_t>>& rows,
                             std::size_t cols_if_empty = 0);

    PrimeField field() const { return f_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    uint8_t at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, uint8_t v);

    std::vector<uint8_t> row(std::size_t r) const;

    // dst += s * src (row indices)
    void add_scaled_row(std::size_t dst, std::size_t src, uint8_t s);
    void scale_row(std::size_t r, uint8_t s);
    void swap_rows(std::size_t i, std::size_t j);

    bool row_is_zero(std::size_t r) const;

    // m * v^T over Z_p; v has cols() entries.
    std::vector<uint8_t> apply(std::span<const uint8_t> v) const;

    FMatrix with_rows_appended(const FMatrix& below) const;
    FMatrix selected_cols(const std::vector<std::size_t>& idx) const;
    FMatrix without_zero_rows() const;

    bool operator==(const FMatrix& o) const;
    bool operator!=(const FMatrix& o) const { return !(*this == o); }

private:
    PrimeField f_;
    std::size_t rows_, cols_;
    std::size_t wpr_;             // words per row when p = 2
    std::vector<uint64_t> bits_;  // p = 2 storage
    std::vector<uint8_t> vals_;   // p > 2 storage

    bool packed() const { return f_.p() == 2; }
};

struct RrefResult {
    FMatrix m;
    std::size_t rank;
    std::vector<std::size_t> pivot_cols;
};

// Reduced row echelon form; row space is preserved.
RrefResult rref(const FMatrix& m);

// Basis of {v : m v^T = 0}, one basis vector per row.
// Row count is cols(m) - rank(m); rows are ordered by free column.
FMatrix kernel(const FMatrix& m);

std::size_t rank(const FMatrix& m);

// Unique normal form: rref with zero rows stripped. Two matrices have
// equal row spaces iff their canonical forms are equal.
FMatrix canonical_row_space(const FMatrix& m);

// Throws std::invalid_argument if fields or column counts differ.
bool row_space_equal(const FMatrix& a, const FMatrix& b);

// Some x with m x^T = rhs^T, or nullopt if the system is inconsistent.
std::optional<std::vector<uint8_t>> solve(const FMatrix& m, std::span<const uint8_t> rhs);

} // namespace sfg

#endif
