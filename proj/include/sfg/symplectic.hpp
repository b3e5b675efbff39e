#ifndef SFG_SYMPLECTIC_HPP
#define SFG_SYMPLECTIC_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sfg/gf4.hpp"
#include "sfg/matrix.hpp"

namespace sfg {

/*
 * A vector in (Z_p^2)^n, kept in the block view (x_part, z_part).
 * The pairwise view ((x_1,z_1),...,(x_n,z_n)) and the block view
 * interconvert losslessly; the flat form is the length-2n row
 * (x_1..x_n z_1..z_n) used by generator matrices.
 */
class SympVector {
public:
    SympVector(PrimeField f, std::vector<uint8_t> x_part, std::vector<uint8_t> z_part);

    static SympVector zero(PrimeField f, std::size_t n);
    static SympVector from_flat(PrimeField f, std::span<const uint8_t> flat);

    // Pauli letters I, X, Z, Y per position (p = 2 only).
    static SympVector from_pauli(const std::string& s);
    std::string to_pauli() const;

    PrimeField field() const { return f_; }
    std::size_t n() const { return x_.size(); }
    uint8_t x(std::size_t i) const { return x_[i]; }
    uint8_t z(std::size_t i) const { return z_[i]; }

    std::vector<uint8_t> to_flat() const;

    SympVector operator+(const SympVector& o) const;
    bool operator==(const SympVector& o) const;
    bool operator!=(const SympVector& o) const { return !(*this == o); }

    // Lexicographic comparison of the (X|Z) string, position 1 first.
    bool lex_less(const SympVector& o) const;

private:
    PrimeField f_;
    std::vector<uint8_t> x_, z_;
};

// sum_i (a_xi b_zi + a_zi b_xi) mod p. Throws on shape mismatch.
uint8_t symp_inner(const SympVector& a, const SympVector& b);

// Number of positions with (x_i, z_i) != (0, 0).
std::size_t symp_weight(const SympVector& t);

/*
 * An additive (group) code over (Z_p^2)^n, the row span of a generator
 * matrix with 2n columns in (X|Z) block layout. The stored matrix is
 * the canonical form (rref with zero rows stripped), which makes code
 * equality a matrix comparison. Values are immutable once built.
 */
class GroupCode {
public:
    GroupCode(PrimeField f, std::size_t n, const FMatrix& generators);

    static GroupCode zero(PrimeField f, std::size_t n);
    static GroupCode full(PrimeField f, std::size_t n);
    static GroupCode from_pauli_rows(const std::vector<std::string>& rows);
    static GroupCode span_of(const std::vector<SympVector>& gens, PrimeField f, std::size_t n);

    PrimeField field() const { return f_; }
    std::size_t n() const { return n_; }
    std::size_t rank() const { return gens_.rows(); }
    bool self_orthogonal() const { return self_orthogonal_; }
    bool self_dual() const { return self_orthogonal_ && rank() == n_; }

    const FMatrix& generator_matrix() const { return gens_; }
    SympVector generator(std::size_t i) const;

    bool contains(const SympVector& t) const;

    bool operator==(const GroupCode& o) const;
    bool operator!=(const GroupCode& o) const { return !(*this == o); }

private:
    PrimeField f_;
    std::size_t n_;
    FMatrix gens_;  // canonical
    std::vector<std::size_t> pivots_;
    bool self_orthogonal_;
};

// C^perp under the symplectic inner product, computed as the kernel of
// the generator matrix with X and Z column blocks swapped.
// rank(C) + rank(dual(C)) = 2n.
GroupCode dual(const GroupCode& c);

bool is_self_orthogonal(const GroupCode& c);
bool is_self_dual(const GroupCode& c);

// Visits every codeword (p^rank of them); enumeration order is the
// mixed-radix counter over canonical generators, first generator least
// significant. Throws std::runtime_error if p^rank would exceed limit.
void for_each_codeword(const GroupCode& c, const std::function<void(const SympVector&)>& fn,
                       uint64_t limit = uint64_t{1} << 26);

struct CosetWeight {
    std::size_t weight;
    bool self_dual;  // C == dual(C): coset empty, weight is min nonzero weight of the dual
};

/*
 * Minimum symplectic weight over dual(C) \ C, the distance of the
 * stabilizer code labeled by C. For self-dual C the coset is empty and
 * the minimum nonzero weight of dual(C) is reported with a flag.
 * Requires a self-orthogonal code and 2n <= max_total_symbols.
 */
CosetWeight min_coset_weight(const GroupCode& stabilizer, std::size_t max_total_symbols = 24);

/*
 * CSS label code of two binary codes with B1 . B2^T = 0: the set of
 * pairs (t_X, t_Z) with t_X in B1 and t_Z in B2. Inputs are binary
 * generator matrices with the same length; the cross-orthogonality
 * precondition is checked generator by generator.
 */
GroupCode css(const FMatrix& b1, const FMatrix& b2);

/*
 * A word over GF(4), the image of a symplectic vector under the
 * per-position bijection (0,0) -> 0, (1,0) -> w, (0,1) -> w2,
 * (1,1) -> 1 (that is, w x + w2 z).
 */
class Gf4Word {
public:
    explicit Gf4Word(std::vector<uint8_t> symbols);

    std::size_t n() const { return syms_.size(); }
    uint8_t at(std::size_t i) const { return syms_[i]; }

    Gf4Word operator+(const Gf4Word& o) const;
    Gf4Word scaled(uint8_t s) const;  // multiply every symbol by s

    std::string to_string() const;  // tokens "0 1 w w2" separated by spaces

    bool operator==(const Gf4Word& o) const { return syms_ == o.syms_; }

private:
    std::vector<uint8_t> syms_;
};

Gf4Word gf4_of(const SympVector& t);   // p = 2 only
SympVector symp_of(const Gf4Word& w);

// Tr(sum_i a_i conj(b_i)); equals symp_inner of the preimages.
uint8_t trace_hermitian_inner(const Gf4Word& a, const Gf4Word& b);

// True iff the GF(4) image of the code is closed under multiplication
// by w (then it is GF(4)-linear with GF(4) dimension rank/2). The
// necessary power-of-4 cardinality check comes first.
bool is_gf4_linear(const GroupCode& c);

} // namespace sfg

#endif
