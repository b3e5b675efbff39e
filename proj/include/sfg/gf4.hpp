#ifndef SFG_GF4_HPP
#define SFG_GF4_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace sfg::gf4 {

/*
 * GF(4) = {0, 1, w, w2} with w2 = w + 1, so w3 = 1. Elements are
 * encoded as 0, 1, 2, 3 in that order; with this encoding addition
 * is XOR (the bits are coordinates in the basis {w, 1}).
 */
constexpr uint8_t ZERO = 0, ONE = 1, W = 2, W2 = 3;

inline uint8_t add(uint8_t a, uint8_t b) { return a ^ b; }

inline uint8_t mul(uint8_t a, uint8_t b) {
    static constexpr uint8_t log[4] = {0, 0, 1, 2};  // log of nonzero elements
    static constexpr uint8_t exp[3] = {1, 2, 3};
    if (a == 0 || b == 0) return 0;
    return exp[(log[a] + log[b]) % 3];
}

// Conjugation x -> x^2 (swaps w and w2).
inline uint8_t conj(uint8_t a) { return (a == W) ? W2 : (a == W2) ? W : a; }

// Trace x + x^2 into {0, 1}: 0 on {0, 1}, 1 on {w, w2}.
inline uint8_t trace(uint8_t a) { return (a == W || a == W2) ? 1 : 0; }

// Token forms used in text formats: "0", "1", "w", "w2".
std::string token(uint8_t a);
uint8_t from_token(const std::string& tok);  // throws std::invalid_argument

} // namespace sfg::gf4

#endif
