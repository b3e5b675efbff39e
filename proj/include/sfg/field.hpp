#ifndef SFG_FIELD_HPP
#define SFG_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sfg {

/*
 * Arithmetic in the prime field Z_p. Primality is checked at
 * construction; all values are reduced representatives in [0, p).
 */
class PrimeField {
public:
    explicit PrimeField(unsigned p) : p_(p) {
        if (!is_prime(p))
            throw std::invalid_argument("PrimeField: modulus " + std::to_string(p) +
                                        " is not prime");
        if (p > 251)
            throw std::invalid_argument("PrimeField: modulus must fit in a byte");
    }

    unsigned p() const { return p_; }

    uint8_t add(uint8_t a, uint8_t b) const { return static_cast<uint8_t>((a + b) % p_); }
    uint8_t sub(uint8_t a, uint8_t b) const { return static_cast<uint8_t>((a + p_ - b) % p_); }
    uint8_t mul(uint8_t a, uint8_t b) const {
        return static_cast<uint8_t>((static_cast<unsigned>(a) * b) % p_);
    }
    uint8_t neg(uint8_t a) const { return static_cast<uint8_t>((p_ - a) % p_); }

    // Multiplicative inverse of a nonzero element (Fermat).
    uint8_t inv(uint8_t a) const {
        if (a % p_ == 0)
            throw std::domain_error("PrimeField: zero has no inverse");
        uint8_t r = 1, base = static_cast<uint8_t>(a % p_);
        for (unsigned e = p_ - 2; e > 0; e >>= 1) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
        }
        return r;
    }

    uint8_t reduce(long long v) const {
        long long m = v % static_cast<long long>(p_);
        if (m < 0) m += p_;
        return static_cast<uint8_t>(m);
    }

    bool operator==(const PrimeField& o) const { return p_ == o.p_; }
    bool operator!=(const PrimeField& o) const { return p_ != o.p_; }

private:
    static bool is_prime(unsigned n) {
        if (n < 2) return false;
        for (unsigned d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    unsigned p_;
};

} // namespace sfg

#endif
