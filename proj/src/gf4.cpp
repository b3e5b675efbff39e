#include "sfg/gf4.hpp"

#include <stdexcept>

namespace sfg::gf4 {

std::string token(uint8_t a) {
    switch (a) {
        case ZERO: return "0";
        case ONE: return "1";
        case W: return "w";
        case W2: return "w2";
        default: throw std::invalid_argument("gf4::token: not a GF(4) element");
    }
}

uint8_t from_token(const std::string& tok) {
    if (tok == "0") return ZERO;
    if (tok == "1") return ONE;
    if (tok == "w") return W;
    if (tok == "w2") return W2;
    throw std::invalid_argument("gf4::from_token: unknown token '" + tok + "'");
}

} // namespace sfg::gf4
