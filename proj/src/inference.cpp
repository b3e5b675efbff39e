#include "sfg/inference.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "sfg/rng.hpp"

namespace sfg {

namespace {

constexpr double kProbTol = 1e-12;

/*
 * Packed error layout for the exhaustive decoder: the 2n-bit integer
 * (x_1 .. x_n z_1 .. z_n) with x_1 as the most significant bit, so
 * integer order coincides with lexicographic (X|Z) order.
 */
SympVector unpack_error(uint64_t v, std::size_t n) {
    std::vector<uint8_t> x(n), z(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = static_cast<uint8_t>((v >> (2 * n - 1 - i)) & 1);
        z[i] = static_cast<uint8_t>((v >> (n - 1 - i)) & 1);
    }
    return SympVector(PrimeField(2), std::move(x), std::move(z));
}

uint64_t pack_flat_row(const FMatrix& m, std::size_t r) {
    // Same bit layout as pack_error, reading a (X|Z) generator row.
    std::size_t n = m.cols() / 2;
    uint64_t v = 0;
    for (std::size_t i = 0; i < n; ++i) {
        v |= static_cast<uint64_t>(m.at(r, i)) << (2 * n - 1 - i);
        v |= static_cast<uint64_t>(m.at(r, n + i)) << (n - 1 - i);
    }
    return v;
}

uint8_t parity64(uint64_t v) { return static_cast<uint8_t>(std::popcount(v) & 1); }

} // namespace

ChannelModel::ChannelModel(std::vector<std::array<double, 4>> position_probs)
    : probs_(std::move(position_probs)) {
    for (const auto& p : probs_) {
        double sum = 0;
        for (double v : p) {
            if (v < 0) throw std::invalid_argument("ChannelModel: negative probability");
            sum += v;
        }
        if (std::abs(sum - 1.0) > kProbTol)
            throw std::invalid_argument("ChannelModel: position probabilities must sum to 1");
    }
}

ChannelModel ChannelModel::depolarizing(double eps, std::size_t n) {
    if (eps < 0 || eps > 1)
        throw std::invalid_argument("ChannelModel: depolarizing parameter outside [0, 1]");
    return iid({1.0 - eps, eps / 3, eps / 3, eps / 3}, n);
}

ChannelModel ChannelModel::iid(const std::array<double, 4>& probs, std::size_t n) {
    return ChannelModel(std::vector<std::array<double, 4>>(n, probs));
}

double ChannelModel::probability(const SympVector& e) const {
    if (e.n() != n())
        throw std::invalid_argument("ChannelModel: length mismatch");
    double p = 1;
    for (std::size_t i = 0; i < n(); ++i)
        p *= probs_[i][e.x(i) + 2 * e.z(i)];
    return p;
}

Syndrome syndrome(const GroupCode& stabilizer, const SympVector& e) {
    if (!is_self_orthogonal(stabilizer))
        throw std::invalid_argument("syndrome: stabilizer must be self-orthogonal");
    if (e.n() != stabilizer.n() || e.field() != stabilizer.field())
        throw std::invalid_argument("syndrome: length mismatch");
    Syndrome s(stabilizer.rank());
    for (std::size_t j = 0; j < stabilizer.rank(); ++j)
        s[j] = symp_inner(e, stabilizer.generator(j));
    return s;
}

BruteForceDecoder::BruteForceDecoder(const GroupCode& stabilizer, const ChannelModel& ch,
                                     DecodeMode mode, std::size_t max_n)
    : stab_(stabilizer), mode_(mode), n_(stabilizer.n()) {
    if (stabilizer.field().p() != 2)
        throw std::invalid_argument("BruteForceDecoder: requires p = 2");
    if (!is_self_orthogonal(stabilizer))
        throw std::invalid_argument("BruteForceDecoder: stabilizer must be self-orthogonal");
    if (n_ > max_n)
        throw std::runtime_error("BruteForceDecoder: brute-force bound exceeded (n = " +
                                 std::to_string(n_) + " > " + std::to_string(max_n) + ")");
    if (ch.n() != n_)
        throw std::invalid_argument("BruteForceDecoder: channel length mismatch");

    std::size_t r = stab_.rank();
    syndrome_bits_ = r;
    const uint64_t total = uint64_t{1} << (2 * n_);

    // Packed generator rows for fast symplectic products: the product
    // with (x|z) swaps the halves of the generator.
    std::vector<uint64_t> gen_swapped(r);
    for (std::size_t j = 0; j < r; ++j) {
        uint64_t f = pack_flat_row(stab_.generator_matrix(), j);
        uint64_t xmask = (n_ == 0) ? 0 : ((uint64_t{1} << n_) - 1) << n_;
        uint64_t x = (f & xmask) >> n_;
        uint64_t z = f & ((uint64_t{1} << n_) - 1);
        gen_swapped[j] = (z << n_) | x;
    }

    best_.assign(uint64_t{1} << r, -1);

    // Per-position probability lookup indexed by the two packed bits.
    auto prob_of = [&](uint64_t v) {
        double p = 1;
        for (std::size_t i = 0; i < n_; ++i) {
            unsigned x = (v >> (2 * n_ - 1 - i)) & 1;
            unsigned z = (v >> (n_ - 1 - i)) & 1;
            p *= ch.at(i)[x + 2 * z];
        }
        return p;
    };
    auto syndrome_key = [&](uint64_t v) {
        uint64_t key = 0;
        for (std::size_t j = 0; j < r; ++j)
            key = (key << 1) | parity64(v & gen_swapped[j]);
        return key;
    };

    if (mode_ == DecodeMode::MostLikelyError) {
        std::vector<double> best_p(uint64_t{1} << r, -1.0);
        for (uint64_t v = 0; v < total; ++v) {
            double p = prob_of(v);
            uint64_t key = syndrome_key(v);
            if (p > best_p[key]) {  // ties keep the first (lex smallest) error
                best_p[key] = p;
                best_[key] = static_cast<int64_t>(v);
            }
        }
    } else {
        // Cosets of C are keyed by the standard-kernel checks of the
        // generator matrix; the syndrome is constant on each coset.
        FMatrix hstd = kernel(stab_.generator_matrix());
        std::vector<uint64_t> hrows(hstd.rows());
        for (std::size_t j = 0; j < hstd.rows(); ++j) hrows[j] = pack_flat_row(hstd, j);

        const uint64_t ncosets = uint64_t{1} << hrows.size();
        std::vector<double> mass(ncosets, 0.0);
        std::vector<int64_t> min_rep(ncosets, -1);
        std::vector<uint64_t> coset_syndrome(ncosets, 0);
        for (uint64_t v = 0; v < total; ++v) {
            uint64_t ck = 0;
            for (std::size_t j = 0; j < hrows.size(); ++j)
                ck = (ck << 1) | parity64(v & hrows[j]);
            mass[ck] += prob_of(v);
            if (min_rep[ck] < 0) {
                min_rep[ck] = static_cast<int64_t>(v);
                coset_syndrome[ck] = syndrome_key(v);
            }
        }
        std::vector<double> best_mass(uint64_t{1} << r, -1.0);
        for (uint64_t ck = 0; ck < ncosets; ++ck) {
            if (min_rep[ck] < 0) continue;
            uint64_t key = coset_syndrome[ck];
            if (mass[ck] > best_mass[key] ||
                (mass[ck] == best_mass[key] && min_rep[ck] < best_[key])) {
                best_mass[key] = mass[ck];
                best_[key] = min_rep[ck];
            }
        }
    }
}

SympVector BruteForceDecoder::decode(const Syndrome& s) const {
    if (s.size() != syndrome_bits_)
        throw std::invalid_argument("BruteForceDecoder: syndrome length mismatch");
    uint64_t key = 0;
    for (uint8_t b : s) key = (key << 1) | (b & 1);
    if (best_[key] < 0)
        throw std::runtime_error("BruteForceDecoder: unrealizable syndrome");
    return unpack_error(static_cast<uint64_t>(best_[key]), n_);
}

SympVector decode_ml(const GroupCode& stabilizer, const Syndrome& s, const ChannelModel& ch,
                     DecodeMode mode, std::size_t max_n) {
    return BruteForceDecoder(stabilizer, ch, mode, max_n).decode(s);
}

SimResult simulate(const GroupCode& stabilizer, const ChannelModel& ch, std::size_t trials,
                   uint64_t seed, DecodeMode mode, std::size_t max_n) {
    BruteForceDecoder dec(stabilizer, ch, mode, max_n);
    std::size_t n = stabilizer.n();
    std::size_t failures = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        SplitMix64 rng = trial_stream(seed, t);
        std::vector<uint8_t> x(n), z(n);
        for (std::size_t i = 0; i < n; ++i) {
            double u = rng.next_double();
            const auto& p = ch.at(i);
            unsigned sym = 3;
            if (u < p[0]) sym = 0;
            else if (u < p[0] + p[1]) sym = 1;
            else if (u < p[0] + p[1] + p[2]) sym = 2;
            x[i] = sym & 1;
            z[i] = (sym >> 1) & 1;
        }
        SympVector e(PrimeField(2), std::move(x), std::move(z));
        SympVector corr = dec.decode(syndrome(stabilizer, e));
        if (!stabilizer.contains(corr + e)) ++failures;
    }

    double rate = trials ? static_cast<double>(failures) / static_cast<double>(trials) : 0.0;
    double hw = 0.0;
    if (trials) {
        const double zq = 1.959963984540054;  // 97.5% normal quantile
        double t = static_cast<double>(trials);
        hw = zq * std::sqrt(rate * (1 - rate) / t + zq * zq / (4 * t * t)) / (1 + zq * zq / t);
    }
    return {trials, failures, rate, hw, seed, mode};
}

std::string sim_record(double epsilon, const SimResult& r) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%.10g %zu %zu %.10g %.10g %s %llu", epsilon, r.trials,
                  r.failures, r.rate, r.ci_halfwidth, decode_mode_name(r.mode),
                  static_cast<unsigned long long>(r.seed));
    return buf;
}

const char* decode_mode_name(DecodeMode m) {
    return m == DecodeMode::MostLikelyError ? "ml" : "coset";
}

} // namespace sfg
