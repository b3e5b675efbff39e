#ifndef SFG_INFERENCE_HPP
#define SFG_INFERENCE_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sfg/symplectic.hpp"

namespace sfg {

/*
 * Independent per-position error channel over {I, X, Z, Y}. Symbol
 * indexing everywhere in this module: I = 0, X = 1, Z = 2, Y = 3
 * (that is, x + 2z for the pair (x, z)).
 */
class ChannelModel {
public:
    explicit ChannelModel(std::vector<std::array<double, 4>> position_probs);

    static ChannelModel depolarizing(double eps, std::size_t n);
    static ChannelModel iid(const std::array<double, 4>& probs, std::size_t n);

    std::size_t n() const { return probs_.size(); }
    const std::array<double, 4>& at(std::size_t i) const { return probs_[i]; }

    double probability(const SympVector& e) const;

private:
    std::vector<std::array<double, 4>> probs_;
};

// s_j = symp_inner(e, g_j) over the canonical generator rows of the
// stabilizer. e is in the dual code iff the syndrome vanishes.
using Syndrome = std::vector<uint8_t>;

Syndrome syndrome(const GroupCode& stabilizer, const SympVector& e);

enum class DecodeMode { MostLikelyError, MostLikelyCoset };

/*
 * Exhaustive syndrome decoder: a table over all 4^n errors, built once
 * per (code, channel, mode).
 *
 * MostLikelyError returns argmax P(e) among errors with the observed
 * syndrome; MostLikelyCoset returns the minimum representative of the
 * coset e + C with maximum total probability. Ties everywhere resolve
 * to the lexicographically smallest (X|Z) bit string.
 */
class BruteForceDecoder {
public:
    BruteForceDecoder(const GroupCode& stabilizer, const ChannelModel& ch, DecodeMode mode,
                      std::size_t max_n = 10);

    SympVector decode(const Syndrome& s) const;
    DecodeMode mode() const { return mode_; }

private:
    const GroupCode stab_;
    DecodeMode mode_;
    std::size_t n_;
    std::vector<int64_t> best_;   // per syndrome index: packed error, -1 if unreachable
    std::size_t syndrome_bits_;
};

SympVector decode_ml(const GroupCode& stabilizer, const Syndrome& s, const ChannelModel& ch,
                     DecodeMode mode, std::size_t max_n = 10);

struct SimResult {
    std::size_t trials;
    std::size_t failures;
    double rate;
    double ci_halfwidth;  // Wilson 95% interval half-width
    uint64_t seed;
    DecodeMode mode;
};

/*
 * Monte Carlo logical-error estimate: sample e from the channel,
 * decode from syndrome(e), count a failure when the correction does
 * not return the error to the stabilizer group (decoded + e not in C).
 * Deterministic for a fixed seed; trial i draws from
 * trial_stream(seed, i).
 */
SimResult simulate(const GroupCode& stabilizer, const ChannelModel& ch, std::size_t trials,
                   uint64_t seed, DecodeMode mode, std::size_t max_n = 10);

// One line per result in the stable record format:
// epsilon trials failures rate ci_halfwidth decoder seed
std::string sim_record(double epsilon, const SimResult& r);

const char* decode_mode_name(DecodeMode m);

} // namespace sfg

#endif
