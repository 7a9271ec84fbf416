#ifndef AMUSE_CHANNEL_HPP
#define AMUSE_CHANNEL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "amuse/bits.hpp"
#include "amuse/errors.hpp"

namespace amuse {

// All randomness in the experiments flows through mt19937_64; the generator
// identifier is recorded in experiment output so CSVs are reproducible
// across implementations.
inline constexpr const char* kRngId = "mt19937_64";

inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Random subset of the dataset: round-half-up of ratio*n samples, drawn
/// uniformly without replacement (Fisher-Yates), deterministic per seed.
struct SubsetAttack {
    double ratio = 1.0;  // in (0, 1]
    uint64_t seed = 0;
};

inline std::vector<std::size_t> subset_indices(std::size_t n, const SubsetAttack& attack) {
    if (n == 0) throw InvalidInput("subset_indices: empty input");
    if (attack.ratio <= 0.0 || attack.ratio > 1.0)
        throw InvalidInput("subset_indices: ratio must be in (0, 1]");
    const std::size_t m = static_cast<std::size_t>(
        std::floor(attack.ratio * static_cast<double>(n) + 0.5));
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::mt19937_64 rng(attack.seed);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng() % (n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(m);
    std::sort(idx.begin(), idx.end());
    return idx;
}

template <class T>
std::vector<T> apply_subset(const std::vector<T>& samples, const SubsetAttack& attack) {
    std::vector<T> out;
    for (std::size_t i : subset_indices(samples.size(), attack)) out.push_back(samples[i]);
    return out;
}

/// I.i.d. per-bit flips with probability p, deterministic per seed.
struct BitFlipChannel {
    double p = 0.0;
    uint64_t seed = 0;
};

inline BitString apply_bitflips(const BitString& bits, const BitFlipChannel& ch) {
    if (ch.p < 0.0 || ch.p > 1.0) throw InvalidInput("apply_bitflips: p must be in [0, 1]");
    BitString out = bits;
    std::mt19937_64 rng(ch.seed);
    for (std::size_t i = 0; i < out.size(); ++i)
        if (uniform01(rng) < ch.p) out[i] = static_cast<uint8_t>(out[i] ^ 1u);
    return out;
}

/// Per-sample channels derive their seed as seed ^ sample index, so parallel
/// and serial application give identical results.
inline uint64_t derive_seed(uint64_t seed, std::size_t sample_index) {
    return seed ^ static_cast<uint64_t>(sample_index);
}

/// Linear capped noise model for the capacity/accuracy trade-off of learned
/// watermarkers: longer payloads flip more, saturating at chance level.
inline double length_scaled_flip_prob(std::size_t l, double p0, std::size_t l_ref) {
    if (p0 < 0.0 || p0 > 0.5) throw InvalidInput("length_scaled_flip_prob: p0 must be in [0, 0.5]");
    if (l < 1 || l_ref < 1) throw InvalidInput("length_scaled_flip_prob: lengths must be >= 1");
    return std::min(0.5, p0 * static_cast<double>(l) / static_cast<double>(l_ref));
}

}  // namespace amuse

#endif
