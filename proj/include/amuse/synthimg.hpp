#ifndef AMUSE_SYNTHIMG_HPP
#define AMUSE_SYNTHIMG_HPP

#include <cmath>
#include <cstdint>
#include <random>

#include "amuse/image.hpp"

namespace amuse {

/// Deterministic photo-like test image: smooth low-frequency shading plus
/// band-limited texture and mild chroma, with luma kept away from the 8-bit
/// rails so QIM embedding never clips.
inline RgbImage make_test_image(std::size_t w, std::size_t h, uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto unif = [&](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    };

    // a handful of random smooth plane waves per channel group
    struct Wave {
        double fx, fy, phase, amp;
    };
    Wave shade[4], tex[6], chroma_u[2], chroma_v[2];
    for (auto& s : shade)
        s = {unif(0.2, 1.6), unif(0.2, 1.6), unif(0, 6.283), unif(12, 30)};
    for (auto& t : tex)
        t = {unif(4, 14), unif(4, 14), unif(0, 6.283), unif(3, 9)};
    for (auto& c : chroma_u) c = {unif(0.3, 3), unif(0.3, 3), unif(0, 6.283), unif(4, 11)};
    for (auto& c : chroma_v) c = {unif(0.3, 3), unif(0.3, 3), unif(0, 6.283), unif(4, 11)};
    const double base = unif(95, 150);

    RgbImage img(w, h);
    const double pi2 = 6.28318530717958648;
    for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
            const double u = static_cast<double>(x) / static_cast<double>(w);
            const double v = static_cast<double>(y) / static_cast<double>(h);
            double luma = base;
            for (const auto& s : shade) luma += s.amp * std::sin(pi2 * (s.fx * u + s.fy * v) + s.phase);
            for (const auto& t : tex) luma += t.amp * std::sin(pi2 * (t.fx * u + t.fy * v) + t.phase);
            double cu = 0, cv = 0;
            for (const auto& c : chroma_u) cu += c.amp * std::sin(pi2 * (c.fx * u + c.fy * v) + c.phase);
            for (const auto& c : chroma_v) cv += c.amp * std::sin(pi2 * (c.fx * u + c.fy * v) + c.phase);
            if (luma < 35) luma = 35;
            if (luma > 220) luma = 220;
            img.at(x, y, 0) = clamp_round_u8(luma + 1.402 * cv);
            img.at(x, y, 1) = clamp_round_u8(luma - 0.344136 * cu - 0.714136 * cv);
            img.at(x, y, 2) = clamp_round_u8(luma + 1.772 * cu);
        }
    }
    return img;
}

}  // namespace amuse

#endif
