#ifndef AMUSE_TRANSFORMS_HPP
#define AMUSE_TRANSFORMS_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "amuse/errors.hpp"

namespace amuse {

/// Row-major 2-D array of doubles.
struct Plane {
    std::size_t w = 0;
    std::size_t h = 0;
    std::vector<double> v;

    Plane() = default;
    Plane(std::size_t w, std::size_t h, double fill = 0.0) : w(w), h(h), v(w * h, fill) {}

    double& at(std::size_t x, std::size_t y) { return v[y * w + x]; }
    double at(std::size_t x, std::size_t y) const { return v[y * w + x]; }
};

struct DwtBands {
    Plane ll, lh, hl, hh;
};

/// Single-level orthonormal Haar analysis. Each 2x2 input block
/// [[a,b],[c,d]] maps to ll=(a+b+c+d)/2, hl=(a-b+c-d)/2, lh=(a+b-c-d)/2,
/// hh=(a-b-c+d)/2.
inline DwtBands haar_dwt_1level(const Plane& x) {
    if (x.w % 2 != 0 || x.h % 2 != 0)
        throw InvalidInput("haar_dwt_1level: dimensions must be even");
    DwtBands out;
    const std::size_t w2 = x.w / 2, h2 = x.h / 2;
    out.ll = Plane(w2, h2);
    out.lh = Plane(w2, h2);
    out.hl = Plane(w2, h2);
    out.hh = Plane(w2, h2);
    for (std::size_t y = 0; y < h2; ++y) {
        for (std::size_t xx = 0; xx < w2; ++xx) {
            const double a = x.at(2 * xx, 2 * y);
            const double b = x.at(2 * xx + 1, 2 * y);
            const double c = x.at(2 * xx, 2 * y + 1);
            const double d = x.at(2 * xx + 1, 2 * y + 1);
            out.ll.at(xx, y) = 0.5 * (a + b + c + d);
            out.hl.at(xx, y) = 0.5 * (a - b + c - d);
            out.lh.at(xx, y) = 0.5 * (a + b - c - d);
            out.hh.at(xx, y) = 0.5 * (a - b - c + d);
        }
    }
    return out;
}

inline Plane haar_idwt_1level(const DwtBands& b) {
    Plane out(b.ll.w * 2, b.ll.h * 2);
    for (std::size_t y = 0; y < b.ll.h; ++y) {
        for (std::size_t x = 0; x < b.ll.w; ++x) {
            const double ll = b.ll.at(x, y);
            const double hl = b.hl.at(x, y);
            const double lh = b.lh.at(x, y);
            const double hh = b.hh.at(x, y);
            out.at(2 * x, 2 * y) = 0.5 * (ll + hl + lh + hh);
            out.at(2 * x + 1, 2 * y) = 0.5 * (ll - hl + lh - hh);
            out.at(2 * x, 2 * y + 1) = 0.5 * (ll + hl - lh - hh);
            out.at(2 * x + 1, 2 * y + 1) = 0.5 * (ll - hl - lh + hh);
        }
    }
    return out;
}

namespace detail {
inline const std::array<std::array<double, 4>, 4>& dct4_basis() {
    static const std::array<std::array<double, 4>, 4> basis = [] {
        std::array<std::array<double, 4>, 4> m{};
        const double pi = 3.14159265358979323846;
        for (int u = 0; u < 4; ++u) {
            const double s = u == 0 ? std::sqrt(0.25) : std::sqrt(0.5);
            for (int n = 0; n < 4; ++n) m[u][n] = s * std::cos((2 * n + 1) * u * pi / 8.0);
        }
        return m;
    }();
    return basis;
}
}  // namespace detail

using Block4 = std::array<std::array<double, 4>, 4>;

/// Orthonormal type-II 2-D DCT of a 4x4 block.
inline Block4 block_dct4(const Block4& x) {
    const auto& B = detail::dct4_basis();
    Block4 tmp{}, out{};
    for (int u = 0; u < 4; ++u)
        for (int n = 0; n < 4; ++n)
            for (int m = 0; m < 4; ++m) tmp[u][m] += B[u][n] * x[n][m];
    for (int u = 0; u < 4; ++u)
        for (int v = 0; v < 4; ++v)
            for (int m = 0; m < 4; ++m) out[u][v] += tmp[u][m] * B[v][m];
    return out;
}

inline Block4 block_idct4(const Block4& c) {
    const auto& B = detail::dct4_basis();
    Block4 tmp{}, out{};
    for (int n = 0; n < 4; ++n)
        for (int u = 0; u < 4; ++u)
            for (int v = 0; v < 4; ++v) tmp[n][v] += B[u][n] * c[u][v];
    for (int n = 0; n < 4; ++n)
        for (int m = 0; m < 4; ++m)
            for (int v = 0; v < 4; ++v) out[n][m] += tmp[n][v] * B[v][m];
    return out;
}

}  // namespace amuse

#endif
