#ifndef AMUSE_IMAGE_HPP
#define AMUSE_IMAGE_HPP

#include <png.h>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "amuse/errors.hpp"
#include "amuse/transforms.hpp"

namespace amuse {

/// 8-bit RGB image, row-major, interleaved channels.
struct RgbImage {
    std::size_t w = 0;
    std::size_t h = 0;
    std::vector<uint8_t> px;  // 3 * w * h

    RgbImage() = default;
    RgbImage(std::size_t w, std::size_t h) : w(w), h(h), px(3 * w * h, 0) {}

    uint8_t& at(std::size_t x, std::size_t y, int c) { return px[3 * (y * w + x) + c]; }
    uint8_t at(std::size_t x, std::size_t y, int c) const { return px[3 * (y * w + x) + c]; }

    bool operator==(const RgbImage& o) const { return w == o.w && h == o.h && px == o.px; }
};

inline uint8_t clamp_round_u8(double v) {
    if (v <= 0.0) return 0;
    if (v >= 255.0) return 255;
    return static_cast<uint8_t>(std::lround(v));
}

// Rec.601 luma / chroma
inline double luma_of(double r, double g, double b) { return 0.299 * r + 0.587 * g + 0.114 * b; }

inline Plane luma_plane(const RgbImage& img) {
    Plane p(img.w, img.h);
    for (std::size_t y = 0; y < img.h; ++y)
        for (std::size_t x = 0; x < img.w; ++x)
            p.at(x, y) = luma_of(img.at(x, y, 0), img.at(x, y, 1), img.at(x, y, 2));
    return p;
}

/// Rebuilds RGB from a modified luma plane, keeping the original chroma.
inline RgbImage recombine_luma(const RgbImage& orig, const Plane& y_new) {
    RgbImage out(orig.w, orig.h);
    for (std::size_t y = 0; y < orig.h; ++y) {
        for (std::size_t x = 0; x < orig.w; ++x) {
            const double r = orig.at(x, y, 0), g = orig.at(x, y, 1), b = orig.at(x, y, 2);
            const double dy = y_new.at(x, y) - luma_of(r, g, b);
            out.at(x, y, 0) = clamp_round_u8(r + dy);
            out.at(x, y, 1) = clamp_round_u8(g + dy);
            out.at(x, y, 2) = clamp_round_u8(b + dy);
        }
    }
    return out;
}

inline RgbImage center_crop(const RgbImage& img, std::size_t mult) {
    const std::size_t w = img.w - img.w % mult;
    const std::size_t h = img.h - img.h % mult;
    if (w == 0 || h == 0) throw InvalidInput("center_crop: image smaller than " +
                                             std::to_string(mult) + " pixels");
    if (w == img.w && h == img.h) return img;
    const std::size_t x0 = (img.w - w) / 2;
    const std::size_t y0 = (img.h - h) / 2;
    RgbImage out(w, h);
    for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x < w; ++x)
            for (int c = 0; c < 3; ++c) out.at(x, y, c) = img.at(x0 + x, y0 + y, c);
    return out;
}

/// PSNR in dB over all channels; identical images return +infinity.
inline double psnr(const RgbImage& a, const RgbImage& b) {
    if (a.w != b.w || a.h != b.h) throw InvalidInput("psnr: dimension mismatch");
    double se = 0.0;
    for (std::size_t i = 0; i < a.px.size(); ++i) {
        const double d = static_cast<double>(a.px[i]) - static_cast<double>(b.px[i]);
        se += d * d;
    }
    if (se == 0.0) return std::numeric_limits<double>::infinity();
    const double mse = se / static_cast<double>(a.px.size());
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

inline RgbImage read_png(const std::string& path) {
    FILE* fp = std::fopen(path.c_str(), "rb");
    if (!fp) throw IoError("cannot open " + path);
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png_create_info_struct(png);
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(fp);
        throw IoError("png read error: " + path);
    }
    png_init_io(png, fp);
    png_read_info(png, info);
    png_set_expand(png);
    png_set_strip_16(png);
    png_set_strip_alpha(png);
    png_set_gray_to_rgb(png);
    png_read_update_info(png, info);

    RgbImage img(png_get_image_width(png, info), png_get_image_height(png, info));
    std::vector<png_bytep> rows(img.h);
    for (std::size_t y = 0; y < img.h; ++y) rows[y] = img.px.data() + 3 * img.w * y;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    return img;
}

inline void write_png(const std::string& path, const RgbImage& img) {
    FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw IoError("cannot write " + path);
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png_create_info_struct(png);
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        std::fclose(fp);
        throw IoError("png write error: " + path);
    }
    png_init_io(png, fp);
    png_set_IHDR(png, info, static_cast<png_uint_32>(img.w), static_cast<png_uint_32>(img.h), 8,
                 PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    std::vector<png_bytep> rows(img.h);
    for (std::size_t y = 0; y < img.h; ++y)
        rows[y] = const_cast<png_bytep>(img.px.data() + 3 * img.w * y);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
}

}  // namespace amuse

#endif
