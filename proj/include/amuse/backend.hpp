#ifndef AMUSE_BACKEND_HPP
#define AMUSE_BACKEND_HPP

#include <concepts>
#include <cstdint>
#include <string>
#include <vector>

#include "amuse/bits.hpp"
#include "amuse/errors.hpp"
#include "amuse/image.hpp"
#include "amuse/qim.hpp"
#include "amuse/transforms.hpp"

namespace amuse {

/// Contract every watermark backend satisfies: deterministic embed and blind
/// extract with extract(embed(x, m), |m|) == m on unattacked samples.
template <class B>
concept WatermarkBackend = requires(const B& b, const typename B::Sample& s, const BitString& m,
                                    std::size_t len) {
    { b.embed(s, m) } -> std::same_as<typename B::Sample>;
    { b.extract(s, len) } -> std::same_as<BitString>;
};

/// Blind DCT-DWT/QIM image watermarker.
///
/// Pipeline: center-crop to a multiple of 8, Rec.601 luma, 1-level Haar DWT,
/// tile the LL band into 4x4 blocks in raster order, embed bit (j mod |m|)
/// into block j at the (1,2) DCT coefficient via QIM with step = scale,
/// inverse transforms, recombine chroma, clamp and round. Extraction redoes
/// the transform and majority-votes each bit position across its blocks.
struct DctDwtParams {
    double scale = 36.0;        // QIM quantization step
    int coeff_row = 1;          // zero-based position in the 4x4 DCT block
    int coeff_col = 2;
};

class DctDwtBackend {
public:
    using Sample = RgbImage;

    explicit DctDwtBackend(DctDwtParams params = {}) : params_(params) {
        if (params_.scale <= 0) throw InvalidInput("DctDwtBackend: scale must be positive");
        if (params_.coeff_row == 0 && params_.coeff_col == 0)
            throw InvalidInput("DctDwtBackend: DC coefficient not allowed");
    }

    const DctDwtParams& params() const { return params_; }

    static std::size_t capacity(const RgbImage& img) {
        const std::size_t w = img.w - img.w % 8;
        const std::size_t h = img.h - img.h % 8;
        return (w / 8) * (h / 8);  // 4x4 blocks in the half-size LL band
    }

    RgbImage embed(const RgbImage& img, const BitString& bits) const {
        if (bits.empty()) throw InvalidInput("DctDwtBackend::embed: empty message");
        const RgbImage cropped = center_crop(img, 8);
        if (bits.size() > capacity(cropped)) throw CapacityError(bits.size(), capacity(cropped));

        Plane y = luma_plane(cropped);
        DwtBands bands = haar_dwt_1level(y);
        const std::size_t bw = bands.ll.w / 4, bh = bands.ll.h / 4;
        std::size_t j = 0;
        for (std::size_t by = 0; by < bh; ++by) {
            for (std::size_t bx = 0; bx < bw; ++bx, ++j) {
                Block4 blk;
                for (int r = 0; r < 4; ++r)
                    for (int c = 0; c < 4; ++c) blk[r][c] = bands.ll.at(bx * 4 + c, by * 4 + r);
                Block4 coef = block_dct4(blk);
                const unsigned bit = bits[j % bits.size()];
                coef[params_.coeff_row][params_.coeff_col] =
                    qim_embed(coef[params_.coeff_row][params_.coeff_col], bit, params_.scale);
                blk = block_idct4(coef);
                for (int r = 0; r < 4; ++r)
                    for (int c = 0; c < 4; ++c) bands.ll.at(bx * 4 + c, by * 4 + r) = blk[r][c];
            }
        }
        return recombine_luma(cropped, haar_idwt_1level(bands));
    }

    BitString extract(const RgbImage& img, std::size_t expected_len) const {
        if (expected_len == 0) throw InvalidInput("DctDwtBackend::extract: zero length");
        const RgbImage cropped = center_crop(img, 8);
        if (expected_len > capacity(cropped))
            throw CapacityError(expected_len, capacity(cropped));

        const DwtBands bands = haar_dwt_1level(luma_plane(cropped));
        std::vector<uint32_t> ones(expected_len, 0), total(expected_len, 0);
        const std::size_t bw = bands.ll.w / 4, bh = bands.ll.h / 4;
        std::size_t j = 0;
        for (std::size_t by = 0; by < bh; ++by) {
            for (std::size_t bx = 0; bx < bw; ++bx, ++j) {
                Block4 blk;
                for (int r = 0; r < 4; ++r)
                    for (int c = 0; c < 4; ++c) blk[r][c] = bands.ll.at(bx * 4 + c, by * 4 + r);
                const Block4 coef = block_dct4(blk);
                const unsigned bit =
                    qim_extract(coef[params_.coeff_row][params_.coeff_col], params_.scale);
                ones[j % expected_len] += bit;
                ++total[j % expected_len];
            }
        }
        BitString out(expected_len);
        for (std::size_t i = 0; i < expected_len; ++i)
            out[i] = static_cast<uint8_t>(2 * ones[i] > total[i] ? 1 : 0);
        return out;
    }

private:
    DctDwtParams params_;
};

/// Payload record for codec-only experiments: the sub-message is stored
/// verbatim and persisted via the manifest.
struct SyntheticRecord {
    BitString payload;
};

class SyntheticBackend {
public:
    using Sample = SyntheticRecord;

    SyntheticRecord embed(const SyntheticRecord&, const BitString& bits) const {
        return SyntheticRecord{bits};
    }

    BitString extract(const SyntheticRecord& rec, std::size_t expected_len) const {
        if (rec.payload.size() != expected_len)
            throw InvalidInput("SyntheticBackend::extract: stored payload has length " +
                               std::to_string(rec.payload.size()) + ", expected " +
                               std::to_string(expected_len));
        return rec.payload;
    }
};

static_assert(WatermarkBackend<DctDwtBackend>);
static_assert(WatermarkBackend<SyntheticBackend>);

}  // namespace amuse

#endif
