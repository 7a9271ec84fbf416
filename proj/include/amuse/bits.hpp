#ifndef AMUSE_BITS_HPP
#define AMUSE_BITS_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "amuse/errors.hpp"

namespace amuse {

/// Ordered sequence of bits. Holds the watermark message, its chunks and the
/// per-sample sub-messages.
///
/// Text form is hex, MSB-first: bit 0 of the string is the most significant
/// bit of the ceil(L/8)*8-bit packed value, so the unused high bits of the
/// packed form are always zero.
class BitString {
public:
    BitString() = default;
    explicit BitString(std::size_t len, uint8_t fill = 0) : bits_(len, fill) {}
    BitString(std::initializer_list<uint8_t> init) : bits_(init) {}

    static BitString from_string(const std::string& zeros_ones) {
        BitString out;
        out.bits_.reserve(zeros_ones.size());
        for (char c : zeros_ones) {
            if (c != '0' && c != '1') throw InvalidInput("BitString: expected '0'/'1'");
            out.bits_.push_back(static_cast<uint8_t>(c - '0'));
        }
        return out;
    }

    template <class Rng>
    static BitString random(std::size_t len, Rng& rng) {
        BitString out(len);
        for (std::size_t i = 0; i < len; ++i) out.bits_[i] = static_cast<uint8_t>(rng() & 1u);
        return out;
    }

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    uint8_t operator[](std::size_t i) const { return bits_[i]; }
    uint8_t& operator[](std::size_t i) { return bits_[i]; }

    void push_back(uint8_t bit) { bits_.push_back(bit & 1u); }

    void append(const BitString& other) {
        bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
    }

    BitString slice(std::size_t pos, std::size_t len) const {
        if (pos + len > bits_.size()) throw InvalidInput("BitString::slice out of range");
        BitString out;
        out.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(pos),
                         bits_.begin() + static_cast<std::ptrdiff_t>(pos + len));
        return out;
    }

    /// Appends `value` as `width` bits, big-endian.
    void append_uint(uint64_t value, unsigned width) {
        for (unsigned i = width; i-- > 0;) bits_.push_back(static_cast<uint8_t>((value >> i) & 1u));
    }

    /// Reads `width` bits at `pos` as a big-endian integer.
    uint64_t read_uint(std::size_t pos, unsigned width) const {
        if (pos + width > bits_.size()) throw InvalidInput("BitString::read_uint out of range");
        uint64_t v = 0;
        for (unsigned i = 0; i < width; ++i) v = (v << 1) | bits_[pos + i];
        return v;
    }

    /// Packed big-endian bytes of the bit string, low-aligned: the whole string
    /// forms the low |bits| bits of the ceil(|bits|/8)-byte value.
    std::vector<uint8_t> packed() const {
        const std::size_t nbytes = (bits_.size() + 7) / 8;
        std::vector<uint8_t> out(nbytes, 0);
        const std::size_t pad = nbytes * 8 - bits_.size();
        for (std::size_t i = 0; i < bits_.size(); ++i) {
            const std::size_t pos = pad + i;
            out[pos / 8] = static_cast<uint8_t>(out[pos / 8] | (bits_[i] << (7 - pos % 8)));
        }
        return out;
    }

    std::string to_hex() const {
        static const char* digits = "0123456789abcdef";
        std::string out;
        for (uint8_t b : packed()) {
            out.push_back(digits[b >> 4]);
            out.push_back(digits[b & 0xf]);
        }
        return out;
    }

    static BitString from_hex(const std::string& hex, std::size_t bit_len) {
        if (hex.size() != ((bit_len + 7) / 8) * 2)
            throw InvalidInput("BitString::from_hex: hex length does not match bit length " +
                               std::to_string(bit_len));
        std::vector<uint8_t> bytes;
        bytes.reserve(hex.size() / 2);
        auto nibble = [](char c) -> unsigned {
            if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
            if (c >= 'a' && c <= 'f') return static_cast<unsigned>(c - 'a' + 10);
            if (c >= 'A' && c <= 'F') return static_cast<unsigned>(c - 'A' + 10);
            throw InvalidInput("BitString::from_hex: bad hex digit");
        };
        for (std::size_t i = 0; i < hex.size(); i += 2)
            bytes.push_back(static_cast<uint8_t>((nibble(hex[i]) << 4) | nibble(hex[i + 1])));
        const std::size_t pad = bytes.size() * 8 - bit_len;
        BitString out;
        out.bits_.reserve(bit_len);
        for (std::size_t pos = 0; pos < bytes.size() * 8; ++pos) {
            const uint8_t bit = (bytes[pos / 8] >> (7 - pos % 8)) & 1u;
            if (pos < pad) {
                if (bit) throw InvalidInput("BitString::from_hex: unused high bits must be zero");
            } else {
                out.bits_.push_back(bit);
            }
        }
        return out;
    }

    bool operator==(const BitString& other) const { return bits_ == other.bits_; }
    bool operator!=(const BitString& other) const { return bits_ != other.bits_; }

    std::size_t hamming_distance(const BitString& other) const {
        if (other.size() != size()) throw InvalidInput("hamming_distance: length mismatch");
        std::size_t d = 0;
        for (std::size_t i = 0; i < size(); ++i) d += bits_[i] != other.bits_[i];
        return d;
    }

    const std::vector<uint8_t>& data() const { return bits_; }

    std::vector<uint8_t>::const_iterator begin() const { return bits_.begin(); }
    std::vector<uint8_t>::const_iterator end() const { return bits_.end(); }

private:
    std::vector<uint8_t> bits_;  // one element per bit, each 0 or 1
};

inline std::size_t hamming_distance(const BitString& a, const BitString& b) {
    return a.hamming_distance(b);
}

}  // namespace amuse

#endif
