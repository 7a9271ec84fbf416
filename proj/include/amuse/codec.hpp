#ifndef AMUSE_CODEC_HPP
#define AMUSE_CODEC_HPP

#include <cstdint>
#include <vector>

#include "amuse/bits.hpp"
#include "amuse/errors.hpp"

namespace amuse {

/// binom(n, k) saturating at `cap` so feasibility checks never overflow.
inline uint64_t binomial(uint64_t n, uint64_t k, uint64_t cap = UINT64_MAX / 4) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    uint64_t r = 1;
    for (uint64_t i = 1; i <= k; ++i) {
        if (r > cap) return cap;
        r = r * (n - k + i) / i;
    }
    return r < cap ? r : cap;
}

inline unsigned bit_width_for(uint64_t count) {
    // ceil(log2(count)) for count >= 1
    unsigned b = 0;
    while ((uint64_t(1) << b) < count) ++b;
    return b;
}

inline std::size_t padding_bits(std::size_t L, std::size_t N) {
    return (N - (L % N)) % N;
}

/// Closed-form sub-message length: ordering bits plus N-K chunks of the
/// padded message. Pass-through (N=1) carries the message verbatim.
inline std::size_t submessage_length(std::size_t L, std::size_t N, std::size_t K) {
    if (N == 1) return L;
    const std::size_t p = padding_bits(L, N);
    const uint64_t C = binomial(N, N - K);
    return bit_width_for(C) + (N - K) * ((L + p) / N);
}

/// Complete persisted codec configuration.
struct EncodingParams {
    std::size_t L = 0;  // original message length, bits
    std::size_t N = 1;  // chunk count
    std::size_t K = 0;  // excluded-chunk count
    std::size_t p = 0;  // padding bits
    std::size_t n = 0;  // dataset sample count
    uint64_t C = 1;     // combination count = binom(N, N-K)
    unsigned b = 0;     // ordering-bit width

    static EncodingParams make(std::size_t L, std::size_t N, std::size_t K, std::size_t n) {
        if (L < 1) throw InvalidInput("EncodingParams: L must be >= 1");
        if (N < 1) throw InvalidInput("EncodingParams: N must be >= 1");
        if (N == 1 && K != 0) throw InvalidInput("EncodingParams: N=1 requires K=0");
        if (N > 1 && (K < 1 || K > N - 1))
            throw InvalidInput("EncodingParams: K must be in [1, N-1]");
        if (n < 1) throw InvalidInput("EncodingParams: n must be >= 1");
        EncodingParams e;
        e.L = L;
        e.N = N;
        e.K = K;
        e.p = padding_bits(L, N);
        e.n = n;
        e.C = N == 1 ? 1 : binomial(N, N - K);
        if (N > 1 && e.C > n)
            throw InvalidInput("EncodingParams: C=" + std::to_string(e.C) +
                               " combinations exceed n=" + std::to_string(n) + " samples");
        e.b = N == 1 ? 0 : bit_width_for(e.C);
        return e;
    }

    std::size_t chunk_len() const { return (L + p) / N; }
    std::size_t payload_len() const { return (N - K) * chunk_len(); }
    std::size_t sub_len() const { return b + payload_len(); }
};

/// All (N-K)-subsets of {0..N-1} in lexicographic order of their sorted
/// index lists. The table position is the ordering index.
struct CombinationTable {
    std::size_t N = 0;
    std::size_t r = 0;  // subset size, N-K
    std::vector<std::vector<std::size_t>> entries;
};

inline CombinationTable enumerate_combinations(std::size_t N, std::size_t K) {
    if (N < 1) throw InvalidInput("enumerate_combinations: N must be >= 1");
    if (N > 1 && (K < 1 || K > N - 1))
        throw InvalidInput("enumerate_combinations: K must be in [1, N-1]");
    CombinationTable t;
    t.N = N;
    t.r = N - K;
    std::vector<std::size_t> cur(t.r);
    for (std::size_t i = 0; i < t.r; ++i) cur[i] = i;
    while (true) {
        t.entries.push_back(cur);
        // advance to the next lexicographic combination
        std::size_t i = t.r;
        bool advanced = false;
        while (i-- > 0) {
            if (cur[i] < N - t.r + i) {
                ++cur[i];
                for (std::size_t j = i + 1; j < t.r; ++j) cur[j] = cur[j - 1] + 1;
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    return t;
}

inline std::pair<BitString, std::size_t> pad_message(const BitString& m, std::size_t N) {
    if (m.empty()) throw InvalidInput("pad_message: empty message");
    if (N < 1) throw InvalidInput("pad_message: N must be >= 1");
    const std::size_t p = padding_bits(m.size(), N);
    BitString out = m;
    for (std::size_t i = 0; i < p; ++i) out.push_back(0);  // zeros at the tail
    return {out, p};
}

inline std::vector<BitString> split_chunks(const BitString& padded, std::size_t N) {
    if (N < 1 || padded.size() % N != 0)
        throw InvalidInput("split_chunks: length not divisible by N");
    const std::size_t len = padded.size() / N;
    std::vector<BitString> chunks;
    chunks.reserve(N);
    for (std::size_t i = 0; i < N; ++i) chunks.push_back(padded.slice(i * len, len));
    return chunks;
}

/// Ordering index plus the chunk payload extracted from (or destined for) one
/// dataset sample.
struct SubMessage {
    uint64_t ordering_index = 0;  // in [0, C)
    BitString payload;
    BitString raw;  // ordering bits (big-endian) followed by payload
};

namespace detail {
inline SubMessage build_submessage(const EncodingParams& params, const CombinationTable& table,
                                   const std::vector<BitString>& chunks, uint64_t idx0) {
    SubMessage s;
    s.ordering_index = idx0;
    if (params.N == 1) {
        s.payload = chunks[0];
        s.raw = chunks[0];
        return s;
    }
    for (std::size_t pos : table.entries[idx0]) s.payload.append(chunks[pos]);
    s.raw.append_uint(idx0, params.b);
    s.raw.append(s.payload);
    return s;
}
}  // namespace detail

/// Sub-message for the 1-based sample index j, via the round-robin rule
/// S'[C - (j mod C)] with 1-based positions in S'.
inline SubMessage submessage_for_sample(const EncodingParams& params,
                                        const CombinationTable& table,
                                        const std::vector<BitString>& chunks, std::size_t j) {
    if (j < 1 || j > params.n) throw InvalidInput("submessage_for_sample: j out of [1, n]");
    const uint64_t pos1 = params.C - (j % params.C);  // 1-based position in S'
    return detail::build_submessage(params, table, chunks, pos1 - 1);
}

/// Lazily yields the n sub-messages of Algorithm 1; keeps only the chunk
/// table in memory.
class Encoder {
public:
    Encoder(const BitString& message, const EncodingParams& params) : params_(params) {
        if (message.size() != params.L)
            throw InvalidInput("encode: message length " + std::to_string(message.size()) +
                               " != L=" + std::to_string(params.L));
        auto [padded, p] = pad_message(message, params.N);
        (void)p;
        chunks_ = split_chunks(padded, params.N);
        if (params.N > 1) table_ = enumerate_combinations(params.N, params.K);
    }

    SubMessage at(std::size_t j) const {  // 1-based sample index
        return submessage_for_sample(params_, table_, chunks_, j);
    }

    std::vector<SubMessage> all() const {
        std::vector<SubMessage> out;
        out.reserve(params_.n);
        for (std::size_t j = 1; j <= params_.n; ++j) out.push_back(at(j));
        return out;
    }

    const EncodingParams& params() const { return params_; }
    const CombinationTable& table() const { return table_; }

private:
    EncodingParams params_;
    std::vector<BitString> chunks_;
    CombinationTable table_;
};

inline std::vector<BitString> encode(const BitString& message, const EncodingParams& params) {
    Encoder enc(message, params);
    std::vector<BitString> out;
    out.reserve(params.n);
    for (std::size_t j = 1; j <= params.n; ++j) out.push_back(enc.at(j).raw);
    return out;
}

struct DecodeResult {
    BitString message;                 // length L, padding removed
    std::vector<bool> chunk_coverage;  // length N
    std::vector<std::size_t> vote_counts;  // copies seen per chunk
    bool complete = false;
    std::size_t discarded_bad_index = 0;   // ordering index >= C
    std::size_t discarded_bad_length = 0;  // raw length != l
};

/// Groups chunk copies by ordering index, majority-votes each bit (ties go
/// to 0), zero-fills uncovered chunks and strips the padding.
inline DecodeResult decode(const std::vector<BitString>& extracted, const EncodingParams& params) {
    if (extracted.empty()) throw EmptyInputError();

    const std::size_t clen = params.chunk_len();
    CombinationTable table;
    if (params.N > 1) table = enumerate_combinations(params.N, params.K);

    DecodeResult res;
    res.vote_counts.assign(params.N, 0);
    std::vector<std::vector<uint32_t>> ones(params.N, std::vector<uint32_t>(clen, 0));

    std::size_t accepted = 0;
    for (const BitString& raw : extracted) {
        if (raw.size() != params.sub_len()) {
            ++res.discarded_bad_length;
            continue;
        }
        uint64_t idx0 = 0;
        if (params.N > 1) {
            idx0 = raw.read_uint(0, params.b);
            if (idx0 >= params.C) {
                ++res.discarded_bad_index;
                continue;
            }
        }
        ++accepted;
        if (params.N == 1) {
            ++res.vote_counts[0];
            for (std::size_t i = 0; i < clen; ++i) ones[0][i] += raw[i];
            continue;
        }
        const auto& subset = table.entries[idx0];
        for (std::size_t s = 0; s < subset.size(); ++s) {
            const std::size_t chunk = subset[s];
            ++res.vote_counts[chunk];
            const std::size_t off = params.b + s * clen;
            for (std::size_t i = 0; i < clen; ++i) ones[chunk][i] += raw[off + i];
        }
    }
    if (accepted == 0) throw AllInvalidError();

    res.chunk_coverage.resize(params.N);
    BitString merged(params.N * clen, 0);
    for (std::size_t chunk = 0; chunk < params.N; ++chunk) {
        const std::size_t t = res.vote_counts[chunk];
        res.chunk_coverage[chunk] = t > 0;
        if (t == 0) continue;  // zero-filled
        for (std::size_t i = 0; i < clen; ++i)
            merged[chunk * clen + i] = static_cast<uint8_t>(2 * ones[chunk][i] > t ? 1 : 0);
    }
    res.complete = true;
    for (bool c : res.chunk_coverage) res.complete = res.complete && c;
    res.message = merged.slice(0, params.L);  // drop the trailing p padding bits
    return res;
}

}  // namespace amuse

#endif
