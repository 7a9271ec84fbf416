#ifndef AMUSE_MANIFEST_HPP
#define AMUSE_MANIFEST_HPP

#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "amuse/bits.hpp"
#include "amuse/codec.hpp"
#include "amuse/errors.hpp"
#include "amuse/sha256.hpp"

namespace amuse {

inline constexpr int kManifestVersion = 1;
inline constexpr const char* kCombinationOrder = "lexicographic";
inline constexpr const char* kAssignmentRule = "round_robin_alg1_step7";
inline constexpr const char* kBitPacking = "msb_first_hex";

/// One dataset sample: a watermarked file, or the stored payload for the
/// synthetic backend.
struct SampleEntry {
    std::string sample_id;
    std::optional<std::string> file;
    std::optional<std::string> payload_hex;
    std::optional<std::size_t> payload_bits;
};

/// Persisted record binding a watermarked dataset to its codec parameters,
/// backend configuration and message digest. Extraction needs only this plus
/// the samples; the digest allows verification without revealing the message.
struct Manifest {
    int format_version = kManifestVersion;
    std::string message_digest;
    EncodingParams encoding;
    std::string backend_id;     // "dctdwt" | "synthetic"
    nlohmann::json backend_params = nlohmann::json::object();
    std::vector<SampleEntry> samples;  // order defines the 1-based index j
};

inline std::string message_digest(const BitString& message) {
    return sha256_hex(message.packed());
}

namespace detail {
inline void require_keys(const nlohmann::json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key))
            throw InvalidInput("manifest: unknown key \"" + key + "\" in " + where);
}
}  // namespace detail

inline nlohmann::json manifest_to_json(const Manifest& m) {
    nlohmann::json enc{{"L", m.encoding.L}, {"N", m.encoding.N}, {"K", m.encoding.K},
                       {"p", m.encoding.p}, {"n", m.encoding.n}, {"C", m.encoding.C},
                       {"b", m.encoding.b}};
    nlohmann::json samples = nlohmann::json::array();
    for (const SampleEntry& s : m.samples) {
        nlohmann::json e{{"sample_id", s.sample_id}};
        if (s.file) e["file"] = *s.file;
        if (s.payload_hex) e["payload"] = *s.payload_hex;
        if (s.payload_bits) e["payload_bits"] = *s.payload_bits;
        samples.push_back(std::move(e));
    }
    return nlohmann::json{
        {"format_version", m.format_version},
        {"message_digest", m.message_digest},
        {"encoding", std::move(enc)},
        {"backend", {{"id", m.backend_id}, {"params", m.backend_params}}},
        {"conventions",
         {{"combination_order", kCombinationOrder},
          {"assignment", kAssignmentRule},
          {"bit_packing", kBitPacking}}},
        {"samples", std::move(samples)}};
}

inline Manifest manifest_from_json(const nlohmann::json& j) {
    detail::require_keys(j, {"format_version", "message_digest", "encoding", "backend",
                             "conventions", "samples"},
                         "manifest");
    Manifest m;
    m.format_version = j.at("format_version").get<int>();
    if (m.format_version != kManifestVersion)
        throw InvalidInput("manifest: unsupported format_version " +
                           std::to_string(m.format_version));
    m.message_digest = j.at("message_digest").get<std::string>();

    const auto& enc = j.at("encoding");
    detail::require_keys(enc, {"L", "N", "K", "p", "n", "C", "b"}, "encoding");
    m.encoding = EncodingParams::make(enc.at("L").get<std::size_t>(),
                                      enc.at("N").get<std::size_t>(),
                                      enc.at("K").get<std::size_t>(),
                                      enc.at("n").get<std::size_t>());
    if (m.encoding.p != enc.at("p").get<std::size_t>() ||
        m.encoding.C != enc.at("C").get<uint64_t>() ||
        m.encoding.b != enc.at("b").get<unsigned>())
        throw InvalidInput("manifest: inconsistent derived encoding fields");

    const auto& bk = j.at("backend");
    detail::require_keys(bk, {"id", "params"}, "backend");
    m.backend_id = bk.at("id").get<std::string>();
    m.backend_params = bk.at("params");

    const auto& conv = j.at("conventions");
    detail::require_keys(conv, {"combination_order", "assignment", "bit_packing"}, "conventions");
    if (conv.at("combination_order") != kCombinationOrder ||
        conv.at("assignment") != kAssignmentRule || conv.at("bit_packing") != kBitPacking)
        throw InvalidInput("manifest: unsupported conventions");

    for (const auto& e : j.at("samples")) {
        detail::require_keys(e, {"sample_id", "file", "payload", "payload_bits"}, "sample");
        SampleEntry s;
        s.sample_id = e.at("sample_id").get<std::string>();
        if (e.contains("file")) s.file = e.at("file").get<std::string>();
        if (e.contains("payload")) s.payload_hex = e.at("payload").get<std::string>();
        if (e.contains("payload_bits")) s.payload_bits = e.at("payload_bits").get<std::size_t>();
        m.samples.push_back(std::move(s));
    }
    if (m.samples.size() != m.encoding.n)
        throw InvalidInput("manifest: sample list length does not match n");
    return m;
}

inline void save_manifest(const std::string& path, const Manifest& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << manifest_to_json(m).dump(2) << "\n";
}

inline Manifest load_manifest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    nlohmann::json j;
    in >> j;
    return manifest_from_json(j);
}

}  // namespace amuse

#endif
