#ifndef AMUSE_PIPELINE_HPP
#define AMUSE_PIPELINE_HPP

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "amuse/backend.hpp"
#include "amuse/channel.hpp"
#include "amuse/codec.hpp"
#include "amuse/manifest.hpp"
#include "amuse/metrics.hpp"
#include "amuse/select.hpp"
#include "amuse/synthimg.hpp"

namespace amuse {

namespace fs = std::filesystem;

/// Sample order is lexicographic file-name order; it defines Algorithm 1's
/// 1-based sample index and is frozen into the manifest.
inline std::vector<std::string> list_pngs(const std::string& dir) {
    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".png")
            names.push_back(e.path().filename().string());
    std::sort(names.begin(), names.end());
    return names;
}

inline uint64_t mix64(uint64_t a, uint64_t b) {
    uint64_t x = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

struct EmbedOptions {
    std::optional<Rational> tau_hat;  // select (N, K) via Algorithm 2
    std::optional<std::pair<std::size_t, std::size_t>> nk;  // or force them
    std::string backend_id = "dctdwt";
    double scale = 36.0;
    uint64_t seed = 0;  // recorded in experiment output; embedding is deterministic
};

inline EncodingParams resolve_params(std::size_t L, std::size_t n, const EmbedOptions& opts,
                                     bool* pass_through_fallback = nullptr) {
    if (opts.nk) {
        if (pass_through_fallback) *pass_through_fallback = false;
        return EncodingParams::make(L, opts.nk->first, opts.nk->second, n);
    }
    ProtectionSpec spec;
    spec.tau_hat = opts.tau_hat.value_or(Rational(1, 1));
    spec.L = L;
    spec.n = n;
    const Selection sel = select_params(spec);
    if (pass_through_fallback) *pass_through_fallback = sel.pass_through;
    return EncodingParams::make(L, sel.N, sel.K, n);
}

struct EmbedOutcome {
    Manifest manifest;
    bool pass_through_fallback = false;
    std::vector<double> psnrs;  // per image, dctdwt only
};

/// Watermarks every PNG in `in_dir` with its sub-message and writes the
/// watermarked dataset plus manifest. Any per-sample failure aborts; silent
/// skips would shift the sample indexing.
inline EmbedOutcome embed_dataset(const std::string& in_dir, const std::string& out_dir,
                                  const BitString& message, const EmbedOptions& opts) {
    const std::vector<std::string> names = list_pngs(in_dir);
    if (names.empty()) throw InvalidInput("embed_dataset: no .png samples in " + in_dir);

    EmbedOutcome out;
    EncodingParams params =
        resolve_params(message.size(), names.size(), opts, &out.pass_through_fallback);
    Encoder enc(message, params);
    DctDwtBackend backend(DctDwtParams{opts.scale, 1, 2});

    fs::create_directories(out_dir);
    Manifest& m = out.manifest;
    m.message_digest = message_digest(message);
    m.encoding = params;
    m.backend_id = "dctdwt";
    m.backend_params = {{"scale", opts.scale}};
    for (std::size_t j = 1; j <= names.size(); ++j) {
        const std::string& name = names[j - 1];
        const RgbImage img = read_png(in_dir + "/" + name);
        if (params.sub_len() > DctDwtBackend::capacity(img))
            throw CapacityError(params.sub_len(), DctDwtBackend::capacity(img));
        const RgbImage wm = backend.embed(img, enc.at(j).raw);
        write_png(out_dir + "/" + name, wm);
        out.psnrs.push_back(psnr(center_crop(img, 8), wm));
        m.samples.push_back(SampleEntry{name, name, std::nullopt, std::nullopt});
    }
    return out;
}

/// Synthetic-backend variant: n payload records persisted in the manifest.
inline EmbedOutcome embed_dataset_synthetic(std::size_t n, const BitString& message,
                                            const EmbedOptions& opts) {
    EmbedOutcome out;
    EncodingParams params = resolve_params(message.size(), n, opts, &out.pass_through_fallback);
    Encoder enc(message, params);
    Manifest& m = out.manifest;
    m.message_digest = message_digest(message);
    m.encoding = params;
    m.backend_id = "synthetic";
    for (std::size_t j = 1; j <= n; ++j) {
        const BitString raw = enc.at(j).raw;
        m.samples.push_back(SampleEntry{"sample-" + std::to_string(j), std::nullopt, raw.to_hex(),
                                        raw.size()});
    }
    return out;
}

struct ExtractOutcome {
    DecodeResult decode;
    std::size_t samples_available = 0;
    bool digest_match = false;
    std::optional<EvalReport> report;  // present when a reference message is supplied
};

/// Re-extracts sub-messages from whatever manifest samples are still present
/// under `dir` (all of them for the synthetic backend) and decodes.
inline ExtractOutcome extract_dataset(const std::string& dir, const Manifest& m,
                                      const std::optional<BitString>& reference = std::nullopt) {
    std::vector<BitString> extracted;
    if (m.backend_id == "dctdwt") {
        const double scale = m.backend_params.at("scale").get<double>();
        DctDwtBackend backend(DctDwtParams{scale, 1, 2});
        for (const SampleEntry& s : m.samples) {
            if (!s.file) throw InvalidInput("extract_dataset: sample without file in manifest");
            const fs::path path = fs::path(dir) / *s.file;
            if (!fs::exists(path)) continue;  // subset attack removed it
            extracted.push_back(backend.extract(read_png(path.string()), m.encoding.sub_len()));
        }
    } else if (m.backend_id == "synthetic") {
        for (const SampleEntry& s : m.samples) {
            if (!s.payload_hex || !s.payload_bits)
                throw InvalidInput("extract_dataset: sample without payload in manifest");
            extracted.push_back(BitString::from_hex(*s.payload_hex, *s.payload_bits));
        }
    } else {
        throw InvalidInput("extract_dataset: unknown backend " + m.backend_id);
    }
    if (extracted.empty()) throw InvalidInput("extract_dataset: zero extractable samples");

    ExtractOutcome out;
    out.samples_available = extracted.size();
    out.decode = decode(extracted, m.encoding);
    out.digest_match = message_digest(out.decode.message) == m.message_digest;
    if (reference) {
        if (message_digest(*reference) != m.message_digest)
            throw InvalidInput("extract_dataset: reference message does not match manifest digest");
        EvalReport r;
        r.ba = bit_accuracy(out.decode.message, *reference);
        r.wa = word_accuracy(out.decode.message, *reference);
        std::size_t covered = 0;
        for (bool c : out.decode.chunk_coverage) covered += c;
        r.chunk_coverage_rate =
            static_cast<double>(covered) / static_cast<double>(out.decode.chunk_coverage.size());
        out.report = r;
    }
    return out;
}

/// Copies a random subset of the PNGs in `in_dir` to `out_dir`.
inline std::vector<std::string> attack_subset_dir(const std::string& in_dir,
                                                  const std::string& out_dir,
                                                  const SubsetAttack& attack) {
    const std::vector<std::string> names = list_pngs(in_dir);
    if (names.empty()) throw InvalidInput("attack subset: no .png samples in " + in_dir);
    fs::create_directories(out_dir);
    std::vector<std::string> kept;
    for (std::size_t i : subset_indices(names.size(), attack)) {
        fs::copy_file(fs::path(in_dir) / names[i], fs::path(out_dir) / names[i],
                      fs::copy_options::overwrite_existing);
        kept.push_back(names[i]);
    }
    return kept;
}

// ---------------------------------------------------------------------------
// Experiment sweeps
// ---------------------------------------------------------------------------

struct ExperimentConfig {
    std::string sweep = "subset";      // "subset" | "length"
    std::string backend = "synthetic";  // "synthetic" | "dctdwt"
    std::vector<std::size_t> lengths = {300};
    std::vector<std::string> taus = {"60%", "80%"};  // baseline (N=1) always included
    std::vector<double> subset_ratios = {0.2, 0.4, 0.6, 0.8, 1.0};
    std::vector<double> scales = {36.0, 30.0, 20.0};
    std::vector<double> scale_noise_p0 = {};  // parallel to scales; dctdwt length sweep
    double noise_p0 = 0.0;                    // synthetic length sweep
    std::size_t noise_lref = 300;
    std::size_t trials = 10;
    std::size_t samples = 100;  // dataset size n
    std::size_t image_px = 168;  // corpus image edge, dctdwt sweeps
    uint64_t seed = 0;
};

inline ExperimentConfig experiment_config_from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    detail::require_keys(j,
                         {"sweep", "backend", "lengths", "taus", "subset_ratios", "scales",
                          "scale_noise_p0", "noise_p0", "noise_lref", "trials", "samples",
                          "image_px", "seed"},
                         "experiment config");
    if (j.contains("sweep")) c.sweep = j.at("sweep").get<std::string>();
    if (j.contains("backend")) c.backend = j.at("backend").get<std::string>();
    if (j.contains("lengths")) c.lengths = j.at("lengths").get<std::vector<std::size_t>>();
    if (j.contains("taus")) c.taus = j.at("taus").get<std::vector<std::string>>();
    if (j.contains("subset_ratios"))
        c.subset_ratios = j.at("subset_ratios").get<std::vector<double>>();
    if (j.contains("scales")) c.scales = j.at("scales").get<std::vector<double>>();
    if (j.contains("scale_noise_p0"))
        c.scale_noise_p0 = j.at("scale_noise_p0").get<std::vector<double>>();
    if (j.contains("noise_p0")) c.noise_p0 = j.at("noise_p0").get<double>();
    if (j.contains("noise_lref")) c.noise_lref = j.at("noise_lref").get<std::size_t>();
    if (j.contains("trials")) c.trials = j.at("trials").get<std::size_t>();
    if (j.contains("samples")) c.samples = j.at("samples").get<std::size_t>();
    if (j.contains("image_px")) c.image_px = j.at("image_px").get<std::size_t>();
    if (j.contains("seed")) c.seed = j.at("seed").get<uint64_t>();
    return c;
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

inline std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

/// UTF-8 CSV with a header row and deterministic row order.
inline void emit_csv(const std::string& path, const CsvTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    auto write_row = [&out](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << row[i];
        }
        out << '\n';
    };
    write_row(table.header);
    for (const auto& row : table.rows) write_row(row);
}

namespace detail {

struct CodecConfig {
    std::string name;  // "baseline" or "tau=60%"
    std::optional<Rational> tau_hat;  // nullopt for baseline
};

inline std::vector<CodecConfig> sweep_configs(const ExperimentConfig& cfg) {
    std::vector<CodecConfig> configs{{"baseline", std::nullopt}};
    for (const std::string& t : cfg.taus) configs.push_back({"tau=" + t, parse_ratio(t)});
    return configs;
}

inline EncodingParams config_params(const CodecConfig& c, std::size_t L, std::size_t n) {
    if (!c.tau_hat) return EncodingParams::make(L, 1, 0, n);
    ProtectionSpec spec{*c.tau_hat, L, n};
    const Selection sel = select_params(spec);
    return EncodingParams::make(L, sel.N, sel.K, n);
}

inline EvalReport evaluate(const DecodeResult& dec, const BitString& message) {
    EvalReport r;
    r.ba = bit_accuracy(dec.message, message);
    r.wa = word_accuracy(dec.message, message);
    std::size_t covered = 0;
    for (bool c : dec.chunk_coverage) covered += c;
    r.chunk_coverage_rate =
        static_cast<double>(covered) / static_cast<double>(dec.chunk_coverage.size());
    return r;
}

}  // namespace detail

/// Subset-attack robustness sweep over the synthetic (error-free) channel:
/// for each codec config, leak ratio and trial, keep round(s*n) random
/// samples and decode from them.
inline CsvTable run_subset_sweep(const ExperimentConfig& cfg) {
    CsvTable table;
    table.header = {"backend", "config", "L", "s", "trial", "ba", "wa", "coverage", "rng"};
    for (const auto& conf : detail::sweep_configs(cfg)) {
        for (std::size_t L : cfg.lengths) {
            const EncodingParams params = detail::config_params(conf, L, cfg.samples);
            for (double s : cfg.subset_ratios) {
                for (std::size_t t = 0; t < cfg.trials; ++t) {
                    std::mt19937_64 msg_rng(mix64(cfg.seed, mix64(L, t)));
                    const BitString message = BitString::random(L, msg_rng);
                    std::vector<BitString> subs = encode(message, params);
                    const uint64_t subset_seed =
                        mix64(cfg.seed, mix64(static_cast<uint64_t>(s * 1e6), mix64(L, t)));
                    subs = apply_subset(subs, SubsetAttack{s, subset_seed});
                    const EvalReport r = detail::evaluate(decode(subs, params), message);
                    table.rows.push_back({cfg.backend, conf.name, std::to_string(L), fmt_double(s),
                                          std::to_string(t), fmt_double(r.ba), fmt_double(r.wa),
                                          fmt_double(r.chunk_coverage_rate), kRngId});
                }
            }
        }
    }
    return table;
}

/// Length/accuracy sweep. With the synthetic backend the extracted
/// sub-messages pass through the length-scaled bit-flip channel; with the
/// DCT-DWT backend each configured scale carries its own channel base
/// probability (scale_noise_p0) emulating the scale-dependent extraction
/// noise of frequency-domain watermarkers under quantization stress.
inline CsvTable run_length_sweep(const ExperimentConfig& cfg) {
    CsvTable table;
    table.header = {"backend", "config", "L",  "scale", "p0",  "trial",
                    "ba",      "wa",     "coverage", "psnr", "rng"};

    const bool use_images = cfg.backend == "dctdwt";
    std::vector<RgbImage> corpus;
    if (use_images) {
        if (!cfg.scale_noise_p0.empty() && cfg.scale_noise_p0.size() != cfg.scales.size())
            throw InvalidInput("run_length_sweep: scale_noise_p0 must match scales");
        for (std::size_t i = 0; i < cfg.samples; ++i)
            corpus.push_back(make_test_image(cfg.image_px, cfg.image_px, mix64(cfg.seed, i)));
    }

    const std::vector<double> scales = use_images ? cfg.scales : std::vector<double>{0.0};
    for (const auto& conf : detail::sweep_configs(cfg)) {
        for (std::size_t L : cfg.lengths) {
            const EncodingParams params = detail::config_params(conf, L, cfg.samples);
            for (std::size_t si = 0; si < scales.size(); ++si) {
                const double scale = scales[si];
                const double p0 = use_images
                                      ? (cfg.scale_noise_p0.empty() ? 0.0 : cfg.scale_noise_p0[si])
                                      : cfg.noise_p0;
                const double p = length_scaled_flip_prob(params.sub_len(), p0, cfg.noise_lref);
                for (std::size_t t = 0; t < cfg.trials; ++t) {
                    std::mt19937_64 msg_rng(mix64(cfg.seed, mix64(L, t)));
                    const BitString message = BitString::random(L, msg_rng);
                    Encoder enc(message, params);
                    const uint64_t ch_seed = mix64(cfg.seed, mix64(static_cast<uint64_t>(si),
                                                                   mix64(L, mix64(t, 0x5eed))));
                    std::vector<BitString> extracted;
                    extracted.reserve(cfg.samples);
                    double psnr_sum = 0.0;
                    std::size_t psnr_n = 0;
                    for (std::size_t j = 1; j <= cfg.samples; ++j) {
                        BitString raw = enc.at(j).raw;
                        if (use_images) {
                            DctDwtBackend backend(DctDwtParams{scale, 1, 2});
                            const RgbImage wm = backend.embed(corpus[j - 1], raw);
                            const double q = psnr(center_crop(corpus[j - 1], 8), wm);
                            if (std::isfinite(q)) {
                                psnr_sum += q;
                                ++psnr_n;
                            }
                            raw = backend.extract(wm, params.sub_len());
                        }
                        if (p > 0.0)
                            raw = apply_bitflips(raw, BitFlipChannel{p, derive_seed(ch_seed, j)});
                        extracted.push_back(raw);
                    }
                    EvalReport r = detail::evaluate(decode(extracted, params), message);
                    if (psnr_n > 0) r.psnr = psnr_sum / static_cast<double>(psnr_n);
                    table.rows.push_back(
                        {cfg.backend, conf.name, std::to_string(L), fmt_double(scale),
                         fmt_double(p0), std::to_string(t), fmt_double(r.ba), fmt_double(r.wa),
                         fmt_double(r.chunk_coverage_rate),
                         psnr_n > 0 ? fmt_double(r.psnr) : "", kRngId});
                }
            }
        }
    }
    return table;
}

}  // namespace amuse

#endif
