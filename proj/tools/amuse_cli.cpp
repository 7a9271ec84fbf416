// amuse: dataset watermarking with adaptive multi-segment message encoding.
//
// Subcommands: select-params, embed, extract, attack subset, sweep, gen-corpus.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "amuse/pipeline.hpp"

namespace {

amuse::BitString parse_message(const std::string& hex, std::size_t bits) {
    return amuse::BitString::from_hex(hex, bits);
}

int run(int argc, char** argv) {
    CLI::App app{"AMUSE dataset watermarking toolkit"};
    app.require_subcommand(1);

    // select-params
    auto* sel_cmd = app.add_subcommand("select-params",
                                       "Pick (N, K) minimizing sub-message length for a threshold");
    std::size_t sel_len = 0, sel_samples = 0;
    std::string sel_tau;
    sel_cmd->add_option("--length", sel_len, "Message length L in bits")->required();
    sel_cmd->add_option("--tau", sel_tau, "Protection threshold (e.g. 60%, 3/5, 0.6)")->required();
    sel_cmd->add_option("--samples", sel_samples, "Dataset sample count n")->required();

    // embed
    auto* embed_cmd = app.add_subcommand("embed", "Watermark a dataset");
    std::string embed_in, embed_out, embed_msg, embed_tau, embed_nk, embed_backend = "dctdwt";
    std::string embed_manifest;
    std::size_t embed_bits = 0, embed_samples = 0;
    double embed_scale = 36.0;
    uint64_t embed_seed = 0;
    embed_cmd->add_option("--in", embed_in, "Input dataset directory of PNGs");
    embed_cmd->add_option("--out", embed_out, "Output directory for watermarked PNGs");
    embed_cmd->add_option("--message", embed_msg, "Watermark message, hex MSB-first")->required();
    embed_cmd->add_option("--bits", embed_bits, "Message length in bits")->required();
    embed_cmd->add_option("--tau", embed_tau, "Protection threshold for parameter selection");
    embed_cmd->add_option("--nk", embed_nk, "Explicit N,K (e.g. 3,1)");
    embed_cmd->add_option("--backend", embed_backend, "dctdwt or synthetic")
        ->check(CLI::IsMember({"dctdwt", "synthetic"}));
    embed_cmd->add_option("--scale", embed_scale, "QIM step (dctdwt)");
    embed_cmd->add_option("--samples", embed_samples, "Sample count (synthetic backend)");
    embed_cmd->add_option("--manifest", embed_manifest, "Manifest output path")->required();
    embed_cmd->add_option("--seed", embed_seed, "Seed recorded for reproducibility");

    // extract
    auto* ext_cmd = app.add_subcommand("extract", "Extract and decode the watermark message");
    std::string ext_in, ext_manifest, ext_msg, ext_csv;
    std::size_t ext_bits = 0;
    ext_cmd->add_option("--in", ext_in, "Watermarked dataset directory (or subset)");
    ext_cmd->add_option("--manifest", ext_manifest, "Manifest path")->required();
    ext_cmd->add_option("--message", ext_msg, "Reference message hex (optional, for metrics)");
    ext_cmd->add_option("--bits", ext_bits, "Reference message length in bits");
    ext_cmd->add_option("--csv", ext_csv, "Append a CSV result row to this path");

    // attack subset
    auto* attack_cmd = app.add_subcommand("attack", "Dataset attacks");
    auto* subset_cmd = attack_cmd->add_subcommand("subset", "Leak a random subset of the dataset");
    std::string atk_in, atk_out;
    double atk_ratio = 1.0;
    uint64_t atk_seed = 0;
    subset_cmd->add_option("--in", atk_in, "Watermarked dataset directory")->required();
    subset_cmd->add_option("--out", atk_out, "Subset output directory")->required();
    subset_cmd->add_option("--ratio", atk_ratio, "Leak ratio s in (0, 1]")->required();
    subset_cmd->add_option("--seed", atk_seed, "RNG seed");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Run an experiment sweep to CSV");
    std::string sweep_kind, sweep_config, sweep_out;
    sweep_cmd->add_option("kind", sweep_kind, "subset or length")
        ->required()
        ->check(CLI::IsMember({"subset", "length"}));
    sweep_cmd->add_option("--config", sweep_config, "Experiment config JSON path")->required();
    sweep_cmd->add_option("--out", sweep_out, "Output CSV path")->required();

    // gen-corpus
    auto* gen_cmd = app.add_subcommand("gen-corpus", "Generate a deterministic test image corpus");
    std::string gen_out;
    std::size_t gen_count = 24, gen_px = 168;
    uint64_t gen_seed = 0;
    gen_cmd->add_option("--out", gen_out, "Output directory")->required();
    gen_cmd->add_option("--count", gen_count, "Number of images");
    gen_cmd->add_option("--px", gen_px, "Image edge length in pixels");
    gen_cmd->add_option("--seed", gen_seed, "RNG seed");

    CLI11_PARSE(app, argc, argv);

    if (*sel_cmd) {
        amuse::ProtectionSpec spec{amuse::parse_ratio(sel_tau), sel_len, sel_samples};
        const amuse::Selection s = amuse::select_params(spec);
        std::printf("N=%zu K=%zu l=%zu tau=%s%s\n", s.N, s.K, s.l,
                    amuse::coverage_ratio(s.N, s.K).str().c_str(),
                    s.pass_through ? " (pass-through fallback: no feasible (N,K))" : "");
        return 0;
    }

    if (*embed_cmd) {
        const amuse::BitString message = parse_message(embed_msg, embed_bits);
        amuse::EmbedOptions opts;
        opts.backend_id = embed_backend;
        opts.scale = embed_scale;
        opts.seed = embed_seed;
        if (!embed_tau.empty()) opts.tau_hat = amuse::parse_ratio(embed_tau);
        if (!embed_nk.empty()) {
            const auto comma = embed_nk.find(',');
            if (comma == std::string::npos) throw amuse::InvalidInput("--nk expects N,K");
            opts.nk = {std::stoul(embed_nk.substr(0, comma)),
                       std::stoul(embed_nk.substr(comma + 1))};
        }
        amuse::EmbedOutcome outcome;
        if (embed_backend == "synthetic") {
            if (embed_samples == 0)
                throw amuse::InvalidInput("--samples required for the synthetic backend");
            outcome = amuse::embed_dataset_synthetic(embed_samples, message, opts);
        } else {
            if (embed_in.empty() || embed_out.empty())
                throw amuse::InvalidInput("--in and --out required for the dctdwt backend");
            outcome = amuse::embed_dataset(embed_in, embed_out, message, opts);
        }
        amuse::save_manifest(embed_manifest, outcome.manifest);
        const auto& e = outcome.manifest.encoding;
        std::printf("embedded n=%zu samples: N=%zu K=%zu p=%zu C=%llu b=%u l=%zu%s\n", e.n, e.N,
                    e.K, e.p, static_cast<unsigned long long>(e.C), e.b, e.sub_len(),
                    outcome.pass_through_fallback ? " (warning: no feasible (N,K), pass-through)"
                                                  : "");
        if (!outcome.psnrs.empty()) {
            double sum = 0;
            for (double v : outcome.psnrs) sum += v;
            std::printf("mean PSNR: %.2f dB\n", sum / static_cast<double>(outcome.psnrs.size()));
        }
        return 0;
    }

    if (*ext_cmd) {
        const amuse::Manifest m = amuse::load_manifest(ext_manifest);
        std::optional<amuse::BitString> ref;
        if (!ext_msg.empty()) {
            if (ext_bits == 0) throw amuse::InvalidInput("--bits required with --message");
            ref = parse_message(ext_msg, ext_bits);
        }
        const amuse::ExtractOutcome out = amuse::extract_dataset(ext_in, m, ref);
        std::size_t covered = 0;
        for (bool c : out.decode.chunk_coverage) covered += c;
        std::printf("samples=%zu complete=%s coverage=%zu/%zu digest_match=%s\n",
                    out.samples_available, out.decode.complete ? "true" : "false", covered,
                    out.decode.chunk_coverage.size(), out.digest_match ? "true" : "false");
        std::printf("message=%s bits=%zu\n", out.decode.message.to_hex().c_str(),
                    out.decode.message.size());
        if (out.report) {
            std::printf("ba=%s wa=%d\n", amuse::fmt_double(out.report->ba).c_str(),
                        out.report->wa);
            if (!ext_csv.empty()) {
                const bool fresh = !std::ifstream(ext_csv).good();
                std::ofstream csv(ext_csv, std::ios::app | std::ios::binary);
                if (fresh) csv << "samples,ba,wa,coverage\n";
                csv << out.samples_available << ',' << amuse::fmt_double(out.report->ba) << ','
                    << out.report->wa << ','
                    << amuse::fmt_double(out.report->chunk_coverage_rate) << '\n';
            }
        }
        return out.decode.complete ? 0 : 1;
    }

    if (*subset_cmd) {
        const auto kept = amuse::attack_subset_dir(atk_in, atk_out, {atk_ratio, atk_seed});
        std::printf("kept %zu samples\n", kept.size());
        return 0;
    }

    if (*sweep_cmd) {
        std::ifstream in(sweep_config);
        if (!in) throw amuse::IoError("cannot open " + sweep_config);
        nlohmann::json j;
        in >> j;
        amuse::ExperimentConfig cfg = amuse::experiment_config_from_json(j);
        cfg.sweep = sweep_kind;
        const amuse::CsvTable table =
            sweep_kind == "subset" ? amuse::run_subset_sweep(cfg) : amuse::run_length_sweep(cfg);
        amuse::emit_csv(sweep_out, table);
        std::printf("wrote %zu rows to %s\n", table.rows.size(), sweep_out.c_str());
        return 0;
    }

    if (*gen_cmd) {
        std::filesystem::create_directories(gen_out);
        for (std::size_t i = 0; i < gen_count; ++i) {
            char name[32];
            std::snprintf(name, sizeof name, "img%03zu.png", i);
            amuse::write_png(gen_out + "/" + name,
                             amuse::make_test_image(gen_px, gen_px, amuse::mix64(gen_seed, i)));
        }
        std::printf("wrote %zu images to %s\n", gen_count, gen_out.c_str());
        return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
