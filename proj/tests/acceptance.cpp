// Acceptance gate: one pass/fail line per criterion, exit code = #failures.
//
// Criterion 9 is expected to fail at the short message lengths: with the
// linear length-scaled channel calibrated to baseline BA ~= 0.9 at L = 300,
// the baseline decoder is already saturated at BA = WA = 1.0 for L in
// {100, 200} (the per-bit flip probability scales down linearly while the
// baseline keeps all n repetition votes), so "strictly higher" is not
// achievable there by any encoding. The run reports the measured values.

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "amuse/pipeline.hpp"

using amuse::BitString;
using amuse::EncodingParams;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& what) {
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, what.c_str());
    if (!ok) ++g_failures;
}

// --- criterion 1: published sub-message length table ------------------------

bool criterion1() {
    struct Cell { std::size_t L; const char* tau; std::size_t l; };
    const std::vector<Cell> cells = {{30, "60%", 16},  {30, "80%", 9},   {100, "60%", 44},
                                     {100, "80%", 23}, {200, "60%", 84}, {200, "80%", 43},
                                     {300, "60%", 124}, {300, "80%", 63}};
    bool ok = true;
    for (const Cell& c : cells) {
        const auto s = amuse::select_params({amuse::parse_ratio(c.tau), c.L, 100});
        if (s.l != c.l) {
            std::printf("  L=%zu tau=%s: got l=%zu, want %zu\n", c.L, c.tau, s.l, c.l);
            ok = false;
        }
    }
    const auto s60 = amuse::select_params({amuse::parse_ratio("60%"), 30, 100});
    const auto s80 = amuse::select_params({amuse::parse_ratio("80%"), 30, 100});
    ok = ok && s60.N == 5 && s60.K == 3 && s80.N == 5 && s80.K == 4;
    return ok;
}

// --- criterion 2: worked example, exhaustive subsets -------------------------

bool criterion2() {
    std::mt19937_64 rng(2024);
    const BitString m = BitString::random(300, rng);
    const auto params = EncodingParams::make(300, 3, 1, 6);
    const auto raws = amuse::encode(m, params);
    if (raws.size() != 6) return false;
    for (const auto& r : raws)
        if (r.size() != 202) return false;
    std::map<std::string, int> per_combination;
    for (const auto& r : raws) ++per_combination[r.to_hex()];
    if (per_combination.size() != 3) return false;
    for (const auto& [_, count] : per_combination)
        if (count != 2) return false;

    // Chunks covered by sample j (1-based): the failing subsets must be
    // exactly the nonempty subsets of the three duplicate pairs.
    const std::set<std::set<int>> failing_bases = {{3, 6}, {1, 4}, {2, 5}};
    bool ok = true;
    for (unsigned mask = 1; mask < 64; ++mask) {
        std::vector<BitString> subset;
        std::set<int> members;
        for (int j = 0; j < 6; ++j)
            if (mask & (1u << j)) {
                subset.push_back(raws[j]);
                members.insert(j + 1);
            }
        const auto res = amuse::decode(subset, params);
        const bool reconstructed = res.complete && res.message == m;
        bool expect_fail = false;
        for (const auto& base : failing_bases) {
            bool inside = true;
            for (int j : members) inside = inside && base.count(j);
            expect_fail = expect_fail || inside;
        }
        if (reconstructed == expect_fail) {
            std::printf("  subset mask %u: reconstructed=%d, expected failure=%d\n", mask,
                        reconstructed, expect_fail);
            ok = false;
        }
        if (members.size() >= 3 && !reconstructed) ok = false;
    }
    return ok;
}

// --- criterion 3: round-trip property suite ----------------------------------

bool criterion3() {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t N = 1 + rng() % 12;
        const std::size_t K = N == 1 ? 0 : 1 + rng() % (N - 1);
        const std::size_t L = 1 + rng() % 240;
        const uint64_t C = N == 1 ? 1 : amuse::binomial(N, N - K);
        const std::size_t n = C + rng() % (3 * C + 1);  // n in [C, 4C]
        const auto params = EncodingParams::make(L, N, K, n);
        const BitString m = BitString::random(L, rng);
        const auto res = amuse::decode(amuse::encode(m, params), params);
        if (!res.complete || res.message != m) {
            std::printf("  trial %d failed: L=%zu N=%zu K=%zu n=%zu\n", trial, L, N, K, n);
            return false;
        }
    }
    return true;
}

// --- criterion 4: coverage-ratio law ------------------------------------------

bool criterion4() {
    bool ok = true;
    for (std::size_t N = 2; N <= 6; ++N) {
        for (std::size_t K = 1; K < N; ++K) {
            const uint64_t C = amuse::binomial(N, N - K);
            const std::size_t n = 4 * C;
            const auto params = EncodingParams::make(8 * N, N, K, n);
            const auto table = amuse::enumerate_combinations(N, K);
            std::mt19937_64 rng(N * 100 + K);
            const BitString m = BitString::random(8 * N, rng);
            amuse::Encoder enc(m, params);
            for (std::size_t chunk = 0; chunk < N; ++chunk) {
                std::size_t excluding = 0;
                for (std::size_t j = 1; j <= n; ++j) {
                    const auto& subset = table.entries[enc.at(j).ordering_index];
                    bool has = false;
                    for (std::size_t c : subset) has = has || c == chunk;
                    excluding += !has;
                }
                // n*K/N must be exact here: n = 4C and C*K/N = binom(N-1, N-K).
                if (excluding * N != n * K) {
                    std::printf("  N=%zu K=%zu chunk %zu: %zu samples exclude it, want %zu\n", N,
                                K, chunk, excluding, n * K / N);
                    ok = false;
                }
            }
            const amuse::Rational tau = amuse::coverage_ratio(N, K);
            const amuse::Rational alt(
                static_cast<int64_t>(amuse::binomial(N - 1, N - K)), static_cast<int64_t>(C));
            if (!(tau == alt)) {
                std::printf("  N=%zu K=%zu: K/N != binom(N-1,N-K)/binom(N,N-K)\n", N, K);
                ok = false;
            }
        }
    }
    return ok;
}

// --- criterion 5: majority-vote correction ------------------------------------

bool criterion5() {
    bool ok = true;
    for (std::size_t t : {3u, 5u, 7u}) {
        // N=2, K=1: C=2 single-chunk combinations, n=2t gives t copies per chunk.
        const auto params = EncodingParams::make(16, 2, 1, 2 * t);
        std::mt19937_64 rng(t);
        BitString m = BitString::random(16, rng);
        m[0] = 1;  // ensure the attacked bit is a 1 so a tie would flip it
        auto raws = amuse::encode(m, params);

        auto flip_copies = [&](std::size_t flips) {
            auto corrupted = raws;
            std::size_t done = 0;
            for (auto& r : corrupted) {
                if (done == flips) break;
                if (r.read_uint(0, params.b) == 0) {  // combination {chunk 0}
                    r[params.b] ^= 1;                 // first payload bit = m[0]
                    ++done;
                }
            }
            return amuse::decode(corrupted, params);
        };

        const auto below = flip_copies((t - 1) / 2);  // < t/2 adversarial flips
        if (below.message != m) {
            std::printf("  t=%zu: decode not exact under %zu flips\n", t, (t - 1) / 2);
            ok = false;
        }
        const auto above = flip_copies((t + 1) / 2);  // >= t/2 flips
        if (amuse::bit_accuracy(above.message, m) >= 1.0) {
            std::printf("  t=%zu: %zu flips went undetected\n", t, (t + 1) / 2);
            ok = false;
        }
    }
    return ok;
}

// --- criterion 6: DCT-DWT no-attack accuracy at scale 36 -----------------------

bool criterion6() {
    const std::size_t n = 20;
    std::vector<amuse::RgbImage> corpus;
    for (std::size_t i = 0; i < n; ++i) corpus.push_back(amuse::make_test_image(168, 168, 600 + i));
    const amuse::DctDwtBackend backend({36.0});

    struct Conf { const char* name; std::optional<amuse::Rational> tau; };
    const std::vector<Conf> confs = {{"baseline", std::nullopt},
                                     {"tau=60%", amuse::parse_ratio("60%")},
                                     {"tau=80%", amuse::parse_ratio("80%")}};
    bool ok = true;
    std::mt19937_64 rng(3030);
    for (std::size_t L : {100u, 200u, 300u}) {
        for (const Conf& conf : confs) {
            EncodingParams params;
            if (conf.tau) {
                const auto sel = amuse::select_params({*conf.tau, L, n});
                params = EncodingParams::make(L, sel.N, sel.K, n);
            } else {
                params = EncodingParams::make(L, 1, 0, n);
            }
            const BitString m = BitString::random(L, rng);
            amuse::Encoder enc(m, params);
            std::vector<BitString> extracted;
            for (std::size_t j = 1; j <= n; ++j)
                extracted.push_back(
                    backend.extract(backend.embed(corpus[j - 1], enc.at(j).raw),
                                    params.sub_len()));
            const double ba = amuse::bit_accuracy(amuse::decode(extracted, params).message, m);
            if (ba != 1.0) {
                std::printf("  L=%zu %s: BA=%.6f at scale 36\n", L, conf.name, ba);
                ok = false;
            }
        }
    }
    return ok;
}

// --- criterion 7: length/accuracy trend at scale 20 -----------------------------

bool criterion7() {
    amuse::ExperimentConfig cfg;
    cfg.sweep = "length";
    cfg.backend = "dctdwt";
    cfg.lengths = {100, 200, 300};
    cfg.taus = {"60%", "80%"};
    cfg.scales = {36.0, 20.0};
    cfg.scale_noise_p0 = {0.0, 0.5};
    cfg.noise_lref = 250;
    cfg.trials = 10;
    cfg.samples = 100;
    cfg.image_px = 144;
    cfg.seed = 7701;
    const auto table = amuse::run_length_sweep(cfg);

    // mean BA per (config, L, scale)
    std::map<std::string, std::pair<double, int>> acc;
    for (const auto& row : table.rows)
        if (row[0] == "dctdwt") {
            auto& a = acc[row[1] + "|" + row[2] + "|" + row[3]];
            a.first += std::stod(row[6]);
            ++a.second;
        }
    auto mean_ba = [&](const std::string& conf, std::size_t L, const char* scale) {
        const auto& a = acc.at(conf + "|" + std::to_string(L) + "|" + scale);
        return a.first / a.second;
    };

    bool ok = true;
    const double b100 = mean_ba("baseline", 100, "20");
    const double b200 = mean_ba("baseline", 200, "20");
    const double b300 = mean_ba("baseline", 300, "20");
    if (!(b100 > b200 && b200 > b300)) {
        std::printf("  baseline BA at scale 20 not strictly decreasing: %.4f %.4f %.4f\n", b100,
                    b200, b300);
        ok = false;
    }
    for (const char* conf : {"tau=60%", "tau=80%"})
        for (std::size_t L : {100u, 200u, 300u})
            for (const char* scale : {"36", "20"}) {
                const double a = mean_ba(conf, L, scale);
                const double b = mean_ba("baseline", L, scale);
                if (a < b) {
                    std::printf("  %s L=%zu scale=%s: BA %.4f below baseline %.4f\n", conf, L,
                                scale, a, b);
                    ok = false;
                }
            }
    return ok;
}

// --- criterion 8: subset-attack sweep -------------------------------------------

bool criterion8() {
    amuse::ExperimentConfig cfg;
    cfg.sweep = "subset";
    cfg.backend = "synthetic";
    cfg.lengths = {300};
    cfg.taus = {"60%", "80%"};
    cfg.subset_ratios = {0.2, 0.4, 0.6, 0.8, 1.0};
    cfg.trials = 100;
    cfg.samples = 100;
    cfg.seed = 8808;
    const auto table = amuse::run_subset_sweep(cfg);

    std::map<std::string, std::map<double, std::pair<double, int>>> acc;
    for (const auto& row : table.rows) {
        auto& a = acc[row[1]][std::stod(row[3])];
        a.first += std::stod(row[5]);
        ++a.second;
    }
    bool ok = true;
    for (const char* conf : {"tau=60%", "tau=80%"})
        for (double s : {0.4, 0.6, 0.8, 1.0}) {
            const auto& a = acc.at(conf).at(s);
            if (a.first / a.second != 1.0) {
                std::printf("  %s s=%.1f: mean BA %.6f != 1.0\n", conf, s, a.first / a.second);
                ok = false;
            }
        }
    for (const auto& [conf, by_s] : acc) {
        double prev = 0.0;
        for (const auto& [s, a] : by_s) {  // std::map iterates s ascending
            const double ba = a.first / a.second;
            if (ba + 1e-12 < prev) {
                std::printf("  %s: mean BA decreases from %.6f to %.6f at s=%.1f\n", conf.c_str(),
                            prev, ba, s);
                ok = false;
            }
            prev = ba;
        }
    }
    return ok;
}

// --- criterion 9: synthetic length-scaled channel --------------------------------

bool criterion9() {
    const std::size_t n = 100;
    // Calibrate p0 so the baseline per-bit majority error over n votes is 0.1
    // at L = 300 (i.e. baseline BA ~= 0.9 there).
    auto majority_err = [&](double p) {
        // average over true bit values; ties decode to 0
        std::vector<double> pmf(n + 1, 0.0);
        pmf[0] = 1.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = i + 1; k-- > 0;) {
                pmf[k + 1] += pmf[k] * p;
                pmf[k] *= (1.0 - p);
            }
        double ge_half = 0.0, gt_half = 0.0;
        for (std::size_t k = 0; k <= n; ++k) {
            if (2 * k >= n) ge_half += pmf[k];
            if (2 * k > n) gt_half += pmf[k];
        }
        return 0.5 * ge_half + 0.5 * gt_half;  // flips that overturn a 1 / a 0
    };
    double lo = 0.0, hi = 0.5;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (majority_err(mid) < 0.1 ? lo : hi) = mid;
    }
    const double p0 = 0.5 * (lo + hi);
    std::printf("  calibrated p0=%.4f (baseline majority error 0.1 at L=300, n=%zu)\n", p0, n);

    amuse::ExperimentConfig cfg;
    cfg.sweep = "length";
    cfg.backend = "synthetic";
    cfg.lengths = {100, 200, 300};
    cfg.taus = {"60%", "80%"};
    cfg.noise_p0 = p0;
    cfg.noise_lref = 300;
    cfg.trials = 10;
    cfg.samples = n;
    cfg.seed = 9909;
    const auto table = amuse::run_length_sweep(cfg);

    std::map<std::string, std::map<std::size_t, std::pair<double, double>>> sums;
    std::map<std::string, std::map<std::size_t, int>> counts;
    for (const auto& row : table.rows) {
        const std::size_t L = std::stoul(row[2]);
        sums[row[1]][L].first += std::stod(row[6]);
        sums[row[1]][L].second += std::stod(row[7]);
        ++counts[row[1]][L];
    }
    bool ok = true;
    const double base300 = sums["baseline"][300].first / counts["baseline"][300];
    if (base300 < 0.85 || base300 > 0.95) {
        std::printf("  calibration off: baseline BA at L=300 is %.4f\n", base300);
        ok = false;
    }
    for (const char* conf : {"tau=60%", "tau=80%"})
        for (std::size_t L : {100u, 200u, 300u}) {
            const int c = counts[conf][L];
            const double ba = sums[conf][L].first / c, wa = sums[conf][L].second / c;
            const double bb = sums["baseline"][L].first / c,
                         bw = sums["baseline"][L].second / c;
            if (!(ba > bb && wa > bw)) {
                std::printf("  %s L=%zu: BA %.4f vs baseline %.4f, WA %.2f vs %.2f"
                            " (not strictly higher)\n",
                            conf, L, ba, bb, wa, bw);
                ok = false;
            }
        }
    return ok;
}

// --- criterion 10: determinism ----------------------------------------------------

std::string csv_string(const amuse::CsvTable& t) {
    std::ostringstream out;
    for (const auto& h : t.header) out << h << ',';
    out << '\n';
    for (const auto& row : t.rows) {
        for (const auto& cell : row) out << cell << ',';
        out << '\n';
    }
    return out.str();
}

bool criterion10() {
    amuse::ExperimentConfig subset;
    subset.backend = "synthetic";
    subset.lengths = {100};
    subset.trials = 5;
    subset.samples = 30;
    subset.seed = 101;
    const bool csv_ok =
        csv_string(amuse::run_subset_sweep(subset)) == csv_string(amuse::run_subset_sweep(subset));

    amuse::ExperimentConfig len;
    len.sweep = "length";
    len.backend = "dctdwt";
    len.lengths = {100};
    len.taus = {"80%"};
    len.scales = {36.0};
    len.scale_noise_p0 = {0.1};
    len.trials = 2;
    len.samples = 8;
    len.seed = 102;
    const bool len_ok =
        csv_string(amuse::run_length_sweep(len)) == csv_string(amuse::run_length_sweep(len));

    std::mt19937_64 rng(55);
    const BitString m = BitString::random(100, rng);
    amuse::EmbedOptions opts;
    opts.tau_hat = amuse::parse_ratio("60%");
    const auto a = amuse::embed_dataset_synthetic(30, m, opts);
    const auto b = amuse::embed_dataset_synthetic(30, m, opts);
    const bool manifest_ok =
        amuse::manifest_to_json(a.manifest).dump() == amuse::manifest_to_json(b.manifest).dump();

    if (!csv_ok) std::printf("  subset sweep CSVs differ between runs\n");
    if (!len_ok) std::printf("  length sweep CSVs differ between runs\n");
    if (!manifest_ok) std::printf("  manifests differ between runs\n");
    return csv_ok && len_ok && manifest_ok;
}

}  // namespace

int main() {
    report(1, criterion1(), "published sub-message length table (exact)");
    report(2, criterion2(), "worked example L=300 N=3 K=1 n=6, exhaustive subsets");
    report(3, criterion3(), "10000-case error-free round-trip property");
    report(4, criterion4(), "coverage-ratio law, exact counts for N <= 6");
    report(5, criterion5(), "majority-vote correction under adversarial flips");
    report(6, criterion6(), "DCT-DWT no-attack BA = 1.0 at scale 36");
    report(7, criterion7(), "length/accuracy trend at scale 20, AMUSE >= baseline");
    report(8, criterion8(), "subset-attack sweep: BA = 1.0 for s >= 40%, monotone in s");
    report(9, criterion9(), "length-scaled channel: AMUSE strictly beats baseline");
    report(10, criterion10(), "byte-identical sweeps and manifests per seed");
    std::printf("%d of 10 criteria failed\n", g_failures);
    return g_failures;
}
