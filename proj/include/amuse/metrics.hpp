#ifndef AMUSE_METRICS_HPP
#define AMUSE_METRICS_HPP

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "amuse/bits.hpp"
#include "amuse/errors.hpp"

namespace amuse {

/// Fraction of agreeing bit positions.
inline double bit_accuracy(const BitString& rec, const BitString& ref) {
    if (rec.size() != ref.size() || ref.empty())
        throw InvalidInput("bit_accuracy: length mismatch");
    const std::size_t d = rec.hamming_distance(ref);
    return static_cast<double>(ref.size() - d) / static_cast<double>(ref.size());
}

/// 1 iff the reconstruction is bit-exact.
inline int word_accuracy(const BitString& rec, const BitString& ref) {
    return bit_accuracy(rec, ref) == 1.0 ? 1 : 0;
}

struct EvalReport {
    double ba = 0.0;
    int wa = 0;
    double chunk_coverage_rate = 0.0;
    double psnr = std::numeric_limits<double>::quiet_NaN();  // +inf when identical, NaN when n/a
    std::string config;  // grouping key echo
};

struct EvalSummary {
    double mean_ba = 0.0;
    double mean_wa = 0.0;
    double mean_coverage = 0.0;
    double mean_psnr = std::numeric_limits<double>::quiet_NaN();  // finite pairs only
    std::size_t psnr_inf_count = 0;
    std::size_t count = 0;
};

inline EvalSummary aggregate(const std::vector<EvalReport>& trials) {
    if (trials.empty()) throw InvalidInput("aggregate: empty trial list");
    EvalSummary s;
    s.count = trials.size();
    double psnr_sum = 0.0;
    std::size_t psnr_n = 0;
    for (const EvalReport& t : trials) {
        s.mean_ba += t.ba;
        s.mean_wa += t.wa;
        s.mean_coverage += t.chunk_coverage_rate;
        if (std::isinf(t.psnr)) {
            ++s.psnr_inf_count;
        } else if (!std::isnan(t.psnr)) {
            psnr_sum += t.psnr;
            ++psnr_n;
        }
    }
    s.mean_ba /= static_cast<double>(s.count);
    s.mean_wa /= static_cast<double>(s.count);
    s.mean_coverage /= static_cast<double>(s.count);
    if (psnr_n > 0)
        s.mean_psnr = psnr_sum / static_cast<double>(psnr_n);
    else if (s.psnr_inf_count == s.count && s.count > 0)
        s.mean_psnr = std::numeric_limits<double>::infinity();
    return s;
}

}  // namespace amuse

#endif
