#ifndef AMUSE_QIM_HPP
#define AMUSE_QIM_HPP

#include <cmath>
#include <cstdint>

#include "amuse/errors.hpp"

namespace amuse {

/// Snaps c to the nearest multiple q*step whose q has the parity of `bit`.
/// The result is within `step` of c.
inline double qim_embed(double c, unsigned bit, double step) {
    if (step <= 0) throw InvalidInput("qim_embed: step must be positive");
    const double q = std::round(c / step);
    int64_t qi = static_cast<int64_t>(q);
    if ((static_cast<uint64_t>(qi) & 1u) != (bit & 1u)) {
        // pick the adjacent lattice point nearer to c; ties go up
        qi += (c >= q * step) ? 1 : -1;
    }
    return static_cast<double>(qi) * step;
}

inline unsigned qim_extract(double c, double step) {
    if (step <= 0) throw InvalidInput("qim_extract: step must be positive");
    const int64_t q = static_cast<int64_t>(std::llround(c / step));
    return static_cast<unsigned>(((q % 2) + 2) % 2);
}

}  // namespace amuse

#endif
