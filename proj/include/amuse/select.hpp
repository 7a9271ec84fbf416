#ifndef AMUSE_SELECT_HPP
#define AMUSE_SELECT_HPP

#include <cstdint>
#include <numeric>
#include <string>

#include "amuse/codec.hpp"
#include "amuse/errors.hpp"

namespace amuse {

/// Exact rational, used so tau <= tau_hat decisions never touch floating point.
struct Rational {
    int64_t num = 0;
    int64_t den = 1;

    Rational() = default;
    Rational(int64_t n, int64_t d) : num(n), den(d) {
        if (d <= 0) throw InvalidInput("Rational: denominator must be positive");
        const int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator<=(const Rational& o) const { return num * o.den <= o.num * den; }
    bool operator<(const Rational& o) const { return num * o.den < o.num * den; }

    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Parses "60%", "3/5" or "0.6" into an exact rational.
inline Rational parse_ratio(const std::string& text) {
    if (text.empty()) throw InvalidInput("parse_ratio: empty");
    if (text.back() == '%') {
        const std::string body = text.substr(0, text.size() - 1);
        Rational r = parse_ratio(body);
        return Rational(r.num, r.den * 100);
    }
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
    }
    const auto dot = text.find('.');
    if (dot != std::string::npos) {
        const std::string frac = text.substr(dot + 1);
        if (frac.size() > 12) throw InvalidInput("parse_ratio: too many decimals");
        int64_t den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        const int64_t whole = dot == 0 ? 0 : std::stoll(text.substr(0, dot));
        const int64_t num = whole * den + (frac.empty() ? 0 : std::stoll(frac));
        return Rational(num, den);
    }
    return Rational(std::stoll(text), 1);
}

/// tau = K/N: the dataset fraction above which any leaked subset is
/// guaranteed to contain every chunk (error-free extraction assumed).
inline Rational coverage_ratio(std::size_t N, std::size_t K) {
    return Rational(static_cast<int64_t>(K), static_cast<int64_t>(N));
}

struct ProtectionSpec {
    Rational tau_hat;   // in (0, 1]
    std::size_t L = 0;  // message length
    std::size_t n = 0;  // sample count

    void validate() const {
        if (!(Rational(0, 1) < tau_hat) || !(tau_hat <= Rational(1, 1)))
            throw InvalidInput("ProtectionSpec: tau_hat must be in (0, 1]");
        if (L < 1 || n < 1) throw InvalidInput("ProtectionSpec: L and n must be >= 1");
    }
};

struct Selection {
    std::size_t N = 1;
    std::size_t K = 0;
    std::size_t l = 0;
    bool pass_through = false;  // no (N, K) pair qualified
};

/// Brute-force (N, K) search: minimize the sub-message length subject to
/// K/N <= tau_hat and binom(N, N-K) <= n. Equal-length candidates visited
/// later overwrite earlier ones; the scan starts from the pass-through
/// configuration (L, 1, 0).
inline Selection select_params(const ProtectionSpec& spec) {
    spec.validate();
    Selection best;
    best.N = 1;
    best.K = 0;
    best.l = spec.L;
    best.pass_through = true;
    for (std::size_t N = 2; N <= 100; ++N) {
        for (std::size_t K = 1; K <= N - 1; ++K) {
            // tau > tau_hat, exact: K * den > num * N
            if (static_cast<int64_t>(K) * spec.tau_hat.den >
                spec.tau_hat.num * static_cast<int64_t>(N))
                continue;
            if (binomial(N, N - K) > spec.n) continue;
            const std::size_t l = submessage_length(spec.L, N, K);
            if (l > best.l) continue;
            best.N = N;
            best.K = K;
            best.l = l;
            best.pass_through = false;
        }
    }
    return best;
}

}  // namespace amuse

#endif
