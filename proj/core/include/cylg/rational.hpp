#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cylg {

// Exact rational arithmetic. mpq_class keeps values canonical (reduced,
// positive denominator), which the serialization layer relies on.
using Rat = mpq_class;

inline Rat rat(long n, long d = 1) {
    if (d == 0) throw std::invalid_argument("rat: zero denominator");
    Rat r(n, d);
    r.canonicalize();
    return r;
}

inline Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("rat_from_string: bad literal '" + s + "'");
    r.canonicalize();
    return r;
}

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

inline Rat rat_pow(const Rat& base, long e) {
    if (e < 0) {
        if (base == 0) throw std::domain_error("rat_pow: 0^negative");
        return 1 / rat_pow(base, -e);
    }
    Rat acc = 1, b = base;
    long k = e;
    while (k > 0) {
        if (k & 1) acc *= b;
        b *= b;
        k >>= 1;
    }
    return acc;
}

inline Rat rat_factorial(unsigned n) {
    mpz_class z;
    mpz_fac_ui(z.get_mpz_t(), n);
    return Rat(z);
}

inline Rat rat_binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    mpz_class z;
    mpz_bin_uiui(z.get_mpz_t(), n, k);
    return Rat(z);
}

// sigma_1(n): sum of divisors, used by the Eisenstein q-expansion.
inline std::int64_t sigma1(std::int64_t n) {
    std::int64_t s = 0;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            s += d;
            if (d != n / d) s += n / d;
        }
    }
    return s;
}

}  // namespace cylg
