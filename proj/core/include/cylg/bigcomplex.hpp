#pragma once

#include <utility>

#include "cylg/bigfloat.hpp"
#include "cylg/qext.hpp"

namespace cylg {

// Complex numbers over BigFloat.  Kept deliberately small: the workbench only
// needs field ops, exp, sqrt, and magnitude bounds.
struct BigComplex {
    BigFloat re, im;

    explicit BigComplex(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
    BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
    BigComplex(long n, mpfr_prec_t prec) : re(n, prec), im(prec) {}
    BigComplex(const Rat& r, mpfr_prec_t prec) : re(r, prec), im(prec) {}

    mpfr_prec_t prec() const { return std::max(re.prec(), im.prec()); }

    static BigComplex i_unit(mpfr_prec_t prec) { return BigComplex(BigFloat(prec), BigFloat(1, prec)); }

    friend BigComplex operator+(const BigComplex& x, const BigComplex& y) {
        return BigComplex(x.re + y.re, x.im + y.im);
    }
    friend BigComplex operator-(const BigComplex& x, const BigComplex& y) {
        return BigComplex(x.re - y.re, x.im - y.im);
    }
    friend BigComplex operator*(const BigComplex& x, const BigComplex& y) {
        return BigComplex(x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re);
    }
    friend BigComplex operator/(const BigComplex& x, const BigComplex& y) {
        BigFloat n = y.re * y.re + y.im * y.im;
        return BigComplex((x.re * y.re + x.im * y.im) / n, (x.im * y.re - x.re * y.im) / n);
    }
    BigComplex operator-() const { return BigComplex(-re, -im); }
    BigComplex& operator+=(const BigComplex& y) { return *this = *this + y; }
    BigComplex& operator-=(const BigComplex& y) { return *this = *this - y; }
    BigComplex& operator*=(const BigComplex& y) { return *this = *this * y; }
    BigComplex& operator/=(const BigComplex& y) { return *this = *this / y; }

    BigComplex conj() const { return BigComplex(re, -im); }
    BigFloat abs() const { return bf_sqrt(re * re + im * im); }

    std::string to_string() const { return re.to_string() + " + " + im.to_string() + "*I"; }
};

inline BigComplex bc_exp(const BigComplex& z) {
    BigFloat m = bf_exp(z.re);
    return BigComplex(m * bf_cos(z.im), m * bf_sin(z.im));
}

// Principal branch logarithm.
inline BigComplex bc_log(const BigComplex& z) {
    BigFloat arg(z.prec());
    mpfr_atan2(arg.raw(), z.im.raw(), z.re.raw(), MPFR_RNDN);
    return BigComplex(bf_log(z.abs()), arg);
}

// Principal square root.
inline BigComplex bc_sqrt(const BigComplex& z) {
    BigFloat r = z.abs();
    BigFloat re2 = bf_sqrt(bf_mul_2si(r + z.re, -1));
    BigFloat im2 = bf_sqrt(bf_mul_2si(r - z.re, -1));
    if (z.im.sign() < 0) im2 = -im2;
    return BigComplex(re2, im2);
}

inline BigComplex bc_pow_si(const BigComplex& z, long e) {
    if (e < 0) return BigComplex(1, z.prec()) / bc_pow_si(z, -e);
    BigComplex acc(1, z.prec()), b = z;
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

// Embedding Q(i, sqrt2) -> C at a given working precision.
inline BigComplex qext_to_bigcomplex(const QExt& x, mpfr_prec_t prec) {
    BigFloat s2 = bf_sqrt(BigFloat(2, prec));
    return BigComplex(BigFloat(x.a, prec) + BigFloat(x.b, prec) * s2,
                      BigFloat(x.c, prec) + BigFloat(x.d, prec) * s2);
}

inline BigComplex rat_to_bigcomplex(const Rat& r, mpfr_prec_t prec) {
    return BigComplex(r, prec);
}

}  // namespace cylg
