#pragma once

#include <array>
#include <optional>
#include <vector>

#include "cylg/bigcomplex.hpp"
#include "cylg/errors.hpp"

namespace cylg {

// Recognition of exact values from high-precision floats.  The protocol is
// two-sided: the same quantity is computed at two precisions P1 < P2; a fit is
// accepted only if both computations recognize the same exact value and the
// residuals stay under 2^(-P1/2).  Anything else is reported as NoStableFit.

struct RationalizeOptions {
    mpz_class max_den = mpz_class("1000000000000");  // denominator cap for fits
};

namespace detail {

// Continued-fraction convergents of x, stopping at the denominator cap.
inline std::optional<Rat> cf_fit(const BigFloat& x, const mpz_class& max_den) {
    mpfr_prec_t p = x.prec();
    BigFloat cur = x;
    mpz_class p0 = 1, q0 = 0;  // convergent k-1
    mpz_class p1, q1 = 1;      // convergent k
    {
        mpfr_t fl;
        mpfr_init2(fl, p);
        mpfr_floor(fl, x.raw());
        mpz_class a0;
        mpfr_get_z(a0.get_mpz_t(), fl, MPFR_RNDN);
        mpfr_clear(fl);
        p1 = a0;
        cur = cur - BigFloat(Rat(a0), p);
    }
    BigFloat thresh = BigFloat::pow2(-(long)(p / 2), p);
    for (int it = 0; it < 256; ++it) {
        Rat approx(p1, q1);
        approx.canonicalize();
        BigFloat resid = bf_abs(x - BigFloat(approx, p));
        if (resid < thresh) return approx;
        if (cur.is_zero()) break;
        // next partial quotient
        BigFloat inv = BigFloat(1, p) / cur;
        mpfr_t fl;
        mpfr_init2(fl, p);
        mpfr_floor(fl, inv.raw());
        mpz_class a;
        mpfr_get_z(a.get_mpz_t(), fl, MPFR_RNDN);
        mpfr_clear(fl);
        cur = inv - BigFloat(Rat(a), p);
        mpz_class p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    }
    return std::nullopt;
}

// Exact-integer LLL (delta = 99/100) for small dimensions; rows of `b` form
// the lattice basis and are reduced in place.
inline void lll_reduce(std::vector<std::vector<mpz_class>>& b) {
    const size_t n = b.size();
    auto dot = [](const std::vector<mpz_class>& u, const std::vector<mpz_class>& v) {
        mpz_class s = 0;
        for (size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
        return s;
    };
    std::vector<std::vector<Rat>> mu(n, std::vector<Rat>(n, Rat(0)));
    std::vector<Rat> Bstar(n, Rat(0));
    auto gso = [&]() {
        std::vector<std::vector<Rat>> star(n, std::vector<Rat>(b[0].size(), Rat(0)));
        for (size_t i = 0; i < n; ++i) {
            for (size_t k = 0; k < b[i].size(); ++k) star[i][k] = Rat(b[i][k]);
            for (size_t j = 0; j < i; ++j) {
                Rat num = 0;
                for (size_t k = 0; k < b[i].size(); ++k) num += Rat(b[i][k]) * star[j][k];
                mu[i][j] = Bstar[j] == 0 ? Rat(0) : num / Bstar[j];
                for (size_t k = 0; k < star[i].size(); ++k) star[i][k] -= mu[i][j] * star[j][k];
            }
            Bstar[i] = 0;
            for (size_t k = 0; k < star[i].size(); ++k) Bstar[i] += star[i][k] * star[i][k];
        }
        (void)dot;
    };
    auto nearest = [](const Rat& r) {
        mpz_class num = r.get_num(), den = r.get_den(), q, rem;
        mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        if (2 * rem >= den) q += 1;
        return q;
    };
    gso();
    const Rat delta(99, 100);
    size_t k = 1;
    int guard = 0;
    while (k < n && guard++ < 10000) {
        for (size_t j = k; j-- > 0;) {
            mpz_class r = nearest(mu[k][j]);
            if (r != 0) {
                for (size_t t = 0; t < b[k].size(); ++t) b[k][t] -= r * b[j][t];
            }
        }
        gso();
        if (Bstar[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * Bstar[k - 1]) {
            ++k;
        } else {
            std::swap(b[k], b[k - 1]);
            gso();
            if (k > 1) --k;
        }
    }
}

// Round x * 2^bits to an integer.
inline mpz_class scaled_int(const BigFloat& x, long bits) {
    BigFloat s = bf_mul_2si(x, bits);
    mpfr_t t;
    mpfr_init2(t, s.prec());
    mpfr_round(t, s.raw());
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDN);
    mpfr_clear(t);
    return z;
}

// One-precision fit of x as a + b*sqrt2 via a 3x3 integer relation.
inline std::optional<std::pair<Rat, Rat>> sqrt2_fit(const BigFloat& x, const mpz_class& max_den) {
    mpfr_prec_t p = x.prec();
    long bits = (long)p - 16;
    if (bits < 32) return std::nullopt;
    BigFloat s2 = bf_sqrt(BigFloat(2, p));
    std::vector<std::vector<mpz_class>> basis = {
        {1, 0, 0, scaled_int(BigFloat(1, p), bits)},
        {0, 1, 0, scaled_int(s2, bits)},
        {0, 0, 1, scaled_int(x, bits)},
    };
    lll_reduce(basis);
    BigFloat thresh = BigFloat::pow2(-(long)(p / 2), p);
    for (const auto& row : basis) {
        const mpz_class &m0 = row[0], &m1 = row[1], &m2 = row[2];
        if (m2 == 0) continue;
        Rat a(-m0, m2), b(-m1, m2);
        a.canonicalize();
        b.canonicalize();
        if (a.get_den() > max_den || b.get_den() > max_den) continue;
        BigFloat fit = BigFloat(a, p) + BigFloat(b, p) * s2;
        if (bf_abs(x - fit) < thresh) return std::make_pair(a, b);
    }
    return std::nullopt;
}

// Fit one real number as a + b*sqrt2 (b possibly 0), using both precisions.
inline Result<std::pair<Rat, Rat>> real_fit2(const BigFloat& lo, const BigFloat& hi,
                                             const RationalizeOptions& opt) {
    // Rational attempt first: cheap and covers most coefficients.
    auto rlo = cf_fit(lo, opt.max_den);
    auto rhi = cf_fit(hi, opt.max_den);
    if (rlo && rhi) {
        if (*rlo != *rhi)
            return Result<std::pair<Rat, Rat>>::fail(Err::NoStableFit, "rational fits disagree across precisions");
        return Result<std::pair<Rat, Rat>>::ok({*rlo, Rat(0)});
    }
    auto slo = sqrt2_fit(lo, opt.max_den);
    auto shi = sqrt2_fit(hi, opt.max_den);
    if (slo && shi) {
        if (*slo != *shi)
            return Result<std::pair<Rat, Rat>>::fail(Err::NoStableFit, "sqrt2 fits disagree across precisions");
        return Result<std::pair<Rat, Rat>>::ok(*slo);
    }
    return Result<std::pair<Rat, Rat>>::fail(Err::NoStableFit, "no fit under denominator cap");
}

}  // namespace detail

inline Result<Rat> rationalize_rat(const BigFloat& lo, const BigFloat& hi,
                                   const RationalizeOptions& opt = {}) {
    auto rlo = detail::cf_fit(lo, opt.max_den);
    auto rhi = detail::cf_fit(hi, opt.max_den);
    if (!rlo || !rhi) return Result<Rat>::fail(Err::NoStableFit, "no rational fit");
    if (*rlo != *rhi) return Result<Rat>::fail(Err::NoStableFit, "fits disagree across precisions");
    return Result<Rat>::ok(*rlo);
}

// Recognize a complex value as an element of Q(i, sqrt2).
inline Result<QExt> rationalize_qext(const BigComplex& lo, const BigComplex& hi,
                                     const RationalizeOptions& opt = {}) {
    auto re = detail::real_fit2(lo.re, hi.re, opt);
    if (!re) return Result<QExt>::fail(re.err, "re: " + re.detail);
    auto im = detail::real_fit2(lo.im, hi.im, opt);
    if (!im) return Result<QExt>::fail(im.err, "im: " + im.detail);
    return Result<QExt>::ok(QExt(re->first, re->second, im->first, im->second));
}

}  // namespace cylg
