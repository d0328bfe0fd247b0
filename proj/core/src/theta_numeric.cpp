#include "cylg/theta_numeric.hpp"

#include "cylg/rational.hpp"
#include "cylg/ring.hpp"

namespace cylg {

namespace {

// sum_{k in K} c_k e^{i pi a_k tau} with a_k = k^2 (p=3,4) or (k+1/2)^2 (p=2),
// optionally weighted by the tau-derivative factor (i pi a_k).
Result<BigComplex> theta_sum(int p, const BigComplex& tau, mpfr_prec_t prec, bool deriv) {
    if (p < 2 || p > 4) return Result<BigComplex>::fail(Err::BadInput, "p must be 2,3,4");
    if (!(tau.im.sign() > 0)) return Result<BigComplex>::fail(Err::BadInput, "Im(tau) <= 0");
    BigFloat pi = BigFloat::pi(prec);
    BigComplex ipitau = BigComplex(-pi * tau.im, pi * tau.re);  // i*pi*tau
    BigFloat logmag = -pi * tau.im;                             // log |e^{i pi tau}|
    BigFloat target = BigFloat::pow2(-static_cast<long>(prec) - 16, prec);

    BigComplex sum(prec);
    if (p != 2 && !deriv) sum = BigComplex(1, prec);
    const long kmax = 100000;
    for (long k = (p == 2) ? 0 : 1; k <= kmax; ++k) {
        Rat a = (p == 2) ? Rat(2 * k + 1, 2) * Rat(2 * k + 1, 2) : Rat(k) * Rat(k);
        BigComplex term = bc_exp(ring_scale(ipitau, a));
        if (deriv) term = term * ring_scale(BigComplex(BigFloat(prec), pi), a);  // * i pi a
        Rat sign = (p == 4 && (k % 2)) ? Rat(-2) : Rat(2);
        sum += ring_scale(term, sign);
        // Gaussian tail: exponents a_{k+j} grow by at least (2k+1) per step, so
        // with ratio = |nome|^{2k+1} < 1/2 the remaining terms are bounded by
        // 2 * W * mag * ratio * sum_j (j+1)^2 ratio^j <= 24 * W * mag * ratio,
        // where W >= pi * a_{k+1} covers the derivative weight growth.
        BigFloat mag = bf_exp(logmag * BigFloat(a, prec));
        BigFloat ratio = bf_exp(logmag * BigFloat(2 * k + 1, prec));
        if (ratio < BigFloat(rat(1, 2), prec)) {
            BigFloat weight(1, prec);
            if (deriv) weight = pi * BigFloat(Rat(2 * k + 3) * Rat(2 * k + 3, 4), prec);
            BigFloat tail = mag * ratio * weight * BigFloat(24, prec);
            if (tail < target) return Result<BigComplex>::ok(sum);
        }
    }
    return Result<BigComplex>::fail(Err::NonConvergent, "theta sum: term budget exhausted");
}

}  // namespace

Result<BigComplex> theta_value(int p, const BigComplex& tau, mpfr_prec_t prec) {
    return theta_sum(p, tau, prec, false);
}

Result<BigComplex> theta_logderiv(int p, const BigComplex& tau, mpfr_prec_t prec) {
    auto num = theta_sum(p, tau, prec, true);
    if (!num) return num;
    auto den = theta_sum(p, tau, prec, false);
    if (!den) return den;
    return Result<BigComplex>::ok(ring_scale(*num / *den, Rat(2)));
}

BigFloat gamma34_agm(mpfr_prec_t prec) {
    BigFloat pi = BigFloat::pi(prec);
    BigFloat s2 = bf_sqrt(BigFloat(2, prec));
    BigFloat agm = bf_agm(BigFloat(1, prec), s2);
    BigFloat g14 = bf_sqrt(bf_mul_2si(bf_sqrt(bf_mul_2si(pi, 1)) * pi / agm, 1));
    return pi * s2 / g14;
}

NumericConstants make_constants(mpfr_prec_t prec) {
    NumericConstants c{prec,        gamma34_agm(prec), BigFloat(prec),
                       BigFloat(prec), BigComplex(prec),  BigComplex(prec)};
    BigFloat pi = BigFloat::pi(prec);
    c.Theta = bf_sqrt(bf_mul_2si(pi, 1)) / (c.gamma34 * c.gamma34);
    c.K = bf_sqrt(pi) / (bf_sqrt(BigFloat(2, prec)) * c.gamma34 * c.gamma34);
    c.kappa = bc_sqrt(BigComplex(BigFloat(prec), bf_mul_2si(pi, -1)));  // sqrt(i pi/2)
    c.omega0 = BigComplex(c.Theta, BigFloat(prec)) * c.kappa;
    return c;
}

}  // namespace cylg
