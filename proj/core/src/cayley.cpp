#include "cylg/cayley.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "cylg/rationalize.hpp"
#include "cylg/theta_series.hpp"

namespace cylg {

namespace {

// ---------------------------------------------------------------------------
// Small dense Taylor helpers over BigComplex / generic ring (length = order).

template <typename R>
std::vector<R> conv(const std::vector<R>& a, const std::vector<R>& b, size_t n) {
    std::vector<R> r(n, R{});
    for (size_t i = 0; i < a.size() && i < n; ++i) {
        if (ring_is_zero(a[i])) continue;
        for (size_t j = 0; j < b.size() && i + j < n; ++j) {
            if (ring_is_zero(b[j])) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

// exp of a Taylor polynomial u with u[0] = 0, via e' = u' e.
std::vector<BigComplex> exp_series(const std::vector<BigComplex>& u, size_t n, mpfr_prec_t prec) {
    std::vector<BigComplex> e(n, BigComplex(prec));
    e[0] = BigComplex(1, prec);
    for (size_t k = 1; k < n; ++k) {
        BigComplex acc(prec);
        for (size_t j = 1; j <= k && j < u.size(); ++j)
            acc += ring_scale(u[j] * e[k - j], Rat(static_cast<long>(j)));
        e[k] = ring_scale(acc, Rat(1, static_cast<long>(k)));
    }
    return e;
}

double bc_mag(const BigComplex& z) {
    return mpfr_get_d(z.abs().raw(), MPFR_RNDN);
}

// Coefficient ring adapters for the assembly template.
template <typename R>
R from_qext(const QExt& q, mpfr_prec_t);
template <>
QExt from_qext<QExt>(const QExt& q, mpfr_prec_t) { return q; }
template <>
BigComplex from_qext<BigComplex>(const QExt& q, mpfr_prec_t prec) {
    return qext_to_bigcomplex(q, prec);
}

template <typename R>
mpfr_prec_t ring_prec(const std::array<std::vector<R>, 4>&) { return 64; }
template <>
mpfr_prec_t ring_prec<BigComplex>(const std::array<std::vector<BigComplex>, 4>& s) {
    mpfr_prec_t p = 64;
    for (const auto& v : s)
        for (const auto& c : v) p = std::max(p, c.prec());
    return p;
}

// Evaluate one inner (x,y,z,w)-polynomial on Taylor series, with power cache.
template <typename R>
std::vector<R> eval_inner(const XyzwPoly& inner,
                          const std::array<std::vector<std::vector<R>>, 4>& pw, size_t n) {
    std::vector<R> acc(n, R{});
    for (const auto& [ie, c] : inner.terms()) {
        std::vector<R> term(n, R{});
        term[0] = RingOne<R>::get();
        for (int g = 0; g < 4; ++g)
            if (ie[static_cast<size_t>(g)] > 0)
                term = conv(term, pw[static_cast<size_t>(g)][static_cast<size_t>(ie[static_cast<size_t>(g)])], n);
        for (size_t k = 0; k < n; ++k)
            if (!ring_is_zero(term[k])) acc[k] += ring_scale(term[k], c);
    }
    return acc;
}

// Power cache pw[g][e] = series^e for every inner exponent appearing in the
// closed-form potential.
template <typename R>
std::array<std::vector<std::vector<R>>, 4> power_cache(const std::array<std::vector<R>, 4>& s,
                                                       size_t n) {
    std::array<int, 4> maxe{0, 0, 0, 0};
    for (const auto& [oe, inner] : f0_p442_data().terms()) {
        (void)oe;
        for (const auto& [ie, c] : inner.terms()) {
            (void)c;
            for (int g = 0; g < 4; ++g)
                maxe[static_cast<size_t>(g)] = std::max(maxe[static_cast<size_t>(g)], ie[static_cast<size_t>(g)]);
        }
    }
    std::array<std::vector<std::vector<R>>, 4> pw;
    for (int g = 0; g < 4; ++g) {
        auto& slot = pw[static_cast<size_t>(g)];
        slot.resize(static_cast<size_t>(maxe[static_cast<size_t>(g)]) + 1);
        slot[0] = std::vector<R>(n, R{});
        slot[0][0] = RingOne<R>::get();
        for (int e = 1; e <= maxe[static_cast<size_t>(g)]; ++e)
            slot[static_cast<size_t>(e)] = conv(slot[static_cast<size_t>(e - 1)], s[static_cast<size_t>(g)], n);
    }
    return pw;
}

}  // namespace

Sl2Element cylg_matrix(const NumericConstants& nc) {
    mpfr_prec_t p = nc.prec;
    BigFloat pi = BigFloat::pi(p);
    BigFloat zero(p);
    Sl2Element A;
    A.a = BigComplex(BigFloat(1, p) / (BigFloat(2, p) * nc.Theta), zero);
    A.b = BigComplex(-(pi * nc.Theta) / BigFloat(2, p), zero);
    A.c = BigComplex(BigFloat(1, p) / (pi * nc.Theta), zero);
    A.d = BigComplex(nc.Theta, zero);
    return A;
}

Result<CayleyExpansion> cayley_taylor(const BigComplex& tau0, const BigComplex& omega0,
                                      int n_coeffs, mpfr_prec_t prec) {
    using RC = Result<CayleyExpansion>;
    if (n_coeffs < 1 || prec < 128) return RC::fail(Err::BadInput, "need n_coeffs >= 1, prec >= 128");
    if (!(tau0.im > BigFloat(0, prec))) return RC::fail(Err::BadInput, "Im(tau0) must be positive");
    if (ring_is_zero(omega0)) return RC::fail(Err::BadInput, "omega0 must be nonzero");

    const size_t K = static_cast<size_t>(n_coeffs);
    const mpfr_prec_t W = prec;
    const BigComplex one(1, W);
    const BigComplex i_u = BigComplex::i_unit(W);
    const BigFloat pi = BigFloat::pi(W);
    const BigComplex kappa2(BigFloat(W), bf_mul_2si(pi, -1));  // i pi / 2
    const BigComplex kappa = bc_sqrt(kappa2);                  // principal branch

    BigComplex t0 = tau0 + BigComplex(W);    // widen to working precision
    BigComplex om = omega0 + BigComplex(W);
    BigFloat im0 = t0.im;
    BigComplex two_i_im = i_u * BigComplex(im0 + im0, BigFloat(W));
    BigComplex km = two_i_im * om * om;      // 2 i omega0^2 Im(tau0)
    BigComplex inv_km = one / km;

    // --- truncation length from the tail bound -----------------------------
    // On |tau| = rho = |km|/8 the recentering satisfies |delta| <= 2 Im(tau0)/7,
    // so term n of the bare sum is bounded by |a_n| exp(-lambda n) with
    // lambda = (pi/2) Im(tau0) (1 - 2/7) and |a_n| <= 100 (n+1)^2 for all four
    // q-series (theta-square representation counts and sigma_1(n) <= n (n+1)).
    // Cauchy then turns a sup bound on the circle into coefficient bounds.
    const double im0_d = mpfr_get_d(im0.raw(), MPFR_RNDN);
    const double km_mag = bc_mag(km);
    const double rho = km_mag / 8.0;
    const double lambda = (M_PI / 2.0) * im0_d * (5.0 / 7.0);
    if (!(lambda > 1e-6) || !(rho > 1e-9))
        return RC::fail(Err::NonConvergent, "tail bound not reachable: tau0 too close to the real axis");
    // dressed prefactors on the circle
    const double pref_x = std::sqrt(M_PI / 2.0) * 2.0 * bc_mag(om) * im0_d / (km_mag * (7.0 / 8.0));
    const double pref_w = (M_PI / 2.0) * std::pow(2.0 * bc_mag(om) * im0_d / (km_mag * (7.0 / 8.0)), 2.0);
    const double pref = std::max({1.0, pref_x, pref_w});
    const double s_lam = (1.0 + std::exp(-lambda)) / std::pow(1.0 - std::exp(-lambda), 3.0);
    const double target_log = -(static_cast<double>(prec) + 16.0) * std::log(2.0);
    const double rho_pen = (rho < 1.0) ? (static_cast<double>(K - 1) * -std::log(rho)) : 0.0;
    long N = -1;
    for (long n = static_cast<long>(target_log / -lambda) / 2 + 8; n < 2000000; n = n + n / 8 + 8) {
        double lg = std::log(100.0 * pref * s_lam) + 2.0 * std::log(static_cast<double>(n) + 2.0)
                    - lambda * (static_cast<double>(n) + 1.0) + rho_pen;
        if (lg <= target_log) { N = n; break; }
    }
    if (N < 0)
        return RC::fail(Err::NonConvergent, "tail bound not reachable at this precision/order");

    // --- q-series x exp-of-recentering ------------------------------------
    ModularFunctionSet mf = xyzw_qexp(N + 1);
    const QSeries* qs[4] = {&mf.x, &mf.y, &mf.z, &mf.w};

    std::vector<BigComplex> base(K, BigComplex(W));  // kappa^2 * delta
    {
        BigComplex cur = inv_km;
        for (size_t k = 1; k < K; ++k) {
            base[k] = kappa2 * two_i_im * cur;
            cur *= inv_km;
        }
    }
    const BigComplex q0 = bc_exp(kappa2 * t0);

    CayleyExpansion ex;
    ex.tau0 = t0;
    ex.omega0 = om;
    ex.prec = W;
    ex.n_coeffs = n_coeffs;
    for (int g = 0; g < 4; ++g)
        ex.bare[static_cast<size_t>(g)].assign(K, BigComplex(W));

    BigComplex q0n = one;
    std::vector<BigComplex> un(K, BigComplex(W));
    for (long n = 0; n <= N; ++n) {
        Rat an[4];
        bool any = false;
        for (int g = 0; g < 4; ++g) {
            an[g] = qs[g]->coeff_q(n);
            if (an[g] != 0) any = true;
        }
        if (any) {
            for (size_t k = 1; k < K; ++k) un[k] = ring_scale(base[k], Rat(n));
            std::vector<BigComplex> en = exp_series(un, K, W);
            for (size_t k = 0; k < K; ++k) en[k] *= q0n;
            for (int g = 0; g < 4; ++g) {
                if (an[g] == 0) continue;
                auto& tgt = ex.bare[static_cast<size_t>(g)];
                for (size_t k = 0; k < K; ++k) tgt[k] += ring_scale(en[k], an[g]);
            }
        }
        q0n *= q0;
    }

    // --- weight prefactors --------------------------------------------------
    std::vector<BigComplex> pref_series(K, BigComplex(W));  // 2 i omega0 Im(tau0)/(km - tau)
    std::vector<BigComplex> corr(K, BigComplex(W));         // 1/(km - tau)
    {
        BigComplex cur = inv_km;
        BigComplex num = two_i_im * om;
        for (size_t k = 0; k < K; ++k) {
            pref_series[k] = num * cur;
            corr[k] = cur;
            cur *= inv_km;
        }
    }
    for (int g = 0; g < 3; ++g) {
        auto d = conv(pref_series, ex.bare[static_cast<size_t>(g)], K);
        for (auto& c : d) c *= kappa;
        ex.coeffs[static_cast<size_t>(g)] = std::move(d);
    }
    {
        auto d = conv(pref_series, conv(pref_series, ex.bare[3], K), K);
        for (size_t k = 0; k < K; ++k) d[k] = d[k] * kappa2 + corr[k];
        ex.coeffs[3] = std::move(d);
    }
    return RC::ok(std::move(ex));
}

Result<CayleyExpansion> cayley_rationalize(const CayleyExpansion& lo, const CayleyExpansion& hi,
                                           const mpz_class& max_den) {
    using RC = Result<CayleyExpansion>;
    if (lo.n_coeffs != hi.n_coeffs)
        return RC::fail(Err::BadInput, "expansions have different Taylor orders");
    if (lo.prec >= hi.prec)
        return RC::fail(Err::BadInput, "need two distinct precisions, low first");
    RationalizeOptions opt;
    opt.max_den = max_den;
    CayleyExpansion out = hi;
    for (size_t g = 0; g < 4; ++g) {
        out.exact[g].assign(static_cast<size_t>(hi.n_coeffs), std::nullopt);
        for (size_t k = 0; k < static_cast<size_t>(hi.n_coeffs); ++k) {
            auto fit = rationalize_qext(lo.coeffs[g][k], hi.coeffs[g][k], opt);
            if (fit) out.exact[g][k] = *fit;
        }
    }
    out.has_exact = true;
    return RC::ok(std::move(out));
}

XyzwTaylor sl2_scaling(const QExt& alpha, const XyzwTaylor& s) {
    const QExt a2 = alpha * alpha;
    XyzwTaylor r;
    auto apply = [&](const std::vector<QExt>& in, QExt p) {
        std::vector<QExt> out;
        out.reserve(in.size());
        for (const auto& c : in) {
            out.push_back(p * c);
            p *= a2;
        }
        return out;
    };
    r.x = apply(s.x, alpha);
    r.y = apply(s.y, alpha);
    r.z = apply(s.z, alpha);
    r.w = apply(s.w, a2);
    return r;
}

CayleyExpansion sl2_scaling(const BigComplex& alpha, const CayleyExpansion& e) {
    CayleyExpansion r = e;
    const BigComplex a2 = alpha * alpha;
    auto apply = [&](std::vector<BigComplex>& v, BigComplex p) {
        for (auto& c : v) {
            c *= p;
            p *= a2;
        }
    };
    for (int g = 0; g < 3; ++g) apply(r.coeffs[static_cast<size_t>(g)], alpha);
    apply(r.coeffs[3], a2);
    for (int g = 0; g < 4; ++g) apply(r.bare[static_cast<size_t>(g)], BigComplex(1, e.prec));
    r.omega0 = e.omega0 / alpha;
    r.exact = {};
    r.has_exact = false;
    return r;
}

MultiPoly<Rat> unit_quadratic_form() {
    MultiPoly<Rat> q(9);
    auto mono = [](int i, int j) {
        ExpVec e(9, 0);
        e[static_cast<size_t>(i)] += 1;
        e[static_cast<size_t>(j)] += 1;
        return e;
    };
    q.add(mono(2, 2), Rat(1, 8));
    q.add(mono(5, 5), Rat(1, 8));
    q.add(mono(7, 7), Rat(1, 4));
    q.add(mono(1, 3), Rat(1, 4));
    q.add(mono(4, 6), Rat(1, 4));
    return q;
}

MultiPoly<Rat> reduced_part_w_partial() {
    MultiPoly<Rat> out(9);
    for (const auto& [oe, inner] : f0_p442_data().terms()) {
        if (is_pairing_block_term(oe)) continue;
        XyzwPoly dw = inner.partial(3);
        if (dw.is_zero()) continue;
        ExpVec zero4(4, 0);
        if (dw.term_count() != 1 || dw.terms().begin()->first != zero4)
            throw std::logic_error("reduced part is not linear in w");
        out.add(oe, dw.terms().begin()->second);
    }
    return out;
}

std::vector<MultiPoly<QExt>> sector_frame_images() {
    auto var = [](int i) { return MultiPoly<QExt>::variable(9, static_cast<size_t>(i)); };
    auto s2 = [](const MultiPoly<QExt>& p) { return p.scale_ring(QExt::sqrt2()); };
    std::vector<MultiPoly<QExt>> im;
    im.reserve(9);
    im.push_back(var(0));                                    // t0 = s11
    im.push_back((var(1) - var(3)).scale_ring(QExt::i_sqrt2()));
    im.push_back(s2(var(4)) - var(2) - var(6));
    im.push_back((var(5) - var(7)).scale_ring(QExt::i_sqrt2()));
    im.push_back(s2(var(1) + var(3)));
    im.push_back(var(2) + s2(var(4)) + var(6));
    im.push_back(s2(var(5) + var(7)));
    im.push_back((var(2) - var(6)).scale_ring(QExt::i()));
    im.push_back(var(8));                                    // t8 = s33
    return im;
}

template <typename R>
MultiPoly<R> assemble_sector_potential(const std::array<std::vector<R>, 4>& xyzw,
                                       int t8_order, int degree) {
    const size_t K = static_cast<size_t>(t8_order);
    const mpfr_prec_t prec = ring_prec(xyzw);
    auto pw = power_cache(xyzw, K);

    std::vector<MultiPoly<R>> images;
    images.reserve(9);
    for (const auto& p : sector_frame_images())
        images.push_back(p.template map_coeff<R>([&](const QExt& q) { return from_qext<R>(q, prec); }));

    const int prod_bound = std::max(degree, 3);
    MultiPoly<R> out(9);
    for (const auto& [oe, inner] : f0_p442_data().terms()) {
        std::vector<R> series = eval_inner(inner, pw, K);
        bool all_zero = true;
        for (const auto& c : series)
            if (!ring_is_zero(c)) all_zero = false;
        if (all_zero) continue;

        MultiPoly<R> prod = MultiPoly<R>::constant(9, RingOne<R>::get(), prod_bound);
        for (size_t i = 0; i < 9; ++i)
            for (int rep = 0; rep < oe[i]; ++rep) prod = prod * images[i];

        for (const auto& [se, sc] : prod.terms()) {
            int sector_deg = 0;
            for (size_t i = 0; i < 8; ++i) sector_deg += se[i];
            if (sector_deg > degree) continue;
            for (size_t k = 0; k < K; ++k) {
                if (ring_is_zero(series[k])) continue;
                if (se[8] + static_cast<int>(k) >= t8_order) continue;
                ExpVec e = se;
                e[8] += static_cast<int>(k);
                out.add(e, sc * series[k]);
            }
        }
    }
    return out;
}

template MultiPoly<QExt> assemble_sector_potential<QExt>(const std::array<std::vector<QExt>, 4>&,
                                                         int, int);
template MultiPoly<BigComplex> assemble_sector_potential<BigComplex>(
    const std::array<std::vector<BigComplex>, 4>&, int, int);

MultiPoly<BigComplex> sl2_on_potential(const Sl2Element& A, const CayleyExpansion& e,
                                       Sl2Mode mode, int t8_order) {
    const size_t K = static_cast<size_t>(t8_order);
    const mpfr_prec_t W = e.prec;
    MultiPoly<BigComplex> out(9);

    if (mode == Sl2Mode::substitution) {
        auto pw = power_cache(e.coeffs, K);
        for (const auto& [oe, inner] : f0_p442_data().terms()) {
            std::vector<BigComplex> series = eval_inner(inner, pw, K);
            for (size_t k = 0; k < K; ++k) {
                if (ring_is_zero(series[k])) continue;
                ExpVec oek = oe;
                oek[8] += static_cast<int>(k);
                out.add(oek, series[k]);
            }
        }
        return out;
    }

    // formula mode: pairing + c Q^2 / (2 (c t8 + d)) + (c t8 + d)^2 H(scaled).
    const BigComplex one(1, W);
    const BigComplex inv_d = one / A.d;
    const BigComplex ratio = -(A.c * inv_d);  // -c/d
    auto pw = power_cache(e.bare, K);
    ExpVec zero4(4, 0);

    for (const auto& [oe, inner] : f0_p442_data().terms()) {
        if (is_pairing_block_term(oe)) {
            out.add(oe, rat_to_bigcomplex(inner.coefficient(zero4), W));
            continue;
        }
        if (oe[0] != 0 || oe[8] != 0)
            throw std::logic_error("reduced part touches the pairing variables");
        int kt = 0;
        for (size_t i = 0; i < 9; ++i) kt += oe[i];
        // (c t8 + d)^(2 - kt) as a Taylor polynomial in t8
        std::vector<BigComplex> pow_cd(K, BigComplex(W));
        const int m = 2 - kt;
        if (m >= 0) {
            // finite binomial expansion
            std::vector<BigComplex> acc(K, BigComplex(W));
            acc[0] = one;
            for (int rep = 0; rep < m; ++rep) {
                std::vector<BigComplex> lin(K, BigComplex(W));
                lin[0] = A.d;
                if (K > 1) lin[1] = A.c;
                acc = conv(acc, lin, K);
            }
            pow_cd = std::move(acc);
        } else {
            // 1/(c t8 + d)^|m|: coefficient_j = C(|m|-1+j, j) (-c)^j / d^(|m|+j)
            const int mm = -m;
            BigComplex cur = bc_pow_si(inv_d, mm);
            Rat binom(1);
            for (size_t j = 0; j < K; ++j) {
                pow_cd[j] = ring_scale(cur, binom);
                binom = binom * Rat(mm + static_cast<long>(j)) / Rat(static_cast<long>(j) + 1);
                cur *= ratio;
            }
        }
        std::vector<BigComplex> series = eval_inner(inner, pw, K);
        series = conv(series, pow_cd, K);
        for (size_t k = 0; k < K; ++k) {
            if (ring_is_zero(series[k])) continue;
            ExpVec oek = oe;
            oek[8] += static_cast<int>(k);
            out.add(oek, series[k]);
        }
    }

    // + c Q^2 / (2 (c t8 + d))
    MultiPoly<Rat> q2 = unit_quadratic_form() * unit_quadratic_form();
    BigComplex cur = A.c * inv_d * ring_scale(one, Rat(1, 2));  // c/(2d)
    for (size_t k = 0; k < K; ++k) {
        for (const auto& [qe, qc] : q2.terms()) {
            ExpVec ek = qe;
            ek[8] += static_cast<int>(k);
            out.add(ek, ring_scale(cur, qc));
        }
        cur *= ratio;
    }
    return out;
}

BigFloat sl2_mode_discrepancy(const Sl2Element& A, const CayleyExpansion& e, int t8_order) {
    MultiPoly<BigComplex> f = sl2_on_potential(A, e, Sl2Mode::formula, t8_order);
    MultiPoly<BigComplex> s = sl2_on_potential(A, e, Sl2Mode::substitution, t8_order);
    MultiPoly<BigComplex> d = f - s;
    BigFloat worst(0, e.prec);
    for (const auto& [de, dc] : d.terms()) {
        (void)de;
        BigFloat m = dc.abs();
        if (m > worst) worst = m;
    }
    return worst;
}

CylgReport cylg_pipeline(const CylgOptions& opt) {
    CylgReport rep;
    if (opt.t8_order < 1 || opt.degree < 3 || opt.prec_lo < 128 || opt.prec_hi <= opt.prec_lo) {
        rep.err = Err::BadInput;
        rep.detail = "need t8_order >= 1, degree >= 3, 128 <= prec_lo < prec_hi";
        return rep;
    }

    auto run_at = [&](mpfr_prec_t p) {
        NumericConstants nc = make_constants(p);
        return cayley_taylor(BigComplex::i_unit(p), nc.omega0, opt.t8_order, p);
    };
    auto e_lo = run_at(opt.prec_lo);
    auto e_hi = run_at(opt.prec_hi);
    if (!e_lo || !e_hi) {
        const auto& bad = e_lo ? e_hi : e_lo;
        rep.err = bad.err;
        rep.detail = "taylor expansion failed: " + bad.detail;
        return rep;
    }
    auto fitted = cayley_rationalize(*e_lo, *e_hi);
    if (!fitted) {
        rep.err = fitted.err;
        rep.detail = fitted.detail;
        return rep;
    }
    for (size_t g = 0; g < 4; ++g)
        for (const auto& slot : fitted->exact[g])
            slot ? ++rep.coeff_ok : ++rep.coeff_failed;

    if (rep.coeff_failed == 0) {
        std::array<std::vector<QExt>, 4> xs;
        for (size_t g = 0; g < 4; ++g)
            for (const auto& slot : fitted->exact[g]) xs[g].push_back(*slot);
        rep.potential = assemble_sector_potential<QExt>(xs, opt.t8_order, opt.degree);
    } else {
        // Fallback: assemble numerically at both precisions, then recognize
        // the final coefficients.
        rep.used_fallback = true;
        auto p_lo = assemble_sector_potential<BigComplex>(e_lo->coeffs, opt.t8_order, opt.degree);
        auto p_hi = assemble_sector_potential<BigComplex>(e_hi->coeffs, opt.t8_order, opt.degree);
        MultiPoly<QExt> acc(9);
        for (const auto& [ee, hc] : p_hi.terms()) {
            auto fit = rationalize_qext(p_lo.coefficient(ee), hc);
            if (!fit) {
                rep.err = Err::NoStableFit;
                std::ostringstream os;
                os << "final coefficient not recognized at [";
                for (size_t i = 0; i < ee.size(); ++i) os << (i ? " " : "") << ee[i];
                os << "]";
                rep.detail = os.str();
                return rep;
            }
            acc.add(ee, *fit);
        }
        rep.potential = std::move(acc);
    }

    // Exact rationality certification of the assembled potential.
    for (const auto& [ee, c] : rep.potential.terms()) {
        if (c.is_rational()) continue;
        ++rep.irrational_terms;
        if (rep.mismatch_detail.size() < 8) {
            std::ostringstream os;
            os << "irrational coefficient " << c.to_string() << " at [";
            for (size_t i = 0; i < ee.size(); ++i) os << (i ? " " : "") << ee[i];
            os << "]";
            rep.mismatch_detail.push_back(os.str());
        }
    }

    // Fixture comparison inside the window the fixture covers completely.
    const MultiPoly<Rat>& fx = f0_e7_fixture();
    auto in_window = [&](const ExpVec& ee) {
        int sector_deg = 0;
        for (size_t i = 0; i < 8; ++i) sector_deg += ee[i];
        return sector_deg <= 3 && ee[8] <= std::min(8, opt.t8_order - 1);
    };
    auto note_mismatch = [&](const ExpVec& ee, const std::string& got, const std::string& want) {
        ++rep.mismatches;
        if (rep.mismatch_detail.size() < 8) {
            std::ostringstream os;
            os << "coefficient at [";
            for (size_t i = 0; i < ee.size(); ++i) os << (i ? " " : "") << ee[i];
            os << "]: got " << got << ", fixture " << want;
            rep.mismatch_detail.push_back(os.str());
        }
    };
    for (const auto& [ee, fc] : fx.terms()) {
        if (!in_window(ee)) continue;
        ++rep.window_checked;
        QExt got = rep.potential.coefficient(ee);
        if (got != qext_rat(fc)) note_mismatch(ee, got.to_string(), rat_to_string(fc));
    }
    for (const auto& [ee, c] : rep.potential.terms()) {
        if (!in_window(ee) || c.is_zero()) continue;
        if (fx.coefficient(ee) == 0) {
            ++rep.window_checked;
            note_mismatch(ee, c.to_string(), "0");
        }
    }

    if (rep.irrational_terms > 0)
        rep.err = Err::RationalityFailure;
    else if (rep.mismatches > 0)
        rep.err = Err::FixtureMismatch;
    if (rep.err != Err::None && rep.detail.empty() && !rep.mismatch_detail.empty())
        rep.detail = rep.mismatch_detail.front();
    return rep;
}

}  // namespace cylg
