#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cylg/cayley.hpp>
#include <cylg/rationalize.hpp>
#include <cylg/theta_numeric.hpp>

using namespace cylg;

namespace {

BigFloat tol2(mpfr_prec_t prec, long bits) { return BigFloat::pow2(-bits, prec); }

const CayleyExpansion& expansion256() {
    static const CayleyExpansion e = [] {
        NumericConstants nc = make_constants(256);
        auto r = cayley_taylor(BigComplex::i_unit(256), nc.omega0, 9, 256);
        REQUIRE(r.has_value());
        return *r;
    }();
    return e;
}

const CayleyExpansion& expansion384() {
    static const CayleyExpansion e = [] {
        NumericConstants nc = make_constants(384);
        auto r = cayley_taylor(BigComplex::i_unit(384), nc.omega0, 9, 384);
        REQUIRE(r.has_value());
        return *r;
    }();
    return e;
}

const CayleyExpansion& recognized() {
    static const CayleyExpansion e = [] {
        auto r = cayley_rationalize(expansion256(), expansion384());
        REQUIRE(r.has_value());
        return *r;
    }();
    return e;
}

std::array<std::vector<QExt>, 4> exact_series() {
    const CayleyExpansion& e = recognized();
    std::array<std::vector<QExt>, 4> xs;
    for (size_t g = 0; g < 4; ++g)
        for (const auto& slot : e.exact[g]) {
            REQUIRE(slot.has_value());
            xs[g].push_back(*slot);
        }
    return xs;
}

ExpVec mono9(std::initializer_list<int> idx, int t8 = 0) {
    ExpVec e(9, 0);
    for (int i : idx) e[static_cast<size_t>(i)] += 1;
    e[8] += t8;
    return e;
}

bool close(const BigComplex& v, const BigComplex& w, const BigFloat& tol) {
    return (v - w).abs() < tol;
}

}  // namespace

TEST_CASE("taylor coefficients at the distinguished point match closed forms") {
    const mpfr_prec_t P = 256;
    const CayleyExpansion& e = expansion256();
    CHECK(e.n_coeffs == 9);
    BigFloat tol = tol2(P, 230);
    BigFloat s2 = bf_sqrt(BigFloat(2, P));
    auto re = [&](const BigFloat& v) { return BigComplex(v, BigFloat(P)); };

    CHECK(close(e.coeffs[0][0], re((BigFloat(1, P) + s2) / BigFloat(4, P)), tol));
    CHECK(close(e.coeffs[1][0], re((s2 - BigFloat(1, P)) / BigFloat(4, P)), tol));
    CHECK(close(e.coeffs[2][0], re(BigFloat(Rat(1, 2), P)), tol));
    CHECK(close(e.coeffs[3][0], re((BigFloat(1, P) + BigFloat(2, P) * s2) / BigFloat(16, P)), tol));
    CHECK(close(e.coeffs[0][1], re(BigFloat(Rat(-1, 16), P)), tol));
    CHECK(close(e.coeffs[1][1], re(BigFloat(Rat(1, 16), P)), tol));
    CHECK(close(e.coeffs[2][1], re(BigFloat(Rat(1, 8), P)), tol));

    // every dressed coefficient is real here
    for (size_t g = 0; g < 4; ++g)
        for (const auto& c : e.coeffs[g]) CHECK(bf_abs(c.im) < tol);
}

TEST_CASE("desired expansions of the three boundary combinations") {
    // constant and linear Taylor data of (x-y+z, x-y-z, x+y): ((1,0), (0,-1/4),
    // (1/sqrt2, 0)), certified to 1e-40 at 256 bits.
    const mpfr_prec_t P = 256;
    const CayleyExpansion& e = expansion256();
    BigFloat tol = BigFloat(Rat(1, 1), P);
    for (int i = 0; i < 40; ++i) tol = tol / BigFloat(10, P);

    const auto &X = e.coeffs[0], &Y = e.coeffs[1], &Z = e.coeffs[2];
    BigComplex c1_0 = X[0] - Y[0] + Z[0], c1_1 = X[1] - Y[1] + Z[1];
    BigComplex c2_0 = X[0] - Y[0] - Z[0], c2_1 = X[1] - Y[1] - Z[1];
    BigComplex s_0 = X[0] + Y[0], s_1 = X[1] + Y[1];

    CHECK(close(c1_0, BigComplex(1, P), tol));
    CHECK(c1_1.abs() < tol);
    CHECK(c2_0.abs() < tol);
    CHECK(close(c2_1, BigComplex(Rat(-1, 4), P), tol));
    BigFloat inv_sqrt2 = BigFloat(1, P) / bf_sqrt(BigFloat(2, P));
    CHECK(close(s_0, BigComplex(inv_sqrt2, BigFloat(P)), tol));
    CHECK(s_1.abs() < tol);
}

TEST_CASE("theta-constant cross-check of value and first derivative") {
    // Independent oracle: the undressed compositions are squared theta
    // constants evaluated along the recentering map, so their value and first
    // derivative at 0 follow from point evaluations of theta_value /
    // theta_logderiv (Gaussian sums at a point -- a different algorithm from
    // the q-series-times-exponential summation inside cayley_taylor).
    const mpfr_prec_t P = 256;
    const CayleyExpansion& e = expansion256();
    BigFloat tol = tol2(P, 220);

    BigComplex i_u = BigComplex::i_unit(P);
    BigComplex two_i = i_u * BigComplex(2, P);
    // km = 2 i omega0^2, delta'(0) = 2 i / km
    BigComplex km = two_i * e.omega0 * e.omega0;
    BigComplex d1 = two_i / km;

    auto th = [&](int p, const BigComplex& tau) {
        auto r = theta_value(p, tau, P);
        REQUIRE(r.has_value());
        return *r;
    };
    auto lx = [&](int p, const BigComplex& tau) {
        auto r = theta_logderiv(p, tau, P);
        REQUIRE(r.has_value());
        return *r;
    };

    // x(q(s)) = theta3(2s)^2, y(q(s)) = theta2(2s)^2, z(q(s)) = theta2(s)^2
    // in the classical-nome convention; here s = M(tau), M(0) = i.
    BigComplex t3 = th(3, two_i), t2 = th(2, two_i), t2i = th(2, i_u);
    CHECK(close(e.bare[0][0], t3 * t3, tol));
    CHECK(close(e.bare[1][0], t2 * t2, tol));
    CHECK(close(e.bare[2][0], t2i * t2i, tol));
    // chain rule: d/dtau theta_p(2 M(tau))^2 at 0 carries the inner factor 2
    CHECK(close(e.bare[0][1], t3 * t3 * lx(3, two_i) * d1 * BigComplex(2, P), tol));
    CHECK(close(e.bare[1][1], t2 * t2 * lx(2, two_i) * d1 * BigComplex(2, P), tol));
    CHECK(close(e.bare[2][1], t2i * t2i * lx(2, i_u) * d1, tol));
}

TEST_CASE("transport of the quadric relation z^2 = 4xy") {
    const mpfr_prec_t P = 256;
    const CayleyExpansion& e = expansion256();
    BigFloat tol = tol2(P, 230);
    const auto &X = e.coeffs[0], &Y = e.coeffs[1], &Z = e.coeffs[2];
    for (int k = 0; k < 9; ++k) {
        BigComplex zz(P), xy(P);
        for (int a = 0; a <= k; ++a) {
            zz += Z[static_cast<size_t>(a)] * Z[static_cast<size_t>(k - a)];
            xy += X[static_cast<size_t>(a)] * Y[static_cast<size_t>(k - a)];
        }
        CHECK((zz - xy * BigComplex(4, P)).abs() < tol);
    }

    // exact version on the recognized series
    auto xs = exact_series();
    for (int k = 0; k < 9; ++k) {
        QExt zz(0), xy(0);
        for (int a = 0; a <= k; ++a) {
            zz += xs[2][static_cast<size_t>(a)] * xs[2][static_cast<size_t>(k - a)];
            xy += xs[0][static_cast<size_t>(a)] * xs[1][static_cast<size_t>(k - a)];
        }
        CHECK(zz == xy * QExt(4));
    }
}

TEST_CASE("recognized Taylor series over Q(sqrt2)") {
    auto xs = exact_series();
    const auto &x = xs[0], &y = xs[1], &z = xs[2], &w = xs[3];

    auto q = [](long n, long d) { return QExt(Rat(n, d)); };
    auto qs = [](Rat a, Rat b) { return QExt(std::move(a), std::move(b)); };

    std::vector<QExt> x_expect = {
        qs(Rat(1, 4), Rat(1, 4)), q(-1, 16), qs(0, Rat(1, 128)), QExt(0),
        qs(Rat(1, 6144), Rat(1, 24576)), q(-1, 122880), qs(0, Rat(1, 1310720)), QExt(0),
        qs(Rat(1, 660602880), Rat(289, 10569646080))};
    std::vector<QExt> z_expect = {q(1, 2), q(1, 8), QExt(0), QExt(0), q(1, 3072),
                                  q(1, 61440), QExt(0), QExt(0), q(1, 330301440)};
    CHECK(x == x_expect);
    CHECK(z == z_expect);
    CHECK(w[0] == qs(Rat(1, 16), Rat(1, 8)));
    CHECK(w[1] == qs(Rat(-1, 32), Rat(-1, 32)));

    // all real, and y is the negated sqrt2-conjugate of x termwise (x + y
    // lies in sqrt2 * Q and x - y in Q, coefficient by coefficient)
    for (size_t g = 0; g < 4; ++g)
        for (const auto& c : xs[g]) CHECK(c.is_real());
    for (size_t k = 0; k < 9; ++k) CHECK(y[k] == -x[k].conj_sqrt2());

    // the three fixture series
    std::vector<Rat> sum_expect = {Rat(1), 0, Rat(1, 32), 0, Rat(1, 6144), 0,
                                   Rat(1, 327680), 0, Rat(289, 2642411520)};
    std::vector<Rat> c1_expect = {Rat(1), 0, 0, 0, Rat(1, 1536), 0, 0, 0, Rat(1, 165150720)};
    std::vector<Rat> c2_expect = {0, Rat(-1, 4), 0, 0, 0, Rat(-1, 30720), 0, 0, 0};
    for (size_t k = 0; k < 9; ++k) {
        CHECK(QExt::sqrt2() * (x[k] + y[k]) == qext_rat(sum_expect[k]));
        CHECK(x[k] - y[k] + z[k] == qext_rat(c1_expect[k]));
        CHECK(x[k] - y[k] - z[k] == qext_rat(c2_expect[k]));
    }
}

TEST_CASE("recognition protocol") {
    SUBCASE("input validation") {
        const CayleyExpansion& lo = expansion256();
        CHECK(cayley_rationalize(lo, lo).err == Err::BadInput);
        CayleyExpansion short_hi = expansion384();
        short_hi.n_coeffs = 5;
        CHECK(cayley_rationalize(lo, short_hi).err == Err::BadInput);
    }
    SUBCASE("a perturbed coefficient is left numeric, the rest still fit") {
        CayleyExpansion lo = expansion256();
        lo.coeffs[0][2] += BigComplex(BigFloat::pow2(-90, 256), BigFloat(256));
        auto fit = cayley_rationalize(lo, expansion384());
        REQUIRE(fit.has_value());
        CHECK_FALSE(fit->exact[0][2].has_value());
        CHECK(fit->exact[0][1].has_value());
        CHECK(fit->exact[2][4].has_value());
    }
    SUBCASE("denominator cap forces a miss") {
        auto fit = cayley_rationalize(expansion256(), expansion384(), mpz_class(16));
        REQUIRE(fit.has_value());
        CHECK_FALSE(fit->exact[2][4].has_value());  // 1/3072 is out of reach
        CHECK(fit->exact[2][0].has_value());        // 1/2 still fits
    }
}

TEST_CASE("taylor engine rejects bad input and unreachable tail bounds") {
    const mpfr_prec_t P = 256;
    NumericConstants nc = make_constants(P);
    BigComplex i_u = BigComplex::i_unit(P);
    CHECK(cayley_taylor(-i_u, nc.omega0, 9, P).err == Err::BadInput);
    CHECK(cayley_taylor(i_u, BigComplex(P), 9, P).err == Err::BadInput);
    CHECK(cayley_taylor(i_u, nc.omega0, 0, P).err == Err::BadInput);
    CHECK(cayley_taylor(i_u, nc.omega0, 9, 64).err == Err::BadInput);
    // recentering at a point essentially on the real axis cannot converge
    BigComplex low(BigFloat(Rat(1, 1000000), P), BigFloat(Rat(1, 1000000000), P));
    BigComplex shallow(BigFloat(P), BigFloat(Rat(1, 1000000000), P));
    CHECK(cayley_taylor(shallow, nc.omega0, 9, P).err == Err::NonConvergent);
}

TEST_CASE("scaling action") {
    SUBCASE("toy series: alpha = 2 multiplies coefficient k of x by 2*4^k") {
        XyzwTaylor s;
        s.x = {QExt(1), QExt(1), QExt(1)};
        s.y = {QExt(1)};
        s.z = {QExt(1)};
        s.w = {QExt(1), QExt(1)};
        XyzwTaylor r = sl2_scaling(QExt(2), s);
        CHECK(r.x == std::vector<QExt>{QExt(2), QExt(8), QExt(32)});
        CHECK(r.w == std::vector<QExt>{QExt(4), QExt(16)});
    }
    SUBCASE("alpha = -1 flips x, y, z and fixes w; alpha = 1 is the identity") {
        auto xs = exact_series();
        XyzwTaylor s{xs[0], xs[1], xs[2], xs[3]};
        XyzwTaylor m = sl2_scaling(QExt(-1), s);
        for (size_t k = 0; k < s.x.size(); ++k) {
            CHECK(m.x[k] == -s.x[k]);
            CHECK(m.y[k] == -s.y[k]);
            CHECK(m.z[k] == -s.z[k]);
            CHECK(m.w[k] == s.w[k]);
        }
        XyzwTaylor id = sl2_scaling(QExt(1), s);
        CHECK(id.x == s.x);
        CHECK(id.w == s.w);
    }
    SUBCASE("group law: scaling by alpha then beta equals scaling by alpha*beta") {
        auto xs = exact_series();
        XyzwTaylor s{xs[0], xs[1], xs[2], xs[3]};
        QExt a(Rat(3, 2)), b(-2);
        XyzwTaylor lhs = sl2_scaling(b, sl2_scaling(a, s));
        XyzwTaylor rhs = sl2_scaling(a * b, s);
        CHECK(lhs.x == rhs.x);
        CHECK(lhs.y == rhs.y);
        CHECK(lhs.z == rhs.z);
        CHECK(lhs.w == rhs.w);
    }
    SUBCASE("numeric twin: rescaling the expansion point") {
        // scaling by 1/2 turns the expansion at omega0 into the one at
        // 2 * omega0, correction term included
        const mpfr_prec_t P = 256;
        NumericConstants nc = make_constants(P);
        auto direct = cayley_taylor(BigComplex::i_unit(P), nc.omega0 * BigComplex(2, P), 9, P);
        REQUIRE(direct.has_value());
        CayleyExpansion scaled = sl2_scaling(BigComplex(Rat(1, 2), P), expansion256());
        BigFloat tol = tol2(P, 200);
        for (size_t g = 0; g < 4; ++g)
            for (size_t k = 0; k < 9; ++k)
                CHECK(close(scaled.coeffs[g][k], direct->coeffs[g][k], tol));
        CHECK(close(scaled.omega0, direct->omega0, tol));
    }
}

TEST_CASE("unit quadratic form matches the pairing block of the potential") {
    MultiPoly<Rat> q_data(9);
    ExpVec zero4(4, 0);
    for (const auto& [oe, inner] : f0_p442_data().terms()) {
        if (!is_pairing_block_term(oe) || oe[0] != 1) continue;
        ExpVec e = oe;
        e[0] = 0;
        q_data.add(e, inner.coefficient(zero4));
    }
    CHECK((q_data - unit_quadratic_form()).is_zero());
}

TEST_CASE("the reduced part is linear in w with dH/dw = -Q^2/2") {
    MultiPoly<Rat> q2 = unit_quadratic_form() * unit_quadratic_form();
    MultiPoly<Rat> expect = q2.scale(Rat(-1, 2));
    CHECK((reduced_part_w_partial() - expect).is_zero());
}

TEST_CASE("fractional-linear action: formula and substitution modes agree") {
    const mpfr_prec_t P = 256;
    NumericConstants nc = make_constants(P);
    Sl2Element A = cylg_matrix(nc);
    CHECK((A.det() - BigComplex(1, P)).abs() < tol2(P, 240));
    BigFloat disc = sl2_mode_discrepancy(A, expansion256(), 9);
    CHECK(disc < tol2(P, 230));
}

TEST_CASE("pipeline reproduces the singularity-side fixture exactly") {
    CylgReport rep = cylg_pipeline();
    CHECK(rep.err == Err::None);
    CHECK(rep.detail.empty());
    CHECK(rep.coeff_ok == 36);
    CHECK(rep.coeff_failed == 0);
    CHECK_FALSE(rep.used_fallback);
    CHECK(rep.window_checked == 20);
    CHECK(rep.mismatches == 0);
    CHECK(rep.irrational_terms == 0);

    auto coeff = [&](std::initializer_list<int> idx, int t8) {
        return rep.potential.coefficient(mono9(idx, t8));
    };
    // divisor series on the three-point sector monomials
    CHECK(coeff({1, 3, 4}, 0) == QExt(1));
    CHECK(coeff({1, 3, 4}, 2) == QExt(Rat(1, 32)));
    CHECK(coeff({1, 3, 4}, 4) == QExt(Rat(1, 6144)));
    CHECK(coeff({1, 3, 4}, 6) == QExt(Rat(1, 327680)));
    CHECK(coeff({1, 3, 4}, 8) == QExt(Rat(289, 2642411520)));
    CHECK(coeff({3, 3, 2}, 4) == QExt(Rat(1, 3072)));
    CHECK(coeff({1, 1, 6}, 4) == QExt(Rat(1, 3072)));
    CHECK(coeff({3, 3, 2}, 8) == QExt(Rat(1, 330301440)));
    CHECK(coeff({1, 1, 2}, 1) == QExt(Rat(-1, 8)));
    CHECK(coeff({3, 3, 6}, 1) == QExt(Rat(-1, 8)));
    CHECK(coeff({1, 1, 2}, 5) == QExt(Rat(-1, 61440)));
    CHECK(coeff({3, 3, 6}, 5) == QExt(Rat(-1, 61440)));
    // cubic block
    CHECK(coeff({0, 0, 8}, 0) == QExt(Rat(1, 2)));
    CHECK(coeff({0, 4, 4}, 0) == QExt(Rat(1, 2)));
    CHECK(coeff({0, 3, 5}, 0) == QExt(1));
    CHECK(coeff({0, 2, 6}, 0) == QExt(1));
    CHECK(coeff({0, 1, 7}, 0) == QExt(1));
    CHECK(coeff({1, 1, 6}, 0) == QExt(Rat(1, 2)));
    CHECK(coeff({3, 3, 2}, 0) == QExt(Rat(1, 2)));
    // absent in the window
    CHECK(coeff({1, 3, 4}, 1) == QExt(0));
    CHECK(coeff({3, 3, 2}, 1) == QExt(0));
}

TEST_CASE("pipeline negative controls") {
    SUBCASE("option validation") {
        CylgOptions bad;
        bad.degree = 2;
        CHECK(cylg_pipeline(bad).err == Err::BadInput);
        CylgOptions swapped;
        swapped.prec_lo = 384;
        swapped.prec_hi = 256;
        CHECK(cylg_pipeline(swapped).err == Err::BadInput);
    }
    SUBCASE("a corrupted series coefficient breaks rationality and the fixture") {
        auto xs = exact_series();
        xs[0][2] += QExt(Rat(1, 32));  // bump the tau^2 coefficient of x
        MultiPoly<QExt> p = assemble_sector_potential<QExt>(xs, 9, 4);
        QExt got = p.coefficient(mono9({1, 3, 4}, 2));
        CHECK(got != QExt(Rat(1, 32)));
        CHECK_FALSE(got.is_rational());  // picks up a sqrt2 part
    }
}

TEST_CASE("numeric fallback assembly agrees with the exact route") {
    const mpfr_prec_t P = 384;
    MultiPoly<BigComplex> num =
        assemble_sector_potential<BigComplex>(expansion384().coeffs, 9, 4);
    CylgReport rep = cylg_pipeline();
    REQUIRE(rep.err == Err::None);
    BigFloat tol = tol2(P, 340);
    int compared = 0;
    for (const auto& [e, c] : rep.potential.terms()) {
        BigComplex embedded = qext_to_bigcomplex(c, P);
        CHECK(close(num.coefficient(e), embedded, tol));
        ++compared;
    }
    CHECK(compared == static_cast<int>(rep.potential.term_count()));
    // and any numeric term missing from the exact potential is dust
    for (const auto& [e, c] : num.terms())
        if (rep.potential.coefficient(e).is_zero()) CHECK(c.abs() < tol);
}
