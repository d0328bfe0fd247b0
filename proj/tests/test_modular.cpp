#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cylg/theta_numeric.hpp"
#include "cylg/theta_series.hpp"

using namespace cylg;

TEST_CASE("theta q-expansions at small order") {
    QSeries t38 = theta_qexp(3, 8, 20);
    CHECK(t38.coeff_q(0) == 1);
    CHECK(t38.coeff_q(4) == 2);
    CHECK(t38.coeff_q(16) == 2);
    CHECK(t38.term_count() == 3);

    QSeries t28 = theta_qexp(2, 8, 12);
    CHECK(t28.coeff_q(1) == 2);
    CHECK(t28.coeff_q(9) == 2);
    CHECK(t28.term_count() == 2);

    QSeries t48 = theta_qexp(4, 8, 20);
    CHECK(t48.coeff_q(4) == -2);
    CHECK(t48.coeff_q(16) == 2);

    // finest grid: theta2(q) has exponents (2k+1)^2/8
    QSeries t21 = theta_qexp(2, 1, 4);
    CHECK(t21.coeff_q(1, 8) == 2);
    CHECK(t21.coeff_q(9, 8) == 2);
    CHECK(t21.coeff_q(25, 8) == 2);
}

TEST_CASE("eisenstein series coefficients") {
    QSeries f = eisenstein_f(1, 10);
    CHECK(f.coeff_q(0) == 1);
    CHECK(f.coeff_q(1) == -24);
    CHECK(f.coeff_q(4) == -168);  // sigma1(4) = 7
    CHECK(f.coeff_q(6) == -288);  // sigma1(6) = 12
    QSeries f4 = eisenstein_f(4, 20);
    CHECK(f4.coeff_q(4) == -24);
    CHECK(f4.coeff_q(1) == 0);
}

TEST_CASE("modular function set: leading terms and z^2 = 4xy") {
    ModularFunctionSet m = xyzw_qexp(40);
    CHECK(m.x.coeff_q(0) == 1);
    CHECK(m.x.coeff_q(4) == 4);
    CHECK(m.x.coeff_q(8) == 4);
    CHECK(m.y.coeff_q(2) == 4);
    CHECK(m.y.coeff_q(10) == 8);
    CHECK(m.z.coeff_q(1) == 4);
    CHECK(m.z.coeff_q(5) == 8);
    CHECK(m.z.coeff_q(9) == 4);
    CHECK(m.w.coeff_q(0) == 1);
    CHECK(m.w.coeff_q(4) == -8);
    CHECK(m.w.coeff_q(8) == -8);
    CHECK(m.w.coeff_q(12) == -32);

    QSeries rel = (m.z * m.z - (m.x * m.y).scale(4)).truncated(40);
    CHECK(rel.is_zero());

    // double-argument square identities on the q^4 grid
    QSeries t34 = theta_qexp(3, 4, 40), t44 = theta_qexp(4, 4, 40);
    CHECK((m.x - m.y) == (t44 * t44).truncated(40));
    CHECK((m.x + m.y) == (t34 * t34).truncated(40));
}

TEST_CASE("ODE residuals: first and third vanish, second does not") {
    OdeResiduals r = ode_residuals(60);
    CHECK(r.r1.is_zero());
    CHECK(r.r3.is_zero());
    CHECK(!r.r2.is_zero());
    CHECK(OdeResiduals::first_nonzero(r.r2) == 2);
    CHECK(r.r2.coeff_q(2) == -4);  // y' has 8q^2, displayed RHS gives 12q^2
}

TEST_CASE("fit_ode_rhs recovers the displayed equations and repairs the second") {
    ModularFunctionSet m = xyzw_qexp(60);
    auto dlog = [](const QSeries& s) {
        // q d/dq log s for s = c*u^v*(1 + ...): v/den + dlog of the unit part
        std::int64_t v = s.valuation_u();
        QSeries unit = s.shifted_u(-v);
        QSeries r = (unit.qddq() * ps_invert(unit)).truncated(58);
        r.add_u(0, rat(v, s.den()));
        return r;
    };

    auto fx = fit_ode_rhs(dlog(m.x), 4, 56);
    REQUIRE(fx.has_value());
    MultiPoly<Rat> ex(4);
    ex.set({0, 2, 0, 0}, 2);
    ex.set({2, 0, 0, 0}, -1);
    ex.set({0, 0, 0, 1}, 1);
    CHECK(*fx == ex);  // x'/x = 2y^2 - x^2 + w

    auto fw = fit_ode_rhs(m.w.qddq().truncated(56), 4, 56);
    REQUIRE(fw.has_value());
    MultiPoly<Rat> ew(4);
    ew.set({0, 0, 0, 2}, 1);
    ew.set({4, 0, 0, 0}, -1);
    CHECK(*fw == ew);  // w' = w^2 - x^4

    auto fy = fit_ode_rhs(dlog(m.y), 4, 56);
    REQUIRE(fy.has_value());
    MultiPoly<Rat> ey(4);
    ey.set({2, 0, 0, 0}, 1);
    ey.set({0, 0, 0, 1}, 1);
    CHECK(*fy == ey);  // corrected: y'/y = x^2 + w

    // corrected residual vanishes to high order
    QSeries r2fix = (m.y.qddq() - m.y * (m.x * m.x + m.w)).truncated(60);
    CHECK(r2fix.is_zero());

    // inconsistent target has no polynomial fit
    QSeries junk = m.x.qddq() + QSeries::monomial(rat(1, 7), 3, 1, 56);
    auto bad = fit_ode_rhs((junk * ps_invert(m.x)).truncated(50), 4, 50);
    CHECK(!bad.has_value());
    CHECK(bad.err == Err::NoFit);
}

TEST_CASE("numeric theta values at tau = i against AGM closed forms") {
    const mpfr_prec_t P = 256;
    BigFloat g34 = gamma34_agm(P);
    // cross-check the AGM oracle against mpfr's gamma as an independent path
    CHECK(bf_abs(g34 - bf_gamma(BigFloat(rat(3, 4), P))) < BigFloat::pow2(-248, P));

    BigFloat pi = BigFloat::pi(P);
    BigFloat pi14 = bf_sqrt(bf_sqrt(pi));
    BigComplex tau_i = BigComplex::i_unit(P);
    BigFloat tol = BigFloat::from_string("1e-60", P);

    auto t3 = theta_value(3, tau_i, P);
    REQUIRE(t3.has_value());
    CHECK(bf_abs(t3->re - pi14 / g34) < tol);
    CHECK(bf_abs(t3->im) < tol);

    auto t2 = theta_value(2, tau_i, P);
    REQUIRE(t2.has_value());
    BigFloat expect24 = pi14 / (bf_sqrt(bf_sqrt(BigFloat(2, P))) * g34);
    CHECK(bf_abs(t2->re - expect24) < tol);

    auto t4 = theta_value(4, tau_i, P);
    REQUIRE(t4.has_value());
    CHECK(bf_abs(t4->re - expect24) < tol);
    CHECK(bf_abs(t4->re - t2->re) < tol);
}

TEST_CASE("theta log-derivatives at tau = i") {
    const mpfr_prec_t P = 256;
    BigFloat g34 = gamma34_agm(P);
    BigFloat pi = BigFloat::pi(P);
    BigFloat tol = BigFloat::from_string("1e-50", P);
    BigComplex tau_i = BigComplex::i_unit(P);
    BigFloat q = pi * pi / (g34 * g34 * g34 * g34 * BigFloat(4, P));

    auto x3 = theta_logderiv(3, tau_i, P);
    REQUIRE(x3.has_value());
    CHECK(bf_abs(x3->re) < tol);
    CHECK(bf_abs(x3->im - BigFloat(rat(1, 2), P)) < tol);  // X3(i) = i/2

    auto x2 = theta_logderiv(2, tau_i, P);
    REQUIRE(x2.has_value());
    CHECK(bf_abs(x2->im - (q + BigFloat(rat(1, 2), P))) < tol);  // i pi^2/(4 G^4) + i/2

    auto x4 = theta_logderiv(4, tau_i, P);
    REQUIRE(x4.has_value());
    CHECK(bf_abs(x4->im - (BigFloat(rat(1, 2), P) - q)) < tol);
}

TEST_CASE("constants: Theta = 2K, kappa^2 = i pi/2, omega0 = Theta kappa") {
    const mpfr_prec_t P = 256;
    NumericConstants c = make_constants(P);
    BigFloat tol = BigFloat::pow2(-240, P);
    CHECK(bf_abs(c.Theta - bf_mul_2si(c.K, 1)) < tol);
    BigComplex k2 = c.kappa * c.kappa;
    CHECK(bf_abs(k2.re) < tol);
    CHECK(bf_abs(k2.im - bf_mul_2si(BigFloat::pi(P), -1)) < tol);
    // omega0^2 = 2 pi i K^2: purely imaginary with positive imaginary part
    BigComplex om2 = c.omega0 * c.omega0;
    CHECK(bf_abs(om2.re) < tol);
    CHECK(om2.im.sign() > 0);
    // frozen leading digits of Theta (independent high-precision evaluation)
    BigFloat theta_ref =
        BigFloat::from_string("1.66925368334814637256285946559809361798798602698069400489965", P);
    CHECK(bf_abs(c.Theta - theta_ref) < BigFloat::from_string("1e-58", P));
    BigFloat g34_ref =
        BigFloat::from_string("1.22541670246517764512909830336289052685123924810807061123012", P);
    CHECK(bf_abs(c.gamma34 - g34_ref) < BigFloat::from_string("1e-58", P));
}

TEST_CASE("formal and numeric layers agree at q = e^{-pi/2}") {
    const mpfr_prec_t P = 256;
    ModularFunctionSet m = xyzw_qexp(200);
    BigFloat pi = BigFloat::pi(P);
    BigComplex q0(bf_exp(-bf_mul_2si(pi, -1)), BigFloat(P));
    BigFloat tol = BigFloat::from_string("1e-60", P);

    // x(e^{-pi/2}) = theta3(2i)^2 in the classical convention
    auto xv = ps_eval(m.x, q0, P);
    REQUIRE(xv.has_value());
    CHECK(xv->tail_bound < tol);
    auto t3 = theta_value(3, BigComplex(BigFloat(P), BigFloat(2, P)), P);
    REQUIRE(t3.has_value());
    BigComplex oracle = *t3 * *t3;
    CHECK((xv->value - oracle).abs() < tol);

    auto yv = ps_eval(m.y, q0, P);
    auto t2 = theta_value(2, BigComplex(BigFloat(P), BigFloat(2, P)), P);
    REQUIRE(yv.has_value());
    REQUIRE(t2.has_value());
    CHECK((yv->value - *t2 * *t2).abs() < tol);

    auto zv = ps_eval(m.z, q0, P);
    auto t2i = theta_value(2, BigComplex::i_unit(P), P);
    REQUIRE(zv.has_value());
    REQUIRE(t2i.has_value());
    CHECK((zv->value - *t2i * *t2i).abs() < tol);
}
