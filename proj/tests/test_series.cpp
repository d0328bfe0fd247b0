#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cylg/multipoly.hpp"
#include "cylg/power_series.hpp"
#include "cylg/serialize.hpp"

using namespace cylg;
using PS = PowerSeries<Rat>;

static PS geom(std::int64_t order) {  // 1 + q + q^2 + ...
    PS s(order);
    for (std::int64_t k = 0; k < order; ++k) s.set_q(k, 1, 1);
    return s;
}

TEST_CASE("series arithmetic and order bookkeeping") {
    PS one_plus(10);
    one_plus.set_q(0, 1, 1);
    one_plus.set_q(1, 1, 1);
    PS one_minus(10);
    one_minus.set_q(0, 1, 1);
    one_minus.set_q(1, 1, -1);
    PS prod = one_plus * one_minus;
    CHECK(prod.coeff_q(0) == 1);
    CHECK(prod.coeff_q(1) == 0);
    CHECK(prod.coeff_q(2) == -1);
    CHECK(prod.term_count() == 2);

    // (2q + 2q^9)^2 = 4q^2 + 8q^10 below q^12
    PS t(12);
    t.set_q(1, 1, 2);
    t.set_q(9, 1, 2);
    PS t2 = (t * t).truncated(12);
    CHECK(t2.coeff_q(2) == 4);
    CHECK(t2.coeff_q(10) == 8);
    CHECK(t2.term_count() == 2);

    PS a5(5), b9(9);
    a5.set_q(0, 1, 1);
    b9.set_q(0, 1, 1);
    CHECK((a5 * b9).qorder_floor() == 5);
    // valuation shift: q^3 * (order 5, val 0) is certified to order 8
    PS q3 = PS::monomial(1, 3, 1);
    CHECK((q3 * a5).qorder_floor() == 8);
}

TEST_CASE("half-integer grid and normalization") {
    // series with exponents 1/2, 9/2 (like theta2(q^4) up to scale)
    PS h(6, 2);
    h.set_q(1, 2, 2);
    h.set_q(9, 2, 2);
    CHECK(h.den() == 2);
    PS sq = h * h;
    CHECK(sq.den() == 1);  // squares land back on the integer grid
    CHECK(sq.coeff_q(1) == 4);
    CHECK(sq.coeff_q(5) == 8);
    // mixing grids widens automatically
    PS g(4, 1);
    g.set_q(1, 1, 3);
    PS s = h + g;
    CHECK(s.coeff_q(1, 2) == 2);
    CHECK(s.coeff_q(1, 1) == 3);
}

TEST_CASE("ps_exp basics and exp(log(1+q)) round trip") {
    PS q(4);
    q.set_q(1, 1, 1);
    PS e = ps_exp(q);
    CHECK(e.coeff_q(0) == 1);
    CHECK(e.coeff_q(1) == 1);
    CHECK(e.coeff_q(2) == rat(1, 2));
    CHECK(e.coeff_q(3) == rat(1, 6));

    CHECK(ps_exp(PS()) == PS::constant(1));

    const std::int64_t N = 24;
    PS log1p(N);
    for (std::int64_t k = 1; k < N; ++k) log1p.set_q(k, 1, rat((k % 2) ? 1 : -1, k));
    PS back = ps_exp(log1p);
    CHECK(back.coeff_q(0) == 1);
    CHECK(back.coeff_q(1) == 1);
    for (std::int64_t k = 2; k < N; ++k) CHECK(back.coeff_q(k) == 0);

    PS bad(4);
    bad.set_q(0, 1, 1);
    CHECK_THROWS(ps_exp(bad));
}

TEST_CASE("qddq rule and derivation property") {
    PS y(12);
    y.set_q(2, 1, 4);
    y.set_q(10, 1, 8);
    PS dy = y.qddq();
    CHECK(dy.coeff_q(2) == 8);
    CHECK(dy.coeff_q(10) == 80);
    CHECK(PS::constant(7).qddq().is_zero());
    // half-integer exponents scale by e/2 in q-units
    PS h(6, 2);
    h.set_q(1, 2, 2);
    CHECK(h.qddq().coeff_q(1, 2) == 1);

    PS a(16), b(16);
    a.set_q(1, 1, 3);
    a.set_q(4, 1, rat(-7, 2));
    b.set_q(2, 1, 5);
    b.set_q(3, 1, rat(1, 3));
    CHECK((a * b).qddq() == a.qddq() * b + a * b.qddq());
}

TEST_CASE("ps_invert and ps_compose against closed forms") {
    PS one_minus(20);
    one_minus.set_q(0, 1, 1);
    one_minus.set_q(1, 1, -1);
    CHECK(ps_invert(one_minus) == geom(20));

    // 1/(1-s) composed with s = q + q^2 gives Fibonacci numbers
    PS f = geom(12);
    PS g(12);
    g.set_q(1, 1, 1);
    g.set_q(2, 1, 1);
    PS fib = ps_compose(f, g);
    long expect[] = {1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144};
    for (int k = 0; k < 12; ++k) CHECK(fib.coeff_q(k) == expect[k]);
}

TEST_CASE("ps_eval: geometric series with certified tail") {
    const mpfr_prec_t P = 128;
    PS s = geom(64);
    auto r = ps_eval(s, BigComplex(rat(1, 2), P), P);
    REQUIRE(r.has_value());
    CHECK(bf_abs(r->value.re - BigFloat(2, P)) < BigFloat::pow2(-60, P));
    CHECK(r->tail_bound < BigFloat::pow2(-60, P));
    CHECK(ps_eval(PS(), BigComplex(rat(1, 2), P), P)->value.abs().is_zero());
    auto bad = ps_eval(s, BigComplex(2, P), P);
    CHECK(!bad.has_value());
}

TEST_CASE("MultiPoly ring axioms on sparse instances") {
    using MP = MultiPoly<Rat>;
    auto v = [](size_t i) { return MP::variable(4, i); };
    MP a = v(0) * v(0) + v(1).scale(rat(3, 2)) + MP::constant(4, rat(-1, 3));
    MP b = v(2) * v(1) + v(3);
    MP c = v(0) + v(3) * v(3);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK((a - a).is_zero());
}

TEST_CASE("MultiPoly partial, kill_var, coefficient") {
    using MP = MultiPoly<Rat>;
    const size_t n = 9;
    MP p(n);
    ExpVec e(n, 0);
    e[0] = 2;
    e[8] = 1;
    p.set(e, rat(1, 2));  // t0^2 t8 / 2
    MP dp = p.partial(0);
    ExpVec f(n, 0);
    f[0] = 1;
    f[8] = 1;
    CHECK(dp.coefficient(f) == 1);

    MP q(n);
    ExpVec g(n, 0);
    g[1] = 2;
    g[2] = 1;
    q.set(g, rat(1, 8));
    CHECK(q.kill_var(1).is_zero());
    CHECK(q.coefficient(g) == rat(1, 8));
    CHECK(q.coefficient(f) == 0);
}

TEST_CASE("MultiPoly substitution and chain-rule compatibility") {
    using MP = MultiPoly<Rat>;
    // p(t0,t1) = t0^2 t1 + t1^3; substitute t1 -> 2 t1 + t2 (t0 fixed)
    MP p(3);
    p.set({2, 1, 0}, 1);
    p.set({0, 3, 0}, 1);
    std::vector<MP> images = {MP::variable(3, 0), MP::variable(3, 1).scale(2) + MP::variable(3, 2),
                              MP::variable(3, 2)};
    MP sub = p.substitute(images);
    // partial w.r.t. t0 commutes with the substitution (t0 untouched)
    CHECK(sub.partial(0) == p.partial(0).substitute(images));

    // eval: p(1/2, 3, anything) = (1/4)*3 + 27
    CHECK(p.eval({rat(1, 2), rat(3), rat(0)}) == rat(3, 4) + 27);

    // degree bound truncates products
    MP bp = p.with_bound(3);
    MP t0 = MP::variable(3, 0, 3);
    CHECK((bp * t0).degree_bound() == 3);
    for (const auto& [ee, cc] : (bp * t0).terms()) CHECK(MP::total_degree(ee) <= 3);
}

TEST_CASE("MultiPoly over PowerSeries coefficients") {
    using MPS = MultiPoly<PS>;
    MPS p(2);
    PS s(8);
    s.set_q(1, 1, 2);
    p.set({1, 0}, s);
    p.set({0, 2}, PS::constant(1));
    MPS sq = p * p;
    PS c = sq.coefficient({2, 0});
    CHECK(c.coeff_q(2) == 4);
    // map_coeff: q d/dq on every coefficient
    MPS d = p.map_coeff<PS>([](const PS& x) { return x.qddq(); });
    CHECK(d.coefficient({1, 0}).coeff_q(1) == 2);
    CHECK(d.coefficient({0, 2}).is_zero());
}

TEST_CASE("series JSON round trip") {
    PowerSeries<QExt> s(10, 2);
    s.set_q(1, 2, QExt(rat(2)));
    s.set_q(3, 1, QExt(rat(0), rat(1, 4)));
    json j = ps_to_json(s);
    PowerSeries<QExt> back = ps_from_json(j);
    CHECK(back == s);
    CHECK(back.ulimit() == s.ulimit());

    MultiPoly<QExt> p(3);
    p.set({1, 0, 2}, QExt(rat(1, 3), 0, rat(-2), 0));
    json pj = mp_to_json(p, {"a", "b", "c"});
    CHECK(pj["terms"][0]["exps"] == json::array({1, 0, 2}));
}
