#include "cylg/theta_series.hpp"

#include "cylg/linalg.hpp"

namespace cylg {

QSeries theta_qexp(int p, int argpower, std::int64_t order) {
    if (p < 2 || p > 4) throw std::invalid_argument("theta_qexp: p must be 2, 3 or 4");
    if (argpower < 1) throw std::invalid_argument("theta_qexp: argpower must be >= 1");
    // Work on the q^(1/8) grid (finest needed: theta2 exponents m(2k+1)^2/8)
    // and normalize down afterwards.
    const int den = 8;
    QSeries s(order, den);
    const std::int64_t ulim = s.ulimit();
    if (p == 2) {
        for (std::int64_t k = 0;; ++k) {
            std::int64_t ue = static_cast<std::int64_t>(argpower) * (2 * k + 1) * (2 * k + 1);
            if (ue >= ulim) break;
            s.add_u(ue, 2);
        }
    } else {
        s.set_u(0, 1);
        for (std::int64_t k = 1;; ++k) {
            std::int64_t ue = static_cast<std::int64_t>(argpower) * 4 * k * k;  // m k^2/2 in 1/8 units
            if (ue >= ulim) break;
            s.add_u(ue, (p == 4 && (k % 2)) ? -2 : 2);
        }
    }
    s.normalize_grid();
    return s;
}

QSeries eisenstein_f(int argpower, std::int64_t order) {
    QSeries s(order, 1);
    s.set_u(0, 1);
    for (std::int64_t n = 1; n * argpower < order; ++n)
        s.set_u(n * argpower, Rat(-24) * sigma1(n));
    return s;
}

ModularFunctionSet xyzw_qexp(std::int64_t order) {
    ModularFunctionSet m;
    m.order = order;
    QSeries t38 = theta_qexp(3, 8, order);
    QSeries t28 = theta_qexp(2, 8, order);
    QSeries t24 = theta_qexp(2, 4, order);
    m.x = (t38 * t38).truncated(order);
    m.y = (t28 * t28).truncated(order);
    m.z = (t24 * t24).truncated(order);
    QSeries f4 = eisenstein_f(4, order);
    QSeries f8 = eisenstein_f(8, order);
    QSeries f16 = eisenstein_f(16, order);
    m.w = (f4 - f8.scale(2) + f16.scale(4)).scale(rat(1, 3));
    return m;
}

OdeResiduals ode_residuals(std::int64_t order) {
    ModularFunctionSet m = xyzw_qexp(order);
    const QSeries &x = m.x, &y = m.y, &w = m.w;
    QSeries x2 = x * x, y2 = y * y;
    OdeResiduals r;
    r.r1 = (x.qddq() - x * (y2.scale(2) - x2 + w)).truncated(order);
    r.r2 = (y.qddq() - y * (x2.scale(2) - y2 + w)).truncated(order);
    r.r3 = (w.qddq() - (w * w - x2 * x2)).truncated(order);
    return r;
}

Result<MultiPoly<Rat>> fit_ode_rhs(const QSeries& target, int weighted_degree, std::int64_t order) {
    ModularFunctionSet m = xyzw_qexp(order);
    // Basis monomials x^a y^b z^c w^e, weight a+b+c+2e <= d, c <= 1.
    struct Mono {
        int a, b, c, e;
    };
    std::vector<Mono> basis;
    for (int a = 0; a <= weighted_degree; ++a)
        for (int b = 0; a + b <= weighted_degree; ++b)
            for (int c = 0; c <= 1 && a + b + c <= weighted_degree; ++c)
                for (int e = 0; a + b + c + 2 * e <= weighted_degree; ++e)
                    basis.push_back({a, b, c, e});

    std::vector<QSeries> cols;
    cols.reserve(basis.size());
    for (const auto& mo : basis) {
        QSeries s = QSeries::constant(1).truncated(order);
        for (int k = 0; k < mo.a; ++k) s = s * m.x;
        for (int k = 0; k < mo.b; ++k) s = s * m.y;
        for (int k = 0; k < mo.c; ++k) s = s * m.z;
        for (int k = 0; k < mo.e; ++k) s = s * m.w;
        cols.push_back(s.truncated(order));
    }

    // Equations indexed by u-exponents on the common grid (z brings den 2...
    // after normalization everything here is integer-grid, but stay general).
    int den = 1;
    for (const auto& c : cols) den = static_cast<int>(std::lcm(den, c.den()));
    den = static_cast<int>(std::lcm(den, target.den()));
    std::int64_t ulim = order * den;

    std::vector<std::vector<Rat>> A;
    std::vector<Rat> rhs;
    for (std::int64_t ue = 0; ue < ulim; ++ue) {
        std::vector<Rat> row(basis.size());
        bool nonzero = false;
        for (size_t j = 0; j < cols.size(); ++j) {
            row[j] = cols[j].coeff_q(ue, den);
            if (row[j] != 0) nonzero = true;
        }
        Rat t = target.coeff_q(ue, den);
        if (!nonzero && t == 0) continue;
        A.push_back(std::move(row));
        rhs.push_back(t);
    }
    auto sol = solve_linear_exact(std::move(A), std::move(rhs));
    if (!sol) return Result<MultiPoly<Rat>>::fail(sol.err, sol.detail);
    MultiPoly<Rat> poly(4);
    for (size_t j = 0; j < basis.size(); ++j)
        poly.set({basis[j].a, basis[j].b, basis[j].c, basis[j].e}, (*sol)[j]);
    return Result<MultiPoly<Rat>>::ok(std::move(poly));
}

}  // namespace cylg
