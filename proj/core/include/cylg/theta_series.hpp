#pragma once

#include "cylg/errors.hpp"
#include "cylg/multipoly.hpp"
#include "cylg/power_series.hpp"

namespace cylg {

using QSeries = PowerSeries<Rat>;

// q-expansions of the Jacobi theta constants with half-exponent normalization:
//   theta2(q) = 2 sum q^{(k+1/2)^2/2},  theta3(q) = 1 + 2 sum q^{k^2/2},
//   theta4(q) = 1 + 2 sum (-1)^k q^{k^2/2}.
// theta_qexp(p, m, N) returns theta_p(q^m) mod q^N.
QSeries theta_qexp(int p, int argpower, std::int64_t order);

// f(q^m) = 1 - 24 sum sigma_1(n) q^{mn}  (weight-2 Eisenstein series).
QSeries eisenstein_f(int argpower, std::int64_t order);

// The four coefficient functions of the genus-zero orbifold potential:
//   x = theta3(q^8)^2, y = theta2(q^8)^2, z = theta2(q^4)^2,
//   w = (f(q^4) - 2 f(q^8) + 4 f(q^16)) / 3.
struct ModularFunctionSet {
    QSeries x, y, z, w;
    std::int64_t order;
};
ModularFunctionSet xyzw_qexp(std::int64_t order);

// Residuals of the candidate first-order system, with ' = q d/dq:
//   r1 = x' - x(2y^2 - x^2 + w)
//   r2 = y' - y(2x^2 - y^2 + w)   (as displayed; reported, not asserted)
//   r3 = w' - (w^2 - x^4)
struct OdeResiduals {
    QSeries r1, r2, r3;
    // Convenience: lowest q-exponent with a nonzero coefficient, or -1 if the
    // residual vanishes identically mod q^order.
    static std::int64_t first_nonzero(const QSeries& r) {
        return r.is_zero() ? -1 : r.valuation_u();
    }
};
OdeResiduals ode_residuals(std::int64_t order);

// Least-squares-free exact fit: express `target` as a polynomial in
// (x, y, z, w) with weighted degree <= d (weights 1,1,1,2) and z-exponent
// <= 1 (the relation z^2 = 4xy would otherwise make the fit non-unique).
// Variables in the returned MultiPoly are ordered (x, y, z, w).
Result<MultiPoly<Rat>> fit_ode_rhs(const QSeries& target, int weighted_degree, std::int64_t order);

// Names for printing fit results.
inline const std::vector<std::string>& xyzw_names() {
    static const std::vector<std::string> n = {"x", "y", "z", "w"};
    return n;
}

}  // namespace cylg
