#pragma once

#include "cylg/bigcomplex.hpp"
#include "cylg/errors.hpp"

namespace cylg {

// Numeric theta constants with the classical nome convention e^{i*pi*tau}:
//   theta3(tau) = 1 + 2 sum_{k>=1} e^{i pi k^2 tau},
//   theta2(tau) = 2 sum_{k>=0} e^{i pi (k+1/2)^2 tau},
//   theta4(tau) = 1 + 2 sum_{k>=1} (-1)^k e^{i pi k^2 tau}.
// Sums carry a Gaussian tail bound; the term count is derived from it.
Result<BigComplex> theta_value(int p, const BigComplex& tau, mpfr_prec_t prec);

// X_p(tau) = 2 (d/dtau) log theta_p(tau), same convention.
Result<BigComplex> theta_logderiv(int p, const BigComplex& tau, mpfr_prec_t prec);

// Gamma(3/4) through the arithmetic-geometric mean:
//   Gamma(1/4)^2 = 2 sqrt(2 pi) pi / AGM(1, sqrt 2),
//   Gamma(3/4)   = pi sqrt 2 / Gamma(1/4).
// Independent of mpfr's own gamma implementation.
BigFloat gamma34_agm(mpfr_prec_t prec);

// The constants of the modular/Cayley route.
struct NumericConstants {
    mpfr_prec_t prec;
    BigFloat gamma34;   // Gamma(3/4)
    BigFloat Theta;     // sqrt(2 pi) / Gamma(3/4)^2
    BigFloat K;         // sqrt(pi) / (sqrt(2) Gamma(3/4)^2) = Theta/2
    BigComplex kappa;   // sqrt(i pi / 2), principal branch
    BigComplex omega0;  // 2 K kappa = Theta * kappa
};
NumericConstants make_constants(mpfr_prec_t prec);

}  // namespace cylg
