#pragma once
// Re-expansion of the orbifold potential around an interior point of the
// upper half-plane.  A fractional-linear change of the divisor coordinate
// (an SL(2,C) element acting on the four coefficient functions x, y, z, w)
// turns the q-series data into convergent Taylor series; at the distinguished
// point the Taylor coefficients are exact elements of Q(sqrt2) and the
// transformed potential, after a linear change of the primary variables,
// reproduces the nine-sector singularity-side fixture with rational
// coefficients.  This header exposes the numeric Taylor engine, exact
// recognition of its coefficients, the scaling and fractional-linear actions
// on the potential, and the assembled end-to-end pipeline.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cylg/bigcomplex.hpp"
#include "cylg/errors.hpp"
#include "cylg/potential.hpp"
#include "cylg/qext.hpp"
#include "cylg/theta_numeric.hpp"

namespace cylg {

// A matrix (a b; c d) acting on the divisor coordinate by
// t -> (a t + b) / (c t + d) with the weight factors described below.
struct Sl2Element {
    BigComplex a, b, c, d;
    BigComplex det() const { return a * d - b * c; }
};

// The matrix conjugating the orbifold frame into the singularity frame,
//   ( 1/(2 Theta)   -pi Theta / 2 )
//   ( 1/(pi Theta)       Theta    )   with Theta = sqrt(2 pi) / Gamma(3/4)^2.
Sl2Element cylg_matrix(const NumericConstants& nc);

// Taylor data of (x, y, z, w) around tau = 0 after recentering the divisor
// coordinate at (tau0, omega0):
//   x_c(tau) = [2 i omega0 Im(tau0) / (km - tau)] * kappa * x(q(M(tau)))
//   w_c(tau) = [2 i omega0 Im(tau0)]^2 / (km - tau)^2 * kappa^2 * w(q(M(tau)))
//              + 1 / (km - tau)
// with km = 2 i omega0^2 Im(tau0), M(tau) = (km tau0 - conj(tau0) tau)/(km - tau),
// q(s) = exp(kappa^2 s), kappa^2 = i pi / 2.  (y_c, z_c like x_c.)
// `bare` holds the undressed compositions x(q(M(tau))) etc.; `coeffs` holds
// the dressed series above.  Index order: 0 = x, 1 = y, 2 = z, 3 = w.
struct CayleyExpansion {
    BigComplex tau0, omega0;
    mpfr_prec_t prec = 0;          // working precision of the coefficients
    int n_coeffs = 0;              // Taylor order (coefficients 0 .. n_coeffs-1)
    std::array<std::vector<BigComplex>, 4> coeffs;
    std::array<std::vector<BigComplex>, 4> bare;
    // Filled by cayley_rationalize: exact values where recognition succeeded.
    std::array<std::vector<std::optional<QExt>>, 4> exact;
    bool has_exact = false;
};

// Numeric Taylor expansion: sums the q-series of (x, y, z, w) against
// exp-of-polynomial factors obtained from the Moebius recentering, then
// applies the weight prefactors.  The truncation length of the q-series is
// chosen from a rigorous tail bound at the requested precision; if the bound
// cannot be met (n_coeffs too large for the precision, or tau0 too close to
// the real axis) the call fails with NonConvergent.
// pre: Im(tau0) > 0, omega0 != 0, n_coeffs >= 1, prec >= 128.
Result<CayleyExpansion> cayley_taylor(const BigComplex& tau0, const BigComplex& omega0,
                                      int n_coeffs, mpfr_prec_t prec);

// Exact recognition of the Taylor coefficients over Q(i, sqrt2).  The same
// expansion must be supplied at two different precisions; a coefficient is
// accepted only if both fits agree.  Returns a copy of `hi` with the `exact`
// slots filled; coefficients that fail recognition stay numeric (their slot
// is left empty) and are counted in the report of the downstream pipeline.
Result<CayleyExpansion> cayley_rationalize(const CayleyExpansion& lo,
                                           const CayleyExpansion& hi,
                                           const mpz_class& max_den = mpz_class("1000000000000000"));

// Exact Taylor data of the four coefficient functions in one divisor variable.
struct XyzwTaylor {
    std::vector<QExt> x, y, z, w;
};

// The scaling action (x,y,z,w)(t) -> (a x(a^2 t), a y(a^2 t), a z(a^2 t),
// a^2 w(a^2 t)): coefficient k of x, y, z picks up alpha^(2k+1), of w
// alpha^(2k+2).
XyzwTaylor sl2_scaling(const QExt& alpha, const XyzwTaylor& s);

// Numeric twin on a recentered expansion.  Scaling by alpha turns the
// expansion at (tau0, omega0) into the expansion at (tau0, omega0 / alpha):
// dressed x,y,z coefficients pick up alpha^(2k+1), dressed w alpha^(2k+2),
// bare compositions alpha^(2k).
CayleyExpansion sl2_scaling(const BigComplex& alpha, const CayleyExpansion& e);

// The fractional-linear action on the potential, at numeric coefficients.
// Both modes express A . F0 in the original nine primary variables with the
// divisor direction expanded in powers of t8:
//  - substitution: replace the coefficient functions by their dressed
//    recentered series (e.coeffs) inside the closed-form potential;
//  - formula: pairing block + c Q^2 / (2 (c t8 + d)) + (c t8 + d)^2 *
//    H(t_i / (c t8 + d); bare compositions), with Q the unit-direction
//    quadratic form.
// The two agree identically because H is linear in w with dH/dw = -Q^2/2 and
// the reduced part is scaling-homogeneous of grade 2; sl2_mode_discrepancy
// measures the agreement numerically.
enum class Sl2Mode { formula, substitution };
MultiPoly<BigComplex> sl2_on_potential(const Sl2Element& A, const CayleyExpansion& e,
                                       Sl2Mode mode, int t8_order);
BigFloat sl2_mode_discrepancy(const Sl2Element& A, const CayleyExpansion& e, int t8_order);

// The unit-direction quadratic form Q = (t2^2 + t5^2 + 2 t7^2 + 2 t1 t3
// + 2 t4 t6) / 8, as a polynomial in the nine primary variables.
MultiPoly<Rat> unit_quadratic_form();

// dH/dw of the closed-form potential (H = non-pairing part), exact.  Equals
// -Q^2 / 2; the identity is what makes the two sl2_on_potential modes agree.
MultiPoly<Rat> reduced_part_w_partial();

// The linear change of primary variables from the orbifold frame t0..t8 to
// the nine-sector singularity frame (indices 0..8 in row-major sector order
// s11, s12, s13, s21, s22, s23, s31, s32, s33):
//   t0 = s11,  t8 = s33,
//   t1 = i sqrt2 (s12 - s21),   t4 = sqrt2 (s12 + s21),
//   t2 = -s13 + sqrt2 s22 - s31, t5 = s13 + sqrt2 s22 + s31,
//   t3 = i sqrt2 (s23 - s32),   t6 = sqrt2 (s23 + s32),
//   t7 = i (s13 - s31).
std::vector<MultiPoly<QExt>> sector_frame_images();

// End-to-end pipeline: recentre at (i, 2 K kappa) at two precisions,
// recognize the Taylor coefficients over Q(sqrt2), substitute them into the
// closed-form potential, change to the sector frame, and compare against the
// singularity-side fixture.
struct CylgReport {
    Err err = Err::None;
    std::string detail;
    int coeff_ok = 0;           // Taylor coefficients recognized exactly
    int coeff_failed = 0;       // left numeric (forces the fallback path)
    bool used_fallback = false; // final coefficients rationalized numerically
    int window_checked = 0;     // monomials compared against the fixture
    int mismatches = 0;
    std::vector<std::string> mismatch_detail;
    int irrational_terms = 0;   // assembled coefficients outside Q
    MultiPoly<QExt> potential;  // assembled potential in the sector frame
    bool ok() const { return err == Err::None; }
};

struct CylgOptions {
    int t8_order = 9;           // series order in the divisor direction
    int degree = 4;             // total-degree cap in the sector variables
    mpfr_prec_t prec_lo = 256;
    mpfr_prec_t prec_hi = 384;
};

CylgReport cylg_pipeline(const CylgOptions& opt = {});

// The assembly step alone, over an arbitrary coefficient ring: substitute the
// given Taylor series of (x, y, z, w) in the divisor variable into the
// closed-form potential and change to the sector frame.  Monomials with
// sector-variable degree (t8 excluded) above `degree` or divisor order at or
// above `t8_order` are dropped.
template <typename R>
MultiPoly<R> assemble_sector_potential(const std::array<std::vector<R>, 4>& xyzw,
                                       int t8_order, int degree);

extern template MultiPoly<QExt> assemble_sector_potential<QExt>(
    const std::array<std::vector<QExt>, 4>&, int, int);
extern template MultiPoly<BigComplex> assemble_sector_potential<BigComplex>(
    const std::array<std::vector<BigComplex>, 4>&, int, int);

}  // namespace cylg
