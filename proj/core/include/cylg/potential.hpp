#pragma once
// The genus-zero orbifold potential of P^1_{4,4,2} in closed form (polynomial
// in nine primary variables with quasimodular q-series coefficients), its
// grading and WDVV checks, the nine-sector cubic-plus-series fixture on the
// singularity side, correlator extraction, and WDVV-based reconstruction of
// correlators from a small seed set.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "cylg/errors.hpp"
#include "cylg/multipoly.hpp"
#include "cylg/rational.hpp"
#include "cylg/theta_series.hpp"

namespace cylg {

// Inner coefficients: polynomials in the four generators (x, y, z, w).
using XyzwPoly = MultiPoly<Rat>;
// The closed-form potential: outer variables t0..t8, coefficients in (x,y,z,w).
using LayeredPotential = MultiPoly<XyzwPoly>;
// Instantiated potential: outer variables t0..t8, coefficients exact q-series.
using SeriesPotential = MultiPoly<QSeries>;

// The full closed-form potential. Variable order matches p442_labels():
// t0 unit, t1..t3 and t4..t6 the two order-4 twisted towers, t7 the order-2
// tower, t8 the divisor direction (the q-series coefficients are functions of
// q = e^{t8}).
const LayeredPotential& f0_p442_data();

// The pairing block: the terms containing t0 (the quadratic form against the
// unit direction plus t0^2 t8 / 2). Everything else forms the reduced part H.
bool is_pairing_block_term(const ExpVec& outer);

// Scaling grade of one closed-form monomial: (#t factors) - (#x,y,z factors)
// - 2*(#w factors). The reduced part H is graded with every monomial at
// grade 2; the pairing block is excluded (it does not scale).
int homogeneity_grade(const ExpVec& outer, const ExpVec& inner);

struct HomogeneityReport {
    int checked = 0;       // monomials of H examined
    int excluded = 0;      // pairing-block monomials skipped
    bool pass = false;     // every checked monomial has grade 2
    std::vector<std::string> violations;
};
HomogeneityReport homogeneity_check();

// Instantiate the closed-form potential with the exact q-series for
// (x, y, z, w) truncated mod q^order.
SeriesPotential build_f0_p442(int order);

// Partial derivative in the t-variables; var 8 additionally differentiates
// the q-series coefficients through q d/dq (divisor direction, q = e^{t8}).
SeriesPotential potential_partial(const SeriesPotential& f, int var);

// Third-derivative engine with caching plus WDVV residuals. The residual for
// (i,j,k,l) is sum_{p,q} F_ijp eta^{pq} F_qkl - F_ikp eta^{pq} F_qjl.
class WdvvEngine {
  public:
    explicit WdvvEngine(int order);
    // Same machinery over an arbitrary potential in the same nine variables
    // (e.g. deliberately perturbed input for negative controls).
    WdvvEngine(SeriesPotential f, int order);

    const SeriesPotential& third_partial(int i, int j, int k) const;
    // sum_{p,q} F_abp eta^{pq} F_qcd
    SeriesPotential pair_contraction(int a, int b, int c, int d) const;
    SeriesPotential residual(int i, int j, int k, int l) const;
    int order() const { return order_; }

  private:
    int order_;
    SeriesPotential f_;
    std::vector<std::vector<Rat>> eta_inv_;
    std::map<std::array<int, 3>, SeriesPotential> third_;
};

struct WdvvSweepReport {
    int order = 0;
    long quadruples = 0;   // ordered quadruples covered (9^4)
    long failures = 0;
    std::vector<std::array<int, 4>> failing;  // at most 32 recorded
    double seconds = 0.0;
};
// Check the residual for every ordered quadruple. Internally grouped by the
// 4-element multiset: the three pairings (ij|kl), (ik|jl), (il|jk) must agree.
WdvvSweepReport wdvv_sweep(int order, int jobs);

// Known blocks of the nine-sector potential on the singularity side, as a
// polynomial in the nine coordinates of e7_labels() (t33 = variable 8):
// the cubic block, the two quartic seeds, and the closed t33-series
// coefficients of t12*t21*t22, t13*t21^2, t12^2*t31, t12^2*t13, t21^2*t31.
MultiPoly<Rat> f0_e7_fixture();

// Correlator = monomial coefficient times |Aut| of the insertion multiset.
// Insertions index the potential's variables; values beyond the fixture's
// recorded blocks are reported as absent via the Result error.
Result<Rat> correlator_from_potential(const MultiPoly<Rat>& f, std::vector<int> insertions);

// The nonzero three-point values of the nine-sector theory (keys are sorted
// index triples into e7_labels()), extracted from the cubic block.
std::map<std::vector<int>, Rat> e7_three_point_block();
// The two nonzero psi-free four-point seeds with one top-sector insertion.
std::map<std::vector<int>, Rat> e7_four_point_seeds();

struct ReconstructReport {
    // reconstructed values for every admissible multiset of 4..max_points
    // non-unit insertions (zero-by-grading entries included as exact zeros)
    std::map<std::vector<int>, Rat> values;
    long equations = 0;
    Err err = Err::None;
    std::string detail;
    bool ok() const { return err == Err::None; }
};
// Determine all primary n-point values (4 <= n <= max_points) from the
// three-point block and the given four-point seeds by solving the coefficient
// equations of WDVV level by level, together with the invariance of all
// correlators under the sector relabeling (a,b) -> (b,a) induced by swapping
// the two degree-4 coordinates of the quartic. Every equation is kept:
// inconsistency (e.g. a corrupted seed, which breaks the relabeling symmetry)
// yields InconsistentSeeds, unresolvable unknowns yield Underdetermined.
ReconstructReport reconstruct_wdvv(const std::map<std::vector<int>, Rat>& three_point,
                                   const std::map<std::vector<int>, Rat>& four_point_seeds,
                                   int max_points);

}  // namespace cylg
