#pragma once
// Symmetry-group combinatorics for the quasihomogeneous singularity
// x^4 + y^4 + z^2 with its maximal group of diagonal symmetries:
// sector gradings, narrowness, line-bundle selection rules, the state-space
// pairings of both theories, and the linear change of variables that
// identifies them.

#include <array>
#include <string>
#include <vector>

#include "cylg/qext.hpp"
#include "cylg/rational.hpp"

namespace cylg {

// Element rho1^a rho2^b rho3^c of Z4 x Z4 x Z2, where rho_k multiplies the
// k-th coordinate by exp(2*pi*i*q_k) and the weights are q = (1/4, 1/4, 1/2).
struct GroupElemE7 {
    int a = 0;  // mod 4
    int b = 0;  // mod 4
    int c = 0;  // mod 2

    GroupElemE7() = default;
    GroupElemE7(int a_, int b_, int c_);

    static GroupElemE7 identity() { return {}; }
    static GroupElemE7 rho1() { return {1, 0, 0}; }
    static GroupElemE7 rho2() { return {0, 1, 0}; }
    static GroupElemE7 rho3() { return {0, 0, 1}; }
    // The exponential grading element rho1*rho2*rho3 (acts by the weights).
    static GroupElemE7 grading_element() { return {1, 1, 1}; }

    GroupElemE7 operator*(const GroupElemE7& o) const;
    GroupElemE7 inverse() const;
    GroupElemE7 pow(int n) const;

    bool operator==(const GroupElemE7& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator!=(const GroupElemE7& o) const { return !(*this == o); }
    bool operator<(const GroupElemE7& o) const;

    // Phases (a/4, b/4, c/2), each in [0,1).
    std::array<Rat, 3> theta() const;
    bool is_identity() const { return a == 0 && b == 0 && c == 0; }
    std::string to_string() const;  // e.g. "r1^2*r2*r3"
};

// Weights (1/4, 1/4, 1/2) of x^4 + y^4 + z^2.
std::array<Rat, 3> e7_weights();
// Common denominator d = 4 of the weights (the order of the grading element).
int e7_exponent();
// Central charge sum_k (1 - 2 q_k) = 1.
Rat e7_central_charge();

struct SectorInfo {
    GroupElemE7 h;
    bool narrow = false;     // no coordinate fixed by h
    int fixed_dim = 0;       // number of coordinates with theta_k = 0
    Rat iota;                // degree shift sum_k (theta_k - q_k)
    Rat deg_w;               // fixed_dim + 2*iota
    std::array<Rat, 3> ik;   // fractional part of (theta_k - q_k)
};
SectorInfo sector_info(const GroupElemE7& h);

// All 32 group elements, ordered lexicographically by (a, b, c).
std::vector<GroupElemE7> all_group_elements();

// The nine narrow sectors rho1^a rho2^b rho3 with 1 <= a, b <= 3, ordered by
// (a, b); index 0 is the unit sector (a = b = 1).
std::vector<GroupElemE7> narrow_basis();
// Index of h in narrow_basis(), or -1 if h is not one of the nine sectors.
int narrow_index(const GroupElemE7& h);

struct SelectionResult {
    std::array<Rat, 3> degree;  // per-coordinate line bundle degree
    bool admissible = false;    // all three degrees integral
};
// Degrees deg_k = q_k*(2g - 2 + n) - sum_i theta_k(h_i); a moduli problem is
// admissible only if every degree is an integer.
SelectionResult selection_linebundle(int genus, const std::vector<GroupElemE7>& hs);

// Virtual dimension 2*((chat - 3)(1 - g) + n - sum_i iota(h_i)) with chat = 1.
Rat degree_axiom_dim(int genus, const std::vector<GroupElemE7>& hs);

struct PairingSpec {
    std::vector<std::string> labels;
    std::vector<std::vector<QExt>> eta;
    std::vector<std::vector<QExt>> eta_inv;

    int dim() const { return static_cast<int>(labels.size()); }
    bool is_symmetric() const;
    // eta * eta_inv == identity, exactly.
    bool inverse_checks() const;
};

// Nine-sector pairing: <phi_h1, phi_h2> = 1 iff h1 = h2^{-1}.
PairingSpec pairing_e7();
// Nine-class orbifold pairing in the coordinate order t0..t8:
// t0 unit, t1..t3 first tower, t4..t6 second tower, t7 third tower, t8 divisor.
PairingSpec pairing_p442();

// Exponent z(h) of the equivariant factor exp(-s0)^{z(h)} in the extended
// pairing: the number of coordinates fixed by h.
int pairing_twist_exponent(const GroupElemE7& h);

// Coordinate labels: nine FJRW coordinates "t11".."t33" (row-major in (a,b)),
// and nine orbifold coordinates "t0".."t8".
std::vector<std::string> e7_labels();
std::vector<std::string> p442_labels();

// The 9x9 matrix M over Q(i, sqrt2) of the linear change of variables: the
// nine orbifold coordinates (t0..t8) expressed in the nine FJRW coordinates,
// cov_matrix()[r][c] = coefficient of the c-th FJRW coordinate in t_r.
// Rows are ordered t0..t8 (t8 pairs with t0), columns as in e7_labels().
std::vector<std::vector<QExt>> cov_matrix();

// Entrywise M^T * eta_P442 * M - eta_E7; the change of variables identifies
// the two pairings iff this is the zero matrix. The t8-row of M pairs against
// the t0-row through eta(t0, t8) = 1.
std::vector<std::vector<QExt>> cov_pairing_residual();
bool cov_check();

// CSV table of all 32 sectors: h, theta1..theta3, iota, deg_w, narrow.
std::string sector_table_csv();

}  // namespace cylg
