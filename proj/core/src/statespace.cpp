#include "cylg/statespace.hpp"

#include <sstream>
#include <stdexcept>

#include "cylg/linalg.hpp"

namespace cylg {

namespace {
int mod(int v, int m) {
    int r = v % m;
    return r < 0 ? r + m : r;
}
}  // namespace

GroupElemE7::GroupElemE7(int a_, int b_, int c_) : a(mod(a_, 4)), b(mod(b_, 4)), c(mod(c_, 2)) {}

GroupElemE7 GroupElemE7::operator*(const GroupElemE7& o) const {
    return GroupElemE7(a + o.a, b + o.b, c + o.c);
}

GroupElemE7 GroupElemE7::inverse() const { return GroupElemE7(-a, -b, -c); }

GroupElemE7 GroupElemE7::pow(int n) const { return GroupElemE7(a * n, b * n, c * n); }

bool GroupElemE7::operator<(const GroupElemE7& o) const {
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    return c < o.c;
}

std::array<Rat, 3> GroupElemE7::theta() const { return {rat(a, 4), rat(b, 4), rat(c, 2)}; }

std::string GroupElemE7::to_string() const {
    if (is_identity()) return "id";
    std::ostringstream os;
    bool first = true;
    auto emit = [&](const char* gen, int e) {
        if (e == 0) return;
        if (!first) os << "*";
        os << gen;
        if (e > 1) os << "^" << e;
        first = false;
    };
    emit("r1", a);
    emit("r2", b);
    emit("r3", c);
    return os.str();
}

std::array<Rat, 3> e7_weights() { return {rat(1, 4), rat(1, 4), rat(1, 2)}; }

int e7_exponent() { return 4; }

Rat e7_central_charge() {
    Rat c = 0;
    for (const Rat& q : e7_weights()) c += 1 - 2 * q;
    return c;
}

SectorInfo sector_info(const GroupElemE7& h) {
    SectorInfo s;
    s.h = h;
    const auto th = h.theta();
    const auto qw = e7_weights();
    s.iota = 0;
    s.fixed_dim = 0;
    for (int k = 0; k < 3; ++k) {
        if (th[k] == 0) ++s.fixed_dim;
        s.iota += th[k] - qw[k];
        Rat f = th[k] - qw[k];
        // fractional part in [0,1)
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), f.get_num_mpz_t(), f.get_den_mpz_t());
        s.ik[k] = f - Rat(fl);
    }
    s.narrow = (s.fixed_dim == 0);
    s.deg_w = Rat(s.fixed_dim) + 2 * s.iota;
    return s;
}

std::vector<GroupElemE7> all_group_elements() {
    std::vector<GroupElemE7> out;
    out.reserve(32);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 2; ++c) out.push_back(GroupElemE7(a, b, c));
    return out;
}

std::vector<GroupElemE7> narrow_basis() {
    std::vector<GroupElemE7> out;
    out.reserve(9);
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b) out.push_back(GroupElemE7(a, b, 1));
    return out;
}

int narrow_index(const GroupElemE7& h) {
    if (h.c != 1 || h.a == 0 || h.b == 0) return -1;
    return (h.a - 1) * 3 + (h.b - 1);
}

SelectionResult selection_linebundle(int genus, const std::vector<GroupElemE7>& hs) {
    if (hs.size() < 3 && genus == 0)
        throw std::invalid_argument("selection_linebundle: need at least three insertions");
    SelectionResult r;
    const auto qw = e7_weights();
    const int n = static_cast<int>(hs.size());
    r.admissible = true;
    for (int k = 0; k < 3; ++k) {
        Rat d = qw[k] * (2 * genus - 2 + n);
        for (const auto& h : hs) d -= h.theta()[k];
        r.degree[k] = d;
        if (d.get_den() != 1) r.admissible = false;
    }
    return r;
}

Rat degree_axiom_dim(int genus, const std::vector<GroupElemE7>& hs) {
    Rat s = 0;
    for (const auto& h : hs) s += sector_info(h).iota;
    const Rat chat = e7_central_charge();
    return 2 * ((chat - 3) * (1 - genus) + Rat(static_cast<long>(hs.size())) - s);
}

bool PairingSpec::is_symmetric() const {
    const int n = dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
            if (!(eta[i][j] == eta[j][i])) return false;
    return true;
}

bool PairingSpec::inverse_checks() const {
    const int n = dim();
    auto prod = matrix_mul(eta, eta_inv);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!(prod[i][j] == QExt(i == j ? 1 : 0))) return false;
    return true;
}

PairingSpec pairing_e7() {
    PairingSpec p;
    p.labels = e7_labels();
    p.eta.assign(9, std::vector<QExt>(9, QExt(0)));
    const auto basis = narrow_basis();
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j)
            if (basis[j] == basis[i].inverse()) p.eta[i][j] = QExt(1);
    auto inv = matrix_inverse_exact(p.eta);
    p.eta_inv = *inv;
    return p;
}

PairingSpec pairing_p442() {
    PairingSpec p;
    p.labels = p442_labels();
    p.eta.assign(9, std::vector<QExt>(9, QExt(0)));
    auto set = [&](int i, int j, const Rat& v) {
        p.eta[i][j] = QExt(v);
        p.eta[j][i] = QExt(v);
    };
    set(0, 8, 1);          // unit against divisor
    set(1, 3, rat(1, 4));  // first tower, orders (4,4,2)
    set(2, 2, rat(1, 4));
    set(4, 6, rat(1, 4));
    set(5, 5, rat(1, 4));
    set(7, 7, rat(1, 2));
    auto inv = matrix_inverse_exact(p.eta);
    p.eta_inv = *inv;
    return p;
}

int pairing_twist_exponent(const GroupElemE7& h) { return sector_info(h).fixed_dim; }

std::vector<std::string> e7_labels() {
    std::vector<std::string> l;
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b) l.push_back("t" + std::to_string(a) + std::to_string(b));
    return l;
}

std::vector<std::string> p442_labels() {
    std::vector<std::string> l;
    for (int i = 0; i <= 8; ++i) l.push_back("t" + std::to_string(i));
    return l;
}

std::vector<std::vector<QExt>> cov_matrix() {
    // FJRW column order (a,b) row-major: 11,12,13,21,22,23,31,32,33 -> 0..8.
    auto col = [](int a, int b) { return (a - 1) * 3 + (b - 1); };
    std::vector<std::vector<QExt>> M(9, std::vector<QExt>(9, QExt(0)));
    const QExt is2 = QExt::i_sqrt2(), s2 = QExt::sqrt2(), iu = QExt::i(), one = QExt::one();
    // t0 = t~11
    M[0][col(1, 1)] = one;
    // t1 = i*sqrt2*(t~12 - t~21)
    M[1][col(1, 2)] = is2;
    M[1][col(2, 1)] = QExt(0) - is2;
    // t2 = -t~13 + sqrt2*t~22 - t~31
    M[2][col(1, 3)] = QExt(-1);
    M[2][col(2, 2)] = s2;
    M[2][col(3, 1)] = QExt(-1);
    // t3 = i*sqrt2*(t~23 - t~32)
    M[3][col(2, 3)] = is2;
    M[3][col(3, 2)] = QExt(0) - is2;
    // t4 = sqrt2*(t~12 + t~21)
    M[4][col(1, 2)] = s2;
    M[4][col(2, 1)] = s2;
    // t5 = t~13 + sqrt2*t~22 + t~31
    M[5][col(1, 3)] = one;
    M[5][col(2, 2)] = s2;
    M[5][col(3, 1)] = one;
    // t6 = sqrt2*(t~23 + t~32)
    M[6][col(2, 3)] = s2;
    M[6][col(3, 2)] = s2;
    // t7 = i*(t~13 - t~31)
    M[7][col(1, 3)] = iu;
    M[7][col(3, 1)] = QExt(0) - iu;
    // t8 = t~33
    M[8][col(3, 3)] = one;
    return M;
}

std::vector<std::vector<QExt>> cov_pairing_residual() {
    auto M = cov_matrix();
    auto Mt = matrix_transpose(M);
    auto lhs = matrix_mul(matrix_mul(Mt, pairing_p442().eta), M);
    auto rhs = pairing_e7().eta;
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) lhs[i][j] = lhs[i][j] - rhs[i][j];
    return lhs;
}

bool cov_check() {
    for (const auto& row : cov_pairing_residual())
        for (const auto& v : row)
            if (!v.is_zero()) return false;
    return true;
}

std::string sector_table_csv() {
    std::ostringstream os;
    os << "h,theta1,theta2,theta3,iota,deg_w,narrow\n";
    for (const auto& h : all_group_elements()) {
        SectorInfo s = sector_info(h);
        os << h.to_string();
        for (int k = 0; k < 3; ++k) os << "," << rat_to_string(s.h.theta()[k]);
        os << "," << rat_to_string(s.iota) << "," << rat_to_string(s.deg_w) << ","
           << (s.narrow ? "true" : "false") << "\n";
    }
    return os.str();
}

}  // namespace cylg
