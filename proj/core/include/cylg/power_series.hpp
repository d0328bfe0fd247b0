#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "cylg/errors.hpp"
#include "cylg/ring.hpp"

namespace cylg {

// Truncated power series in one variable q.  Exponents live on the grid
// (1/den)Z for den >= 1: internally integer exponents of u with q = u^den
// (den = 2 covers the half-integer theta grids, den = 8 the finest theta
// exponent lattice).  `ulimit` is the truncation bound in u-units:
// coefficients are certified for u-exponent < ulimit.  A default-constructed
// series is the exact zero (infinite order).
template <typename R>
class PowerSeries {
  public:
    static constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

    PowerSeries() = default;
    explicit PowerSeries(std::int64_t qorder, int den = 1) : den_(den) {
        if (den < 1) throw std::invalid_argument("PowerSeries: den must be >= 1");
        ulimit_ = qorder >= kInf / (den + 1) ? kInf : qorder * den;
    }

    static PowerSeries constant(R c) {
        PowerSeries s;
        s.set_u(0, std::move(c));
        return s;
    }
    // c * q^(num/den2), certified below qorder.
    static PowerSeries monomial(R c, std::int64_t num, int den2, std::int64_t qorder = kInf / 2) {
        PowerSeries s(qorder, den2);
        s.set_u(num, std::move(c));
        return s;
    }

    int den() const { return den_; }
    std::int64_t ulimit() const { return ulimit_; }
    std::int64_t qorder_floor() const { return ulimit_ >= kInf ? kInf : ulimit_ / den_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::map<std::int64_t, R>& uterms() const { return terms_; }

    // Coefficient of q^(num/den2); zero if the exponent is off-grid.
    R coeff_q(std::int64_t num, int den2 = 1) const {
        if ((num * den_) % den2 != 0) return R{};
        auto it = terms_.find(num * den_ / den2);
        return it == terms_.end() ? R{} : it->second;
    }

    void set_u(std::int64_t ue, R c) {
        if (ue >= ulimit_) return;
        if (ring_is_zero(c)) terms_.erase(ue);
        else terms_[ue] = std::move(c);
    }
    void add_u(std::int64_t ue, const R& c) {
        if (ue >= ulimit_ || ring_is_zero(c)) return;
        auto it = terms_.find(ue);
        if (it == terms_.end()) {
            terms_.emplace(ue, c);
        } else {
            it->second = it->second + c;
            if (ring_is_zero(it->second)) terms_.erase(it);
        }
    }
    void set_q(std::int64_t num, int den2, R c) {
        if ((num * den_) % den2 != 0) throw std::invalid_argument("PowerSeries::set_q: exponent off grid");
        set_u(num * den_ / den2, std::move(c));
    }

    std::int64_t valuation_u() const { return terms_.empty() ? ulimit_ : terms_.begin()->first; }

    PowerSeries shifted_u(std::int64_t delta) const {  // multiply by u^delta
        PowerSeries r;
        r.den_ = den_;
        r.ulimit_ = ulimit_ >= kInf ? kInf : ulimit_ + delta;
        for (const auto& [e, c] : terms_) {
            if (e + delta < 0) throw std::invalid_argument("PowerSeries::shifted_u: negative exponent");
            r.terms_.emplace(e + delta, c);
        }
        return r;
    }

    PowerSeries widened(int factor) const {  // refine grid: den -> den * factor
        if (factor == 1) return *this;
        PowerSeries r;
        r.den_ = den_ * factor;
        r.ulimit_ = ulimit_ >= kInf ? kInf : ulimit_ * factor;
        for (const auto& [e, c] : terms_) r.terms_.emplace(e * factor, c);
        return r;
    }
    void normalize_grid() {  // divide out the gcd of den and all exponents
        if (den_ == 1) return;
        std::int64_t g = den_;
        for (const auto& [e, c] : terms_) {
            g = std::gcd(g, e);
            if (g == 1) return;
        }
        if (terms_.empty()) g = den_;
        std::map<std::int64_t, R> nt;
        for (auto& [e, c] : terms_) nt.emplace(e / g, std::move(c));
        terms_ = std::move(nt);
        den_ = static_cast<int>(den_ / g);
        if (ulimit_ < kInf) ulimit_ = (ulimit_ + g - 1) / g;
    }

    friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) { return addsub(a, b, false); }
    friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) { return addsub(a, b, true); }

    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
        if (a.den_ != b.den_) {
            int l = static_cast<int>(std::lcm(a.den_, b.den_));
            return a.widened(l / a.den_) * b.widened(l / b.den_);
        }
        PowerSeries r;
        r.den_ = a.den_;
        // Error terms start at min(ulimit_a + val_b, ulimit_b + val_a).
        std::int64_t la = a.ulimit_ >= kInf ? kInf : a.ulimit_ + b.valuation_u();
        std::int64_t lb = b.ulimit_ >= kInf ? kInf : b.ulimit_ + a.valuation_u();
        r.ulimit_ = std::min(std::min(la, lb), kInf);
        for (const auto& [ea, ca] : a.terms_) {
            if (ea >= r.ulimit_) break;
            for (const auto& [eb, cb] : b.terms_) {
                if (ea + eb >= r.ulimit_) break;
                r.add_u(ea + eb, ca * cb);
            }
        }
        r.normalize_grid();
        return r;
    }

    PowerSeries& operator+=(const PowerSeries& b) { return *this = *this + b; }
    PowerSeries& operator-=(const PowerSeries& b) { return *this = *this - b; }
    PowerSeries& operator*=(const PowerSeries& b) { return *this = *this * b; }

    PowerSeries operator-() const { return scale(Rat(-1)); }

    friend PowerSeries operator*(const R& s, const PowerSeries& a) {
        PowerSeries r;
        r.den_ = a.den_;
        r.ulimit_ = a.ulimit_;
        for (const auto& [e, c] : a.terms_) r.set_u(e, s * c);
        return r;
    }

    PowerSeries scale(const Rat& s) const {
        PowerSeries r;
        r.den_ = den_;
        r.ulimit_ = ulimit_;
        if (s == 0) return r;
        for (const auto& [e, c] : terms_) r.set_u(e, ring_scale(c, s));
        return r;
    }

    PowerSeries truncated(std::int64_t qorder) const {
        PowerSeries r = *this;
        std::int64_t ul = qorder >= kInf / 2 ? kInf : qorder * den_;
        if (ul < r.ulimit_) {
            r.ulimit_ = ul;
            r.terms_.erase(r.terms_.lower_bound(ul), r.terms_.end());
        }
        return r;
    }

    // q d/dq: coefficient at q-exponent e is multiplied by e.
    PowerSeries qddq() const {
        PowerSeries r;
        r.den_ = den_;
        r.ulimit_ = ulimit_;
        for (const auto& [e, c] : terms_) r.set_u(e, ring_scale(c, Rat(e, den_)));
        return r;
    }

    bool operator==(const PowerSeries& o) const {
        PowerSeries a = *this, b = o;
        a.normalize_grid();
        b.normalize_grid();
        if (a.den_ != b.den_) {
            int l = static_cast<int>(std::lcm(a.den_, b.den_));
            a = a.widened(l / a.den_);
            b = b.widened(l / b.den_);
        }
        return a.terms_ == b.terms_;  // value comparison; truncations may differ
    }

    std::string to_string(size_t max_terms = 12) const {
        std::string out;
        size_t k = 0;
        for (const auto& [e, c] : terms_) {
            if (k++ >= max_terms) {
                out += " + ...";
                break;
            }
            if (!out.empty()) out += " + ";
            out += "(" + ring_to_string(c) + ")q^";
            if (den_ == 1) out += std::to_string(e);
            else out += "(" + std::to_string(e) + "/" + std::to_string(den_) + ")";
        }
        return out.empty() ? "0" : out;
    }

  private:
    static PowerSeries addsub(const PowerSeries& a, const PowerSeries& b, bool sub) {
        if (a.den_ != b.den_) {
            int l = static_cast<int>(std::lcm(a.den_, b.den_));
            return addsub(a.widened(l / a.den_), b.widened(l / b.den_), sub);
        }
        PowerSeries r;
        r.den_ = a.den_;
        r.ulimit_ = std::min(a.ulimit_, b.ulimit_);
        for (const auto& [e, c] : a.terms_) r.add_u(e, c);
        for (const auto& [e, c] : b.terms_) r.add_u(e, sub ? ring_scale(c, Rat(-1)) : c);
        r.normalize_grid();
        return r;
    }

    int den_ = 1;
    std::int64_t ulimit_ = kInf;
    std::map<std::int64_t, R> terms_;
};

namespace ps_detail {
template <typename R>
PowerSeries<R> from_dense(const std::vector<R>& c, std::int64_t n_max, int den) {
    PowerSeries<R> res(den == 1 ? n_max : (n_max + 1) / 2, den);
    for (std::int64_t n = 0; n < n_max; ++n)
        if (!ring_is_zero(c[static_cast<size_t>(n)])) res.set_u(n, c[static_cast<size_t>(n)]);
    return res;
}
constexpr std::int64_t kDenseCap = 1 << 20;
}  // namespace ps_detail

// exp of a series with zero constant term, via n E_n = sum_k (k a_k) E_{n-k}.
template <typename R>
PowerSeries<R> ps_exp(const PowerSeries<R>& a) {
    if (!ring_is_zero(a.coeff_q(0))) throw std::invalid_argument("ps_exp: nonzero constant term");
    if (a.is_zero() && a.ulimit() >= PowerSeries<R>::kInf)
        return PowerSeries<R>::constant(RingOne<R>::get());
    std::int64_t L = std::min<std::int64_t>(a.ulimit(), ps_detail::kDenseCap);
    std::vector<R> ec(static_cast<size_t>(std::max<std::int64_t>(L, 1)), R{});
    ec[0] = RingOne<R>::get();
    for (std::int64_t n = 1; n < L; ++n) {
        R acc{};
        bool any = false;
        for (const auto& [k, ak] : a.uterms()) {
            if (k < 1 || k > n) continue;
            R term = ring_scale(ak, Rat(k)) * ec[static_cast<size_t>(n - k)];
            acc = any ? acc + term : term;
            any = true;
        }
        if (any) ec[static_cast<size_t>(n)] = ring_scale(acc, Rat(1, n));
    }
    return ps_detail::from_dense(ec, L, a.den());
}

// 1/a for invertible constant term.
template <typename R>
PowerSeries<R> ps_invert(const PowerSeries<R>& a) {
    R a0 = a.coeff_q(0);
    if (ring_is_zero(a0)) throw std::invalid_argument("ps_invert: zero constant term");
    std::int64_t L = std::min<std::int64_t>(a.ulimit(), ps_detail::kDenseCap);
    R inv0 = ring_inv(a0);
    std::vector<R> g(static_cast<size_t>(std::max<std::int64_t>(L, 1)), R{});
    g[0] = inv0;
    for (std::int64_t n = 1; n < L; ++n) {
        R acc{};
        bool any = false;
        for (const auto& [k, ak] : a.uterms()) {
            if (k < 1 || k > n) continue;
            R term = ak * g[static_cast<size_t>(n - k)];
            acc = any ? acc + term : term;
            any = true;
        }
        if (any) g[static_cast<size_t>(n)] = ring_scale(inv0 * acc, Rat(-1));
    }
    return ps_detail::from_dense(g, L, a.den());
}

// f(g) with g(0) = 0; f on the integer grid.  Horner over f's exponents.
template <typename R>
PowerSeries<R> ps_compose(const PowerSeries<R>& f, const PowerSeries<R>& g) {
    if (f.den() != 1) throw std::invalid_argument("ps_compose: outer grid must be integer");
    if (!ring_is_zero(g.coeff_q(0))) throw std::invalid_argument("ps_compose: inner constant term nonzero");
    std::int64_t v = std::max<std::int64_t>(g.valuation_u(), 1);
    std::int64_t L =
        std::min(f.ulimit() >= PowerSeries<R>::kInf ? PowerSeries<R>::kInf : f.ulimit() * v, g.ulimit());
    std::vector<std::pair<std::int64_t, R>> fe(f.uterms().begin(), f.uterms().end());
    PowerSeries<R> acc;
    std::int64_t prev_e = -1;
    for (auto it = fe.rbegin(); it != fe.rend(); ++it) {
        if (prev_e >= 0)
            for (std::int64_t k = 0; k < prev_e - it->first; ++k) acc = acc * g;
        acc = acc + PowerSeries<R>::constant(it->second);
        prev_e = it->first;
    }
    for (std::int64_t k = 0; k < prev_e; ++k) acc = acc * g;
    return acc.truncated(L >= PowerSeries<R>::kInf ? PowerSeries<R>::kInf / 2 : L / g.den());
}

// Ring-trait hooks so series can themselves be polynomial coefficients.
template <typename R>
bool ring_is_zero(const PowerSeries<R>& s) {
    return s.is_zero();
}
template <typename R>
PowerSeries<R> ring_scale(const PowerSeries<R>& s, const Rat& r) {
    return s.scale(r);
}
template <typename R>
std::string ring_to_string(const PowerSeries<R>& s) {
    return s.to_string();
}
template <typename R>
struct RingOne<PowerSeries<R>> {
    static PowerSeries<R> get() { return PowerSeries<R>::constant(RingOne<R>::get()); }
};

inline BigComplex coeff_embed(const Rat& c, mpfr_prec_t prec) { return BigComplex(c, prec); }
inline BigComplex coeff_embed(const QExt& c, mpfr_prec_t prec) { return qext_to_bigcomplex(c, prec); }
inline BigComplex coeff_embed(const BigComplex& c, mpfr_prec_t prec) {
    (void)prec;
    return c;
}

struct PsEvalResult {
    BigComplex value;
    BigFloat tail_bound;
    PsEvalResult(BigComplex v, BigFloat t) : value(std::move(v)), tail_bound(std::move(t)) {}
};

// Evaluate a truncated series at |q0| < 1.  The tail is bounded by fitting a
// geometric majorant A*g^e (in u-units) to the observed coefficients: g is the
// largest per-step growth ratio seen, A the smallest constant covering all
// stored terms.  Fails if the majorant does not converge at |q0|.
template <typename R>
Result<PsEvalResult> ps_eval(const PowerSeries<R>& a, const BigComplex& q0, mpfr_prec_t prec) {
    BigFloat aq = q0.abs();
    if (!(aq < BigFloat(1, prec))) return Result<PsEvalResult>::fail(Err::BadInput, "|q0| >= 1");
    if (a.is_zero())
        return Result<PsEvalResult>::ok(PsEvalResult(BigComplex(prec), BigFloat(prec)));
    // u0 = q0^(1/den), principal branch.
    BigComplex u0 = a.den() == 1
                        ? q0
                        : bc_exp(ring_scale(bc_log(q0), Rat(1, a.den())));
    BigFloat au = u0.abs();

    BigComplex sum(prec);
    BigFloat A(prec);            // majorant constant
    BigFloat g(prec);            // growth per u-step
    std::int64_t prev_e = -1;
    BigFloat prev_mag(prec);
    for (const auto& [e, c] : a.uterms()) {
        BigComplex cc = coeff_embed(c, prec);
        sum += cc * bc_pow_si(u0, e);
        BigFloat mag = cc.abs();
        if (prev_e >= 0 && prev_mag.sign() > 0 && mag.sign() > 0) {
            // per-step ratio (|c_e|/|c_prev|)^(1/(e-prev)) >= r  <=>  |c_e| >= |c_prev| r^(e-prev)
            // track g as max over pairs of that root via log comparison
            BigFloat ratio = bf_log(mag / prev_mag) / BigFloat(static_cast<long>(e - prev_e), prec);
            if (g.is_zero() || ratio > g) g = ratio;
        }
        prev_e = e;
        prev_mag = mag;
    }
    BigFloat growth = g.is_zero() ? BigFloat(1, prec) : bf_exp(g);
    if (growth < BigFloat(1, prec)) growth = BigFloat(1, prec);
    // A = max |c_e| / growth^e
    for (const auto& [e, c] : a.uterms()) {
        BigFloat cand = coeff_embed(c, prec).abs() / bf_pow_si(growth, e);
        if (cand > A) A = cand;
    }
    BigFloat rho = growth * au;
    if (!(rho < BigFloat(1, prec)))
        return Result<PsEvalResult>::fail(Err::NonConvergent, "geometric majorant diverges at |q0|");
    std::int64_t L = std::min<std::int64_t>(a.ulimit(), PowerSeries<R>::kInf / 2);
    BigFloat tail = A * bf_pow_si(rho, static_cast<long>(std::min<std::int64_t>(L, 1 << 30)))
                    / (BigFloat(1, prec) - rho);
    return Result<PsEvalResult>::ok(PsEvalResult(sum, tail));
}

}  // namespace cylg
