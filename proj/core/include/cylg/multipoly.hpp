#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cylg/ring.hpp"

namespace cylg {

using ExpVec = std::vector<int>;

// Sparse multivariate polynomial over a coefficient ring R.  Terms are keyed
// by exponent vectors (one slot per variable); zero coefficients are never
// stored.  An optional total-degree bound makes arithmetic truncated: terms
// above the bound are dropped and the bound is carried to results.
template <typename R>
class MultiPoly {
  public:
    static constexpr int kNoBound = -1;

    MultiPoly() = default;
    explicit MultiPoly(size_t nvars, int degree_bound = kNoBound)
        : nvars_(nvars), bound_(degree_bound) {}

    size_t nvars() const { return nvars_; }
    int degree_bound() const { return bound_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::map<ExpVec, R>& terms() const { return terms_; }

    static MultiPoly variable(size_t nvars, size_t idx, int degree_bound = kNoBound) {
        MultiPoly p(nvars, degree_bound);
        ExpVec e(nvars, 0);
        e[idx] = 1;
        p.set(e, RingOne<R>::get());
        return p;
    }
    static MultiPoly constant(size_t nvars, R c, int degree_bound = kNoBound) {
        MultiPoly p(nvars, degree_bound);
        p.set(ExpVec(nvars, 0), std::move(c));
        return p;
    }

    static int total_degree(const ExpVec& e) {
        int d = 0;
        for (int x : e) d += x;
        return d;
    }

    void set(const ExpVec& e, R c) {
        check(e);
        if (bound_ != kNoBound && total_degree(e) > bound_) return;
        if (ring_is_zero(c)) terms_.erase(e);
        else terms_[e] = std::move(c);
    }
    void add(const ExpVec& e, const R& c) {
        check(e);
        if (bound_ != kNoBound && total_degree(e) > bound_) return;
        if (ring_is_zero(c)) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second = it->second + c;
            if (ring_is_zero(it->second)) terms_.erase(it);
        }
    }

    R coefficient(const ExpVec& e) const {
        check(e);
        auto it = terms_.find(e);
        return it == terms_.end() ? R{} : it->second;
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return addsub(a, b, false); }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return addsub(a, b, true); }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        if (a.nvars_ != b.nvars_) throw std::invalid_argument("MultiPoly: variable set mismatch");
        MultiPoly r(a.nvars_, merge_bound(a.bound_, b.bound_));
        ExpVec e(a.nvars_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                for (size_t i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
                if (r.bound_ != kNoBound && total_degree(e) > r.bound_) continue;
                r.add(e, ca * cb);
            }
        }
        return r;
    }

    MultiPoly& operator+=(const MultiPoly& b) { return *this = *this + b; }
    MultiPoly& operator-=(const MultiPoly& b) { return *this = *this - b; }
    MultiPoly& operator*=(const MultiPoly& b) { return *this = *this * b; }
    MultiPoly operator-() const { return scale(Rat(-1)); }

    MultiPoly scale(const Rat& s) const {
        MultiPoly r(nvars_, bound_);
        if (s == 0) return r;
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, ring_scale(c, s));
        return r;
    }
    MultiPoly scale_ring(const R& s) const {
        MultiPoly r(nvars_, bound_);
        for (const auto& [e, c] : terms_) r.set(e, s * c);
        return r;
    }

    MultiPoly partial(size_t var) const {
        MultiPoly r(nvars_, bound_ == kNoBound ? kNoBound : bound_ - 1);
        ExpVec e(nvars_);
        for (const auto& [ee, c] : terms_) {
            if (ee[var] == 0) continue;
            e = ee;
            e[var] -= 1;
            r.add(e, ring_scale(c, Rat(ee[var])));
        }
        return r;
    }

    // Map coefficients through a ring morphism (e.g. evaluate inner series).
    template <typename S, typename F>
    MultiPoly<S> map_coeff(F&& f, int new_bound = kNoBound) const {
        MultiPoly<S> r(nvars_, new_bound == kNoBound ? bound_ : new_bound);
        for (const auto& [e, c] : terms_) r.add(e, f(c));
        return r;
    }

    // Substitute every variable by the given polynomial (full substitution).
    MultiPoly substitute(const std::vector<MultiPoly>& images) const {
        if (images.size() != nvars_) throw std::invalid_argument("MultiPoly::substitute: image count");
        size_t out_vars = images.empty() ? nvars_ : images[0].nvars();
        int out_bound = bound_;
        MultiPoly r(out_vars, out_bound);
        for (const auto& [e, c] : terms_) {
            MultiPoly term = MultiPoly::constant(out_vars, c, out_bound);
            for (size_t i = 0; i < nvars_; ++i)
                for (int k = 0; k < e[i]; ++k) term = term * images[i];
            r = r + term;
        }
        return r;
    }

    // Full evaluation: every variable gets a ring value.
    R eval(const std::vector<R>& values) const {
        if (values.size() != nvars_) throw std::invalid_argument("MultiPoly::eval: value count");
        R acc{};
        bool any = false;
        for (const auto& [e, c] : terms_) {
            R term = c;
            for (size_t i = 0; i < nvars_; ++i)
                for (int k = 0; k < e[i]; ++k) term = term * values[i];
            acc = any ? acc + term : term;
            any = true;
        }
        return any ? acc : R{};
    }

    // Set one variable to zero (cheap specialization of substitute).
    MultiPoly kill_var(size_t var) const {
        MultiPoly r(nvars_, bound_);
        for (const auto& [e, c] : terms_)
            if (e[var] == 0) r.terms_.emplace(e, c);
        return r;
    }

    MultiPoly with_bound(int b) const {
        MultiPoly r(nvars_, b);
        for (const auto& [e, c] : terms_)
            if (b == kNoBound || total_degree(e) <= b) r.terms_.emplace(e, c);
        return r;
    }

    bool operator==(const MultiPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

    std::string to_string(const std::vector<std::string>& names = {}) const {
        std::string out;
        for (const auto& [e, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += "(" + ring_to_string(c) + ")";
            for (size_t i = 0; i < nvars_; ++i) {
                if (e[i] == 0) continue;
                out += names.empty() ? ("*v" + std::to_string(i)) : ("*" + names[i]);
                if (e[i] > 1) out += "^" + std::to_string(e[i]);
            }
        }
        return out.empty() ? "0" : out;
    }

  private:
    static int merge_bound(int a, int b) {
        if (a == kNoBound) return b;
        if (b == kNoBound) return a;
        return std::min(a, b);
    }
    static MultiPoly addsub(const MultiPoly& a, const MultiPoly& b, bool sub) {
        if (a.nvars_ != b.nvars_) throw std::invalid_argument("MultiPoly: variable set mismatch");
        MultiPoly r(a.nvars_, merge_bound(a.bound_, b.bound_));
        for (const auto& [e, c] : a.terms_) r.add(e, c);
        for (const auto& [e, c] : b.terms_) r.add(e, sub ? ring_scale(c, Rat(-1)) : c);
        return r;
    }
    void check(const ExpVec& e) const {
        if (e.size() != nvars_) throw std::invalid_argument("MultiPoly: exponent vector length");
    }

    size_t nvars_ = 0;
    int bound_ = kNoBound;
    std::map<ExpVec, R> terms_;
};

// Ring hooks so a MultiPoly can itself serve as a coefficient ring (nested
// polynomial rings, e.g. t-polynomials whose coefficients are x,y,z,w
// polynomials).
template <typename R>
inline bool ring_is_zero(const MultiPoly<R>& p) {
    return p.is_zero();
}
template <typename R>
inline MultiPoly<R> ring_scale(const MultiPoly<R>& p, const Rat& s) {
    return p.scale(s);
}
template <typename R>
inline std::string ring_to_string(const MultiPoly<R>& p) {
    return p.to_string();
}

}  // namespace cylg
