#pragma once

#include <mpfr.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "cylg/rational.hpp"

namespace cylg {

// RAII wrapper over an mpfr_t.  Every value carries its own precision (bits);
// binary operations compute at the larger of the two operand precisions with
// round-to-nearest.
class BigFloat {
  public:
    explicit BigFloat(mpfr_prec_t prec = 64) : prec_(prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    BigFloat(long n, mpfr_prec_t prec) : prec_(prec) { mpfr_init2(v_, prec); mpfr_set_si(v_, n, MPFR_RNDN); }
    BigFloat(const Rat& r, mpfr_prec_t prec) : prec_(prec) {
        mpfr_init2(v_, prec);
        mpfr_set_q(v_, r.get_mpq_t(), MPFR_RNDN);
    }
    BigFloat(const BigFloat& o) : prec_(o.prec_) { mpfr_init2(v_, prec_); mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigFloat(BigFloat&& o) noexcept : prec_(o.prec_) {
        mpfr_init2(v_, prec_);
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, o.prec_);
            prec_ = o.prec_;
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        mpfr_swap(v_, o.v_);
        std::swap(prec_, o.prec_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return prec_; }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    static BigFloat pi(mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }
    static BigFloat from_string(const std::string& s, mpfr_prec_t prec) {
        BigFloat r(prec);
        if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0 && mpfr_nan_p(r.v_))
            throw std::invalid_argument("BigFloat: bad literal " + s);
        return r;
    }
    // 2^e, exact.
    static BigFloat pow2(long e, mpfr_prec_t prec) {
        BigFloat r(1, prec);
        mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
        return r;
    }

    bool is_zero() const { return mpfr_zero_p(v_); }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    std::string to_string(size_t digits = 0) const {
        if (digits == 0) digits = static_cast<size_t>(prec_ * 0.3010) + 2;
        mpfr_exp_t e;
        char* s = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
        std::string body(s);
        mpfr_free_str(s);
        std::string sign;
        if (!body.empty() && body[0] == '-') { sign = "-"; body = body.substr(1); }
        if (body.empty()) return "0";
        return sign + "0." + body + "e" + std::to_string(static_cast<long>(e));
    }

#define CYLG_BF_BINOP(op, fn)                                              \
    friend BigFloat operator op(const BigFloat& x, const BigFloat& y) {    \
        BigFloat r(std::max(x.prec_, y.prec_));                            \
        fn(r.v_, x.v_, y.v_, MPFR_RNDN);                                   \
        return r;                                                          \
    }
    CYLG_BF_BINOP(+, mpfr_add)
    CYLG_BF_BINOP(-, mpfr_sub)
    CYLG_BF_BINOP(*, mpfr_mul)
    CYLG_BF_BINOP(/, mpfr_div)
#undef CYLG_BF_BINOP

    BigFloat& operator+=(const BigFloat& y) { return *this = *this + y; }
    BigFloat& operator-=(const BigFloat& y) { return *this = *this - y; }
    BigFloat& operator*=(const BigFloat& y) { return *this = *this * y; }
    BigFloat& operator/=(const BigFloat& y) { return *this = *this / y; }

    BigFloat operator-() const {
        BigFloat r(*this);
        mpfr_neg(r.v_, r.v_, MPFR_RNDN);
        return r;
    }

    friend bool operator<(const BigFloat& x, const BigFloat& y) { return mpfr_cmp(x.v_, y.v_) < 0; }
    friend bool operator>(const BigFloat& x, const BigFloat& y) { return mpfr_cmp(x.v_, y.v_) > 0; }
    friend bool operator<=(const BigFloat& x, const BigFloat& y) { return mpfr_cmp(x.v_, y.v_) <= 0; }
    friend bool operator>=(const BigFloat& x, const BigFloat& y) { return mpfr_cmp(x.v_, y.v_) >= 0; }

  private:
    mpfr_t v_;
    mpfr_prec_t prec_;
};

#define CYLG_BF_FUN1(name, fn)                   \
    inline BigFloat name(const BigFloat& x) {    \
        BigFloat r(x.prec());                    \
        fn(r.raw(), x.raw(), MPFR_RNDN);         \
        return r;                                \
    }
CYLG_BF_FUN1(bf_sqrt, mpfr_sqrt)
CYLG_BF_FUN1(bf_exp, mpfr_exp)
CYLG_BF_FUN1(bf_log, mpfr_log)
CYLG_BF_FUN1(bf_sin, mpfr_sin)
CYLG_BF_FUN1(bf_cos, mpfr_cos)
CYLG_BF_FUN1(bf_abs, mpfr_abs)
CYLG_BF_FUN1(bf_gamma, mpfr_gamma)
#undef CYLG_BF_FUN1

inline BigFloat bf_agm(const BigFloat& x, const BigFloat& y) {
    BigFloat r(std::max(x.prec(), y.prec()));
    mpfr_agm(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}

inline BigFloat bf_pow_si(const BigFloat& x, long e) {
    BigFloat r(x.prec());
    mpfr_pow_si(r.raw(), x.raw(), e, MPFR_RNDN);
    return r;
}

inline BigFloat bf_mul_2si(const BigFloat& x, long e) {
    BigFloat r(x.prec());
    mpfr_mul_2si(r.raw(), x.raw(), e, MPFR_RNDN);
    return r;
}

// Round to nearest integer (as a Rat).
inline Rat bf_round_to_rat_int(const BigFloat& x) {
    mpfr_t t;
    mpfr_init2(t, x.prec());
    mpfr_round(t, x.raw());
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDN);
    mpfr_clear(t);
    return Rat(z);
}

}  // namespace cylg
