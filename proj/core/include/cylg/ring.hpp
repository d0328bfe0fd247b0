#pragma once

#include "cylg/bigcomplex.hpp"
#include "cylg/qext.hpp"
#include "cylg/rational.hpp"

namespace cylg {

// Small customization points so series/polynomial templates can work over
// Rat, QExt, BigComplex, or nested series rings uniformly.

template <typename R>
struct RingOne {
    static R get() { return R(1); }
};
template <>
struct RingOne<BigComplex> {
    // Exact integer 1; precision widens automatically on first mixed op.
    static BigComplex get() { return BigComplex(1, 64); }
};

inline bool ring_is_zero(const Rat& x) { return x == 0; }
inline bool ring_is_zero(const QExt& x) { return x.is_zero(); }
inline bool ring_is_zero(const BigComplex& x) { return x.re.is_zero() && x.im.is_zero(); }

// Multiply by an exact rational (derivations, factorials, binomials).
inline Rat ring_scale(const Rat& x, const Rat& r) { return x * r; }
inline QExt ring_scale(const QExt& x, const Rat& r) { return x * QExt(r); }
inline BigComplex ring_scale(const BigComplex& x, const Rat& r) {
    BigFloat f(r, x.prec());
    return BigComplex(x.re * f, x.im * f);
}

inline Rat ring_inv(const Rat& x) { return 1 / x; }
inline QExt ring_inv(const QExt& x) { return x.inverse(); }
inline BigComplex ring_inv(const BigComplex& x) { return BigComplex(1, x.prec()) / x; }

inline std::string ring_to_string(const Rat& x) { return rat_to_string(x); }
inline std::string ring_to_string(const QExt& x) { return x.to_string(); }
inline std::string ring_to_string(const BigComplex& x) { return x.to_string(); }

}  // namespace cylg
