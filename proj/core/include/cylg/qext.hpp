#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "cylg/rational.hpp"

namespace cylg {

// Element of the degree-4 field Q(i, sqrt(2)), stored on the basis
// (1, sqrt2, i, i*sqrt2).  All coefficient arithmetic is exact.
struct QExt {
    Rat a{0};  // coefficient of 1
    Rat b{0};  // coefficient of sqrt(2)
    Rat c{0};  // coefficient of i
    Rat d{0};  // coefficient of i*sqrt(2)

    QExt() = default;
    QExt(Rat a_, Rat b_ = 0, Rat c_ = 0, Rat d_ = 0)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}
    QExt(long n) : a(n) {}

    static QExt one() { return QExt(1); }
    static QExt sqrt2() { return QExt(0, 1); }
    static QExt i() { return QExt(0, 0, 1); }
    static QExt i_sqrt2() { return QExt(0, 0, 0, 1); }

    bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }
    bool is_rational() const { return b == 0 && c == 0 && d == 0; }
    bool is_real() const { return c == 0 && d == 0; }

    friend bool operator==(const QExt& x, const QExt& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
    friend bool operator!=(const QExt& x, const QExt& y) { return !(x == y); }

    QExt operator-() const { return QExt(-a, -b, -c, -d); }

    friend QExt operator+(const QExt& x, const QExt& y) {
        return QExt(x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d);
    }
    friend QExt operator-(const QExt& x, const QExt& y) {
        return QExt(x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d);
    }
    friend QExt operator*(const QExt& x, const QExt& y) {
        // Basis products: sqrt2^2=2, i^2=-1, (i sqrt2)^2=-2, sqrt2*i=i sqrt2.
        return QExt(
            x.a * y.a + 2 * x.b * y.b - x.c * y.c - 2 * x.d * y.d,
            x.a * y.b + x.b * y.a - x.c * y.d - x.d * y.c,
            x.a * y.c + x.c * y.a + 2 * (x.b * y.d + x.d * y.b),
            x.a * y.d + x.d * y.a + x.b * y.c + x.c * y.b);
    }

    QExt& operator+=(const QExt& y) { return *this = *this + y; }
    QExt& operator-=(const QExt& y) { return *this = *this - y; }
    QExt& operator*=(const QExt& y) { return *this = *this * y; }

    // Galois conjugations.
    QExt conj_sqrt2() const { return QExt(a, -b, c, -d); }   // sqrt2 -> -sqrt2
    QExt conj_i() const { return QExt(a, b, -c, -d); }       // i -> -i

    QExt inverse() const {
        if (is_zero()) throw std::domain_error("QExt: division by zero");
        QExt ci = conj_i();
        QExt n2 = *this * ci;          // lands in Q(sqrt2)
        QExt n2c = n2.conj_sqrt2();
        QExt num = ci * n2c;
        QExt nn = n2 * n2c;            // field norm, pure rational and nonzero
        if (!(nn.b == 0 && nn.c == 0 && nn.d == 0))
            throw std::logic_error("QExt: norm not rational");
        Rat n = nn.a;
        return QExt(num.a / n, num.b / n, num.c / n, num.d / n);
    }
    friend QExt operator/(const QExt& x, const QExt& y) { return x * y.inverse(); }
    QExt& operator/=(const QExt& y) { return *this = *this / y; }

    std::string to_string() const {
        auto piece = [](const Rat& r, const char* sym, bool& first, std::string& out) {
            if (r == 0) return;
            std::string s = rat_to_string(r < 0 ? Rat(-r) : r);
            out += first ? (r < 0 ? "-" : "") : (r < 0 ? " - " : " + ");
            first = false;
            if (sym[0] == '\0') { out += s; return; }
            if (s != "1") { out += s; out += "*"; }
            out += sym;
        };
        std::string out;
        bool first = true;
        piece(a, "", first, out);
        piece(b, "sqrt2", first, out);
        piece(c, "i", first, out);
        piece(d, "i*sqrt2", first, out);
        return first ? "0" : out;
    }

    std::array<Rat, 4> coords() const { return {a, b, c, d}; }
};

inline QExt qext_rat(const Rat& r) { return QExt(r); }

inline QExt qext_pow(const QExt& base, long e) {
    if (e < 0) return qext_pow(base, -e).inverse();
    QExt acc = QExt::one(), b = base;
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

}  // namespace cylg
