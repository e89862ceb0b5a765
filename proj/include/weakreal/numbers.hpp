// Exact scalar types used by the paradox and ontology modules:
// rationals, the quadratic field Q(sqrt2), its complexification, and
// Gaussian integers for counterparticle counts.

#pragma once

#include <boost/rational.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace weakreal {

using Rational = boost::rational<long long>;

inline double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// Element of Q(sqrt2): value = a + b*sqrt(2) with a, b rational.
/// Arithmetic is exact; ordering uses the real embedding.
struct QSqrt2 {
    Rational a{0};
    Rational b{0};

    QSqrt2() = default;
    QSqrt2(Rational ra) : a(ra) {}  // NOLINT(google-explicit-constructor)
    QSqrt2(long long n) : a(n) {}   // NOLINT(google-explicit-constructor)
    QSqrt2(Rational ra, Rational rb) : a(ra), b(rb) {}

    bool is_zero() const { return a == Rational(0) && b == Rational(0); }
    bool is_rational() const { return b == Rational(0); }

    QSqrt2 operator-() const { return {-a, -b}; }
    QSqrt2 operator+(const QSqrt2& o) const { return {a + o.a, b + o.b}; }
    QSqrt2 operator-(const QSqrt2& o) const { return {a - o.a, b - o.b}; }
    QSqrt2 operator*(const QSqrt2& o) const {
        return {a * o.a + Rational(2) * b * o.b, a * o.b + b * o.a};
    }
    QSqrt2 inverse() const {
        // 1/(a + b sqrt2) = (a - b sqrt2)/(a^2 - 2 b^2)
        Rational norm = a * a - Rational(2) * b * b;
        if (norm == Rational(0)) throw std::domain_error("QSqrt2: division by zero");
        return {a / norm, -b / norm};
    }
    QSqrt2 operator/(const QSqrt2& o) const { return *this * o.inverse(); }

    QSqrt2& operator+=(const QSqrt2& o) { return *this = *this + o; }
    QSqrt2& operator-=(const QSqrt2& o) { return *this = *this - o; }
    QSqrt2& operator*=(const QSqrt2& o) { return *this = *this * o; }

    bool operator==(const QSqrt2& o) const { return a == o.a && b == o.b; }
    bool operator!=(const QSqrt2& o) const { return !(*this == o); }

    /// Sign of a + b*sqrt2 as a real number: -1, 0, or +1.
    int sign() const {
        const Rational zero(0);
        int sa = a < zero ? -1 : (a > zero ? 1 : 0);
        int sb = b < zero ? -1 : (b > zero ? 1 : 0);
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // opposite signs: compare a^2 vs 2 b^2
        Rational a2 = a * a, b2 = Rational(2) * b * b;
        if (a2 == b2) return 0;  // only possible at a=b=0, kept for safety
        return a2 > b2 ? sa : sb;
    }
    bool operator<(const QSqrt2& o) const { return (*this - o).sign() < 0; }
    bool operator>(const QSqrt2& o) const { return (*this - o).sign() > 0; }
    bool operator<=(const QSqrt2& o) const { return (*this - o).sign() <= 0; }
    bool operator>=(const QSqrt2& o) const { return (*this - o).sign() >= 0; }

    double value() const { return to_double(a) + to_double(b) * std::sqrt(2.0); }
};

inline QSqrt2 abs(const QSqrt2& x) { return x.sign() < 0 ? -x : x; }

/// Element of Q(sqrt2, i): re + im*i with re, im in Q(sqrt2).
struct CSqrt2 {
    QSqrt2 re;
    QSqrt2 im;

    CSqrt2() = default;
    CSqrt2(QSqrt2 r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
    CSqrt2(long long n) : re(n) {}          // NOLINT(google-explicit-constructor)
    CSqrt2(QSqrt2 r, QSqrt2 i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    CSqrt2 operator-() const { return {-re, -im}; }
    CSqrt2 operator+(const CSqrt2& o) const { return {re + o.re, im + o.im}; }
    CSqrt2 operator-(const CSqrt2& o) const { return {re - o.re, im - o.im}; }
    CSqrt2 operator*(const CSqrt2& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    CSqrt2 conj() const { return {re, -im}; }
    CSqrt2 inverse() const {
        QSqrt2 n = re * re + im * im;
        if (n.is_zero()) throw std::domain_error("CSqrt2: division by zero");
        QSqrt2 ninv = n.inverse();
        return {re * ninv, -(im * ninv)};
    }
    CSqrt2 operator/(const CSqrt2& o) const { return *this * o.inverse(); }
    CSqrt2& operator+=(const CSqrt2& o) { return *this = *this + o; }

    bool operator==(const CSqrt2& o) const { return re == o.re && im == o.im; }
    bool operator!=(const CSqrt2& o) const { return !(*this == o); }

    std::complex<double> value() const { return {re.value(), im.value()}; }
};

/// Gaussian integer: net counterparticle count at one basis state.
/// Real part counts real counterparticles, imaginary part imaginary ones;
/// signs encode the four particle types.
struct GaussInt {
    long long re{0};
    long long im{0};

    GaussInt() = default;
    GaussInt(long long r) : re(r) {}  // NOLINT(google-explicit-constructor)
    GaussInt(long long r, long long i) : re(r), im(i) {}

    bool is_zero() const { return re == 0 && im == 0; }
    long long l1() const { return std::llabs(re) + std::llabs(im); }

    GaussInt operator-() const { return {-re, -im}; }
    GaussInt operator+(const GaussInt& o) const { return {re + o.re, im + o.im}; }
    GaussInt operator*(const GaussInt& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    bool operator==(const GaussInt& o) const { return re == o.re && im == o.im; }
    bool operator!=(const GaussInt& o) const { return !(*this == o); }
    // lexicographic, for deterministic tie-breaking
    bool operator<(const GaussInt& o) const {
        if (re != o.re) return re < o.re;
        return im < o.im;
    }

    std::complex<double> value() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }
};

inline std::ostream& operator<<(std::ostream& os, const QSqrt2& x) {
    os << x.a;
    if (x.b != Rational(0)) os << (x.b > Rational(0) ? "+" : "") << x.b << "*sqrt2";
    return os;
}

inline std::ostream& operator<<(std::ostream& os, const GaussInt& g) {
    os << g.re;
    if (g.im != 0) os << (g.im > 0 ? "+" : "") << g.im << "i";
    return os;
}

}  // namespace weakreal
