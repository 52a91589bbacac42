#pragma once

#include <gmpxx.h>

#include <cmath>
#include <ostream>
#include <string>
#include <type_traits>

namespace lcb {

using Rational = mpq_class;

// Element a + b*sqrt(3) of Q(sqrt 3). Enough to hold the entries of every
// matrix in the symmetry groups used here.
struct QSqrt3 {
    Rational a{0};
    Rational b{0};

    QSqrt3() = default;
    QSqrt3(int v) : a(v) {}
    QSqrt3(Rational x) : a(std::move(x)) {}
    QSqrt3(Rational x, Rational y) : a(std::move(x)), b(std::move(y)) {}

    static QSqrt3 sqrt3() { return {Rational(0), Rational(1)}; }

    QSqrt3& operator+=(const QSqrt3& o) { a += o.a; b += o.b; return *this; }
    QSqrt3& operator-=(const QSqrt3& o) { a -= o.a; b -= o.b; return *this; }
    QSqrt3& operator*=(const QSqrt3& o) {
        Rational na = a * o.a + 3 * b * o.b;
        Rational nb = a * o.b + b * o.a;
        a = na;
        b = nb;
        return *this;
    }
    QSqrt3& operator/=(const QSqrt3& o) {
        Rational n = o.a * o.a - 3 * o.b * o.b;
        QSqrt3 inv{o.a / n, -o.b / n};
        return *this *= inv;
    }
    friend QSqrt3 operator+(QSqrt3 x, const QSqrt3& y) { return x += y; }
    friend QSqrt3 operator-(QSqrt3 x, const QSqrt3& y) { return x -= y; }
    friend QSqrt3 operator*(QSqrt3 x, const QSqrt3& y) { return x *= y; }
    friend QSqrt3 operator/(QSqrt3 x, const QSqrt3& y) { return x /= y; }
    friend QSqrt3 operator-(const QSqrt3& x) { return {-x.a, -x.b}; }
    friend bool operator==(const QSqrt3& x, const QSqrt3& y) { return x.a == y.a && x.b == y.b; }
    friend bool operator!=(const QSqrt3& x, const QSqrt3& y) { return !(x == y); }

    double to_double() const { return a.get_d() + b.get_d() * std::sqrt(3.0); }
    bool is_rational() const { return b == 0; }

    friend std::ostream& operator<<(std::ostream& os, const QSqrt3& x) {
        os << x.a;
        if (x.b != 0) os << (x.b > 0 ? "+" : "") << x.b << "*sqrt3";
        return os;
    }
};

template <class T>
inline bool is_zero(const T& x) {
    if constexpr (std::is_floating_point_v<T>) {
        return x == 0.0;
    } else if constexpr (std::is_same_v<T, QSqrt3>) {
        return x.a == 0 && x.b == 0;
    } else {
        return sgn(x) == 0;
    }
}

template <class T>
inline double to_double(const T& x) {
    if constexpr (std::is_floating_point_v<T>) {
        return static_cast<double>(x);
    } else if constexpr (std::is_same_v<T, QSqrt3>) {
        return x.to_double();
    } else {
        return x.get_d();
    }
}

// Magnitude used for pivot choice; exact types only need "nonzero".
template <class T>
inline double pivot_size(const T& x) {
    if constexpr (std::is_floating_point_v<T>) {
        return std::abs(x);
    } else {
        return is_zero(x) ? 0.0 : 1.0;
    }
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace lcb
