#pragma once

// Hilbert basis f2..f6 of the invariants of the 72-element group on
// (s,p,d,c), with z = s + i p and w = d + i c:
//   f2 = |z|^2 + |w|^2
//   f3 = Re(z^3 - 3 z w^2)
//   f4 = (z wbar - zbar w)^2
//   f5 = Im(z wbar - zbar w) * Im(w^3 - 3 w z^2)
//   f6 = Im(w^3 - 3 w z^2)^2
// and X = x^2 + u^2, Y = x^3 - 3 x u^2 for D3 on the plane.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "lcb/polyser.hpp"

namespace lcb {

struct InvariantValues {
    double f2 = 0, f3 = 0, f4 = 0, f5 = 0, f6 = 0;
};

InvariantValues eval_basis_r4(double s, double p, double d, double c);

struct PlaneInvariants {
    double X = 0, Y = 0;
};
PlaneInvariants eval_basis_r2(double x, double u);

// Re((z^2 + w^2)^3): invariant under the 36 elements without tau only.
double hatf6(double s, double p, double d, double c);

// Real and imaginary parts of a complex polynomial.
template <class T>
struct ComplexSeries {
    TruncSeries<T> re, im;
    friend ComplexSeries operator+(const ComplexSeries& a, const ComplexSeries& b) { return {a.re + b.re, a.im + b.im}; }
    friend ComplexSeries operator-(const ComplexSeries& a, const ComplexSeries& b) { return {a.re - b.re, a.im - b.im}; }
    friend ComplexSeries operator*(const ComplexSeries& a, const ComplexSeries& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend ComplexSeries operator*(const ComplexSeries& a, const T& s) { return {a.re * s, a.im * s}; }
    ComplexSeries conj() const { return {re, -im}; }
};

template <class T>
struct InvariantSeries {
    TruncSeries<T> f2, f3, f4, f5, f6;
};

// The basis as polynomials in caller-supplied (s,p,d,c), e.g. variables or
// images under a coordinate change. Uses the cap of the inputs.
template <class T>
InvariantSeries<T> invariants_of(const TruncSeries<T>& s, const TruncSeries<T>& p, const TruncSeries<T>& d,
                                 const TruncSeries<T>& c) {
    using C = ComplexSeries<T>;
    C z{s, p}, w{d, c};
    C z3 = z * z * z;
    C w3 = w * w * w;
    C q = z * w.conj();  // z wbar; z wbar - zbar w = 2 i Im(z wbar)
    TruncSeries<T> imq = q.im;
    C big = w3 - w * z * z * T(3);
    InvariantSeries<T> r;
    r.f2 = s * s + p * p + d * d + c * c;
    r.f3 = (z3 - z * w * w * T(3)).re;
    r.f4 = imq * imq * T(-4);
    r.f5 = imq * big.im * T(2);
    r.f6 = big.im * big.im;
    return r;
}

InvariantSeries<Rational> invariant_series(int cap = 6);

// X and Y as polynomials in (x,u).
std::array<RationalSeries, 2> plane_invariant_series(int cap = 12);

RationalSeries hatf6_series(int cap = 12);

// (hatf6 - hatf6 o tau) / 2, the part of hatf6 that changes sign under tau.
RationalSeries hatf6_odd_series(int cap = 12);

// Best expression of a homogeneous degree-`degree` polynomial as a
// combination of f2^a f3^b f4^c f5^d f6^e with d <= 1 (these products are
// linearly independent). Keys are the exponent tuples.
struct InvariantRelation {
    std::map<std::array<int, 5>, Rational> coeffs;
    bool exact = false;  // true iff the combination reproduces the target identically
};
InvariantRelation express_in_hilbert_basis(const RationalSeries& target, int degree);

// Names of the linear basis slots, in order.
const std::array<std::string, 12>& fit_slot_names();

// The linear basis {|z|^2, |w|^2, 2Re(z wbar); f3; f4, f2^2; f5, f2 f3;
// f6, f2^3, f3^2, f2 f4} as series (cap 6).
std::array<RationalSeries, 12> fit_basis();

struct FitResult {
    std::array<double, 12> coeffs{};
    std::array<Rational, 12> exact_coeffs{};  // filled for rational input
    double residual = 0;                      // Euclidean norm over monomial coefficients
};

// Least-squares coordinates of a 4-variable series in fit_basis(). Rational
// input is solved exactly through the normal equations.
FitResult fit_invariant_basis(const RationalSeries& poly);
FitResult fit_invariant_basis(const RealSeries& poly);

// Rank of the span of all products f2^a..f6^e of weighted degree d, for
// d = 0..max_degree. Equals the Molien coefficients.
std::vector<int> independent_products(int max_degree);

}  // namespace lcb
