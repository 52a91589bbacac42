#pragma once

// Reduction of the degree-6 free energy at a point of the stability cone to a
// D3-invariant function q(x,u) on the plane. Coordinates (x,y,u,v) are the
// rotation of (s,d,p,c) by xi, in which the quadratic part is 2mu(y^2+v^2);
// a polynomial shear (y,v) -> (y,v) + phi(x,u) then removes the terms linear
// in (y,v), and q is what remains at y = v = 0.
//
// Variable order for series in this module: (x, y, u, v).

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "lcb/errors.hpp"
#include "lcb/invariants.hpp"
#include "lcb/landau.hpp"
#include "lcb/polyser.hpp"

namespace lcb {

template <class T>
struct BasicReducedCoeffs {
    T e2{}, e3{}, e4{}, e5{}, m{}, n{};
    T sigma{}, C{}, S{};
};
using ReducedCoeffs = BasicReducedCoeffs<double>;

// The closed forms as printed in the literature for this model, kept for
// comparison. Two expressions are given for e5 and for e6; d6 is the n slot.
template <class T>
struct PrintedForms {
    T e4_first{}, e4_second{};
    T e5_first{}, e5_second{};
    T e6_first{}, e6_second{};
    T d6{};
};

// Rotation matrix R with (s,d,p,c)^T = R (x,y,u,v)^T.
std::array<std::array<double, 4>, 4> rotate_coords(double xi);

// Residual coefficients with C = cos 3xi, S = sin 3xi, sigma = -3 a3 / (4 mu):
//   e3 = -a3 S
//   e4 = (3/2) a3 C^2 sigma + b4
//   e5 = 3 a3 S C^2 sigma^2 - b5 S
//   m  = a3 (6S^2 + C^2) C^2 sigma^3 + (2 b4 - 4 a4) C^2 sigma^2 + (2 a5 + 3 b5) C^2 sigma + b6 + a6 C^2
//   n  = -2 a3 C^4 sigma^3 + 4 a4 C^2 sigma^2 - 2 a5 C^2 sigma + c6 S^2 - a6 C^2
// (the a6 terms come from f6 = C^2 (Im Z^3)^2 at W = 0).
template <class T>
BasicReducedCoeffs<T> residual_coeffs_cs(const BasicLandauCoeffs<T>& k, const T& C, const T& S, const T& mu) {
    if (is_zero(mu)) throw Error("residual_coeffs: mu = 0 (cone vertex)");
    BasicReducedCoeffs<T> r;
    r.C = C;
    r.S = S;
    r.sigma = T(-3) * k.a3 / (T(4) * mu);
    const T& s = r.sigma;
    T C2 = C * C, S2 = S * S;
    r.e3 = -k.a3 * S;
    r.e4 = T(3) / T(2) * k.a3 * C2 * s + k.b4;
    r.e5 = T(3) * k.a3 * S * C2 * s * s - k.b5 * S;
    r.m = k.a3 * (T(6) * S2 + C2) * C2 * s * s * s + (T(2) * k.b4 - T(4) * k.a4) * C2 * s * s +
          (T(2) * k.a5 + T(3) * k.b5) * C2 * s + k.b6 + k.a6 * C2;
    r.n = T(-2) * k.a3 * C2 * C2 * s * s * s + T(4) * k.a4 * C2 * s * s - T(2) * k.a5 * C2 * s + k.c6 * S2 -
          k.a6 * C2;
    return r;
}

template <class T>
PrintedForms<T> printed_forms_cs(const BasicLandauCoeffs<T>& k, const T& C, const T& S, const T& mu) {
    if (is_zero(mu)) throw Error("printed_forms: mu = 0 (cone vertex)");
    T s = T(-3) * k.a3 / (T(4) * mu);
    T C2 = C * C, S2 = S * S, s2 = s * s, s3 = s2 * s;
    PrintedForms<T> p;
    p.e4_first = T(2) * mu * C2 * s2 + T(3) * k.a3 * C2 * s + k.b4;
    p.e4_second = T(3) / T(2) * k.a3 * C2 * s + k.b4;
    p.e5_first = T(8) * mu * S * C2 * s3 - T(9) * k.a3 * S * C2 * s2 - k.b5 * S;
    p.e5_second = T(3) * k.a3 * S * C2 * s2 - k.b5 * S;
    p.e6_first = T(8) * mu * S2 * C2 * s2 * s2 + k.a3 * (T(12) * S2 * C2 * s3 + C2 * C2 * s3) + T(2) * k.b4 * C2 * s2 -
                 T(4) * k.a4 * C2 * s2 + T(2) * k.a5 * C2 * s + T(3) * k.b5 * C2 * s + k.b6;
    p.e6_second = k.a3 * (T(6) * S2 + C2) * C2 * s3 + T(2) * (k.b4 - k.a4) * C2 * s2 +
                  (T(2) * k.a5 + T(3) * k.b5) * C2 * s + k.b6;
    p.d6 = T(-2) * k.a3 * C2 * C2 * s3 + T(4) * k.a4 * C2 * s2 - T(2) * k.a5 * C2 * s + k.c6 * S2;
    return p;
}

ReducedCoeffs residual_coeffs(const LandauCoeffs& k, double xi, double mu);

// The shear (x,y,u,v) -> (x, y + phi_y, u, v + phi_v) with
//   phi = sigma C (x^2 - u^2, -2xu) + 2 sigma^2 S C (x^2 + u^2)(x, u).
template <class T>
std::vector<TruncSeries<T>> completing_square_map(const T& sigma, const T& C, const T& S, int cap = 6) {
    auto v = TruncSeries<T>::variables(4, cap);
    const auto &x = v[0], &y = v[1], &u = v[2], &w = v[3];
    T a = sigma * C, b = T(2) * sigma * sigma * S * C;
    auto r2 = x * x + u * u;
    return {x, y + (x * x - u * u) * a + r2 * x * b, u, w + x * u * (T(-2) * a) + r2 * u * b};
}

template <class T>
struct ReductionReport {
    // largest |coeff| over monomials linear in (y,v), total degree <= 5
    T max_mixed_le4{};        // degrees 2..4 with the shear above
    T max_mixed_deg5{};       // degree 5 with the shear above
    T max_mixed_extended{};   // degrees 2..5 after adding the degree-4 correction
    std::vector<std::pair<Monomial, T>> mixed_deg5;  // surviving degree-5 terms
    T residual_match_error{};     // q vs residual_coeffs_cs, max |coeff| of the difference
    T extended_match_error{};     // same, for the extended shear
    T printed_e5_first_error{}, printed_e6_first_error{}, printed_e6_second_error{}, printed_d6_error{};
    TruncSeries<T> q;             // pure (x,u) part, as a series in 2 variables
    BasicReducedCoeffs<T> coeffs;
};

namespace detail {

template <class T>
T abs_value(const T& a) {
    if constexpr (std::is_same_v<T, Rational>)
        return abs(a);
    else
        return std::abs(a);
}

// Largest coefficients of the terms linear in (y,v), split into total degree
// <= 4 and degree 5. Terms of (y,v)-degree >= 2 are left alone: they cannot
// feed back into q below degree 8.
template <class T>
void split_mixed(const TruncSeries<T>& g, T& le4, T& deg5, std::vector<std::pair<Monomial, T>>* d5) {
    for (const auto& [mon, c] : g.terms()) {
        int d = degree(mon);
        if (mon[1] + mon[3] != 1 || d > 5) continue;
        T a = abs_value(c);
        if (d <= 4) {
            if (a > le4) le4 = a;
        } else {
            if (a > deg5) deg5 = a;
            if (d5) d5->emplace_back(mon, c);
        }
    }
}

template <class T>
TruncSeries<T> pure_part(const TruncSeries<T>& g) {
    TruncSeries<T> q(2, 6);
    for (const auto& [mon, c] : g.terms())
        if (mon[1] == 0 && mon[3] == 0) q.add_term(make_monomial({mon[0], mon[2]}), c);
    return q;
}

template <class T>
TruncSeries<T> q_from_coeffs(const T& e3, const T& e4, const T& e5, const T& m, const T& n) {
    auto v = TruncSeries<T>::variables(2, 6);
    auto X = v[0] * v[0] + v[1] * v[1];
    auto Y = v[0] * v[0] * v[0] - v[0] * v[1] * v[1] * T(3);
    return Y * e3 + X * X * e4 + X * Y * e5 + X * X * X * m + Y * Y * n;
}

}  // namespace detail

// The full pipeline at the cone point with cos(xi) = cx, sin(xi) = sx (which
// must satisfy cx^2 + sx^2 = 1), on-cone quadratic part
// alpha = 2mu cx^2, beta = 2mu sx^2, gamma = 2mu sx cx, and the cubic and
// higher coefficients of k (its alpha, beta, gamma are ignored).
template <class T>
ReductionReport<T> verify_reduction(const BasicLandauCoeffs<T>& k, const T& cx, const T& sx, const T& mu) {
    if constexpr (std::is_same_v<T, Rational>) {
        if (cx * cx + sx * sx != T(1)) throw Error("verify_reduction: (cos xi, sin xi) not on the unit circle");
    } else {
        if (std::abs(cx * cx + sx * sx - 1.0) > 1e-14) throw Error("verify_reduction: (cos xi, sin xi) not on the unit circle");
    }
    if (is_zero(mu)) throw Error("verify_reduction: mu = 0 (cone vertex)");
    BasicLandauCoeffs<T> kc = k;
    kc.alpha = T(2) * mu * cx * cx;
    kc.beta = T(2) * mu * sx * sx;
    kc.gamma = T(2) * mu * sx * cx;
    const T C = T(4) * cx * cx * cx - T(3) * cx;
    const T S = T(3) * sx - T(4) * sx * sx * sx;

    TruncSeries<T> f = free_energy(kc);
    auto v = TruncSeries<T>::variables(4, 6);
    const auto &x = v[0], &y = v[1], &u = v[2], &w = v[3];
    // (s, p, d, c) in terms of (x, y, u, v)
    std::vector<TruncSeries<T>> rot = {x * sx + y * cx, u * sx + w * cx, x * T(-cx) + y * sx, u * T(-cx) + w * sx};
    TruncSeries<T> fr = substitute(f, rot);

    ReductionReport<T> rep;
    rep.coeffs = residual_coeffs_cs(kc, C, S, mu);
    auto shear = completing_square_map(rep.coeffs.sigma, C, S);
    // W = W0 - phi
    auto unshear = [&](const TruncSeries<T>& py, const TruncSeries<T>& pv) {
        std::vector<TruncSeries<T>> img = {x, y - py, u, w - pv};
        return substitute(fr, img);
    };
    TruncSeries<T> phy = shear[1] - y, phv = shear[3] - w;
    TruncSeries<T> g = unshear(phy, phv);
    detail::split_mixed(g, rep.max_mixed_le4, rep.max_mixed_deg5, &rep.mixed_deg5);

    rep.q = detail::pure_part(g);
    const auto& c = rep.coeffs;
    auto target = detail::q_from_coeffs(c.e3, c.e4, c.e5, c.m, c.n);
    auto max_diff = [](const TruncSeries<T>& a, const TruncSeries<T>& b) {
        T mx(0);
        const TruncSeries<T> diff = a - b;
        for (const auto& [mon, cc] : diff.terms()) {
            T t = detail::abs_value(cc);
            if (t > mx) mx = t;
        }
        return mx;
    };
    auto err_of = [&](const TruncSeries<T>& t) { return max_diff(rep.q, t); };
    rep.residual_match_error = err_of(target);
    auto pf = printed_forms_cs(kc, C, S, mu);
    rep.printed_e5_first_error = err_of(detail::q_from_coeffs(c.e3, c.e4, pf.e5_first, c.m, c.n));
    rep.printed_e6_first_error = err_of(detail::q_from_coeffs(c.e3, c.e4, c.e5, pf.e6_first, c.n));
    rep.printed_e6_second_error = err_of(detail::q_from_coeffs(c.e3, c.e4, c.e5, pf.e6_second, c.n));
    rep.printed_d6_error = err_of(detail::q_from_coeffs(c.e3, c.e4, c.e5, c.m, pf.d6));

    // degree-4 correction psi = (W-linear degree-5 coefficients) / (4 mu)
    TruncSeries<T> psy(4, 6), psv(4, 6);
    for (const auto& [mon, cc] : g.terms()) {
        if (degree(mon) != 5) continue;
        Monomial base{};
        base[0] = mon[0];
        base[2] = mon[2];
        if (mon[1] == 1 && mon[3] == 0) psy.add_term(base, cc / (T(4) * mu));
        if (mon[1] == 0 && mon[3] == 1) psv.add_term(base, cc / (T(4) * mu));
    }
    TruncSeries<T> g2 = unshear(phy + psy, phv + psv);
    T le4(0), d5(0);
    detail::split_mixed<T>(g2, le4, d5, nullptr);
    rep.max_mixed_extended = le4 > d5 ? le4 : d5;
    rep.extended_match_error = max_diff(detail::pure_part(g2), target);
    return rep;
}

// e2 = (5/2) t - sqrt(3)/(4 sqrt 2) U0 rho near a cone point.
double e2_from_perturbation(double t, double rho, double U0);

// Temperature at which e4 = b4 - 9 a3^2 / (8 mu) vanishes on the xi = 0 line.
double tricritical_temperature(double a3, double b4, double U0);

// Rational point on the unit circle from a Pythagorean pair (p, q):
// ((p^2 - q^2)/(p^2 + q^2), 2pq/(p^2 + q^2)).
std::pair<Rational, Rational> pythagorean_point(long p, long q);

}  // namespace lcb
