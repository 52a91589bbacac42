#include "lcb/invariants.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>

#include "lcb/errors.hpp"
#include "lcb/linalg.hpp"

namespace lcb {

InvariantValues eval_basis_r4(double s, double p, double d, double c) {
    using cd = std::complex<double>;
    cd z(s, p), w(d, c);
    double imq = std::imag(z * std::conj(w));
    double big = std::imag(w * w * w - 3.0 * w * z * z);
    InvariantValues v;
    v.f2 = s * s + p * p + d * d + c * c;
    v.f3 = std::real(z * z * z - 3.0 * z * w * w);
    v.f4 = -4.0 * imq * imq;
    v.f5 = 2.0 * imq * big;
    v.f6 = big * big;
    return v;
}

PlaneInvariants eval_basis_r2(double x, double u) { return {x * x + u * u, x * x * x - 3.0 * x * u * u}; }

double hatf6(double s, double p, double d, double c) {
    std::complex<double> z(s, p), w(d, c);
    return std::real(std::pow(z * z + w * w, 3));
}

InvariantSeries<Rational> invariant_series(int cap) {
    auto v = RationalSeries::variables(4, cap);
    return invariants_of(v[0], v[1], v[2], v[3]);
}

std::array<RationalSeries, 2> plane_invariant_series(int cap) {
    auto v = RationalSeries::variables(2, cap);
    RationalSeries X = v[0] * v[0] + v[1] * v[1];
    RationalSeries Y = v[0] * v[0] * v[0] - v[0] * v[1] * v[1] * Rational(3);
    return {X, Y};
}

RationalSeries hatf6_series(int cap) {
    auto v = RationalSeries::variables(4, cap);
    ComplexSeries<Rational> z{v[0], v[1]}, w{v[2], v[3]};
    auto q = z * z + w * w;
    return (q * q * q).re;
}

namespace {

constexpr int kWeights[5] = {2, 3, 4, 5, 6};

// All exponent tuples (a..e) with 2a+3b+4c+5d+6e = deg.
std::vector<std::array<int, 5>> weighted_tuples(int deg, int max_f5) {
    std::vector<std::array<int, 5>> out;
    std::array<int, 5> e{};
    std::function<void(int, int)> rec = [&](int idx, int left) {
        if (idx == 5) {
            if (left == 0) out.push_back(e);
            return;
        }
        int lim = left / kWeights[idx];
        if (idx == 3) lim = std::min(lim, max_f5);
        for (int k = 0; k <= lim; ++k) {
            e[static_cast<std::size_t>(idx)] = k;
            rec(idx + 1, left - k * kWeights[idx]);
        }
        e[static_cast<std::size_t>(idx)] = 0;
    };
    rec(0, deg);
    return out;
}

RationalSeries product_of(const InvariantSeries<Rational>& f, const std::array<int, 5>& e, int cap) {
    const RationalSeries* fs[5] = {&f.f2, &f.f3, &f.f4, &f.f5, &f.f6};
    RationalSeries r = RationalSeries::constant(4, cap, Rational(1));
    for (int i = 0; i < 5; ++i) r *= fs[i]->with_cap(cap).pow(e[static_cast<std::size_t>(i)]);
    return r;
}

// Rows indexed by the union of monomials of the given series.
template <class T>
std::vector<Monomial> monomial_union(const std::vector<const TruncSeries<T>*>& ss) {
    std::map<Monomial, int, GradedLess> seen;
    for (const auto* s : ss)
        for (const auto& [m, c] : s->terms()) seen.emplace(m, 0);
    std::vector<Monomial> out;
    for (const auto& [m, c] : seen) out.push_back(m);
    return out;
}

}  // namespace

RationalSeries hatf6_odd_series(int cap) {
    auto v = RationalSeries::variables(4, cap);
    RationalSeries h = hatf6_series(cap);
    RationalSeries ht = substitute(h, {v[0], v[2], v[1], v[3]});
    return (h - ht) * Rational(1, 2);
}

InvariantRelation express_in_hilbert_basis(const RationalSeries& target, int degree) {
    if (target.num_vars() != 4) throw Error("express_in_hilbert_basis: need a series in (s,p,d,c)");
    if (degree < 0 || degree > kMaxCap) throw Error("express_in_hilbert_basis: degree out of range");
    const int cap = std::max(degree, 1);
    auto f = invariant_series(cap);
    RationalSeries t = target.with_cap(cap);
    auto tuples = weighted_tuples(degree, 1);
    std::vector<RationalSeries> prods;
    for (const auto& e : tuples) prods.push_back(product_of(f, e, cap));
    std::vector<const RationalSeries*> all{&t};
    for (const auto& p : prods) all.push_back(&p);
    auto rows = monomial_union(all);
    const std::size_t k = prods.size();
    auto A = zeros<Rational>(rows.size(), k + 1);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < k; ++j) A[i][j] = prods[j].coeff(rows[i]);
        A[i][k] = t.coeff(rows[i]);
    }
    std::vector<std::size_t> cols(k);
    for (std::size_t j = 0; j < k; ++j) cols[j] = j;
    auto piv = row_echelon(A, cols);
    if (piv.size() < k) throw InvariantViolation("express_in_hilbert_basis: products are linearly dependent");
    InvariantRelation rel;
    rel.exact = true;
    for (std::size_t i = piv.size(); i < A.size(); ++i)
        if (A[i][k] != 0) rel.exact = false;
    for (std::size_t i = 0; i < piv.size(); ++i)
        if (A[i][k] != 0) rel.coeffs[tuples[piv[i]]] = A[i][k];
    return rel;
}

const std::array<std::string, 12>& fit_slot_names() {
    static const std::array<std::string, 12> names = {"alpha", "beta", "gamma", "a3", "a4", "b4",
                                                      "a5",    "b5",   "a6",    "b6", "c6", "d6"};
    return names;
}

std::array<RationalSeries, 12> fit_basis() {
    auto v = RationalSeries::variables(4, 6);
    auto f = invariant_series(6);
    const auto& s = v[0];
    const auto& p = v[1];
    const auto& d = v[2];
    const auto& c = v[3];
    return {s * s + p * p,
            d * d + c * c,
            (s * d + p * c) * Rational(2),
            f.f3,
            f.f4,
            f.f2 * f.f2,
            f.f5,
            f.f2 * f.f3,
            f.f6,
            f.f2 * f.f2 * f.f2,
            f.f3 * f.f3,
            f.f2 * f.f4};
}

FitResult fit_invariant_basis(const RationalSeries& poly) {
    if (poly.num_vars() != 4) throw Error("fit_invariant_basis: need a series in (s,p,d,c)");
    auto basis = fit_basis();
    std::vector<const RationalSeries*> all{&poly};
    for (const auto& b : basis) all.push_back(&b);
    auto rows = monomial_union(all);
    auto A = zeros<Rational>(rows.size(), 12);
    std::vector<Rational> y(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < 12; ++j) A[i][j] = basis[j].coeff(rows[i]);
        y[i] = poly.coeff(rows[i]);
    }
    auto G = matmul(transpose(A), A);
    std::vector<Rational> h(12, Rational(0));
    for (std::size_t j = 0; j < 12; ++j)
        for (std::size_t i = 0; i < rows.size(); ++i) h[j] += A[i][j] * y[i];
    auto x = solve(G, h);
    if (!x) throw InvariantViolation("fit_invariant_basis: basis is degenerate");
    FitResult r;
    Rational sq(0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        Rational e = y[i];
        for (std::size_t j = 0; j < 12; ++j) e -= A[i][j] * (*x)[j];
        sq += e * e;
    }
    for (std::size_t j = 0; j < 12; ++j) {
        r.exact_coeffs[j] = (*x)[j];
        r.coeffs[j] = (*x)[j].get_d();
    }
    r.residual = std::sqrt(sq.get_d());
    return r;
}

FitResult fit_invariant_basis(const RealSeries& poly) {
    if (poly.num_vars() != 4) throw Error("fit_invariant_basis: need a series in (s,p,d,c)");
    auto basis = fit_basis();
    std::vector<RealSeries> rb;
    for (const auto& b : basis) rb.push_back(b.cast<double>());
    std::vector<const RealSeries*> all{&poly};
    for (const auto& b : rb) all.push_back(&b);
    auto rows = monomial_union(all);
    Eigen::MatrixXd A(static_cast<Eigen::Index>(rows.size()), 12);
    Eigen::VectorXd y(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < 12; ++j) A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rb[j].coeff(rows[i]);
        y(static_cast<Eigen::Index>(i)) = poly.coeff(rows[i]);
    }
    Eigen::VectorXd x = A.colPivHouseholderQr().solve(y);
    FitResult r;
    for (int j = 0; j < 12; ++j) r.coeffs[static_cast<std::size_t>(j)] = x(j);
    r.residual = (A * x - y).norm();
    return r;
}

std::vector<int> independent_products(int max_degree) {
    if (max_degree < 0 || max_degree > kMaxCap) throw Error("independent_products: degree out of range");
    auto f = invariant_series(std::max(max_degree, 1));
    std::vector<int> out;
    for (int d = 0; d <= max_degree; ++d) {
        auto tuples = weighted_tuples(d, d);
        std::vector<RationalSeries> prods;
        for (const auto& e : tuples) prods.push_back(product_of(f, e, std::max(max_degree, 1)));
        std::vector<const RationalSeries*> all;
        for (const auto& p : prods) all.push_back(&p);
        auto rows = monomial_union(all);
        auto A = zeros<Rational>(prods.size(), rows.size());
        for (std::size_t i = 0; i < prods.size(); ++i)
            for (std::size_t j = 0; j < rows.size(); ++j) A[i][j] = prods[i].coeff(rows[j]);
        out.push_back(prods.empty() ? 0 : static_cast<int>(rank(A)));
    }
    return out;
}

}  // namespace lcb
