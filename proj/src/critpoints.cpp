#include "lcb/critpoints.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <thread>

#include "lcb/errors.hpp"

namespace lcb {

namespace {

constexpr double kTwoPiThird = 2 * std::numbers::pi / 3;

double horner(const std::vector<double>& c, double x) {
    double r = 0;
    for (std::size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
}

double horner_deriv(const std::vector<double>& c, double x) {
    double r = 0;
    for (std::size_t i = c.size(); i-- > 1;) r = r * x + c[i] * static_cast<double>(i);
    return r;
}

double abs_scale(const std::vector<double>& c, double x) {
    double r = 0, p = 1;
    for (double a : c) {
        r += std::abs(a) * p;
        p *= std::abs(x);
    }
    return r;
}

double newton_polish(const std::vector<double>& c, double x) {
    for (int it = 0; it < 60; ++it) {
        double f = horner(c, x), df = horner_deriv(c, x);
        if (df == 0) break;
        double step = f / df;
        x -= step;
        if (std::abs(step) <= 1e-16 * (1 + std::abs(x))) break;
    }
    return x;
}

// Real roots by the companion matrix, polished by Newton. Eigenvalues that
// cluster (near-double roots, close to a fold) are settled together from the
// local quadratic model around the nearby critical point of the polynomial,
// so the count keeps its parity across a fold.
std::vector<double> real_roots(std::vector<double> c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
    std::vector<double> out;
    if (c.size() <= 1) return out;
    const int d = static_cast<int>(c.size()) - 1;
    if (d == 1) return {-c[0] / c[1]};

    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(d, d);
    for (int i = 1; i < d; ++i) M(i, i - 1) = 1;
    for (int i = 0; i < d; ++i) M(i, d - 1) = -c[static_cast<std::size_t>(i)] / c.back();
    Eigen::EigenSolver<Eigen::MatrixXd> es(M, false);
    std::vector<std::complex<double>> z;
    for (int i = 0; i < d; ++i) {
        auto e = es.eigenvalues()[i];
        if (std::abs(e.imag()) <= 1e-4 * (1 + std::abs(e))) z.push_back(e);
    }
    std::sort(z.begin(), z.end(), [](auto a, auto b) { return a.real() < b.real(); });

    std::vector<double> dc(c.size() - 1);
    for (std::size_t i = 1; i < c.size(); ++i) dc[i - 1] = c[i] * static_cast<double>(i);

    auto accept = [&](double x) {
        if (std::abs(horner(c, x)) <= 1e-10 * abs_scale(c, x)) out.push_back(x);
    };
    std::size_t i = 0;
    while (i < z.size()) {
        std::size_t j = i + 1;
        while (j < z.size() && std::abs(z[j] - z[j - 1]) <= 1e-4 * (1 + std::abs(z[j]))) ++j;
        const std::size_t k = j - i;
        if (k == 1) {
            if (std::abs(z[i].imag()) <= 1e-7 * (1 + std::abs(z[i]))) accept(newton_polish(c, z[i].real()));
        } else if (k == 2) {
            const double x0 = 0.5 * (z[i].real() + z[i + 1].real());
            const double cp = newton_polish(dc, x0);  // F'(cp) = 0
            const double f = horner(c, cp), f2 = horner_deriv(dc, cp);
            if (std::abs(f) <= 1e-14 * abs_scale(c, cp)) {
                out.push_back(cp);  // double root, reported once
            } else if (f2 != 0 && -2 * f / f2 >= 0) {
                const double h = std::sqrt(-2 * f / f2);
                for (double x : {cp - h, cp + h}) {
                    double y = newton_polish(c, x);
                    // stay on the own side of the critical point
                    if ((y - cp) * (x - cp) <= 0) y = x;
                    accept(y);
                }
            }
        } else {
            for (std::size_t t = i; t < j; ++t)
                if (std::abs(z[t].imag()) <= 1e-7 * (1 + std::abs(z[t]))) accept(newton_polish(c, z[t].real()));
        }
        i = j;
    }
    std::sort(out.begin(), out.end());
    std::vector<double> uniq;
    for (double x : out)
        if (uniq.empty() || x != uniq.back()) uniq.push_back(x);
    return uniq;
}

struct PDerivs {
    double P_X, P_Y, P_XX, P_XY, P_YY;
};

PDerivs p_derivs(const NormalFormParams& p, double X, double Y) {
    const double c3 = p.m + p.e6;
    return {p.e2 + 2 * p.e4 * X + p.e5 * Y + 3 * c3 * X * X + 4 * p.e8 * X * X * X, p.e3 + p.e5 * X + 2 * p.n * Y,
            2 * p.e4 + 6 * c3 * X + 12 * p.e8 * X * X, p.e5, 2 * p.n};
}

Eigen::Vector2d rotate(const Eigen::Vector2d& v, double a) {
    const double c = std::cos(a), s = std::sin(a);
    return {c * v.x() - s * v.y(), s * v.x() + c * v.y()};
}

std::vector<double> biaxial_cubic(const NormalFormParams& p) {
    const double n = p.n;
    return {2 * n * p.e2 - p.e3 * p.e5, 4 * n * p.e4 - p.e5 * p.e5, 6 * n * (p.m + p.e6), 8 * n * p.e8};
}

double angle_between(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    double c = std::abs(a.dot(b)) / (a.norm() * b.norm());
    double s = std::abs(a.x() * b.y() - a.y() * b.x()) / (a.norm() * b.norm());
    return std::atan2(s, c);
}

}  // namespace

double q_value(const NormalFormParams& p, double x, double u) {
    const double X = x * x + u * u, Y = x * x * x - 3 * x * u * u;
    return p.e2 * X + p.e3 * Y + p.e4 * X * X + p.e5 * X * Y + (p.e6 + p.m) * X * X * X + p.e8 * X * X * X * X +
           p.n * Y * Y;
}

Eigen::Vector2d q_gradient(const NormalFormParams& p, double x, double u) {
    const double X = x * x + u * u, Y = x * x * x - 3 * x * u * u;
    auto d = p_derivs(p, X, Y);
    return {d.P_X * 2 * x + d.P_Y * (3 * x * x - 3 * u * u), d.P_X * 2 * u + d.P_Y * (-6 * x * u)};
}

Eigen::Matrix2d q_hessian(const NormalFormParams& p, double x, double u) {
    const double X = x * x + u * u, Y = x * x * x - 3 * x * u * u;
    auto d = p_derivs(p, X, Y);
    const double Xi[2] = {2 * x, 2 * u};
    const double Yi[2] = {3 * x * x - 3 * u * u, -6 * x * u};
    const double Xij[2][2] = {{2, 0}, {0, 2}};
    const double Yij[2][2] = {{6 * x, -6 * u}, {-6 * u, -6 * x}};
    Eigen::Matrix2d H;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            H(i, j) = d.P_XX * Xi[i] * Xi[j] + d.P_XY * (Xi[i] * Yi[j] + Xi[j] * Yi[i]) + d.P_YY * Yi[i] * Yi[j] +
                      d.P_X * Xij[i][j] + d.P_Y * Yij[i][j];
    return H;
}

std::string to_string(MorseType t) {
    switch (t) {
        case MorseType::minimum: return "min";
        case MorseType::maximum: return "max";
        case MorseType::saddle: return "saddle";
        case MorseType::degenerate: return "degenerate";
    }
    return "?";
}

Classification classify_2d(const NormalFormParams& p, double x, double u, double tol) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(q_hessian(p, x, u));
    Classification c;
    c.eigenvalues = es.eigenvalues();
    const double lo = c.eigenvalues(0), hi = c.eigenvalues(1);
    const double scale = 1 + std::max(std::abs(lo), std::abs(hi));
    if (std::min(std::abs(lo), std::abs(hi)) <= tol * scale)
        c.type = MorseType::degenerate;
    else if (lo > 0)
        c.type = MorseType::minimum;
    else if (hi < 0)
        c.type = MorseType::maximum;
    else
        c.type = MorseType::saddle;
    return c;
}

std::vector<double> axis_polynomial(const NormalFormParams& p) {
    return {2 * p.e2, 3 * p.e3, 4 * p.e4, 5 * p.e5, 6 * (p.m + p.n + p.e6), 0, 8 * p.e8};
}

std::vector<UniaxialPoint> uniaxial_points(const NormalFormParams& p) {
    std::vector<UniaxialPoint> out;
    auto F = axis_polynomial(p);
    auto add = [&](double x) {
        UniaxialPoint pt;
        pt.x = x;
        // p_e' = x F(x)
        pt.axis_curvature = horner(F, x) + x * horner_deriv(F, x);
        pt.cls = classify_2d(p, x, 0);
        pt.transverse = q_hessian(p, x, 0)(1, 1);
        out.push_back(pt);
    };
    add(0);
    for (double x : real_roots(F))
        if (std::abs(x) > 1e-13) add(x);
    return out;
}

NormalFormParams shift_x0(const NormalFormParams& p, double* x0_out) {
    if (p.m + p.n == 0) throw Error("shift_x0: m + n = 0");
    const double x0 = 5.0 / 24.0 * p.e5 / (p.m + p.n);
    if (x0_out) *x0_out = x0;
    // G(x) = F(x - x0)
    auto F = axis_polynomial(p);
    std::vector<double> G(F.size(), 0.0);
    for (std::size_t k = 0; k < F.size(); ++k) {
        double binom = 1;
        for (std::size_t j = 0; j <= k; ++j) {
            if (j > 0) binom = binom * static_cast<double>(k - j + 1) / static_cast<double>(j);
            G[j] += F[k] * binom * std::pow(-x0, static_cast<double>(k - j));
        }
    }
    NormalFormParams r = p;
    r.e2 = G[0] / 2;
    r.e3 = G[1] / 3;
    r.e4 = G[2] / 4;
    r.e5 = G[3] / 5;
    r.e6 = G[4] / 6 - p.m - p.n;
    r.e8 = G[6] / 8;  // the x^5 term G[5] has no slot and is dropped
    return r;
}

BiaxialResult biaxial_points(const NormalFormParams& p) {
    if (p.n == 0) throw Error("biaxial_points: n = 0");
    BiaxialResult res;
    for (double X : real_roots(biaxial_cubic(p))) {
        if (X <= 0) continue;
        const double Y = -(p.e3 + p.e5 * X) / (2 * p.n);
        const double X3 = X * X * X;
        const double gap = X3 - Y * Y;
        if (gap > interior_eps * X3) {
            BiaxialOrbit o;
            o.X = X;
            o.Y = Y;
            const double r = std::sqrt(X);
            const double th = std::acos(std::clamp(Y / (X * r), -1.0, 1.0)) / 3;
            Eigen::Vector2d a(r * std::cos(th), r * std::sin(th)), b(a.x(), -a.y());
            for (int k = 0; k < 3; ++k) {
                o.representatives.push_back(rotate(a, k * kTwoPiThird));
                o.representatives.push_back(rotate(b, k * kTwoPiThird));
            }
            o.cls = classify_2d(p, a.x(), a.y());
            res.orbits.push_back(o);
        } else if (gap >= -interior_eps * X3) {
            res.boundary_hits.emplace_back(X, Y);
        }
    }
    return res;
}

CriticalCount count_critical(const NormalFormParams& p) {
    CriticalCount c;
    c.axis_roots = static_cast<int>(uniaxial_points(p).size()) - 1;
    c.biaxial_orbits = static_cast<int>(biaxial_points(p).orbits.size());
    c.total = 1 + 3 * c.axis_roots + 6 * c.biaxial_orbits;
    c.origin_sign = (p.e2 > 0) - (p.e2 < 0);
    return c;
}

std::vector<PlanePoint> all_critical_points(const NormalFormParams& p) {
    std::vector<PlanePoint> out;
    for (const auto& up : uniaxial_points(p)) {
        if (up.x == 0) {
            out.push_back({Eigen::Vector2d::Zero(), false, up.cls});
            continue;
        }
        for (int k = 0; k < 3; ++k) out.push_back({rotate({up.x, 0}, k * kTwoPiThird), false, up.cls});
    }
    for (const auto& o : biaxial_points(p).orbits)
        for (const auto& r : o.representatives) out.push_back({r, true, o.cls});
    return out;
}

// Bifurcation curves -------------------------------------------------------

std::string to_string(CurveKind k) {
    switch (k) {
        case CurveKind::swallowtail_S: return "S";
        case CurveKind::bluebird_B0: return "B0";
        case CurveKind::bluebird_B1: return "B1";
    }
    return "?";
}

namespace {

// G = F - 2e2 - 3e3 x and its derivatives
struct GVals {
    double G, G1, G2;
};
GVals g_vals(const NormalFormParams& f, double x) {
    const double c6 = f.m + f.n + f.e6;
    const double x2 = x * x, x3 = x2 * x, x4 = x3 * x;
    return {4 * f.e4 * x2 + 5 * f.e5 * x3 + 6 * c6 * x4 + 8 * f.e8 * x4 * x2,
            8 * f.e4 * x + 15 * f.e5 * x2 + 24 * c6 * x3 + 48 * f.e8 * x4 * x,
            8 * f.e4 + 30 * f.e5 * x + 72 * c6 * x2 + 240 * f.e8 * x4};
}

}  // namespace

Eigen::Vector2d swallowtail_point(const NormalFormParams& f, double x) {
    auto g = g_vals(f, x);
    const double e3 = -g.G1 / 3;
    return {-(3 * e3 * x + g.G) / 2, e3};
}

Eigen::Vector2d swallowtail_tangent(const NormalFormParams&, double x) {
    // d/dx = G''(x) * (x/2, -1/3); the direction survives at cusps
    Eigen::Vector2d d(3 * x, -2);
    return d / d.norm();
}

Eigen::Vector2d b0_point(const NormalFormParams& f, double x) {
    const double X = x * x, Y = X * x;
    return {-2 * f.e4 * X - f.e5 * Y - 3 * (f.m + f.e6) * X * X - 4 * f.e8 * X * X * X, -f.e5 * X - 2 * f.n * Y};
}

BifurcationCurve swallowtail_section(const NormalFormParams& fixed, double x_lo, double x_hi, int samples) {
    if (fixed.m + fixed.n + fixed.e6 == 0) throw Error("swallowtail_section: m + n + e6 = 0");
    if (samples < 2 || !(x_hi > x_lo)) throw Error("swallowtail_section: bad range");
    BifurcationCurve c;
    c.kind = CurveKind::swallowtail_S;
    c.fixed = fixed;
    double prev_g2 = 0;
    for (int i = 0; i < samples; ++i) {
        double x = x_lo + (x_hi - x_lo) * i / (samples - 1);
        c.points.push_back(swallowtail_point(fixed, x));
        c.params.push_back(x);
        double g2 = g_vals(fixed, x).G2;
        if (i > 0 && ((g2 > 0) != (prev_g2 > 0) || g2 == 0)) c.cusps.push_back(static_cast<std::size_t>(i));
        prev_g2 = g2;
    }
    return c;
}

B1Line b1_line(const NormalFormParams& f) {
    if (f.n == 0) throw Error("b1_line: n = 0");
    if (f.e8 != 0) throw Error("b1_line: needs e8 = 0");
    B1Line l;
    const double A = 6 * f.n * (f.m + f.e6), B = 4 * f.n * f.e4 - f.e5 * f.e5;
    if (A == 0) return l;
    l.X_star = -B / (2 * A);
    if (!(l.X_star > 0)) return l;
    l.exists = true;
    // disc = B^2 - 4A(2n e2 - e3 e5) = 0
    l.e2_at_zero = B * B / (8 * f.n * A);
    l.slope = f.e5 / (2 * f.n);
    const double h = 2 * std::abs(f.n) * std::pow(l.X_star, 1.5);
    l.e3_lo = -f.e5 * l.X_star - h;
    l.e3_hi = -f.e5 * l.X_star + h;
    return l;
}

std::vector<BifurcationCurve> bluebird_section(const NormalFormParams& fixed, double x_lo, double x_hi,
                                               int samples) {
    if (fixed.n == 0) throw Error("bluebird_section: n = 0");
    if (fixed.e8 != 0) throw Error("bluebird_section: needs e8 = 0");
    if (samples < 2 || !(x_hi > x_lo)) throw Error("bluebird_section: bad range");
    std::vector<BifurcationCurve> out;
    BifurcationCurve b0;
    b0.kind = CurveKind::bluebird_B0;
    b0.fixed = fixed;
    for (int i = 0; i < samples; ++i) {
        double x = x_lo + (x_hi - x_lo) * i / (samples - 1);
        if (x == 0) continue;
        b0.points.push_back(b0_point(fixed, x));
        b0.params.push_back(x);
    }
    out.push_back(b0);
    auto l = b1_line(fixed);
    if (l.exists) {
        BifurcationCurve b1;
        b1.kind = CurveKind::bluebird_B1;
        b1.fixed = fixed;
        for (int i = 0; i < samples; ++i) {
            double e3 = l.e3_lo + (l.e3_hi - l.e3_lo) * i / (samples - 1);
            b1.points.emplace_back(l.e2_at_zero + l.slope * e3, e3);
            b1.params.push_back(e3);
        }
        out.push_back(b1);
    }
    return out;
}

Census region_census(const NormalFormParams& fixed, double e2_lo, double e2_hi, int n2, double e3_lo, double e3_hi,
                     int n3) {
    if (n2 < 1 || n3 < 1) throw Error("region_census: empty grid");
    Census c{n2, n3, e2_lo, e2_hi, e3_lo, e3_hi, {}};
    const std::size_t total = static_cast<std::size_t>(n2) * static_cast<std::size_t>(n3);
    c.cells.resize(total);
    auto fill = [&](std::size_t k) {
        int j = static_cast<int>(k / static_cast<std::size_t>(n2)), i = static_cast<int>(k % static_cast<std::size_t>(n2));
        double e3 = n3 == 1 ? e3_lo : e3_lo + (e3_hi - e3_lo) * j / (n3 - 1);
        double e2 = n2 == 1 ? e2_lo : e2_lo + (e2_hi - e2_lo) * i / (n2 - 1);
        auto p = fixed;
        p.e2 = e2;
        p.e3 = e3;
        c.cells[k] = {e2, e3, count_critical(p)};
    };
    // cells are independent; each worker owns a strided slice, so the result
    // does not depend on the thread count
    std::size_t workers = std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), total / 256 + 1);
    if (workers <= 1) {
        for (std::size_t k = 0; k < total; ++k) fill(k);
        return c;
    }
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t k = w; k < total; k += workers) fill(k);
        });
    for (auto& t : pool) t.join();
    return c;
}

// Branch sweep -------------------------------------------------------------

NormalFormPath linear_path(const NormalFormParams& a, double T_lo, const NormalFormParams& b, double T_hi) {
    if (T_hi == T_lo) throw Error("linear_path: empty T range");
    return [=](double T) {
        const double s = (T - T_lo) / (T_hi - T_lo);
        auto mix = [s](double u, double v) { return u + s * (v - u); };
        return NormalFormParams{mix(a.e2, b.e2), mix(a.e3, b.e3), mix(a.e4, b.e4), mix(a.e5, b.e5),
                                mix(a.e6, b.e6), mix(a.e8, b.e8), mix(a.m, b.m),   mix(a.n, b.n)};
    };
}

std::string to_string(EventKind k) {
    switch (k) {
        case EventKind::uniaxial_fold_create: return "uniaxial_fold_create";
        case EventKind::uniaxial_fold_annihilate: return "uniaxial_fold_annihilate";
        case EventKind::uniaxial_from_origin: return "uniaxial_from_origin";
        case EventKind::uniaxial_to_origin: return "uniaxial_to_origin";
        case EventKind::biaxial_fold_create: return "biaxial_fold_create";
        case EventKind::biaxial_fold_annihilate: return "biaxial_fold_annihilate";
        case EventKind::biaxial_from_axis: return "biaxial_from_axis";
        case EventKind::biaxial_to_axis: return "biaxial_to_axis";
        case EventKind::biaxial_from_origin: return "biaxial_from_origin";
        case EventKind::biaxial_to_origin: return "biaxial_to_origin";
        case EventKind::origin_destabilise: return "origin_destabilise";
        case EventKind::origin_stabilise: return "origin_stabilise";
    }
    return "?";
}

namespace {

struct SweepState {
    std::vector<double> axis;                   // nonzero axis roots
    std::vector<std::pair<double, double>> bx;  // (X, Y) of biaxial orbits
    int origin_sign = 0;
    bool same_counts(const SweepState& o) const {
        return axis.size() == o.axis.size() && bx.size() == o.bx.size() && origin_sign == o.origin_sign;
    }
};

SweepState sweep_state(const NormalFormParams& p) {
    SweepState s;
    for (const auto& u : uniaxial_points(p))
        if (u.x != 0) s.axis.push_back(u.x);
    for (const auto& o : biaxial_points(p).orbits) s.bx.emplace_back(o.X, o.Y);
    s.origin_sign = (p.e2 > 0) - (p.e2 < 0);
    return s;
}

// Values in `more` farthest from everything in `fewer`, `k` of them.
std::vector<double> unmatched(const std::vector<double>& more, const std::vector<double>& fewer, std::size_t k) {
    std::vector<std::pair<double, double>> d;
    for (double a : more) {
        double best = 1e300;
        for (double b : fewer) best = std::min(best, std::abs(a - b));
        d.emplace_back(best, a);
    }
    std::sort(d.begin(), d.end(), [](auto& l, auto& r) { return l.first > r.first; });
    std::vector<double> out;
    for (std::size_t i = 0; i < k && i < d.size(); ++i) out.push_back(d[i].second);
    return out;
}

SweepEvent make_event(double Ta, double Tb, const SweepState& a, const SweepState& b) {
    SweepEvent ev;
    ev.T = 0.5 * (Ta + Tb);
    const int da = static_cast<int>(b.axis.size()) - static_cast<int>(a.axis.size());
    const int db = static_cast<int>(b.bx.size()) - static_cast<int>(a.bx.size());
    constexpr double origin_tol = 1e-4;
    double loc = 0;
    bool have_loc = false;
    if (da != 0) {
        const auto& more = da > 0 ? b.axis : a.axis;
        const auto& fewer = da > 0 ? a.axis : b.axis;
        auto born = unmatched(more, fewer, static_cast<std::size_t>(std::abs(da)));
        double mx = 0, mean = 0;
        for (double x : born) {
            mx = std::max(mx, std::abs(x));
            mean += x / static_cast<double>(born.size());
        }
        loc = mean;
        have_loc = true;
        bool at_origin = mx < origin_tol;
        auto kind = da > 0 ? (at_origin ? EventKind::uniaxial_from_origin : EventKind::uniaxial_fold_create)
                           : (at_origin ? EventKind::uniaxial_to_origin : EventKind::uniaxial_fold_annihilate);
        // a symmetric path can fold two pairs at once
        for (int r = 0; r < std::abs(da) / 2; ++r) ev.kinds.push_back(kind);
        if (std::abs(da) % 2 != 0 && a.origin_sign == b.origin_sign) ev.ambiguous = true;
    }
    if (db != 0) {
        const auto& more = db > 0 ? b.bx : a.bx;
        const auto& fewer = db > 0 ? a.bx : b.bx;
        std::vector<double> mX, fX;
        for (auto& o : more) mX.push_back(o.first);
        for (auto& o : fewer) fX.push_back(o.first);
        auto born = unmatched(mX, fX, static_cast<std::size_t>(std::abs(db)));
        if (std::abs(db) == 2) {
            ev.kinds.push_back(db > 0 ? EventKind::biaxial_fold_create : EventKind::biaxial_fold_annihilate);
            if (!have_loc) {
                for (auto& o : more)
                    if (o.first == born.front()) loc = o.second / o.first;
                have_loc = true;
            }
        } else if (std::abs(db) == 1) {
            // born at the origin (X -> 0) or at an axis root (boundary)
            double X = born.front(), Y = 0;
            for (auto& o : more)
                if (o.first == X) Y = o.second;
            if (X < origin_tol * origin_tol)
                ev.kinds.push_back(db > 0 ? EventKind::biaxial_from_origin : EventKind::biaxial_to_origin);
            else
                ev.kinds.push_back(db > 0 ? EventKind::biaxial_from_axis : EventKind::biaxial_to_axis);
            if (!have_loc) {
                loc = Y / X;
                have_loc = true;
            }
        } else {
            ev.ambiguous = true;
        }
    }
    if (a.origin_sign != b.origin_sign)
        ev.kinds.push_back(b.origin_sign < a.origin_sign ? EventKind::origin_destabilise
                                                         : EventKind::origin_stabilise);
    ev.x_prime = loc;
    if (ev.ambiguous) ev.note = "count change not resolved by bisection; use more steps";
    return ev;
}

struct Bracket {
    double Ta, Tb;
    SweepState a, b;
};

void locate(const NormalFormPath& path, double Ta, double Tb, const SweepState& a, const SweepState& b, double tol,
            int depth, std::vector<Bracket>& out) {
    if (a.same_counts(b)) return;
    if (std::abs(Tb - Ta) <= tol * (1 + std::abs(Ta)) || depth > 200) {
        out.push_back({Ta, Tb, a, b});
        return;
    }
    const double Tm = 0.5 * (Ta + Tb);
    auto m = sweep_state(path(Tm));
    locate(path, Ta, Tm, a, m, tol, depth + 1, out);
    locate(path, Tm, Tb, m, b, tol, depth + 1, out);
}

// Brackets closer than a few tolerances are one event; this also absorbs
// transient states sitting exactly on a bifurcation value.
std::vector<SweepEvent> merge_brackets(const std::vector<Bracket>& br, double tol) {
    std::vector<SweepEvent> out;
    std::size_t i = 0;
    while (i < br.size()) {
        std::size_t j = i;
        while (j + 1 < br.size() && std::abs(br[j + 1].Ta - br[j].Tb) <= 10 * tol * (1 + std::abs(br[j].Tb))) ++j;
        if (!br[i].a.same_counts(br[j].b)) out.push_back(make_event(br[i].Ta, br[j].Tb, br[i].a, br[j].b));
        i = j + 1;
    }
    return out;
}

struct Item {
    double xp, up;
    bool biaxial;
    MorseType type;
};

std::vector<Item> sweep_items(const NormalFormParams& p) {
    std::vector<Item> items;
    for (const auto& u : uniaxial_points(p)) items.push_back({u.x, 0, false, u.cls.type});
    for (const auto& o : biaxial_points(p).orbits)
        items.push_back({o.Y / o.X, std::sqrt(std::max(0.0, o.X - o.Y * o.Y / (o.X * o.X))), true, o.cls.type});
    return items;
}

}  // namespace

SweepResult branch_sweep(const NormalFormPath& path, double T_from, double T_to, int steps, double bracket_tol) {
    if (steps < 1) throw Error("branch_sweep: steps < 1");
    SweepResult res;
    std::vector<std::pair<Item, int>> prev;
    int next_id = 0;
    SweepState prev_state;
    double prev_T = T_from;
    const double match_tol = 0.25;
    std::vector<Bracket> brackets;
    for (int i = 0; i <= steps; ++i) {
        const double T = T_from + (T_to - T_from) * i / steps;
        auto p = path(T);
        auto st = sweep_state(p);
        if (i > 0) {
            locate(path, prev_T, T, prev_state, st, bracket_tol, 0, brackets);
        }
        // greedy nearest-neighbour continuation
        auto items = sweep_items(p);
        std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
        for (std::size_t a = 0; a < items.size(); ++a)
            for (std::size_t b = 0; b < prev.size(); ++b) {
                if (items[a].biaxial != prev[b].first.biaxial) continue;
                double d = std::hypot(items[a].xp - prev[b].first.xp, items[a].up - prev[b].first.up);
                if (d < match_tol) pairs.emplace_back(d, a, b);
            }
        std::sort(pairs.begin(), pairs.end());
        std::vector<int> id(items.size(), -1);
        std::vector<bool> used(prev.size(), false);
        for (auto& [d, a, b] : pairs) {
            if (id[a] >= 0 || used[b]) continue;
            id[a] = prev[b].second;
            used[b] = true;
        }
        std::vector<std::pair<Item, int>> cur;
        for (std::size_t a = 0; a < items.size(); ++a) {
            if (id[a] < 0) id[a] = next_id++;
            cur.emplace_back(items[a], id[a]);
            res.table.push_back({T, id[a], items[a].xp, items[a].up, items[a].biaxial, items[a].type});
        }
        prev = std::move(cur);
        prev_state = std::move(st);
        prev_T = T;
    }
    res.events = merge_brackets(brackets, bracket_tol);
    return res;
}

// Tangency -----------------------------------------------------------------

TangencyReport tangency_check(const NormalFormParams& fixed, bool positive_x) {
    if (!(fixed.e4 < 0)) throw Error("tangency_check: needs e4 < 0");
    if (fixed.e5 != 0) throw Error("tangency_check: needs e5 = 0");
    if (fixed.e8 != 0) throw Error("tangency_check: needs e8 = 0");
    if (fixed.n == 0) throw Error("tangency_check: n = 0");
    TangencyReport rep;
    const double sgn = positive_x ? 1 : -1;

    // Biaxial birth at x on the axis puts (e2,e3) on B0; that point also lies
    // on S exactly when x is a double root of the axis polynomial there.
    auto h = [&](double x) {
        auto e = b0_point(fixed, x);
        auto p = fixed;
        p.e2 = e.x();
        p.e3 = e.y();
        return horner_deriv(axis_polynomial(p), x) / x;
    };
    const double xmax = 10 * std::sqrt(std::abs(fixed.e4) / (std::abs(fixed.m) + std::abs(fixed.n))) + 1;
    const int N = 4000;
    double lo = 0, hi = 0;
    bool found = false;
    double prev_x = sgn * xmax / N, prev_h = h(prev_x);
    for (int i = 2; i <= N && !found; ++i) {
        double x = sgn * xmax * i / N, hx = h(x);
        if ((hx > 0) != (prev_h > 0)) {
            lo = prev_x;
            hi = x;
            found = true;
        }
        prev_x = x;
        prev_h = hx;
    }
    if (!found) throw InvariantViolation("tangency_check: no contact found");
    double hlo = h(lo);
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi), hm = h(mid);
        if ((hm > 0) == (hlo > 0)) {
            lo = mid;
            hlo = hm;
        } else {
            hi = mid;
        }
    }
    const double xc = 0.5 * (lo + hi);
    rep.x_contact = xc;
    rep.contact = b0_point(fixed, xc);

    auto pc = fixed;
    pc.e2 = rep.contact.x();
    pc.e3 = rep.contact.y();
    auto F = axis_polynomial(pc);
    rep.axis_residual = std::max(std::abs(horner(F, xc)), std::abs(horner_deriv(F, xc)));
    {
        const double X = xc * xc, Y = X * xc;
        rep.biaxial_residual = std::max(std::abs(horner(biaxial_cubic(pc), X)),
                                        std::abs(pc.e3 + pc.e5 * X + 2 * pc.n * Y));
    }

    // tangent directions from shrinking central chords
    auto chord_angle = [&](double step) {
        Eigen::Vector2d ts = swallowtail_point(fixed, xc + step) - swallowtail_point(fixed, xc - step);
        Eigen::Vector2d tb = b0_point(fixed, xc + step) - b0_point(fixed, xc - step);
        return angle_between(ts, tb);
    };
    double step = 1e-2 * std::max(std::abs(xc), 1e-3);
    double ang = chord_angle(step);
    for (int it = 0; it < 30; ++it) {
        step *= 0.5;
        double a2 = chord_angle(step);
        if (std::abs(a2 - ang) < 1e-10) {
            ang = a2;
            break;
        }
        ang = a2;
        if (step < 1e-7 * std::max(std::abs(xc), 1e-3)) break;
    }
    rep.contact_angle = ang;

    // transversal crossing: S against the B1 segment
    auto l = b1_line(fixed);
    if (l.exists) {
        auto gap = [&](double x) {
            auto s = swallowtail_point(fixed, x);
            return s.x() - (l.e2_at_zero + l.slope * s.y());
        };
        const int M = 4000;
        double bestd = 1e300;
        for (int i = -M; i < M; ++i) {
            double a = xmax * i / M, b = xmax * (i + 1) / M;
            double ga = gap(a), gb = gap(b);
            if ((ga > 0) == (gb > 0)) continue;
            for (int it = 0; it < 200; ++it) {
                double mid = 0.5 * (a + b), gm = gap(mid);
                if ((gm > 0) == (ga > 0)) {
                    a = mid;
                    ga = gm;
                } else {
                    b = mid;
                }
            }
            double x = 0.5 * (a + b);
            auto s = swallowtail_point(fixed, x);
            if (s.y() <= l.e3_lo || s.y() >= l.e3_hi) continue;
            double d = (s - rep.contact).norm();
            if (d < bestd) {
                bestd = d;
                rep.crossing = s;
                rep.crossing_angle = angle_between(swallowtail_tangent(fixed, x), Eigen::Vector2d(l.slope, 1));
                rep.crossing_found = true;
            }
        }
    }
    return rep;
}

}  // namespace lcb
