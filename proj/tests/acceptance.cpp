// Acceptance run: one PASS/FAIL line per criterion, with timings. Indented
// lines under a criterion are diagnostics. Exit status is the number of FAILs.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lcb/critpoints.hpp"
#include "lcb/groupact.hpp"
#include "lcb/invariants.hpp"
#include "lcb/kkls.hpp"
#include "lcb/landau.hpp"
#include "lcb/reduction.hpp"
#include "lcb/singtools.hpp"
#include "oracles.hpp"

using namespace lcb;

namespace {

struct Outcome {
    bool pass = true;
    std::string summary;
    std::vector<std::string> notes;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back("failed: " + what);
        }
    }
};

template <class... A>
std::string fmt(const char* f, A... a) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, a...);
    return buf;
}

NormalFormParams at(NormalFormParams f, double e2, double e3) {
    f.e2 = e2;
    f.e3 = e3;
    return f;
}

// 1 ---------------------------------------------------------------------
Outcome molien_exactness() {
    Outcome o;
    auto m72 = molien_finite(d3tilde_on_r4(), 12);
    auto m36 = molien_finite(d3xd3_on_r4(), 12);
    auto m6 = molien_finite(d3_on_r2(), 12);
    o.require(m72 == molien_rational({0, 5}, {2, 3, 4, 6}, 12), "72-element group vs (1+t^5)/((1-t^2)(1-t^3)(1-t^4)(1-t^6))");
    o.require(m36 == molien_rational({0, 5, 6, 11}, {2, 3, 4, 6}, 12), "36-element subgroup vs (1+t^5)(1+t^6)/(...)");
    o.require(m6 == molien_rational({0}, {2, 3}, 12), "D3 on the plane vs 1/((1-t^2)(1-t^3))");
    std::ostringstream s;
    for (auto c : m72) s << c << " ";
    o.summary = "72-group degrees 0..12: " + s.str();
    return o;
}

// 2 ---------------------------------------------------------------------
Outcome so3_molien() {
    Outcome o;
    auto r = molien_so3_conjugacy(10);
    o.require(r.coeffs == molien_rational({0}, {2, 3}, 10), "coefficients vs 1/((1-t^2)(1-t^3))");
    o.require(r.max_residual < 1e-8, "integer-rounding residual < 1e-8");
    o.summary = fmt("grid %d, max residual %.2e", r.grid_points, r.max_residual);
    return o;
}

// 3 ---------------------------------------------------------------------
Outcome entropy_coefficients() {
    Outcome o;
    auto e = kkls_coefficients(6, 16);
    const auto& a = e.primed;  // a3 a4 b4 a5 b5 a6 b6 c6 d6
    const double C6 = 125.0 / 98882784.0;
    double d3 = std::abs(a[0] - 25.0 / 21.0);
    double d4 = std::max(std::abs(std::abs(a[1]) - 125.0 / 784.0), std::abs(std::abs(a[2]) - 425.0 / 196.0));
    const double dec6[4] = {0.53, 3.92, 0.91, 0.77};
    const double int6[4] = {419600, 3099312, 716640, 612405};
    double d6dec = 0, d6ex = 0;
    for (int i = 0; i < 4; ++i) {
        d6dec = std::max(d6dec, std::abs(std::abs(a[5 + i]) - dec6[i]));
        d6ex = std::max(d6ex, std::abs(std::abs(a[5 + i]) - C6 * int6[i]));
    }
    double d5 = std::max(std::abs(std::abs(a[3]) - 1.73), std::abs(std::abs(a[4]) - 6.87));
    o.require(d3 < 1e-9, "a3' = 25/21");
    o.require(d4 < 1e-9, "|a4'|,|b4'| = 125/784, 425/196");
    o.require(d6dec < 5e-3, "degree-6 decimals");
    o.require(d6ex < 1e-8, "degree-6 exact C6 multiples");
    o.require(d5 < 5e-3, "degree-5 magnitudes within 5e-3 of (1.73, 6.87)");
    // prefactor implied by the quadrature, in units of C6
    double c5a = std::abs(a[3]) / 125.0 / C6, c5b = std::abs(a[4]) / 498.0 / C6;
    o.summary = fmt("|a3'-25/21| %.1e, deg4 %.1e, deg6 dec %.1e exact %.1e, deg5 |a5'|,|b5'| = %.6f, %.6f", d3, d4,
                    d6dec, d6ex, std::abs(a[3]), std::abs(a[4]));
    o.notes.push_back(fmt("degree 5: quadrature gives (a5',b5') proportional to (125,498) with |C5| = %.4f C6 (from a5') "
                          "and %.4f C6 (from b5')",
                          c5a, c5b));
    o.notes.push_back(fmt("printed C5 = -840 C6 gives (%.4f, %.4f); decimals (1.73, 6.87) imply -10920 C6; neither matches",
                          840 * C6 * 125, 840 * C6 * 498));
    o.notes.push_back(fmt("signed values: a5' = %.6f, b5' = %.6f (opposite signs; the printed pair shares one sign)", a[3], a[4]));
    return o;
}

// 4 ---------------------------------------------------------------------
Outcome reduction_exactness() {
    Outcome o;
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 7), pq(1, 6);
    std::bernoulli_distribution flip;
    auto r = [&] {
        Rational q(num(rng), den(rng));
        q.canonicalize();
        return q;
    };
    int mixed_le4 = 0, mixed5 = 0, mixed_ext = 0, resid = 0, resid_ext = 0;
    int e5_first = 0, e6_first = 0, e6_second = 0, d6 = 0, a6_nonzero = 0;
    const int trials = 100;
    for (int t = 0; t < trials; ++t) {
        RationalLandauCoeffs k;
        k.a3 = r();
        k.a4 = r();
        k.b4 = r();
        k.a5 = r();
        k.b5 = r();
        k.a6 = r();
        k.b6 = r();
        k.c6 = r();
        k.d6 = r();
        if (k.a6 != 0) ++a6_nonzero;
        auto [cx, sx] = pythagorean_point(pq(rng), pq(rng));
        if (flip(rng)) cx = -cx;
        if (flip(rng)) sx = -sx;
        Rational mu(pq(rng), 5);
        auto rep = verify_reduction(k, cx, sx, mu);
        mixed_le4 += rep.max_mixed_le4 != 0;
        mixed5 += rep.max_mixed_deg5 != 0;
        mixed_ext += rep.max_mixed_extended != 0;
        resid += rep.residual_match_error != 0;
        resid_ext += rep.extended_match_error != 0;
        e5_first += rep.printed_e5_first_error != 0;
        e6_first += rep.printed_e6_first_error != 0;
        e6_second += rep.printed_e6_second_error != 0;
        d6 += rep.printed_d6_error != 0;
    }
    o.require(mixed_le4 == 0, "no (y,v)-linear terms of degree <= 4");
    o.require(mixed5 == 0, "no (y,v)-linear terms of degree 5 with the tabulated shear");
    o.require(resid == 0, "residual equals the coefficient map");
    o.require(e5_first + e6_first + e6_second + d6 == 0, "residual agrees with the printed closed forms");
    o.summary = fmt("%d trials: mixed deg<=4 nonzero in %d, deg 5 in %d (extended shear: %d); residual vs derived map "
                    "mismatches %d (extended %d)",
                    trials, mixed_le4, mixed5, mixed_ext, resid, resid_ext);
    o.notes.push_back(fmt("printed forms: e5 first expression wrong in %d, e6 first in %d, e6 second in %d, d6 in %d "
                          "(a6 != 0 in %d trials)",
                          e5_first, e6_first, e6_second, d6, a6_nonzero));
    o.notes.push_back("the degree-3 shear leaves degree-5 (y,v)-linear terms; adding the degree-4 correction g/(4 mu) clears them");
    o.notes.push_back("derived map: e6 gains +a6 C^2, d6 gains -a6 C^2, and the a4 term in e6 is -4 a4 C^2 sigma^2");
    return o;
}

// 5 ---------------------------------------------------------------------
Outcome oracle_equivalence() {
    Outcome o;
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> U(-1, 1);
    const double R = 2.0, band = 1e-3;
    int count_mismatch = 0, total_points = 0;
    double worst = 0;
    for (int t = 0; t < 200; ++t) {
        NormalFormParams p{U(rng), U(rng), U(rng), U(rng), U(rng), 0, 1, 1};
        auto mine = all_critical_points(p);
        auto ref = oracle::brute_force_critical(p, R);
        int n_mine = 0, n_ref = 0;
        for (const auto& c : mine) {
            if (c.pos.norm() > R - band) continue;
            ++n_mine;
            double best = 1e9;
            for (const auto& q : ref) best = std::min(best, (q - c.pos).norm());
            worst = std::max(worst, best);
        }
        for (const auto& q : ref) {
            if (q.norm() > R - band) continue;
            ++n_ref;
            double best = 1e9;
            for (const auto& c : mine) best = std::min(best, (q - c.pos).norm());
            worst = std::max(worst, best);
        }
        count_mismatch += n_mine != n_ref;
        total_points += n_mine;
    }
    o.require(count_mismatch == 0, "counts agree on every draw");
    o.require(worst < 1e-8, "positions within 1e-8");
    o.summary = fmt("200 draws, %d points in |z| < %.3f, count mismatches %d, worst distance %.1e", total_points,
                    R - band, count_mismatch, worst);
    return o;
}

// 6 ---------------------------------------------------------------------
Outcome census_landmarks() {
    Outcome o;
    NormalFormParams f;
    f.e4 = -1;
    // bounding box of the swallowtail triangle: cusps and the self-crossing on e3 = 0
    auto S = swallowtail_section(f, -0.6, 0.6, 2401);
    double e2lo = 1e9, e2hi = -1e9, e3lo = 1e9, e3hi = -1e9;
    for (auto i : S.cusps) {
        e2lo = std::min(e2lo, S.points[i].x());
        e2hi = std::max(e2hi, S.points[i].x());
        e3lo = std::min(e3lo, S.points[i].y());
        e3hi = std::max(e3hi, S.points[i].y());
    }
    double cross = -1e9;
    for (std::size_t i = 0; i + 1 < S.points.size(); ++i)
        if (S.params[i] > 0 && S.points[i].y() * S.points[i + 1].y() <= 0) cross = std::max(cross, S.points[i].x());
    e2lo = std::min(e2lo, cross);
    e2hi = std::max(e2hi, cross);
    auto cen = region_census(f, e2lo, e2hi, 61, e3lo, e3hi, 61);
    int found = 0;
    double fe2 = 0, fe3 = 0;
    for (const auto& c : cen.cells)
        if (c.count.axis_roots == 4 && c.count.total == 25 && c.count.biaxial_orbits == 2) {
            if (!found) fe2 = c.e2, fe3 = c.e3;
            ++found;
        }
    o.require(found > 0, "a 25-point cell inside the triangle");
    // e4 > 0, e3 = 0.1, e2 decreasing
    NormalFormParams g;
    g.e4 = 1;
    std::vector<int> seq;
    std::vector<std::string> what;
    CriticalCount prev{};
    for (int i = 0; i <= 800; ++i) {
        auto c = count_critical(at(g, 0.2005 - 1.0 * i / 800, 0.1));
        if (i == 0 || c.total != prev.total) {
            seq.push_back(c.total);
            if (i > 0) what.push_back(c.axis_roots != prev.axis_roots ? "S" : (c.biaxial_orbits != prev.biaxial_orbits ? "B" : "?"));
        }
        prev = c;
    }
    o.require(seq == std::vector<int>{1, 7, 13}, "sequence 1 -> 7 -> 13");
    o.require(what == std::vector<std::string>{"S", "B"}, "S crossing first, then B");
    std::string s;
    for (std::size_t i = 0; i < seq.size(); ++i) s += (i ? (" -" + what[i - 1] + "-> ") : "") + std::to_string(seq[i]);
    o.summary = fmt("%d cells with 25 points in the triangle box [%.3f,%.3f]x[%.3f,%.3f], e.g. (%.4f, %.4f); e4 > 0 walk: ",
                    found, e2lo, e2hi, e3lo, e3hi, fe2, fe3) +
                s;
    return o;
}

// 7 ---------------------------------------------------------------------
Outcome b1_closed_form() {
    Outcome o;
    double worst = 0;
    for (double m : {0.5, 1.0, 2.0})
        for (double e4 : {-1.0, -0.3}) {
            NormalFormParams f;
            f.m = m;
            f.e4 = e4;
            const double e3 = 1e-3, target = e4 * e4 / (3 * m);
            double lo = 0.5 * target, hi = 1.5 * target;
            if (count_critical(at(f, lo, e3)).biaxial_orbits != 2 || count_critical(at(f, hi, e3)).biaxial_orbits != 0) {
                o.require(false, fmt("bracket for m=%g e4=%g", m, e4));
                continue;
            }
            for (int it = 0; it < 60; ++it) {
                double mid = 0.5 * (lo + hi);
                (count_critical(at(f, mid, e3)).biaxial_orbits == 2 ? lo : hi) = mid;
            }
            worst = std::max(worst, std::abs(0.5 * (lo + hi) - target));
        }
    o.require(worst < 1e-6, "transition within 1e-6 of e4^2/(3m)");
    o.summary = fmt("6 (m, e4) pairs at e3 = 1e-3, worst |e2 - e4^2/(3m)| = %.2e", worst);
    return o;
}

// 8 ---------------------------------------------------------------------
Outcome tangency() {
    Outcome o;
    double worst_contact = 0, min_cross = 1e9;
    for (auto [e4, m, n] : {std::tuple{-1.0, 1.0, 1.0}, std::tuple{-0.5, 2.0, 0.7}})
        for (bool side : {true, false}) {
            NormalFormParams f;
            f.e4 = e4;
            f.m = m;
            f.n = n;
            auto t = tangency_check(f, side);
            o.require(t.axis_residual < 1e-8 && t.biaxial_residual < 1e-8, "contact is a simultaneous fold and birth");
            o.require(t.crossing_found, "a transversal S/B crossing exists");
            worst_contact = std::max(worst_contact, t.contact_angle);
            min_cross = std::min(min_cross, t.crossing_angle);
        }
    o.require(worst_contact < 1e-3, "contact angle < 1e-3");
    o.require(min_cross > 0.1, "crossing angle > 0.1");
    o.summary = fmt("max contact angle %.1e rad, min crossing angle %.3f rad (2 parameter sets x 2 sides)", worst_contact,
                    min_cross);
    return o;
}

// 9 ---------------------------------------------------------------------
Outcome determinacy() {
    Outcome o;
    auto suite = low_codim_suite();
    std::string line;
    for (const auto& c : suite) {
        bool ok = c.verdict.holds == c.claimed;
        line += fmt("%d:%s ", c.number, ok ? "ok" : "DIFF");
        if (!ok) {
            std::string w = c.verdict.witness ? fmt("X^%dY^%d", c.verdict.witness->first, c.verdict.witness->second) : "-";
            o.notes.push_back(fmt("case %d (%s, k=%d): claimed %s, computed %s; first gap at degree %d, witness %s", c.number,
                                  c.f.to_string().c_str(), c.k, c.claimed ? "determined" : "not determined",
                                  c.verdict.holds ? "determined" : "not determined", c.verdict.failing_degree, w.c_str()));
        }
        o.require(ok, fmt("case %d verdict", c.number));
    }
    using W = WeightedPoly;
    auto f6 = W::monomial(3, 0) + W::monomial(0, 2);
    bool eq = w0_equality(f6 + W::monomial(4, 0), f6, 7, 14);
    o.require(eq, "W0(f6+X^4) = W0(f6) on 7..14");
    auto f8 = W::monomial(4, 0) + W::monomial(1, 2);
    auto v8 = k_determined(f8, 8);
    o.require(v8.holds, "f8 is 8-determined");
    if (!v8.holds) {
        const auto& d9 = v8.degrees[static_cast<std::size_t>(v8.failing_degree - 9)];
        o.notes.push_back(fmt("f8 = X^4 + XY^2: degree %d has %d of %d directions; the only contribution is df.V2 = "
                              "14X^3Y + 2Y^3 (df.V1 = 8 f8 needs a multiplier of degree >= 2)",
                              v8.failing_degree, d9.rank, d9.dim));
    }
    o.summary = "cases " + line + fmt("| W0 equality %s | f8 8-determined: %s", eq ? "yes" : "no", v8.holds ? "yes" : "no");
    return o;
}

// 10 --------------------------------------------------------------------
Outcome versality() {
    Outcome o;
    using W = WeightedPoly;
    auto f6 = W::monomial(3, 0) + W::monomial(0, 2);
    std::vector<XYMonomial> M{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {3, 0}, {4, 0}};
    o.require(versal_check(f6, M, 16).holds, "f6 family with {1,X,Y,X^2,XY,X^3,X^4}");
    std::string drops;
    for (XYMonomial m : {XYMonomial{2, 0}, XYMonomial{3, 0}, XYMonomial{4, 0}}) {
        std::vector<XYMonomial> fewer;
        for (const auto& x : M)
            if (x != m) fewer.push_back(x);
        auto v = versal_check(f6, fewer, 16);
        o.require(!v.holds && v.failing_degree == weighted_degree(m), fmt("dropping X^%d breaks at degree %d", m.first, weighted_degree(m)));
        drops += fmt("X^%d->deg %d ", m.first, v.failing_degree);
    }
    o.require(versal_check(W::Y(), {{0, 0}, {1, 0}}, 14).holds, "h = Y with {1, X}");
    o.summary = "f6 family certified to degree 16; removals break at " + drops + "; h = Y with {1,X} certified";
    return o;
}

// 11 --------------------------------------------------------------------
Outcome spanning() {
    Outcome o;
    auto r = spanning_check(30, 2024);
    o.require(r.linear_rank == 25, "linear rank 25");
    o.require(r.affine_rank == 25, "affine rank 25");
    o.require(r.identity_residual < 1e-12, "explicit identity < 1e-12");
    o.summary = fmt("30 rotations, seed 2024: linear rank %d, affine rank %d, identity residual %.1e", r.linear_rank,
                    r.affine_rank, r.identity_residual);
    return o;
}

// 12 --------------------------------------------------------------------
Outcome property_suites() {
    Outcome o;
    std::mt19937_64 rng(12);
    std::normal_distribution<double> N;
    double syz = 0;
    for (int k = 0; k < 1000; ++k) {
        auto v = eval_basis_r4(N(rng), N(rng), N(rng), N(rng));
        double scale = v.f5 * v.f5 + std::abs(v.f4 * v.f6) + 1e-300;
        syz = std::max(syz, std::abs(v.f5 * v.f5 + v.f4 * v.f6) / scale);
    }
    o.require(syz < 1e-12, "syzygy at 1000 points");

    auto grp = d3tilde_on_r4();
    double inv = 0;
    for (int k = 0; k < 40; ++k) {
        std::vector<double> x{N(rng), N(rng), N(rng), N(rng)};
        double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
        auto v = eval_basis_r4(x[0], x[1], x[2], x[3]);
        double base[5] = {v.f2, v.f3, v.f4, v.f5, v.f6};
        for (const auto& g : grp.elements) {
            auto y = g.act(x);
            auto w = eval_basis_r4(y[0], y[1], y[2], y[3]);
            double img[5] = {w.f2, w.f3, w.f4, w.f5, w.f6};
            for (int i = 0; i < 5; ++i) inv = std::max(inv, std::abs(img[i] - base[i]) / std::pow(r, i + 2));
        }
    }
    o.require(inv < 1e-12, "f2..f6 invariant under the 72 elements");

    // crossings of the cone along random rays, located from the quadratic in t
    int flips = 0, bad = 0;
    for (int k = 0; k < 1000; ++k) {
        double pa = N(rng), pb = N(rng), pg = N(rng), va = N(rng), vb = N(rng), vg = N(rng);
        double A = va * vb - vg * vg, B = pa * vb + pb * va - 2 * pg * vg, C = pa * pb - pg * pg;
        double disc = B * B - 4 * A * C;
        if (disc <= 1e-6 || std::abs(A) < 1e-6) continue;
        double q = -0.5 * (B + std::copysign(std::sqrt(disc), B));
        for (double t0 : {q / A, C / q}) {
            if (std::abs(t0) > 10) continue;
            auto cls = [&](double t) { return stability_classify(pa + t * va, pb + t * vb, pg + t * vg); };
            auto lo = cls(t0 - 1e-10), hi = cls(t0 + 1e-10);
            ++flips;
            if (lo == hi || lo == Stability::marginal || hi == Stability::marginal) ++bad;
        }
    }
    o.require(bad == 0, "classification flips within 1e-10 of alpha beta = gamma^2");

    // fixed points of B W = kT eta against the free-energy critical points
    const double kT = 1.0;
    auto ent = kkls_coefficients(6, 16);
    KklsModel model(16);
    Quadratic quad{-0.02, 0.03, 0.01};
    auto k = physical_coeffs(quad, kT, ent);
    Solve4dOptions opt;
    opt.search_radius = 0.06;
    auto cs = critical_points_4d(k, opt);
    std::vector<Eigen::Vector4d> seeds;
    for (const auto& p : cs.points) seeds.push_back(5.0 * p.location);
    std::mt19937_64 srng(2);
    std::normal_distribution<double> S(0, 0.15);
    for (int i = 0; i < 200; ++i) seeds.emplace_back(S(srng), S(srng), S(srng), S(srng));
    auto fps = solve_fixed_point(model, hamiltonian_B(quad, kT), kT, seeds);
    double fp_worst = 0;
    int small_fp = 0, small_cp = 0;
    for (const auto& fp : fps) {
        if (fp.W.norm() > 0.05) continue;
        ++small_fp;
        double best = 1e9;
        for (const auto& p : cs.points) best = std::min(best, (p.location - fp.W).norm());
        fp_worst = std::max(fp_worst, best);
    }
    for (const auto& p : cs.points) {
        if (p.location.norm() > 0.05) continue;
        ++small_cp;
        double best = 1e9;
        for (const auto& fp : fps) best = std::min(best, (p.location - fp.W).norm());
        fp_worst = std::max(fp_worst, best);
    }
    o.require(small_fp == small_cp && small_cp > 1 && fp_worst < 1e-6, "fixed points match critical points at |W| <= 0.05");
    o.summary = fmt("syzygy %.1e, invariance %.1e, %d cone flips (%d bad), fixed points %d vs critical points %d, worst %.1e",
                    syz, inv, flips, bad, small_fp, small_cp, fp_worst);
    return o;
}

struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0 = no runtime bound
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    std::vector<Criterion> all{
        {1, "Molien exactness", 1, molien_exactness},
        {2, "SO(3) Molien", 1, so3_molien},
        {3, "entropy coefficients", 60, entropy_coefficients},
        {4, "reduction exactness", 30, reduction_exactness},
        {5, "normal-form oracle equivalence", 60, oracle_equivalence},
        {6, "census landmarks", 0, census_landmarks},
        {7, "B1 closed form", 0, b1_closed_form},
        {8, "tangency", 0, tangency},
        {9, "determinacy suite", 5, determinacy},
        {10, "versality", 5, versality},
        {11, "spanning", 0, spanning},
        {12, "property suites", 0, property_suites},
    };
    int failures = 0;
    for (const auto& c : all) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.summary = std::string("threw: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit_s > 0 && secs > c.limit_s) o.require(false, fmt("runtime %.2f s over %.0f s", secs, c.limit_s));
        failures += !o.pass;
        std::printf("C%-2d %s %7.3fs  %s: %s\n", c.id, o.pass ? "PASS" : "FAIL", secs, c.name, o.summary.c_str());
        for (const auto& n : o.notes) std::printf("        %s\n", n.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria pass\n", static_cast<int>(all.size()) - failures, all.size());
    return failures;
}
