#include "doctest.h"

#include <cmath>
#include <random>

#include "lcb/landau.hpp"

using namespace lcb;

TEST_CASE("quadratic coefficients from T and lambda") {
    auto cp = make_cone_params(0.3, 1.0, {1, 1, 1});
    auto q = coeffs_from_Tlambda(cp);
    CHECK(q.gamma == 0);
    CHECK(q.alpha == doctest::Approx(2.5 * 0.3 - 0.25));
    CHECK(q.beta == doctest::Approx(q.alpha));
    auto v = coeffs_from_Tlambda(make_cone_params(0.1, 1.0, {1, 1, 1}));
    CHECK(std::abs(v.alpha * v.beta - v.gamma * v.gamma) < 1e-15);

    auto e = coeffs_from_Tlambda(make_cone_params(0.2, 2.0, {0.4, 0.4, 0.2}));
    CHECK(e.gamma == 0);
    CHECK_THROWS_AS(make_cone_params(0.2, 1.0, {1, -1, 0}), Error);
}

TEST_CASE("cone points") {
    auto v = cone_point(0.1, 0.7, 1.0);
    for (double l : v.lambda) CHECK(l == doctest::Approx(1.0 / 3));
    auto z = cone_point(0.2, 0.0, 1.0);
    CHECK(z.lambda[0] == doctest::Approx(z.lambda[1]));
    CHECK_THROWS_AS(cone_point(0.05, 0.3, 1.0), Error);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> T(0.101, 0.5), X(-3.2, 3.2);
    for (int k = 0; k < 200; ++k) {
        auto cp = cone_point(T(rng), X(rng), 1.0);
        CHECK(cp.lambda[0] + cp.lambda[1] + cp.lambda[2] == doctest::Approx(1.0).epsilon(1e-14));
        auto q = coeffs_from_Tlambda(cp);
        CHECK(std::abs(q.alpha * q.beta - q.gamma * q.gamma) < 1e-12);
        CHECK(q.alpha + q.beta == doctest::Approx(2 * cp.mu));
        CHECK(q.alpha == doctest::Approx(2 * cp.mu * std::cos(cp.xi) * std::cos(cp.xi)));
        CHECK(q.gamma == doctest::Approx(2 * cp.mu * std::sin(cp.xi) * std::cos(cp.xi)));
        CHECK(cp.R_T == doctest::Approx(std::sqrt(2.0 / 3.0) * (10 * cp.T - 1)));
    }
}

TEST_CASE("stability classification examples") {
    CHECK(stability_classify(1, 1, 0) == Stability::stable);
    CHECK(stability_classify(1, 1, 1) == Stability::marginal);
    CHECK(stability_classify(1, -1, 0) == Stability::saddle_2_2);
    CHECK(stability_classify(-1, -2, 0.5) == Stability::unstable_4);
}

TEST_CASE("classification flips on the cone along random rays") {
    // ray (alpha,beta,gamma) = p + t v; det(t) quadratic, roots located exactly
    std::mt19937_64 rng(21);
    std::normal_distribution<double> N;
    int checked = 0;
    for (int k = 0; k < 1000; ++k) {
        double pa = N(rng), pb = N(rng), pg = N(rng), va = N(rng), vb = N(rng), vg = N(rng);
        double A = va * vb - vg * vg, B = pa * vb + pb * va - 2 * pg * vg, C = pa * pb - pg * pg;
        double disc = B * B - 4 * A * C;
        if (disc <= 1e-6 || std::abs(A) < 1e-6) continue;
        double q = -0.5 * (B + std::copysign(std::sqrt(disc), B));
        for (double t0 : {q / A, C / q}) {
            if (std::abs(t0) > 10) continue;  // far crossings lose the 1e-10 offset to rounding
            auto at = [&](double t) { return stability_classify(pa + t * va, pb + t * vb, pg + t * vg); };
            auto lo = at(t0 - 1e-10), hi = at(t0 + 1e-10);
            CHECK(lo != hi);
            CHECK(lo != Stability::marginal);
            CHECK(hi != Stability::marginal);
            ++checked;
        }
    }
    CHECK(checked > 500);
}

TEST_CASE("free energy assembly") {
    RationalLandauCoeffs k;
    k.alpha = k.beta = 1;
    auto v = RationalSeries::variables(4, 6);
    CHECK(free_energy(k) == v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]);
    RationalLandauCoeffs g;
    g.gamma = 1;
    CHECK(free_energy(g) == (v[0] * v[2] + v[1] * v[3]) * Rational(2));

    RationalLandauCoeffs r{Rational(1, 3), Rational(-2), Rational(5, 7), Rational(1), Rational(-1, 2), Rational(3),
                           Rational(2, 9), Rational(-4), Rational(1, 11), Rational(6), Rational(-1, 5), Rational(2)};
    auto fit = fit_invariant_basis(free_energy(r));
    CHECK(fit.residual == 0.0);
    CHECK(RationalLandauCoeffs::from_array(fit.exact_coeffs).to_array() == r.to_array());
}

TEST_CASE("free energy symmetry") {
    RationalLandauCoeffs r{Rational(1, 3), Rational(-2), Rational(5, 7), Rational(1), Rational(-1, 2), Rational(3),
                           Rational(2, 9), Rational(-4), Rational(1, 11), Rational(6), Rational(-1, 5), Rational(2)};
    auto f = free_energy(r);
    auto quad = f.homogeneous(2);
    auto higher = f - quad;
    for (const auto& g : d3tilde_on_r4().elements) REQUIRE(compose(higher, g) == lift(higher));
    for (const auto& g : d3_left_on_r4().elements) REQUIRE(compose(f, g) == lift(f));
    // a generic quadratic part is not fixed by the rest of the 36-element subgroup
    int fixed = 0;
    for (const auto& g : d3xd3_on_r4().elements) fixed += compose(f, g) == lift(f);
    CHECK(fixed == 6);
    CHECK(symmetry_subgroup(LandauCoeffs::from_array({1.0 / 3, -2, 5.0 / 7, 1, 0, 0, 0, 0, 0, 0, 0, 0})).size() == 6);
    CHECK(symmetry_subgroup(LandauCoeffs::from_array({1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0})).size() == 72);
}

TEST_CASE("gradient and Hessian against finite differences") {
    LandauCoeffs k = LandauCoeffs::from_array({0.3, -0.2, 0.1, -1.1, 0.4, 2.0, 0.6, -2.7, -0.5, 3.9, 0.9, 0.7});
    auto f = free_energy(k);
    Eigen::Vector4d x(0.2, -0.1, 0.3, 0.05);
    auto g = free_energy_gradient(k, x);
    auto H = free_energy_hessian(k, x);
    const double h = 1e-6;
    for (int i = 0; i < 4; ++i) {
        Eigen::Vector4d xp = x, xm = x;
        xp(i) += h;
        xm(i) -= h;
        auto ev = [&](const Eigen::Vector4d& y) { return f.evaluate(std::vector<double>{y(0), y(1), y(2), y(3)}); };
        CHECK(g(i) == doctest::Approx((ev(xp) - ev(xm)) / (2 * h)).epsilon(1e-7));
        Eigen::Vector4d dg = (free_energy_gradient(k, xp) - free_energy_gradient(k, xm)) / (2 * h);
        CHECK((dg - H.col(i)).norm() < 1e-7);
    }
}

TEST_CASE("point tags") {
    CHECK(classify_point(Eigen::Vector4d::Zero()) == PointTag::isotropic);
    CHECK(classify_point(Eigen::Vector4d(0.3, 0, -0.1, 0)) == PointTag::uniaxial);
    // rotate the x-axis by 2pi/3 in both planes: still uniaxial
    double c = -0.5, s = std::sqrt(3.0) / 2;
    CHECK(classify_point(Eigen::Vector4d(0.3 * c, 0.3 * s, -0.1 * c, -0.1 * s)) == PointTag::uniaxial);
    CHECK(classify_point(Eigen::Vector4d(0.3, 0.1, -0.1, 0.2)) == PointTag::biaxial);
}

TEST_CASE("critical points: positive definite quadratic has only the origin") {
    auto cs = critical_points_4d(LandauCoeffs::from_array({1, 2, 0.5, 0, 0, 0, 0, 0, 0, 0, 0, 0}));
    REQUIRE(cs.points.size() == 1);
    CHECK(cs.points[0].location.norm() == 0);
    CHECK(cs.points[0].morse_index == 0);
    CHECK(cs.points[0].tag == PointTag::isotropic);
}

TEST_CASE("critical points: degenerate sphere is reported") {
    // -f2 + f2^2: critical on the sphere f2 = 1/2
    Solve4dOptions opt;
    opt.grid_n = 3;
    auto cs = critical_points_4d(LandauCoeffs::from_array({-1, -1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0}), opt);
    CHECK(cs.any_degenerate);
    for (const auto& p : cs.points) {
        if (p.location.norm() < 1e-9) {
            CHECK_FALSE(p.degenerate);
            CHECK(p.morse_index == 4);
        } else {
            CHECK(p.degenerate);
            CHECK(p.location.squaredNorm() == doctest::Approx(0.5));
        }
    }
}

TEST_CASE("orbits are critical with a common Morse index") {
    LandauCoeffs k = LandauCoeffs::from_array({-0.05, 0.08, 0.02, -1.19, -0.16, 2.17, 0.69, -2.75, -0.53, 3.92, 0.91, 0.77});
    Solve4dOptions opt;
    opt.search_radius = 0.3;
    auto cs = critical_points_4d(k, opt);
    CHECK(cs.symmetry_order == 6);
    CHECK(cs.points.size() > 1);
    std::map<int, int> idx;
    std::map<int, int> count;
    for (const auto& p : cs.points) {
        CHECK(p.gradient_norm < 1e-10);
        CHECK((free_energy_gradient(k, p.location)).norm() < 1e-10);
        CHECK_FALSE(p.degenerate);
        auto [it, ins] = idx.emplace(p.orbit_id, p.morse_index);
        if (!ins) CHECK(it->second == p.morse_index);
        ++count[p.orbit_id];
    }
    // orbit sizes divide the group order
    for (auto [o, c] : count) CHECK(6 % c == 0);
}

TEST_CASE("linearized fixed-point map drops rank on the cone") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> T(0.11, 0.4), X(-1.5, 1.5);
    for (int k = 0; k < 20; ++k) {
        auto cp = cone_point(T(rng), X(rng), 1.0);
        auto q = coeffs_from_Tlambda(cp);
        Eigen::Matrix4d L = hamiltonian_B(q, cp.T) * 0.2 - cp.T * Eigen::Matrix4d::Identity();
        Eigen::FullPivLU<Eigen::Matrix4d> lu(L);
        lu.setThreshold(1e-10);
        CHECK(lu.rank() == 2);
        Quadratic off = q;
        off.alpha += 0.01;
        Eigen::FullPivLU<Eigen::Matrix4d> lu2(hamiltonian_B(off, cp.T) * 0.2 - cp.T * Eigen::Matrix4d::Identity());
        lu2.setThreshold(1e-10);
        CHECK(lu2.rank() == 4);
    }
}

TEST_CASE("fixed points agree with free-energy critical points for small W") {
    const double kT = 1.0;
    auto ent = kkls_coefficients(6, 16);
    KklsModel model(16);
    Quadratic q{-0.02, 0.03, 0.01};
    auto k = physical_coeffs(q, kT, ent);
    Solve4dOptions opt;
    opt.search_radius = 0.06;
    auto cs = critical_points_4d(k, opt);
    std::vector<Eigen::Vector4d> seeds;
    for (const auto& p : cs.points) seeds.push_back(5.0 * p.location);  // eta ~ 5 W to first order
    std::mt19937_64 rng(2);
    std::normal_distribution<double> N(0, 0.15);
    for (int i = 0; i < 200; ++i) seeds.emplace_back(N(rng), N(rng), N(rng), N(rng));
    auto fps = solve_fixed_point(model, hamiltonian_B(q, kT), kT, seeds);
    int small = 0;
    for (const auto& fp : fps) {
        if (fp.W.norm() > 0.05) continue;
        ++small;
        double best = 1e9;
        for (const auto& p : cs.points) best = std::min(best, (p.location - fp.W).norm());
        CHECK(best < 1e-6);
    }
    int small_cp = 0;
    for (const auto& p : cs.points) {
        if (p.location.norm() > 0.05) continue;
        ++small_cp;
        double best = 1e9;
        for (const auto& fp : fps) best = std::min(best, (p.location - fp.W).norm());
        CHECK(best < 1e-6);
    }
    CHECK(small == small_cp);
    CHECK(small > 1);
}
