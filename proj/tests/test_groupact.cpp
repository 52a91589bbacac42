#include "doctest.h"

#include <numbers>

#include "lcb/groupact.hpp"

using namespace lcb;

namespace {

bool is_orthogonal(const GroupElement& g) {
    for (int i = 0; i < g.dim; ++i)
        for (int j = 0; j < g.dim; ++j) {
            QSqrt3 s(0);
            for (int k = 0; k < g.dim; ++k) s += g.at(i, k) * g.at(j, k);
            if (s != QSqrt3(i == j ? 1 : 0)) return false;
        }
    return true;
}

}  // namespace

TEST_CASE("group orders") {
    CHECK(d3_on_r2().elements.size() == 6);
    CHECK(d3tilde_on_r4().elements.size() == 72);
    CHECK(d3xd3_on_r4().elements.size() == 36);
    CHECK(d3_left_on_r4().elements.size() == 6);
}

TEST_CASE("the even-tau elements form a subgroup") {
    auto sub = d3xd3_on_r4();
    for (const auto& a : sub.elements)
        for (const auto& b : sub.elements) {
            auto c = a * b;
            bool found = std::find(sub.elements.begin(), sub.elements.end(), c) != sub.elements.end();
            REQUIRE(found);
        }
}

TEST_CASE("tau kappa tau negates w") {
    auto g = r4_tau() * r4_kappa() * r4_tau();
    GroupElement expect = GroupElement::identity(4);
    expect.at(2, 2) = QSqrt3(-1);
    expect.at(3, 3) = QSqrt3(-1);
    CHECK(g == expect);
}

TEST_CASE("elements are orthogonal and determinants are +-1") {
    int neg = 0;
    for (const auto& g : d3tilde_on_r4().elements) {
        CHECK(is_orthogonal(g));
        QSqrt3 d = g.det();
        CHECK((d == QSqrt3(1) || d == QSqrt3(-1)));
        if (d == QSqrt3(-1)) ++neg;
    }
    CHECK(r4_tau().det() == QSqrt3(-1));
    CHECK(r4_kappa().det() == QSqrt3(1));
    CHECK(neg == 36);
}

TEST_CASE("Molien series of D3 on the plane") {
    auto m = molien_finite(d3_on_r2(), 12);
    std::vector<std::int64_t> head{1, 0, 1, 1, 1, 1, 2};
    CHECK(std::vector<std::int64_t>(m.begin(), m.begin() + 7) == head);
    CHECK(m == molien_rational({0}, {2, 3}, 12));
}

TEST_CASE("Molien series of the 72-element group") {
    auto m = molien_finite(d3tilde_on_r4(), 12);
    std::vector<std::int64_t> head{1, 0, 1, 1, 2, 2, 4};
    CHECK(std::vector<std::int64_t>(m.begin(), m.begin() + 7) == head);
    CHECK(m == molien_rational({0, 5}, {2, 3, 4, 6}, 12));
}

TEST_CASE("Molien series of the 36-element subgroup") {
    auto m = molien_finite(d3xd3_on_r4(), 12);
    CHECK(m == molien_rational({0, 5, 6, 11}, {2, 3, 4, 6}, 12));
    // One more invariant than the full group at degree 6.
    CHECK(m[6] == 5);
}

TEST_CASE("molien_rational expansions") {
    CHECK(molien_rational({0}, {1}, 4) == std::vector<std::int64_t>{1, 1, 1, 1, 1});
    CHECK(molien_rational({0}, {2, 3}, 6) == std::vector<std::int64_t>{1, 0, 1, 1, 1, 1, 2});
    CHECK_THROWS_AS(molien_rational({0}, {0}, 3), Error);
}

TEST_CASE("SO(3) conjugation Molien series") {
    auto r = molien_so3_conjugacy(10);
    CHECK(r.coeffs == molien_rational({0}, {2, 3}, 10));
    CHECK(r.max_residual < 1e-8);
    CHECK(r.grid_points >= 44);
}

TEST_CASE("traceless basis is orthonormal") {
    const auto& E = traceless_basis();
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            double ip = E[static_cast<std::size_t>(i)].cwiseProduct(E[static_cast<std::size_t>(j)]).sum();
            CHECK(ip == doctest::Approx(i == j ? 1.0 : 0.0));
        }
    for (const auto& e : E) {
        CHECK(std::abs(e.trace()) < 1e-15);
        CHECK((e - e.transpose()).norm() == 0.0);
    }
}

TEST_CASE("conjugation operator is an orthogonal representation") {
    std::mt19937_64 rng(42);
    for (int k = 0; k < 10; ++k) {
        Eigen::Matrix3d A = haar_rotation(rng), B = haar_rotation(rng);
        CHECK(std::abs(A.determinant() - 1.0) < 1e-12);
        Mat5 a = conjugation_operator(A), b = conjugation_operator(B);
        CHECK((a.transpose() * a - Mat5::Identity()).norm() < 1e-12);
        CHECK(std::abs(a.determinant() - 1.0) < 1e-12);
        CHECK((conjugation_operator(A * B) - a * b).norm() < 1e-12);
    }
    Eigen::Matrix3d bad = Eigen::Matrix3d::Identity();
    bad(0, 1) = 0.1;
    CHECK_THROWS_AS(conjugation_operator(bad), Error);
}

TEST_CASE("spanning of the operator space") {
    auto rep = spanning_check(30, 2024);
    CHECK(rep.linear_rank == 25);
    CHECK(rep.affine_rank == 25);
    CHECK(rep.explicit_rank < 25);
    CHECK(rep.identity_residual < 1e-12);
    auto again = spanning_check(30, 2024);
    CHECK(again.linear_rank == rep.linear_rank);
    CHECK(again.identity_residual == rep.identity_residual);
}
