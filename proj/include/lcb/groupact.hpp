#pragma once

// Finite symmetry groups acting on R^2 and on the order-parameter space
// R^4 = {(s,p,d,c)}, Molien series, and the conjugation action of SO(3) on
// symmetric traceless 3x3 matrices.

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lcb/numbers.hpp"
#include "lcb/polyser.hpp"

namespace lcb {

// Matrix with entries in Q(sqrt 3), row-major.
struct GroupElement {
    int dim = 0;
    std::vector<QSqrt3> m;
    // Number of tau factors mod 2 in the word that produced this element.
    int tau_parity = 0;
    std::string word;

    const QSqrt3& at(int i, int j) const { return m[static_cast<std::size_t>(i * dim + j)]; }
    QSqrt3& at(int i, int j) { return m[static_cast<std::size_t>(i * dim + j)]; }

    static GroupElement identity(int dim);
    Eigen::MatrixXd to_eigen() const;
    std::vector<double> act(const std::vector<double>& x) const;
    QSqrt3 det() const;
    bool operator==(const GroupElement& o) const { return dim == o.dim && m == o.m; }
};

GroupElement operator*(const GroupElement& a, const GroupElement& b);

struct Group {
    std::string name;
    int dim = 0;
    std::vector<GroupElement> elements;
};

// Generators: rotation by 2pi/3 and the reflection (x, y) -> (x, -y).
GroupElement d3_rho();
GroupElement d3_kappa();
// On (s,p,d,c): rho rotates (s,p) and (d,c) by 2pi/3, kappa negates p and c,
// tau swaps p and d (transposition of [[s,d],[p,c]]).
GroupElement r4_rho();
GroupElement r4_kappa();
GroupElement r4_tau();

Group d3_on_r2();
Group d3tilde_on_r4();   // 72 elements
Group d3xd3_on_r4();     // the 36 elements with even tau parity
// Left action only (rho, kappa on R^4): the symmetry of generic quadratic terms.
Group d3_left_on_r4();

// Closure of a generator set under multiplication. Throws InvariantViolation
// if some element is reached with both tau parities.
Group generate_group(const std::string& name, const std::vector<GroupElement>& gens);

// f(g x) with exact coefficients in Q(sqrt 3).
TruncSeries<QSqrt3> compose(const RationalSeries& f, const GroupElement& g);
TruncSeries<QSqrt3> lift(const RationalSeries& f);

// Molien series coefficients 0..max_degree of a finite group, computed as the
// group average of 1/det(I - t g). Throws InvariantViolation on any
// non-integral or irrational coefficient.
std::vector<std::int64_t> molien_finite(const Group& g, int max_degree);

// Expansion of sum_k t^{numer[k]} / prod_k (1 - t^{denom[k]}).
std::vector<std::int64_t> molien_rational(const std::vector<int>& numer_exponents,
                                          const std::vector<int>& denom_exponents, int max_degree);

struct So3MolienResult {
    std::vector<std::int64_t> coeffs;
    double max_residual = 0;  // distance of the raw averages from integers
    int grid_points = 0;
};

// Invariants of SO(3) acting by conjugation on traceless symmetric matrices,
// via the Weyl integration formula over the maximal torus.
So3MolienResult molien_so3_conjugacy(int max_degree, int grid_points = 0);

using Mat5 = Eigen::Matrix<double, 5, 5>;

// Orthonormal basis (Frobenius inner product) of symmetric traceless 3x3 matrices.
const std::array<Eigen::Matrix3d, 5>& traceless_basis();

// Matrix of Q -> R Q R^T in traceless_basis(). R must be orthogonal.
Mat5 conjugation_operator(const Eigen::Matrix3d& R);

Eigen::Matrix3d haar_rotation(std::mt19937_64& rng);

struct RankReport {
    int linear_rank = 0;
    int affine_rank = 0;
};

// Ranks of the operators viewed as vectors in R^25.
RankReport operator_ranks(const std::vector<Mat5>& ops, double tol = 1e-9);

struct SpanningReport {
    int num_samples = 0;
    std::uint64_t seed = 0;
    int linear_rank = 0;
    int affine_rank = 0;
    int explicit_rank = 0;          // rank of the seven K and I matrices alone
    double identity_residual = 0;   // ||(K0+K1+K2+K3)(I1+I2+I3)|| after conjugation
};

// The Klein four-group and cyclic-permutation matrices K0..K3, I1..I3.
std::vector<Eigen::Matrix3d> explicit_rotations();

SpanningReport spanning_check(int num_samples, std::uint64_t seed);

}  // namespace lcb
