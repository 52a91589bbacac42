#include "lcb/groupact.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <deque>
#include <numbers>

#include "lcb/errors.hpp"

namespace lcb {

GroupElement GroupElement::identity(int dim) {
    GroupElement g;
    g.dim = dim;
    g.m.assign(static_cast<std::size_t>(dim * dim), QSqrt3(0));
    for (int i = 0; i < dim; ++i) g.at(i, i) = QSqrt3(1);
    g.word = "e";
    return g;
}

Eigen::MatrixXd GroupElement::to_eigen() const {
    Eigen::MatrixXd r(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) r(i, j) = at(i, j).to_double();
    return r;
}

std::vector<double> GroupElement::act(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != dim) throw Error("group action: wrong dimension");
    std::vector<double> y(x.size(), 0.0);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) y[static_cast<std::size_t>(i)] += at(i, j).to_double() * x[static_cast<std::size_t>(j)];
    return y;
}

QSqrt3 GroupElement::det() const {
    Matrix<QSqrt3> a(static_cast<std::size_t>(dim), std::vector<QSqrt3>(static_cast<std::size_t>(dim)));
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = at(i, j);
    // Gaussian elimination tracking the determinant.
    QSqrt3 d(1);
    const auto n = static_cast<std::size_t>(dim);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && is_zero(a[p][c])) ++p;
        if (p == n) return QSqrt3(0);
        if (p != c) {
            std::swap(a[p], a[c]);
            d = -d;
        }
        d *= a[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (is_zero(a[i][c])) continue;
            QSqrt3 f = a[i][c] / a[c][c];
            for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return d;
}

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
    if (a.dim != b.dim) throw Error("group elements of different dimension");
    GroupElement r;
    r.dim = a.dim;
    r.m.assign(a.m.size(), QSqrt3(0));
    for (int i = 0; i < a.dim; ++i)
        for (int k = 0; k < a.dim; ++k) {
            const QSqrt3& x = a.at(i, k);
            if (is_zero(x)) continue;
            for (int j = 0; j < a.dim; ++j) r.at(i, j) += x * b.at(k, j);
        }
    r.tau_parity = a.tau_parity ^ b.tau_parity;
    r.word = a.word == "e" ? b.word : (b.word == "e" ? a.word : a.word + "." + b.word);
    return r;
}

namespace {

QSqrt3 half(int num) { return QSqrt3(Rational(num, 2)); }
QSqrt3 half_sqrt3(int num) { return QSqrt3(Rational(0), Rational(num, 2)); }

}  // namespace

GroupElement d3_rho() {
    GroupElement g = GroupElement::identity(2);
    g.at(0, 0) = half(-1);
    g.at(0, 1) = half_sqrt3(-1);
    g.at(1, 0) = half_sqrt3(1);
    g.at(1, 1) = half(-1);
    g.word = "rho";
    return g;
}

GroupElement d3_kappa() {
    GroupElement g = GroupElement::identity(2);
    g.at(1, 1) = QSqrt3(-1);
    g.word = "kappa";
    return g;
}

GroupElement r4_rho() {
    GroupElement r2 = d3_rho();
    GroupElement g = GroupElement::identity(4);
    for (int blk = 0; blk < 2; ++blk)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) g.at(2 * blk + i, 2 * blk + j) = r2.at(i, j);
    g.word = "rho";
    return g;
}

GroupElement r4_kappa() {
    GroupElement g = GroupElement::identity(4);
    g.at(1, 1) = QSqrt3(-1);
    g.at(3, 3) = QSqrt3(-1);
    g.word = "kappa";
    return g;
}

GroupElement r4_tau() {
    GroupElement g = GroupElement::identity(4);
    g.at(1, 1) = QSqrt3(0);
    g.at(2, 2) = QSqrt3(0);
    g.at(1, 2) = QSqrt3(1);
    g.at(2, 1) = QSqrt3(1);
    g.tau_parity = 1;
    g.word = "tau";
    return g;
}

Group generate_group(const std::string& name, const std::vector<GroupElement>& gens) {
    if (gens.empty()) throw Error("generate_group: no generators");
    Group grp;
    grp.name = name;
    grp.dim = gens.front().dim;
    grp.elements.push_back(GroupElement::identity(grp.dim));
    std::deque<std::size_t> todo{0};
    while (!todo.empty()) {
        std::size_t idx = todo.front();
        todo.pop_front();
        for (const auto& g : gens) {
            GroupElement h = g * grp.elements[idx];
            auto it = std::find(grp.elements.begin(), grp.elements.end(), h);
            if (it == grp.elements.end()) {
                grp.elements.push_back(std::move(h));
                todo.push_back(grp.elements.size() - 1);
            } else if (it->tau_parity != h.tau_parity) {
                throw InvariantViolation("generate_group: tau parity is not well defined");
            }
        }
    }
    return grp;
}

Group d3_on_r2() { return generate_group("D3", {d3_rho(), d3_kappa()}); }

Group d3tilde_on_r4() { return generate_group("D3~", {r4_rho(), r4_kappa(), r4_tau()}); }

Group d3xd3_on_r4() {
    Group full = d3tilde_on_r4();
    Group sub;
    sub.name = "D3xD3";
    sub.dim = 4;
    for (auto& g : full.elements)
        if (g.tau_parity == 0) sub.elements.push_back(g);
    return sub;
}

Group d3_left_on_r4() { return generate_group("D3 left", {r4_rho(), r4_kappa()}); }

TruncSeries<QSqrt3> lift(const RationalSeries& f) { return f.cast<QSqrt3>(); }

TruncSeries<QSqrt3> compose(const RationalSeries& f, const GroupElement& g) {
    if (f.num_vars() != g.dim) throw Error("compose: dimension mismatch");
    std::vector<TruncSeries<QSqrt3>> images;
    for (int i = 0; i < g.dim; ++i) {
        TruncSeries<QSqrt3> im(g.dim, f.cap());
        for (int j = 0; j < g.dim; ++j) {
            Monomial m{};
            m[static_cast<std::size_t>(j)] = 1;
            im.add_term(m, g.at(i, j));
        }
        images.push_back(im);
    }
    return substitute(lift(f), images);
}

namespace {

// Coefficients of det(I - t M), via Faddeev-LeVerrier on the characteristic
// polynomial det(x I - M) = x^n + c1 x^{n-1} + ... + cn.
std::vector<QSqrt3> det_i_minus_tm(const GroupElement& g) {
    const int n = g.dim;
    Matrix<QSqrt3> M(static_cast<std::size_t>(n), std::vector<QSqrt3>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = g.at(i, j);
    std::vector<QSqrt3> c(static_cast<std::size_t>(n + 1), QSqrt3(0));
    c[0] = QSqrt3(1);
    Matrix<QSqrt3> Mk = zeros<QSqrt3>(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
        // Mk = M (M_{k-1} + c_{k-1} I)
        Matrix<QSqrt3> prev = Mk;
        for (int i = 0; i < n; ++i) prev[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] += c[static_cast<std::size_t>(k - 1)];
        Mk = matmul(M, prev);
        QSqrt3 tr(0);
        for (int i = 0; i < n; ++i) tr += Mk[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
        c[static_cast<std::size_t>(k)] = -tr / QSqrt3(k);
    }
    return c;
}

std::int64_t to_integer(const QSqrt3& x, int degree) {
    if (!x.is_rational() || x.a.get_den() != 1)
        throw InvariantViolation("Molien coefficient at degree " + std::to_string(degree) + " is not an integer");
    return x.a.get_num().get_si();
}

}  // namespace

std::vector<std::int64_t> molien_finite(const Group& grp, int max_degree) {
    if (max_degree < 0) throw Error("max_degree must be nonnegative");
    const auto D = static_cast<std::size_t>(max_degree);
    std::vector<QSqrt3> sum(D + 1, QSqrt3(0));
    for (const auto& g : grp.elements) {
        auto den = det_i_minus_tm(g);
        std::vector<QSqrt3> inv(D + 1, QSqrt3(0));
        inv[0] = QSqrt3(1);
        for (std::size_t k = 1; k <= D; ++k) {
            QSqrt3 s(0);
            for (std::size_t j = 1; j < den.size() && j <= k; ++j) s += den[j] * inv[k - j];
            inv[k] = -s;
        }
        for (std::size_t k = 0; k <= D; ++k) sum[k] += inv[k];
    }
    std::vector<std::int64_t> out;
    QSqrt3 order(static_cast<int>(grp.elements.size()));
    for (std::size_t k = 0; k <= D; ++k) out.push_back(to_integer(sum[k] / order, static_cast<int>(k)));
    return out;
}

std::vector<std::int64_t> molien_rational(const std::vector<int>& numer_exponents,
                                          const std::vector<int>& denom_exponents, int max_degree) {
    if (max_degree < 0) throw Error("max_degree must be nonnegative");
    std::vector<std::int64_t> a(static_cast<std::size_t>(max_degree + 1), 0);
    for (int e : numer_exponents) {
        if (e < 0) throw Error("negative numerator exponent");
        if (e <= max_degree) a[static_cast<std::size_t>(e)] += 1;
    }
    for (int k : denom_exponents) {
        if (k <= 0) throw Error("denominator exponents must be positive");
        for (int i = k; i <= max_degree; ++i) a[static_cast<std::size_t>(i)] += a[static_cast<std::size_t>(i - k)];
    }
    return a;
}

So3MolienResult molien_so3_conjugacy(int max_degree, int grid_points) {
    if (max_degree < 0) throw Error("max_degree must be nonnegative");
    const int N = std::max(grid_points, 4 * max_degree + 4);
    const auto D = static_cast<std::size_t>(max_degree);
    std::vector<double> acc(D + 1, 0.0), acc_im(D + 1, 0.0);
    for (int k = 0; k < N; ++k) {
        double th = 2.0 * std::numbers::pi * k / N;
        std::vector<std::complex<double>> p(D + 1, 0.0);
        p[0] = 1.0;
        for (int j = -2; j <= 2; ++j) {
            std::complex<double> z = std::polar(1.0, j * th);
            for (std::size_t d = 1; d <= D; ++d) p[d] += z * p[d - 1];
        }
        double w = (1.0 - std::cos(th)) / N;
        for (std::size_t d = 0; d <= D; ++d) {
            acc[d] += w * p[d].real();
            acc_im[d] += w * p[d].imag();
        }
    }
    So3MolienResult res;
    res.grid_points = N;
    for (std::size_t d = 0; d <= D; ++d) {
        double r = std::round(acc[d]);
        res.max_residual = std::max({res.max_residual, std::abs(acc[d] - r), std::abs(acc_im[d])});
        res.coeffs.push_back(static_cast<std::int64_t>(r));
    }
    if (res.max_residual > 1e-8)
        throw InvariantViolation("SO(3) Molien integral is not integral to 1e-8");
    return res;
}

const std::array<Eigen::Matrix3d, 5>& traceless_basis() {
    static const std::array<Eigen::Matrix3d, 5> basis = [] {
        std::array<Eigen::Matrix3d, 5> b;
        const double r2 = std::sqrt(2.0), r6 = std::sqrt(6.0);
        b[0] = Eigen::Vector3d(1, -1, 0).asDiagonal();
        b[0] /= r2;
        b[1] = Eigen::Vector3d(1, 1, -2).asDiagonal();
        b[1] /= r6;
        const int pairs[3][2] = {{1, 2}, {0, 2}, {0, 1}};
        for (int k = 0; k < 3; ++k) {
            b[static_cast<std::size_t>(k + 2)].setZero();
            b[static_cast<std::size_t>(k + 2)](pairs[k][0], pairs[k][1]) = 1.0 / r2;
            b[static_cast<std::size_t>(k + 2)](pairs[k][1], pairs[k][0]) = 1.0 / r2;
        }
        return b;
    }();
    return basis;
}

Mat5 conjugation_operator(const Eigen::Matrix3d& R) {
    if ((R.transpose() * R - Eigen::Matrix3d::Identity()).norm() > 1e-10)
        throw Error("conjugation_operator: matrix is not orthogonal");
    const auto& E = traceless_basis();
    Mat5 M;
    for (int j = 0; j < 5; ++j) {
        Eigen::Matrix3d img = R * E[static_cast<std::size_t>(j)] * R.transpose();
        for (int i = 0; i < 5; ++i) M(i, j) = (E[static_cast<std::size_t>(i)].cwiseProduct(img)).sum();
    }
    return M;
}

Eigen::Matrix3d haar_rotation(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    double u1 = U(rng), u2 = U(rng), u3 = U(rng);
    const double tp = 2.0 * std::numbers::pi;
    Eigen::Quaterniond q(std::sqrt(u1) * std::cos(tp * u3), std::sqrt(1 - u1) * std::sin(tp * u2),
                         std::sqrt(1 - u1) * std::cos(tp * u2), std::sqrt(u1) * std::sin(tp * u3));
    return q.normalized().toRotationMatrix();
}

RankReport operator_ranks(const std::vector<Mat5>& ops, double tol) {
    RankReport r;
    if (ops.empty()) return r;
    Eigen::MatrixXd A(25, static_cast<Eigen::Index>(ops.size()));
    for (std::size_t k = 0; k < ops.size(); ++k)
        A.col(static_cast<Eigen::Index>(k)) = Eigen::Map<const Eigen::VectorXd>(ops[k].data(), 25);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    lu.setThreshold(tol);
    r.linear_rank = static_cast<int>(lu.rank());
    if (ops.size() > 1) {
        Eigen::MatrixXd B(25, static_cast<Eigen::Index>(ops.size() - 1));
        for (std::size_t k = 1; k < ops.size(); ++k) B.col(static_cast<Eigen::Index>(k - 1)) = A.col(static_cast<Eigen::Index>(k)) - A.col(0);
        Eigen::FullPivLU<Eigen::MatrixXd> lu2(B);
        lu2.setThreshold(tol);
        r.affine_rank = static_cast<int>(lu2.rank());
    }
    return r;
}

std::vector<Eigen::Matrix3d> explicit_rotations() {
    std::vector<Eigen::Matrix3d> out;
    out.push_back(Eigen::Matrix3d::Identity());
    out.push_back(Eigen::Vector3d(1, -1, -1).asDiagonal());
    out.push_back(Eigen::Vector3d(-1, 1, -1).asDiagonal());
    out.push_back(Eigen::Vector3d(-1, -1, 1).asDiagonal());
    out.push_back(Eigen::Matrix3d::Identity());
    Eigen::Matrix3d I2, I3;
    I2 << 0, 1, 0, 0, 0, 1, 1, 0, 0;
    I3 << 0, 0, 1, 1, 0, 0, 0, 1, 0;
    out.push_back(I2);
    out.push_back(I3);
    return out;
}

SpanningReport spanning_check(int num_samples, std::uint64_t seed) {
    if (num_samples < 1) throw Error("spanning_check: need at least one sample");
    SpanningReport rep;
    rep.num_samples = num_samples;
    rep.seed = seed;
    std::mt19937_64 rng(seed);
    std::vector<Mat5> ops;
    for (int k = 0; k < num_samples; ++k) ops.push_back(conjugation_operator(haar_rotation(rng)));
    auto rr = operator_ranks(ops);
    rep.linear_rank = rr.linear_rank;
    rep.affine_rank = rr.affine_rank;

    auto ex = explicit_rotations();
    std::vector<Mat5> exops;
    for (const auto& R : ex) exops.push_back(conjugation_operator(R));
    rep.explicit_rank = operator_ranks(exops).linear_rank;
    Mat5 ksum = exops[0] + exops[1] + exops[2] + exops[3];
    Mat5 isum = exops[4] + exops[5] + exops[6];
    Eigen::JacobiSVD<Mat5> svd(ksum * isum);
    rep.identity_residual = svd.singularValues()(0);
    return rep;
}

}  // namespace lcb
