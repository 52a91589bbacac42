#include "lcb/kkls.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "lcb/errors.hpp"

namespace lcb {

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    if (n < 1) throw Error("gauss_legendre: need at least one node");
    // Golub-Welsch on the Jacobi matrix of the Legendre recurrence.
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        double b = k / std::sqrt(4.0 * k * k - 1.0);
        J(k, k - 1) = J(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    x.resize(static_cast<std::size_t>(n));
    w.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        x[static_cast<std::size_t>(k)] = es.eigenvalues()(k);
        double v0 = es.eigenvectors()(0, k);
        w[static_cast<std::size_t>(k)] = 2.0 * v0 * v0;
    }
}

std::vector<QuadNode> haar_quadrature(int n) {
    std::vector<double> cb, wb;
    gauss_legendre(n, cb, wb);
    const double two_pi = 2.0 * std::numbers::pi;
    auto rz = [](double a) {
        Eigen::Matrix3d R;
        R << std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a), 0, 0, 0, 1;
        return R;
    };
    std::vector<QuadNode> out;
    out.reserve(static_cast<std::size_t>(n) * n * n);
    for (int i = 0; i < n; ++i) {
        Eigen::Matrix3d A = rz(two_pi * i / n);
        for (std::size_t j = 0; j < cb.size(); ++j) {
            double c = cb[j], s = std::sqrt(std::max(0.0, 1.0 - c * c));
            Eigen::Matrix3d Ry;
            Ry << c, 0, s, 0, 1, 0, -s, 0, c;
            Eigen::Matrix3d AB = A * Ry;
            for (int k = 0; k < n; ++k)
                out.push_back({AB * rz(two_pi * k / n), wb[j] / (2.0 * n * n)});
        }
    }
    return out;
}

Eigen::Vector4d alpha_d(const Eigen::Matrix3d& R) {
    const double r6 = std::sqrt(6.0), r2 = std::sqrt(2.0);
    Eigen::Matrix3d E[2];
    E[0] = Eigen::Vector3d(-1, -1, 2).asDiagonal();
    E[0] /= r6;
    E[1] = Eigen::Vector3d(1, -1, 0).asDiagonal();
    E[1] /= r2;
    double M[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) M[i][j] = (E[i].cwiseProduct(R * E[j] * R.transpose())).sum();
    return {M[0][0], M[1][0], M[0][1], M[1][1]};
}

KklsModel::KklsModel(int nodes) : nodes_(nodes) {
    if (nodes < 2) throw Error("KklsModel: need at least 2 nodes per angle");
    for (const auto& q : haar_quadrature(nodes)) {
        m_.push_back(alpha_d(q.R));
        w_.push_back(q.weight);
    }
}

double KklsModel::moment(const Monomial& e) const {
    double acc = 0;
    for (std::size_t k = 0; k < m_.size(); ++k) {
        double t = w_[k];
        for (int i = 0; i < 4; ++i) t *= std::pow(m_[k](i), e[static_cast<std::size_t>(i)]);
        acc += t;
    }
    return acc;
}

RealSeries KklsModel::partition_series(int cap) const {
    if (cap < 1 || cap > kMaxCap) throw Error("partition_series: cap out of range");
    // Collect all monomials of degree <= cap in one pass over the nodes.
    std::vector<Monomial> mons;
    Monomial e{};
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == 4) {
            mons.push_back(e);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            e[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(k);
            rec(i + 1, left - k);
        }
        e[static_cast<std::size_t>(i)] = 0;
    };
    rec(0, cap);
    std::vector<long double> acc(mons.size(), 0.0L);
    std::array<std::vector<long double>, 4> pw;
    for (auto& p : pw) p.resize(static_cast<std::size_t>(cap) + 1);
    for (std::size_t k = 0; k < m_.size(); ++k) {
        for (int i = 0; i < 4; ++i) {
            pw[static_cast<std::size_t>(i)][0] = 1;
            for (int d = 1; d <= cap; ++d)
                pw[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)] =
                    pw[static_cast<std::size_t>(i)][static_cast<std::size_t>(d - 1)] * m_[k](i);
        }
        for (std::size_t j = 0; j < mons.size(); ++j) {
            long double t = w_[k];
            for (std::size_t i = 0; i < 4; ++i) t *= pw[i][mons[j][i]];
            acc[j] += t;
        }
    }
    RealSeries Z(4, cap);
    for (std::size_t j = 0; j < mons.size(); ++j) {
        double fact = 1;
        for (std::size_t i = 0; i < 4; ++i)
            for (int q = 2; q <= mons[j][i]; ++q) fact *= q;
        double c = static_cast<double>(acc[j] / fact);
        // moments that vanish by symmetry come out at rounding level
        if (std::abs(c) > 1e-15) Z.add_term(mons[j], c);
    }
    return Z;
}

RealSeries KklsModel::log_partition_series(int cap) const { return log_series(partition_series(cap)); }

std::vector<RealSeries> KklsModel::eta_of_w_series(int cap) const {
    auto W = gradient(log_partition_series(cap + 1));
    return invert_map(W);
}

RealSeries KklsModel::entropy_series(int cap) const {
    RealSeries logZ = log_partition_series(cap);
    // eta(W) is only needed through degree cap-1: errors at degree cap enter
    // S at degree cap+1 because grad log Z(eta) = W has no constant term.
    auto W = gradient(logZ);
    auto eta = invert_map(W);
    for (auto& e : eta) e = e.with_cap(cap);
    auto w = RealSeries::variables(4, cap);
    RealSeries S = substitute(logZ.without_constant(), eta);
    S = S + logZ.constant_term();
    for (int i = 0; i < 4; ++i) S -= eta[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(i)];
    return S.chopped(1e-14);
}

double KklsModel::log_partition(const Eigen::Vector4d& eta) const {
    // shift by the max exponent to stay finite for large eta
    double mx = -1e300;
    for (const auto& m : m_) mx = std::max(mx, eta.dot(m));
    double acc = 0;
    for (std::size_t k = 0; k < m_.size(); ++k) acc += w_[k] * std::exp(eta.dot(m_[k]) - mx);
    return mx + std::log(acc);
}

Eigen::Vector4d KklsModel::mean(const Eigen::Vector4d& eta) const {
    double mx = -1e300;
    for (const auto& m : m_) mx = std::max(mx, eta.dot(m));
    double z = 0;
    Eigen::Vector4d s = Eigen::Vector4d::Zero();
    for (std::size_t k = 0; k < m_.size(); ++k) {
        double p = w_[k] * std::exp(eta.dot(m_[k]) - mx);
        z += p;
        s += p * m_[k];
    }
    return s / z;
}

Eigen::Matrix4d KklsModel::covariance(const Eigen::Vector4d& eta) const {
    Eigen::Vector4d W = mean(eta);
    double mx = -1e300;
    for (const auto& m : m_) mx = std::max(mx, eta.dot(m));
    double z = 0;
    Eigen::Matrix4d C = Eigen::Matrix4d::Zero();
    for (std::size_t k = 0; k < m_.size(); ++k) {
        double p = w_[k] * std::exp(eta.dot(m_[k]) - mx);
        Eigen::Vector4d d = m_[k] - W;
        z += p;
        C += p * d * d.transpose();
    }
    return C / z;
}

double KklsModel::entropy(const Eigen::Vector4d& eta) const { return log_partition(eta) - eta.dot(mean(eta)); }

EntropyCoefficients kkls_coefficients(int cap, int nodes) {
    if (cap < 2 || cap > 8) throw Error("kkls_coefficients: cap must be in 2..8");
    KklsModel model(nodes);
    EntropyCoefficients out;
    out.cap = cap;
    out.nodes = nodes;
    RealSeries logZ = model.log_partition_series(cap);
    for (int i = 0; i < 4; ++i) {
        Monomial e{};
        e[static_cast<std::size_t>(i)] = 1;
        out.max_linear_term = std::max(out.max_linear_term, std::abs(logZ.coeff(e)));
    }
    if (out.max_linear_term > 1e-12) throw InvariantViolation("kkls_coefficients: log Z has a linear term");
    out.log_partition_quadratic = logZ.coeff({2, 0, 0, 0});
    RealSeries negS = -model.entropy_series(std::min(cap, 6)).with_cap(6);
    negS = negS - negS.constant_term();
    auto fit = fit_invariant_basis(negS);
    out.coeffs = fit.coeffs;
    out.fit_residual = fit.residual;
    if (out.fit_residual > 1e-8) throw InvariantViolation("kkls_coefficients: entropy series is not invariant");
    out.quad_s = fit.coeffs[0];
    out.quad_pdc = fit.coeffs[1];
    out.quad_cross = fit.coeffs[2];
    for (std::size_t k = 0; k < 9; ++k) out.primed[k] = -fit.coeffs[k + 3];
    return out;
}

const std::array<std::string, 9>& primed_names() {
    static const std::array<std::string, 9> n = {"a3p", "a4p", "b4p", "a5p", "b5p", "a6p", "b6p", "c6p", "d6p"};
    return n;
}

double dW_min_eigenvalue(const KklsModel& model, const Eigen::Vector4d& eta) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(model.covariance(eta), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

bool dW_positive_definite(const KklsModel& model, const Eigen::Vector4d& eta) {
    return dW_min_eigenvalue(model, eta) > 0.0;
}

std::vector<FixedPoint> solve_fixed_point(const KklsModel& model, const Eigen::Matrix4d& B, double kT,
                                          const std::vector<Eigen::Vector4d>& seeds, double tol, int max_iter) {
    if (!(kT > 0)) throw Error("solve_fixed_point: kT must be positive");
    std::vector<FixedPoint> out;
    for (const auto& seed : seeds) {
        Eigen::Vector4d eta = seed;
        bool ok = false;
        int it = 0;
        double res = 0;
        for (; it < max_iter; ++it) {
            Eigen::Vector4d W = model.mean(eta);
            Eigen::Vector4d G = B * W - kT * eta;
            res = G.norm();
            if (res <= tol * (1.0 + kT * eta.norm())) {
                ok = true;
                break;
            }
            Eigen::Matrix4d J = B * model.covariance(eta) - kT * Eigen::Matrix4d::Identity();
            Eigen::Vector4d step = J.fullPivLu().solve(-G);
            if (!step.allFinite()) break;
            // damp very long steps; the map is bounded so far seeds can overshoot
            double sn = step.norm();
            if (sn > 2.0) step *= 2.0 / sn;
            eta += step;
            if (!eta.allFinite() || eta.norm() > 1e3) break;
        }
        if (!ok) continue;
        FixedPoint fp{eta, model.mean(eta), res, it};
        bool dup = false;
        for (const auto& q : out)
            if ((q.eta - eta).norm() <= 1e-8 * (1.0 + eta.norm())) dup = true;
        if (!dup) out.push_back(fp);
    }
    std::sort(out.begin(), out.end(), [](const FixedPoint& a, const FixedPoint& b) { return a.W.norm() < b.W.norm(); });
    return out;
}

}  // namespace lcb
