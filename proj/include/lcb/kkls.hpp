#pragma once

// Mean-field entropy of a molecular orientation distribution
//   phi(R) = exp(eta . m(R)) / Z(eta)
// where m(R) in R^4 collects the order parameters (s,p,d,c) of a single
// molecule with orientation R. Everything is computed from a product Haar
// quadrature on SO(3) that is exact for polynomials of degree <= 2n-1 in the
// Euler-angle cosines.

#include <Eigen/Dense>

#include <array>
#include <string>
#include <vector>

#include "lcb/invariants.hpp"
#include "lcb/polyser.hpp"

namespace lcb {

struct QuadNode {
    Eigen::Matrix3d R;
    double weight = 0;
};

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

// ZYZ Euler product rule: n uniform points in each of the two azimuthal
// angles, n Gauss-Legendre points in cos(beta). Weights sum to 1.
std::vector<QuadNode> haar_quadrature(int n);

// Single-molecule order parameters: M_ij = E_i . (R E_j R^T) with
// E_1 = diag(-1,-1,2)/sqrt6, E_2 = diag(1,-1,0)/sqrt2, returned as
// (s,p,d,c) = (M11, M21, M12, M22).
Eigen::Vector4d alpha_d(const Eigen::Matrix3d& R);

class KklsModel {
public:
    explicit KklsModel(int nodes = 16);

    int nodes() const { return nodes_; }
    const std::vector<Eigen::Vector4d>& samples() const { return m_; }
    const std::vector<double>& weights() const { return w_; }

    // Orientational average <prod m_i^{e_i}>.
    double moment(const Monomial& e) const;

    // Z(eta) = <exp(eta . m)> as a series in eta.
    RealSeries partition_series(int cap) const;
    RealSeries log_partition_series(int cap) const;
    // Entropy per particle S/k as a series in W = <m>.
    RealSeries entropy_series(int cap) const;
    // eta(W) as series, inverse of W(eta) = grad log Z.
    std::vector<RealSeries> eta_of_w_series(int cap) const;

    // Quadrature evaluations at finite eta.
    double log_partition(const Eigen::Vector4d& eta) const;
    Eigen::Vector4d mean(const Eigen::Vector4d& eta) const;
    // DW(eta): covariance <(m - W)(m - W)^T> under phi.
    Eigen::Matrix4d covariance(const Eigen::Vector4d& eta) const;
    // S/k evaluated at W(eta).
    double entropy(const Eigen::Vector4d& eta) const;

private:
    int nodes_;
    std::vector<Eigen::Vector4d> m_;
    std::vector<double> w_;
};

struct EntropyCoefficients {
    int cap = 6;
    int nodes = 16;
    // Coordinates of -S/k in fit_basis() order (alpha, beta, gamma, a3, ...).
    // The entropy part of the free energy is kT times this.
    std::array<double, 12> coeffs{};
    // quad_s = coeffs[0], quad_pdc = coeffs[1], cross = coeffs[2]; the primed
    // coefficients are a' = -coeffs[k] for k >= 3 so that a_i = -kT a_i'.
    double quad_s = 0, quad_pdc = 0, quad_cross = 0;
    std::array<double, 9> primed{};  // a3p a4p b4p a5p b5p a6p b6p c6p d6p
    double fit_residual = 0;
    double max_linear_term = 0;
    double log_partition_quadratic = 0;  // coefficient of eta_s^2 in log Z
};

// Fit of the entropy expansion to the invariant basis. Throws
// InvariantViolation if log Z has a linear term above 1e-12.
EntropyCoefficients kkls_coefficients(int cap = 6, int nodes = 16);

const std::array<std::string, 9>& primed_names();

// Smallest eigenvalue of DW(eta); positive for every eta.
double dW_min_eigenvalue(const KklsModel& model, const Eigen::Vector4d& eta);
bool dW_positive_definite(const KklsModel& model, const Eigen::Vector4d& eta);

struct FixedPoint {
    Eigen::Vector4d eta;
    Eigen::Vector4d W;
    double residual = 0;
    int iterations = 0;
};

// Solutions of B W(eta) = kT eta by Newton iteration from each seed (given in
// eta coordinates). Distinct solutions are returned sorted by |W|.
std::vector<FixedPoint> solve_fixed_point(const KklsModel& model, const Eigen::Matrix4d& B, double kT,
                                          const std::vector<Eigen::Vector4d>& seeds, double tol = 1e-13,
                                          int max_iter = 100);

}  // namespace lcb
