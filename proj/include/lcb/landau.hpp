#pragma once

// Degree-6 Landau free energy on (s,p,d,c):
//   f = alpha|z|^2 + beta|w|^2 + 2 gamma Re(z wbar) + a3 f3 + a4 f4 + b4 f2^2
//       + a5 f5 + b5 f2 f3 + a6 f6 + b6 f2^3 + c6 f3^2 + d6 f2 f4
// with its physical instantiation in terms of temperature T, interaction
// scale U0 and the Hamiltonian mixing weights lambda.

#include <Eigen/Dense>

#include <array>
#include <string>
#include <vector>

#include "lcb/groupact.hpp"
#include "lcb/invariants.hpp"
#include "lcb/kkls.hpp"
#include "lcb/polyser.hpp"

namespace lcb {

template <class T>
struct BasicLandauCoeffs {
    T alpha{}, beta{}, gamma{};
    T a3{};
    T a4{}, b4{};
    T a5{}, b5{};
    T a6{}, b6{}, c6{}, d6{};

    // Same order as fit_basis().
    std::array<T, 12> to_array() const { return {alpha, beta, gamma, a3, a4, b4, a5, b5, a6, b6, c6, d6}; }
    static BasicLandauCoeffs from_array(const std::array<T, 12>& a) {
        return {a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7], a[8], a[9], a[10], a[11]};
    }
};
using LandauCoeffs = BasicLandauCoeffs<double>;
using RationalLandauCoeffs = BasicLandauCoeffs<Rational>;

template <class T>
TruncSeries<T> free_energy(const BasicLandauCoeffs<T>& k) {
    auto basis = fit_basis();
    auto c = k.to_array();
    TruncSeries<T> f(4, 6);
    for (std::size_t j = 0; j < 12; ++j) {
        if (is_zero(c[j])) continue;
        if constexpr (std::is_same_v<T, Rational>)
            f += basis[j] * c[j];
        else
            f += basis[j].template cast<T>() * c[j];
    }
    return f;
}

struct ConeParams {
    double T = 0, U0 = 1;
    std::array<double, 3> lambda{1.0 / 3, 1.0 / 3, 1.0 / 3};
    double mu = 0;   // (10T - U0)/4
    double xi = 0;   // cone angle
    double R_T = 0;  // circle radius, sqrt(2/3)(10T/U0 - 1)
};

// Normalizes lambda so that it sums to 1; throws on a zero sum.
ConeParams make_cone_params(double T, double U0, std::array<double, 3> lambda);

struct Quadratic {
    double alpha = 0, beta = 0, gamma = 0;
};
Quadratic coeffs_from_Tlambda(const ConeParams& cp);

// The lambda on the cone K_T at angle xi. Requires T > U0/10.
ConeParams cone_point(double T, double xi, double U0 = 1.0);

enum class Stability { stable, marginal, saddle_2_2, unstable_4 };
std::string to_string(Stability s);
// rel_tol scales the marginal band by alpha^2 + beta^2 + gamma^2.
Stability stability_classify(double alpha, double beta, double gamma, double rel_tol = 1e-14);

// Free energy with entropy coefficients kT * (-S/k fit) and the given
// quadratic part (k = 1).
LandauCoeffs physical_coeffs(const Quadratic& q, double kT, const EntropyCoefficients& ent);

// B in B W = kT eta for the quadratic Hamiltonian whose sum with the
// entropy's (5/2)kT|W|^2 gives the quadratic part q.
Eigen::Matrix4d hamiltonian_B(const Quadratic& q, double kT);

enum class PointTag { isotropic, uniaxial, biaxial };
std::string to_string(PointTag t);

struct CriticalPointRecord {
    Eigen::Vector4d location;
    double gradient_norm = 0;
    double value = 0;
    int morse_index = 0;
    bool degenerate = false;  // some Hessian eigenvalue below the threshold
    int orbit_id = 0;
    PointTag tag = PointTag::isotropic;
};

struct CriticalSet {
    std::vector<CriticalPointRecord> points;  // sorted by orbit, then location
    int orbits = 0;
    int failed_seeds = 0;
    bool any_degenerate = false;
    int symmetry_order = 0;  // size of the subgroup of the 72 that fixes f
};

struct Solve4dOptions {
    double search_radius = 1.0;
    int grid_n = 7;
    double tol = 1e-12;
    int max_iter = 60;
    double degenerate_tol = 1e-8;
};

// Elements of the 72-element group leaving f unchanged (coefficient tolerance).
std::vector<GroupElement> symmetry_subgroup(const LandauCoeffs& k, double tol = 1e-12);

CriticalSet critical_points_4d(const LandauCoeffs& k, const Solve4dOptions& opt = {});

// Point classification: uniaxial iff fixed by one of the three reflections
// of the left D3 (the image of the x-axis of the reduced plane).
PointTag classify_point(const Eigen::Vector4d& x, double tol = 1e-7);

// Gradient and Hessian of the degree-6 free energy at x.
Eigen::Vector4d free_energy_gradient(const LandauCoeffs& k, const Eigen::Vector4d& x);
Eigen::Matrix4d free_energy_hessian(const LandauCoeffs& k, const Eigen::Vector4d& x);

}  // namespace lcb
