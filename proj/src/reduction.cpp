#include "lcb/reduction.hpp"

#include <cmath>
#include <numeric>

namespace lcb {

std::array<std::array<double, 4>, 4> rotate_coords(double xi) {
    const double s = std::sin(xi), c = std::cos(xi);
    // rows s, d, p, c; columns x, y, u, v
    return {{{s, c, 0, 0}, {-c, s, 0, 0}, {0, 0, s, c}, {0, 0, -c, s}}};
}

ReducedCoeffs residual_coeffs(const LandauCoeffs& k, double xi, double mu) {
    return residual_coeffs_cs(k, std::cos(3 * xi), std::sin(3 * xi), mu);
}

double e2_from_perturbation(double t, double rho, double U0) {
    return 2.5 * t - std::sqrt(3.0) / (4 * std::sqrt(2.0)) * U0 * rho;
}

double tricritical_temperature(double a3, double b4, double U0) {
    if (b4 == 0) throw Error("tricritical_temperature: b4 = 0");
    return U0 / 10 + 9 * a3 * a3 / (20 * b4);
}

std::pair<Rational, Rational> pythagorean_point(long p, long q) {
    if (p == 0 && q == 0) throw Error("pythagorean_point: (0, 0)");
    Rational d(p * p + q * q);
    Rational c = Rational(p * p - q * q) / d;
    Rational s = Rational(2 * p * q) / d;
    c.canonicalize();
    s.canonicalize();
    return {c, s};
}

}  // namespace lcb
