#pragma once

// Critical points of the reduced normal form
//   q_e(x,u) = e2 X + e3 Y + e4 X^2 + e5 XY + e6 X^3 + e8 X^4 + m X^3 + n Y^2
// with X = x^2 + u^2, Y = x^3 - 3xu^2, and the bifurcation sets in the
// (e2,e3)-plane that organise them.
//
// Uniaxial points sit on the x-axis (and its D3 images); biaxial points solve
// P_X = P_Y = 0 strictly inside X^3 > Y^2. In the quotient picture (x',u') =
// (Y/X, sqrt(X - Y^2/X^2)) axis points have u' = 0.

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

namespace lcb {

struct NormalFormParams {
    double e2 = 0, e3 = 0, e4 = 0, e5 = 0, e6 = 0, e8 = 0;
    double m = 1, n = 1;
};

// q_e and its derivatives in (x,u).
double q_value(const NormalFormParams& p, double x, double u);
Eigen::Vector2d q_gradient(const NormalFormParams& p, double x, double u);
Eigen::Matrix2d q_hessian(const NormalFormParams& p, double x, double u);

enum class MorseType { minimum, maximum, saddle, degenerate };
std::string to_string(MorseType t);

struct Classification {
    MorseType type = MorseType::degenerate;
    Eigen::Vector2d eigenvalues = Eigen::Vector2d::Zero();
};
// degenerate when the smaller |eigenvalue| is below tol * (1 + largest).
Classification classify_2d(const NormalFormParams& p, double x, double u, double tol = 1e-9);

struct UniaxialPoint {
    double x = 0;
    double axis_curvature = 0;  // p_e''(x)
    double transverse = 0;      // q_uu at (x,0)
    Classification cls;
};

// x = 0 first, then the real roots of
//   2e2 + 3e3 x + 4e4 x^2 + 5e5 x^3 + 6(m+n+e6) x^4 + 8e8 x^6
// in increasing order.
std::vector<UniaxialPoint> uniaxial_points(const NormalFormParams& p);

// Translation x -> x - x0, x0 = (5/24) e5/(m+n), re-expanded to first order
// in the e's. Returns the new parameters; x0 through the out-parameter.
NormalFormParams shift_x0(const NormalFormParams& p, double* x0 = nullptr);

// Axis polynomial 2e2 + 3e3 x + ... as coefficients in x (index = power).
std::vector<double> axis_polynomial(const NormalFormParams& p);

struct BiaxialOrbit {
    double X = 0, Y = 0;
    std::vector<Eigen::Vector2d> representatives;  // all 6 orbit points
    Classification cls;                            // shared by the orbit
};

struct BiaxialResult {
    std::vector<BiaxialOrbit> orbits;
    // roots with X > 0 that land on the boundary X^3 = Y^2 (axis coincidences)
    std::vector<std::pair<double, double>> boundary_hits;
};

constexpr double interior_eps = 1e-10;

BiaxialResult biaxial_points(const NormalFormParams& p);

struct CriticalCount {
    int axis_roots = 0;      // nonzero roots of the axis polynomial
    int biaxial_orbits = 0;
    int total = 0;           // 1 + 3 axis_roots + 6 biaxial_orbits
    int origin_sign = 0;     // sign of e2
};
CriticalCount count_critical(const NormalFormParams& p);

// Every critical point in the plane: origin, 3 per axis root, 6 per orbit.
struct PlanePoint {
    Eigen::Vector2d pos;
    bool biaxial = false;
    Classification cls;
};
std::vector<PlanePoint> all_critical_points(const NormalFormParams& p);

enum class CurveKind { swallowtail_S, bluebird_B0, bluebird_B1 };
std::string to_string(CurveKind k);

struct BifurcationCurve {
    CurveKind kind = CurveKind::swallowtail_S;
    std::vector<Eigen::Vector2d> points;  // (e2, e3)
    std::vector<double> params;           // x for S and B0, e3 for B1
    std::vector<std::size_t> cusps;       // indices of points next to a cusp (S only)
    NormalFormParams fixed;
};

// Parametrisations; e2, e3 of `fixed` are ignored.
Eigen::Vector2d swallowtail_point(const NormalFormParams& fixed, double x);
Eigen::Vector2d swallowtail_tangent(const NormalFormParams& fixed, double x);
Eigen::Vector2d b0_point(const NormalFormParams& fixed, double x);

// Double-root locus of the axis polynomial for x in [x_lo, x_hi].
BifurcationCurve swallowtail_section(const NormalFormParams& fixed, double x_lo, double x_hi, int samples = 801);

// B0 (biaxial birth from the axis, x in [x_lo, x_hi] \ {0}) and B1 (double
// biaxial root). Needs e8 = 0 and n != 0; e6 is absorbed into m.
std::vector<BifurcationCurve> bluebird_section(const NormalFormParams& fixed, double x_lo, double x_hi,
                                               int samples = 801);

// B1 as e2 = e2(e3); empty optional-like flag when the double root is not
// positive. segment gives the e3 range where it is interior.
struct B1Line {
    bool exists = false;
    double e2_at_zero = 0, slope = 0;  // e2 = e2_at_zero + slope * e3
    double X_star = 0;
    double e3_lo = 0, e3_hi = 0;
};
B1Line b1_line(const NormalFormParams& fixed);

struct CensusCell {
    double e2 = 0, e3 = 0;
    CriticalCount count;
};
struct Census {
    int n2 = 0, n3 = 0;
    double e2_lo = 0, e2_hi = 0, e3_lo = 0, e3_hi = 0;
    std::vector<CensusCell> cells;  // row-major, e3 outer
};
Census region_census(const NormalFormParams& fixed, double e2_lo, double e2_hi, int n2, double e3_lo, double e3_hi,
                     int n3);

// Branch sweep ------------------------------------------------------------

using NormalFormPath = std::function<NormalFormParams(double)>;

// Straight line from a (at T_lo) to b (at T_hi).
NormalFormPath linear_path(const NormalFormParams& a, double T_lo, const NormalFormParams& b, double T_hi);

enum class EventKind {
    uniaxial_fold_create,
    uniaxial_fold_annihilate,
    uniaxial_from_origin,
    uniaxial_to_origin,
    biaxial_fold_create,
    biaxial_fold_annihilate,
    biaxial_from_axis,
    biaxial_to_axis,
    biaxial_from_origin,
    biaxial_to_origin,
    origin_destabilise,
    origin_stabilise,
};
std::string to_string(EventKind k);

struct SweepEvent {
    double T = 0;
    std::vector<EventKind> kinds;  // more than one when simultaneous
    double x_prime = 0;            // location on the quotient axis, where known
    bool ambiguous = false;        // bracket could not be resolved
    std::string note;              // refinement hint when ambiguous
};

struct BranchPoint {
    double T = 0;
    int branch_id = 0;
    double x_prime = 0, u_prime = 0;
    bool biaxial = false;
    MorseType type = MorseType::degenerate;
};

struct SweepResult {
    std::vector<BranchPoint> table;
    std::vector<SweepEvent> events;  // in the direction of travel
};

// Walks T from T_from to T_to (either order) in `steps` steps.
SweepResult branch_sweep(const NormalFormPath& path, double T_from, double T_to, int steps,
                         double bracket_tol = 1e-11);

// Tangency --------------------------------------------------------------

struct TangencyReport {
    double x_contact = 0;
    Eigen::Vector2d contact = Eigen::Vector2d::Zero();  // (e2, e3)
    double contact_angle = 0;
    double axis_residual = 0;      // F and F' at the contact
    double biaxial_residual = 0;   // double/boundary root residual of the X-equation
    Eigen::Vector2d crossing = Eigen::Vector2d::Zero();
    double crossing_angle = 0;
    bool crossing_found = false;
};

// e5 = 0, e4 < 0. The contact is taken on the side x > 0 unless positive_x is false.
TangencyReport tangency_check(const NormalFormParams& fixed, bool positive_x = true);

}  // namespace lcb
