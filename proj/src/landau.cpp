#include "lcb/landau.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lcb/errors.hpp"

namespace lcb {

ConeParams make_cone_params(double T, double U0, std::array<double, 3> lambda) {
    double sum = lambda[0] + lambda[1] + lambda[2];
    if (sum == 0) throw Error("make_cone_params: lambda sums to zero");
    if (!(U0 > 0)) throw Error("make_cone_params: U0 must be positive");
    for (auto& l : lambda) l /= sum;
    ConeParams cp;
    cp.T = T;
    cp.U0 = U0;
    cp.lambda = lambda;
    cp.mu = (10 * T - U0) / 4;
    cp.R_T = std::sqrt(2.0 / 3.0) * (10 * T / U0 - 1);
    auto q = coeffs_from_Tlambda(cp);
    cp.xi = std::atan2(std::sqrt(std::max(0.0, q.beta)), std::sqrt(std::max(0.0, q.alpha)));
    if (q.gamma < 0) cp.xi = -cp.xi;
    return cp;
}

Quadratic coeffs_from_Tlambda(const ConeParams& cp) {
    const auto& l = cp.lambda;
    Quadratic q;
    q.alpha = 2.5 * cp.T - 0.5 * cp.U0 * (l[0] / 4 + l[1] / 4 + l[2]);
    q.beta = 2.5 * cp.T - 0.375 * cp.U0 * (l[0] + l[1]);
    q.gamma = -std::sqrt(3.0) / 8 * cp.U0 * (l[0] - l[1]);
    return q;
}

ConeParams cone_point(double T, double xi, double U0) {
    if (!(T > U0 / 10)) {
        if (T == U0 / 10) {
            ConeParams v = make_cone_params(T, U0, {1, 1, 1});
            v.xi = xi;
            return v;
        }
        throw Error("cone_point: need T > U0/10");
    }
    const double R = std::sqrt(2.0 / 3.0) * (10 * T / U0 - 1);
    const double k = R * std::sqrt(2.0 / 3.0);
    const double third = std::numbers::pi / 3;
    ConeParams cp;
    cp.T = T;
    cp.U0 = U0;
    cp.lambda = {1.0 / 3 + k * std::cos(2 * xi + third), 1.0 / 3 + k * std::cos(2 * xi - third),
                 1.0 / 3 - k * std::cos(2 * xi)};
    cp.mu = (10 * T - U0) / 4;
    cp.xi = xi;
    cp.R_T = R;
    return cp;
}

std::string to_string(Stability s) {
    switch (s) {
        case Stability::stable: return "stable";
        case Stability::marginal: return "marginal";
        case Stability::saddle_2_2: return "saddle_2_2";
        case Stability::unstable_4: return "unstable_4";
    }
    return "?";
}

Stability stability_classify(double alpha, double beta, double gamma, double rel_tol) {
    double det = alpha * beta - gamma * gamma;
    double scale = alpha * alpha + beta * beta + gamma * gamma;
    if (std::abs(det) <= rel_tol * scale) return Stability::marginal;
    if (det < 0) return Stability::saddle_2_2;
    return alpha + beta > 0 ? Stability::stable : Stability::unstable_4;
}

LandauCoeffs physical_coeffs(const Quadratic& q, double kT, const EntropyCoefficients& ent) {
    std::array<double, 12> a{};
    for (std::size_t j = 3; j < 12; ++j) a[j] = kT * ent.coeffs[j];
    a[0] = q.alpha;
    a[1] = q.beta;
    a[2] = q.gamma;
    return LandauCoeffs::from_array(a);
}

Eigen::Matrix4d hamiltonian_B(const Quadratic& q, double kT) {
    // H = (alpha - 5kT/2)|z|^2 + (beta - 5kT/2)|w|^2 + 2 gamma Re(z wbar) = -W.BW/2
    double ah = q.alpha - 2.5 * kT, bh = q.beta - 2.5 * kT;
    Eigen::Matrix4d B = Eigen::Matrix4d::Zero();
    B(0, 0) = B(1, 1) = -2 * ah;
    B(2, 2) = B(3, 3) = -2 * bh;
    B(0, 2) = B(2, 0) = B(1, 3) = B(3, 1) = -2 * q.gamma;
    return B;
}

std::string to_string(PointTag t) {
    switch (t) {
        case PointTag::isotropic: return "isotropic";
        case PointTag::uniaxial: return "uniaxial";
        case PointTag::biaxial: return "biaxial";
    }
    return "?";
}

namespace {

// Flattened polynomial in 4 variables for fast repeated evaluation.
struct FlatPoly {
    std::vector<std::array<std::uint8_t, 4>> e;
    std::vector<double> c;
    int maxdeg = 0;

    explicit FlatPoly(const RealSeries& s) {
        for (const auto& [m, v] : s.terms()) {
            e.push_back({m[0], m[1], m[2], m[3]});
            c.push_back(v);
            maxdeg = std::max(maxdeg, degree(m));
        }
    }
};

struct Powers {
    double p[4][8];
    explicit Powers(const Eigen::Vector4d& x) {
        for (int i = 0; i < 4; ++i) {
            p[i][0] = 1;
            for (int k = 1; k < 8; ++k) p[i][k] = p[i][k - 1] * x(i);
        }
    }
    double eval(const FlatPoly& f) const {
        double acc = 0;
        for (std::size_t t = 0; t < f.c.size(); ++t) {
            const auto& e = f.e[t];
            acc += f.c[t] * p[0][e[0]] * p[1][e[1]] * p[2][e[2]] * p[3][e[3]];
        }
        return acc;
    }
};

struct Compiled {
    FlatPoly f;
    std::vector<FlatPoly> g;
    std::vector<FlatPoly> h;  // row-major 4x4

    explicit Compiled(const LandauCoeffs& k) : f(free_energy(k)) {
        RealSeries F = free_energy(k);
        std::vector<RealSeries> gs;
        for (int i = 0; i < 4; ++i) {
            gs.push_back(F.derivative(i));
            g.emplace_back(gs.back());
        }
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) h.emplace_back(gs[static_cast<std::size_t>(i)].derivative(j));
    }
    Eigen::Vector4d grad(const Eigen::Vector4d& x) const {
        Powers P(x);
        return {P.eval(g[0]), P.eval(g[1]), P.eval(g[2]), P.eval(g[3])};
    }
    Eigen::Matrix4d hess(const Eigen::Vector4d& x) const {
        Powers P(x);
        Eigen::Matrix4d H;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) H(i, j) = P.eval(h[static_cast<std::size_t>(4 * i + j)]);
        return H;
    }
    double value(const Eigen::Vector4d& x) const { return Powers(x).eval(f); }
};

Eigen::Vector4d act(const GroupElement& g, const Eigen::Vector4d& x) {
    auto y = g.act(std::vector<double>{x(0), x(1), x(2), x(3)});
    return {y[0], y[1], y[2], y[3]};
}

}  // namespace

Eigen::Vector4d free_energy_gradient(const LandauCoeffs& k, const Eigen::Vector4d& x) { return Compiled(k).grad(x); }
Eigen::Matrix4d free_energy_hessian(const LandauCoeffs& k, const Eigen::Vector4d& x) { return Compiled(k).hess(x); }

std::vector<GroupElement> symmetry_subgroup(const LandauCoeffs& k, double tol) {
    // Cubic and higher terms are invariant under all 72 elements; only the
    // quadratic form can break symmetry.
    Eigen::Matrix4d Q = Eigen::Matrix4d::Zero();
    Q(0, 0) = Q(1, 1) = k.alpha;
    Q(2, 2) = Q(3, 3) = k.beta;
    Q(0, 2) = Q(2, 0) = Q(1, 3) = Q(3, 1) = k.gamma;
    double scale = std::max(1.0, Q.cwiseAbs().maxCoeff());
    std::vector<GroupElement> out;
    for (const auto& g : d3tilde_on_r4().elements) {
        Eigen::Matrix4d G = g.to_eigen();
        if ((G.transpose() * Q * G - Q).cwiseAbs().maxCoeff() <= tol * scale) out.push_back(g);
    }
    return out;
}

PointTag classify_point(const Eigen::Vector4d& x, double tol) {
    double n = x.norm();
    if (n <= tol) return PointTag::isotropic;
    static const std::vector<GroupElement> reflections = [] {
        std::vector<GroupElement> r;
        for (const auto& g : d3_left_on_r4().elements)
            if (g.det().to_double() > 0 && !(g == GroupElement::identity(4))) {
                // left reflections act as det -1 on each plane, +1 on R^4
                Eigen::Matrix4d G = g.to_eigen();
                if (std::abs(G.trace()) < 1e-12) r.push_back(g);
            }
        return r;
    }();
    for (const auto& g : reflections)
        if ((act(g, x) - x).norm() <= tol * (1 + n)) return PointTag::uniaxial;
    return PointTag::biaxial;
}

CriticalSet critical_points_4d(const LandauCoeffs& k, const Solve4dOptions& opt) {
    if (opt.grid_n < 1) throw Error("critical_points_4d: grid_n must be positive");
    if (!(opt.search_radius > 0)) throw Error("critical_points_4d: search_radius must be positive");
    Compiled F(k);
    const double pos_tol = std::max(1e-8, 10 * opt.tol);
    CriticalSet out;
    std::vector<Eigen::Vector4d> found;

    auto newton = [&](Eigen::Vector4d x, Eigen::Vector4d& res) {
        for (int it = 0; it < opt.max_iter; ++it) {
            Eigen::Vector4d g = F.grad(x);
            if (g.norm() <= opt.tol) {
                res = x;
                return true;
            }
            Eigen::Matrix4d H = F.hess(x);
            Eigen::Vector4d step = H.completeOrthogonalDecomposition().solve(-g);
            if (!step.allFinite()) return false;
            double sn = step.norm();
            if (sn > opt.search_radius) step *= opt.search_radius / sn;
            x += step;
            if (x.norm() > 4 * opt.search_radius) return false;
        }
        // accept if the last iterate is converged to rounding
        if (F.grad(x).norm() <= std::max(opt.tol, 1e-10)) {
            res = x;
            return true;
        }
        return false;
    };
    auto known = [&](const Eigen::Vector4d& x) {
        for (const auto& y : found)
            if ((x - y).norm() <= pos_tol * (1 + x.norm())) return true;
        return false;
    };

    // the origin is always critical (no linear terms)
    found.push_back(Eigen::Vector4d::Zero());
    const int n = opt.grid_n;
    const double r = opt.search_radius;
    auto coord = [&](int i) { return n == 1 ? 0.0 : -r + 2 * r * i / (n - 1); };
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    Eigen::Vector4d x0(coord(a), coord(b), coord(c), coord(d)), x;
                    if (!newton(x0, x)) {
                        ++out.failed_seeds;
                        continue;
                    }
                    if (!known(x)) found.push_back(x);
                }

    auto sym = symmetry_subgroup(k);
    out.symmetry_order = static_cast<int>(sym.size());

    // records, with orbit completion for nondegenerate points
    std::vector<CriticalPointRecord> recs;
    std::vector<char> assigned;
    auto make_record = [&](const Eigen::Vector4d& x) {
        CriticalPointRecord rc;
        rc.location = x;
        rc.gradient_norm = F.grad(x).norm();
        rc.value = F.value(x);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(F.hess(x), Eigen::EigenvaluesOnly);
        const auto& ev = es.eigenvalues();
        double mx = std::max(1.0, ev.cwiseAbs().maxCoeff());
        for (int i = 0; i < 4; ++i) {
            if (std::abs(ev(i)) <= opt.degenerate_tol * mx) rc.degenerate = true;
            else if (ev(i) < 0) ++rc.morse_index;
        }
        rc.tag = classify_point(x);
        return rc;
    };
    for (std::size_t i = 0; i < found.size(); ++i) recs.push_back(make_record(found[i]));
    for (std::size_t i = 0; i < recs.size(); ++i) {
        if (recs[i].degenerate) continue;
        for (const auto& g : sym) {
            Eigen::Vector4d y = act(g, recs[i].location);
            if (known(y)) continue;
            Eigen::Vector4d z;
            if (!newton(y, z) || known(z)) continue;
            found.push_back(z);
            recs.push_back(make_record(z));
        }
    }

    // orbit ids in order of increasing |x|
    std::vector<std::size_t> order(recs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto lexless = [](const Eigen::Vector4d& a, const Eigen::Vector4d& b) {
        for (int i = 0; i < 4; ++i)
            if (std::abs(a(i) - b(i)) > 1e-12) return a(i) < b(i);
        return false;
    };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        double na = recs[a].location.norm(), nb = recs[b].location.norm();
        if (std::abs(na - nb) > 1e-9) return na < nb;
        return lexless(recs[a].location, recs[b].location);
    });
    std::vector<int> orbit(recs.size(), -1);
    int next = 0;
    for (std::size_t oi : order) {
        if (orbit[oi] >= 0) continue;
        orbit[oi] = next;
        for (const auto& g : sym) {
            Eigen::Vector4d y = act(g, recs[oi].location);
            for (std::size_t j = 0; j < recs.size(); ++j)
                if (orbit[j] < 0 && (recs[j].location - y).norm() <= pos_tol * (1 + y.norm())) orbit[j] = next;
        }
        ++next;
    }
    for (std::size_t i = 0; i < recs.size(); ++i) {
        recs[i].orbit_id = orbit[i];
        if (recs[i].degenerate) out.any_degenerate = true;
    }
    std::sort(recs.begin(), recs.end(), [&](const CriticalPointRecord& a, const CriticalPointRecord& b) {
        if (a.orbit_id != b.orbit_id) return a.orbit_id < b.orbit_id;
        return lexless(a.location, b.location);
    });
    out.points = std::move(recs);
    out.orbits = next;
    return out;
}

}  // namespace lcb
