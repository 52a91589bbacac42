#include "lcb/singtools.hpp"

#include <algorithm>
#include <sstream>

#include "lcb/errors.hpp"
#include "lcb/linalg.hpp"

namespace lcb {

std::vector<XYMonomial> monomials_of_degree(int d) {
    std::vector<XYMonomial> out;
    if (d < 0) return out;
    for (int a = d / 2; a >= 0; --a) {
        int rest = d - 2 * a;
        if (rest % 3 == 0) out.emplace_back(a, rest / 3);
    }
    return out;
}

WeightedPoly WeightedPoly::monomial(int a, int b, const Rational& c) {
    WeightedPoly p;
    p.add(a, b, c);
    return p;
}

void WeightedPoly::add(int a, int b, const Rational& c) {
    if (a < 0 || b < 0) throw Error("negative exponent in weighted polynomial");
    if (c == 0) return;
    auto key = XYMonomial{a, b};
    auto it = c_.find(key);
    if (it == c_.end()) {
        c_.emplace(key, c);
        return;
    }
    it->second += c;
    if (it->second == 0) c_.erase(it);
}

Rational WeightedPoly::coeff(int a, int b) const {
    auto it = c_.find({a, b});
    return it == c_.end() ? Rational(0) : it->second;
}

int WeightedPoly::min_degree() const {
    int d = -1;
    for (const auto& [m, c] : c_) {
        int w = weighted_degree(m);
        if (d < 0 || w < d) d = w;
    }
    return d;
}

int WeightedPoly::max_degree() const {
    int d = -1;
    for (const auto& [m, c] : c_) d = std::max(d, weighted_degree(m));
    return d;
}

WeightedPoly WeightedPoly::dX() const {
    WeightedPoly r;
    for (const auto& [m, c] : c_)
        if (m.first > 0) r.add(m.first - 1, m.second, c * m.first);
    return r;
}

WeightedPoly WeightedPoly::dY() const {
    WeightedPoly r;
    for (const auto& [m, c] : c_)
        if (m.second > 0) r.add(m.first, m.second - 1, c * m.second);
    return r;
}

WeightedPoly WeightedPoly::jet(int k) const {
    WeightedPoly r;
    for (const auto& [m, c] : c_)
        if (weighted_degree(m) <= k) r.add(m.first, m.second, c);
    return r;
}

WeightedPoly& WeightedPoly::operator+=(const WeightedPoly& o) {
    for (const auto& [m, c] : o.c_) add(m.first, m.second, c);
    return *this;
}

WeightedPoly& WeightedPoly::operator-=(const WeightedPoly& o) {
    for (const auto& [m, c] : o.c_) add(m.first, m.second, -c);
    return *this;
}

WeightedPoly operator*(const WeightedPoly& a, const WeightedPoly& b) {
    WeightedPoly r;
    for (const auto& [ma, ca] : a.c_)
        for (const auto& [mb, cb] : b.c_) r.add(ma.first + mb.first, ma.second + mb.second, ca * cb);
    return r;
}

WeightedPoly operator*(WeightedPoly a, const Rational& s) {
    if (s == 0) return {};
    for (auto& [m, c] : a.c_) c *= s;
    return a;
}

std::string WeightedPoly::to_string() const {
    if (c_.empty()) return "0";
    // ascending weighted degree, X-power descending inside a degree
    std::vector<std::pair<XYMonomial, Rational>> t(c_.begin(), c_.end());
    std::stable_sort(t.begin(), t.end(), [](const auto& l, const auto& r) {
        int dl = weighted_degree(l.first), dr = weighted_degree(r.first);
        if (dl != dr) return dl < dr;
        return l.first.first > r.first.first;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : t) {
        Rational a = abs(c);
        os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        std::vector<std::string> parts;
        if (a != 1 || (m.first == 0 && m.second == 0)) parts.push_back(lcb::to_string(a));
        if (m.first) parts.push_back(m.first > 1 ? "X^" + std::to_string(m.first) : "X");
        if (m.second) parts.push_back(m.second > 1 ? "Y^" + std::to_string(m.second) : "Y");
        for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "*" : "") << parts[i];
        first = false;
    }
    return os.str();
}

GradedIdeal w0_generators(const WeightedPoly& f) {
    if (f.coeff(0, 0) != 0) throw Error("W0 needs f(0) = 0");
    auto fx = f.dX(), fy = f.dY();
    auto X = WeightedPoly::X(), Y = WeightedPoly::Y();
    GradedIdeal I;
    I.generators.push_back(Rational(2) * X * fx + Rational(3) * Y * fy);
    I.generators.push_back(Rational(2) * Y * fx + Rational(3) * X * X * fy);
    I.classes = {MultiplierClass::maximal_ideal, MultiplierClass::full_ring};
    return I;
}

GradedIdeal w_generators(const WeightedPoly& f) {
    auto I = w0_generators(f);
    I.classes = {MultiplierClass::full_ring, MultiplierClass::full_ring};
    return I;
}

namespace {

struct Layout {
    std::vector<XYMonomial> cols;  // ascending degree
    std::map<XYMonomial, std::size_t> index;
};

Layout layout_up_to(int hi) {
    Layout L;
    for (int d = 0; d <= hi; ++d)
        for (const auto& m : monomials_of_degree(d)) {
            L.index[m] = L.cols.size();
            L.cols.push_back(m);
        }
    return L;
}

std::vector<Rational> to_row(const WeightedPoly& p, const Layout& L, int hi) {
    std::vector<Rational> row(L.cols.size(), Rational(0));
    for (const auto& [m, c] : p.terms())
        if (weighted_degree(m) <= hi) row[L.index.at(m)] = c;
    return row;
}

// Every element of the ideal as multiplier monomial times generator, mod degree > hi.
Matrix<Rational> ideal_rows(const GradedIdeal& I, const Layout& L, int hi) {
    if (I.generators.size() != I.classes.size()) throw Error("graded ideal: generator/class size mismatch");
    Matrix<Rational> rows;
    for (std::size_t g = 0; g < I.generators.size(); ++g) {
        const auto& gen = I.generators[g];
        if (gen.is_zero()) continue;
        int room = hi - gen.min_degree();
        for (int d = 0; d <= room; ++d)
            for (const auto& m : monomials_of_degree(d)) {
                if (d == 0 && I.classes[g] == MultiplierClass::maximal_ideal) continue;
                rows.push_back(to_row(WeightedPoly::monomial(m.first, m.second) * gen, L, hi));
            }
    }
    return rows;
}

std::vector<DegreeReport> reports(Matrix<Rational> rows, const Layout& L, int lo, int hi) {
    std::vector<std::size_t> order(L.cols.size());
    for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
    std::vector<std::size_t> piv;
    if (!rows.empty()) piv = row_echelon(rows, order);
    std::vector<bool> is_piv(L.cols.size(), false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<DegreeReport> out;
    for (int d = std::max(lo, 0); d <= hi; ++d) {
        DegreeReport r;
        r.degree = d;
        for (const auto& m : monomials_of_degree(d)) {
            ++r.dim;
            if (is_piv[L.index.at(m)])
                ++r.rank;
            else
                r.missing.push_back(m);
        }
        r.spans_all = r.rank == r.dim;
        out.push_back(std::move(r));
    }
    return out;
}

Verdict verdict_from(std::vector<DegreeReport> deg) {
    Verdict v;
    for (const auto& r : deg)
        if (!r.spans_all) {
            v.holds = false;
            v.failing_degree = r.degree;
            v.witness = r.missing.front();
            break;
        }
    v.degrees = std::move(deg);
    return v;
}

// Basis of the elements with no terms below lo.
Matrix<Rational> filtered_basis(const GradedIdeal& I, const Layout& L, int lo, int hi) {
    auto rows = ideal_rows(I, L, hi);
    Matrix<Rational> out;
    if (rows.empty()) return out;
    std::vector<std::size_t> order(L.cols.size());
    for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
    auto piv = row_echelon(rows, order);
    for (std::size_t r = 0; r < piv.size(); ++r)
        if (weighted_degree(L.cols[piv[r]]) >= lo) out.push_back(rows[r]);
    return out;
}

}  // namespace

std::vector<DegreeReport> graded_membership(const GradedIdeal& ideal, int lo, int hi) {
    if (hi < lo) throw Error("graded_membership: empty degree window");
    auto L = layout_up_to(hi);
    return reports(ideal_rows(ideal, L, hi), L, lo, hi);
}

Verdict k_determined(const WeightedPoly& f, int k, int extent) {
    if (k < 1 || extent < 1) throw Error("k_determined: k and extent must be positive");
    auto jk = f.jet(k);
    if (jk.is_zero()) throw Error("k_determined: the k-jet is zero");
    return verdict_from(graded_membership(w0_generators(jk), k + 1, k + extent));
}

bool w0_equality(const WeightedPoly& f, const WeightedPoly& g, int lo, int hi) {
    if (hi < lo) throw Error("w0_equality: empty degree window");
    auto L = layout_up_to(hi);
    auto A = filtered_basis(w0_generators(f), L, lo, hi);
    auto B = filtered_basis(w0_generators(g), L, lo, hi);
    auto AB = A;
    AB.insert(AB.end(), B.begin(), B.end());
    std::size_t ra = A.size(), rb = B.size();
    std::size_t rab = AB.empty() ? 0 : rank(AB);
    return ra == rb && rab == ra;
}

Verdict versal_check(const WeightedPoly& h, const std::vector<XYMonomial>& monomials, int window) {
    if (window < 0) throw Error("versal_check: negative window");
    auto L = layout_up_to(window);
    auto rows = ideal_rows(w_generators(h), L, window);
    for (const auto& m : monomials)
        if (weighted_degree(m) <= window) rows.push_back(to_row(WeightedPoly::monomial(m.first, m.second), L, window));
    return verdict_from(reports(std::move(rows), L, 0, window));
}

std::vector<LowCodimCase> low_codim_suite(const Rational& e6, const Rational& d6, const Rational& e8, const Rational& d8) {
    if (e6 * d6 * (e6 + d6) == 0) throw Error("low_codim_suite: need e6 d6 (e6 + d6) != 0");
    if (e8 * d8 * (e8 + d8) == 0) throw Error("low_codim_suite: need e8 d8 (e8 + d8) != 0");
    using W = WeightedPoly;
    std::vector<LowCodimCase> out;
    auto push = [&](int num, std::string desc, W f, int k, bool claimed) {
        LowCodimCase c;
        c.number = num;
        c.description = std::move(desc);
        c.f = std::move(f);
        c.k = k;
        c.claimed = claimed;
        c.verdict = k_determined(c.f, k);
        out.push_back(std::move(c));
    };
    push(1, "e2 != 0: X", W::X(), 2, true);
    push(2, "e2 = 0, e3 != 0: Y", W::Y(), 3, true);
    push(3, "e2 = e3 = 0, e4 != 0: X^2", W::monomial(2, 0), 4, false);
    push(4, "e2 = e3 = e4 = 0, e5 != 0: XY", W::monomial(1, 1), 5, false);
    push(5, "e2..e5 = 0: e6 X^3 + d6 Y^2", W::monomial(3, 0, e6) + W::monomial(0, 2, d6), 6, false);
    push(6, "e2..e6 = 0: d6 Y^2 + X^2 Y", W::monomial(0, 2, d6) + W::monomial(2, 1), 7, false);
    push(7, "e2..e7 = 0: e8 X^4 + d8 XY^2", W::monomial(4, 0, e8) + W::monomial(1, 2, d8), 8, true);
    return out;
}

WeightedPoly parse_weighted_poly(const std::string& spec) {
    WeightedPoly p;
    std::string norm = spec;
    std::replace(norm.begin(), norm.end(), ';', ' ');
    std::stringstream terms(norm);
    std::string term;
    while (terms >> term) {
        if (term.find_first_not_of(" \t") == std::string::npos) continue;
        std::stringstream fields(term);
        std::string a, b, c;
        if (!std::getline(fields, a, ',') || !std::getline(fields, b, ',') || !std::getline(fields, c))
            throw Error("bad polynomial term '" + term + "', want a,b,coeff");
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t"));
            s.erase(s.find_last_not_of(" \t") + 1);
            return s;
        };
        try {
            Rational q(trim(c));
            q.canonicalize();
            p.add(std::stoi(trim(a)), std::stoi(trim(b)), q);
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            throw Error("bad polynomial term '" + term + "'");
        }
    }
    return p;
}

}  // namespace lcb
