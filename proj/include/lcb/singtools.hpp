#pragma once

// Determinacy and versality for D3-invariant functions written in the Hilbert
// basis X = x^2 + u^2 (weight 2), Y = x^3 - 3xu^2 (weight 3). Everything is
// exact over the rationals and works one weighted degree at a time.
//
// The equivariant vector fields are generated by V1 = (x,u) and
// V2 = (x^2-u^2, -2xu), with dX.V1 = 2X, dX.V2 = 2Y, dY.V1 = 3Y, dY.V2 = 3X^2.
// So df.V1 = 2X f_X + 3Y f_Y and df.V2 = 2Y f_X + 3X^2 f_Y.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lcb/numbers.hpp"

namespace lcb {

using XYMonomial = std::pair<int, int>;  // (a, b) for X^a Y^b

inline int weighted_degree(const XYMonomial& m) { return 2 * m.first + 3 * m.second; }

// All X^a Y^b of weighted degree d, X-power descending.
std::vector<XYMonomial> monomials_of_degree(int d);

class WeightedPoly {
public:
    WeightedPoly() = default;
    static WeightedPoly monomial(int a, int b, const Rational& c = Rational(1));
    static WeightedPoly X() { return monomial(1, 0); }
    static WeightedPoly Y() { return monomial(0, 1); }

    void add(int a, int b, const Rational& c);
    Rational coeff(int a, int b) const;
    const std::map<XYMonomial, Rational>& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int min_degree() const;  // -1 for zero
    int max_degree() const;

    WeightedPoly dX() const;
    WeightedPoly dY() const;
    // Terms of weighted degree <= k.
    WeightedPoly jet(int k) const;

    WeightedPoly& operator+=(const WeightedPoly& o);
    WeightedPoly& operator-=(const WeightedPoly& o);
    friend WeightedPoly operator+(WeightedPoly a, const WeightedPoly& b) { return a += b; }
    friend WeightedPoly operator-(WeightedPoly a, const WeightedPoly& b) { return a -= b; }
    friend WeightedPoly operator*(const WeightedPoly& a, const WeightedPoly& b);
    friend WeightedPoly operator*(WeightedPoly a, const Rational& s);
    friend WeightedPoly operator*(const Rational& s, WeightedPoly a) { return std::move(a) * s; }
    friend bool operator==(const WeightedPoly& a, const WeightedPoly& b) { return a.c_ == b.c_; }

    std::string to_string() const;

private:
    std::map<XYMonomial, Rational> c_;
};

enum class MultiplierClass { maximal_ideal, full_ring };

struct GradedIdeal {
    std::vector<WeightedPoly> generators;
    std::vector<MultiplierClass> classes;
};

// W0(f): df.V1 with multipliers in (X,Y), df.V2 with any multiplier.
GradedIdeal w0_generators(const WeightedPoly& f);
// W(f): both with any multiplier.
GradedIdeal w_generators(const WeightedPoly& f);

struct DegreeReport {
    int degree = 0;
    int dim = 0;   // number of monomials of this degree
    int rank = 0;  // dimension of the leading forms landing here
    bool spans_all = true;
    std::vector<XYMonomial> missing;  // monomials outside the span
};

// Leading-form dimensions of the ideal, degree by degree, computed modulo
// terms of degree > hi. Degree d is fully spanned when every polynomial of
// degree d is the lowest part of some element.
std::vector<DegreeReport> graded_membership(const GradedIdeal& ideal, int lo, int hi);

struct Verdict {
    bool holds = true;
    int failing_degree = -1;
    std::optional<XYMonomial> witness;
    std::vector<DegreeReport> degrees;
};

// Window test on [k+1, k+extent] for W0(j_k f). Spanning on the window is what
// is certified; the step to all degrees is the usual filtration argument.
Verdict k_determined(const WeightedPoly& f, int k, int extent = 6);

// W0(f) and W0(g) agree on [lo, hi] (elements with no terms below lo, modulo
// degree > hi).
bool w0_equality(const WeightedPoly& f, const WeightedPoly& g, int lo, int hi);

// W(h) plus the span of the given monomials covers all degrees 0..window.
Verdict versal_check(const WeightedPoly& h, const std::vector<XYMonomial>& monomials, int window);

struct LowCodimCase {
    int number = 0;
    std::string description;
    WeightedPoly f;
    int k = 0;
    bool claimed = false;  // the determinacy claimed for this jet
    Verdict verdict;
};

// The seven jets e2 X; e3 Y; e4 X^2; e5 XY; e6 X^3 + d6 Y^2; d6 Y^2 + e7 X^2 Y;
// e8 X^4 + d8 XY^2. Throws on degenerate e6 d6 (e6 + d6) or e8 d8 (e8 + d8).
std::vector<LowCodimCase> low_codim_suite(const Rational& e6 = 1, const Rational& d6 = 1, const Rational& e8 = 1,
                                   const Rational& d8 = 1);

// "a,b,c;a,b,c;..." (or space separated) with c an integer or fraction.
WeightedPoly parse_weighted_poly(const std::string& spec);

}  // namespace lcb
