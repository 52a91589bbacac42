#pragma once

// Truncated multivariate power series (or polynomials) with a hard degree cap.
// Coefficients are kept in a map keyed by exponent vectors; zero coefficients
// are never stored, and nothing above the cap is ever stored.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "lcb/errors.hpp"
#include "lcb/linalg.hpp"
#include "lcb/numbers.hpp"

namespace lcb {

inline constexpr int kMaxVars = 5;
inline constexpr int kMaxCap = 12;

using Monomial = std::array<std::uint8_t, kMaxVars>;

inline int degree(const Monomial& m) {
    return std::accumulate(m.begin(), m.end(), 0);
}

inline Monomial make_monomial(std::initializer_list<int> exps) {
    Monomial m{};
    int i = 0;
    for (int e : exps) m[static_cast<std::size_t>(i++)] = static_cast<std::uint8_t>(e);
    return m;
}

// Graded order: total degree first, then lexicographic with x0 most significant.
struct GradedLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = degree(a), db = degree(b);
        if (da != db) return da < db;
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    }
};

enum class SubstMode { series, polynomial };

template <class T>
class TruncSeries {
public:
    using Map = std::map<Monomial, T, GradedLess>;

    TruncSeries() : TruncSeries(1, 0) {}
    TruncSeries(int num_vars, int cap) : n_(num_vars), cap_(cap) {
        if (num_vars < 1 || num_vars > kMaxVars) throw Error("num_vars out of range");
        if (cap < 0 || cap > kMaxCap) throw Error("degree cap out of range");
    }

    static TruncSeries constant(int n, int cap, const T& c) {
        TruncSeries s(n, cap);
        s.add_term(Monomial{}, c);
        return s;
    }
    static TruncSeries variable(int n, int cap, int i, const T& c = T(1)) {
        if (i < 0 || i >= n) throw Error("variable index out of range");
        Monomial m{};
        m[static_cast<std::size_t>(i)] = 1;
        TruncSeries s(n, cap);
        s.add_term(m, c);
        return s;
    }
    static TruncSeries monomial(int n, int cap, const Monomial& m, const T& c = T(1)) {
        TruncSeries s(n, cap);
        s.add_term(m, c);
        return s;
    }
    static std::vector<TruncSeries> variables(int n, int cap) {
        std::vector<TruncSeries> v;
        for (int i = 0; i < n; ++i) v.push_back(variable(n, cap, i));
        return v;
    }

    int num_vars() const { return n_; }
    int cap() const { return cap_; }
    const Map& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    T coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? T(0) : it->second;
    }
    T coeff(std::initializer_list<int> exps) const { return coeff(make_monomial(exps)); }
    T constant_term() const { return coeff(Monomial{}); }

    void add_term(const Monomial& m, const T& c) {
        for (int i = n_; i < kMaxVars; ++i)
            if (m[static_cast<std::size_t>(i)] != 0) throw Error("monomial uses a variable beyond num_vars");
        if (degree(m) > cap_ || lcb::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if constexpr (std::is_same_v<T, Rational>) {
            if (inserted) it->second.canonicalize();
        }
        if (!inserted) {
            it->second += c;
            if (lcb::is_zero(it->second)) terms_.erase(it);
        }
    }
    void set_term(const Monomial& m, const T& c) {
        terms_.erase(m);
        add_term(m, c);
    }

    int min_degree() const { return terms_.empty() ? -1 : degree(terms_.begin()->first); }
    int max_degree() const { return terms_.empty() ? -1 : degree(terms_.rbegin()->first); }

    TruncSeries homogeneous(int d) const {
        TruncSeries r(n_, cap_);
        for (const auto& [m, c] : terms_)
            if (degree(m) == d) r.terms_.emplace(m, c);
        return r;
    }
    // Same terms, new cap (drops anything above it).
    TruncSeries with_cap(int cap) const {
        TruncSeries r(n_, cap);
        for (const auto& [m, c] : terms_)
            if (degree(m) <= cap) r.terms_.emplace(m, c);
        return r;
    }
    TruncSeries without_constant() const {
        TruncSeries r = *this;
        r.terms_.erase(Monomial{});
        return r;
    }

    TruncSeries& operator+=(const TruncSeries& o) {
        check_compatible(o);
        if (o.cap_ < cap_) *this = with_cap(o.cap_);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    TruncSeries& operator-=(const TruncSeries& o) {
        check_compatible(o);
        if (o.cap_ < cap_) *this = with_cap(o.cap_);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    TruncSeries& operator*=(const T& s) {
        if (lcb::is_zero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }
    friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
    friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
    friend TruncSeries operator-(TruncSeries a) {
        for (auto& [m, c] : a.terms_) c = -c;
        return a;
    }
    friend TruncSeries operator*(TruncSeries a, const T& s) { return a *= s; }
    friend TruncSeries operator*(const T& s, TruncSeries a) { return a *= s; }
    TruncSeries operator+(const T& s) const { return *this + constant(n_, cap_, s); }
    TruncSeries operator-(const T& s) const { return *this - constant(n_, cap_, s); }

    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
        a.check_compatible(b);
        TruncSeries r(a.n_, std::min(a.cap_, b.cap_));
        for (const auto& [ma, ca] : a.terms_) {
            int da = degree(ma);
            if (da > r.cap_) break;
            for (const auto& [mb, cb] : b.terms_) {
                if (da + degree(mb) > r.cap_) break;
                Monomial m;
                for (std::size_t i = 0; i < kMaxVars; ++i) m[i] = static_cast<std::uint8_t>(ma[i] + mb[i]);
                r.add_term(m, ca * cb);
            }
        }
        return r;
    }
    TruncSeries& operator*=(const TruncSeries& o) { return *this = *this * o; }

    TruncSeries pow(int k) const {
        if (k < 0) throw Error("negative power");
        TruncSeries r = constant(n_, cap_, T(1));
        for (int i = 0; i < k; ++i) r *= *this;
        return r;
    }

    // Partial derivative; the result has cap one lower.
    TruncSeries derivative(int i) const {
        if (i < 0 || i >= n_) throw Error("variable index out of range");
        TruncSeries r(n_, std::max(cap_ - 1, 0));
        for (const auto& [m, c] : terms_) {
            auto e = m[static_cast<std::size_t>(i)];
            if (e == 0) continue;
            Monomial d = m;
            d[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(e - 1);
            r.add_term(d, c * T(static_cast<int>(e)));
        }
        return r;
    }

    template <class U>
    U evaluate(const std::vector<U>& x) const {
        if (static_cast<int>(x.size()) != n_) throw Error("evaluate: wrong point dimension");
        std::vector<std::vector<U>> powers(static_cast<std::size_t>(n_));
        for (int i = 0; i < n_; ++i) {
            auto& p = powers[static_cast<std::size_t>(i)];
            p.push_back(U(1));
            for (int k = 1; k <= cap_; ++k) p.push_back(p.back() * x[static_cast<std::size_t>(i)]);
        }
        U sum(0);
        for (const auto& [m, c] : terms_) {
            U t = convert<U, T>(c);
            for (int i = 0; i < n_; ++i) {
                auto e = m[static_cast<std::size_t>(i)];
                if (e) t *= powers[static_cast<std::size_t>(i)][e];
            }
            sum += t;
        }
        return sum;
    }

    template <class U>
    TruncSeries<U> cast() const {
        TruncSeries<U> r(n_, cap_);
        for (const auto& [m, c] : terms_) r.add_term(m, convert<U, T>(c));
        return r;
    }

    // Drop coefficients with |c| <= tol (floating types).
    TruncSeries chopped(double tol) const {
        TruncSeries r(n_, cap_);
        for (const auto& [m, c] : terms_)
            if (std::abs(lcb::to_double(c)) > tol) r.terms_.emplace(m, c);
        return r;
    }

    double max_abs_coeff() const {
        double mx = 0;
        for (const auto& [m, c] : terms_) mx = std::max(mx, std::abs(lcb::to_double(c)));
        return mx;
    }

    friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
        return a.n_ == b.n_ && a.cap_ == b.cap_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const TruncSeries& a, const TruncSeries& b) { return !(a == b); }

    std::string str(const std::vector<std::string>& names = {}) const {
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << c << ")";
            for (int i = 0; i < n_; ++i) {
                auto e = m[static_cast<std::size_t>(i)];
                if (!e) continue;
                os << "*" << (i < static_cast<int>(names.size()) ? names[static_cast<std::size_t>(i)] : "x" + std::to_string(i));
                if (e > 1) os << "^" << int(e);
            }
        }
        return first ? "0" : os.str();
    }

    template <class U, class V>
    static U convert(const V& c) {
        if constexpr (std::is_same_v<U, V>) {
            return c;
        } else if constexpr (std::is_floating_point_v<U>) {
            return static_cast<U>(lcb::to_double(c));
        } else {
            return U(c);
        }
    }

private:
    void check_compatible(const TruncSeries& o) const {
        if (n_ != o.n_) throw Error("series with different numbers of variables");
    }

    int n_;
    int cap_;
    Map terms_;
};

using RationalSeries = TruncSeries<Rational>;
using RealSeries = TruncSeries<double>;

// f(images[0], ..., images[n-1]). The result lives in the images' ring and cap.
// Series mode requires every image to have zero constant term, which makes
// the truncation exact; polynomial mode allows constants and simply expands.
template <class T>
TruncSeries<T> substitute(const TruncSeries<T>& f, const std::vector<TruncSeries<T>>& images,
                          SubstMode mode = SubstMode::series) {
    if (static_cast<int>(images.size()) != f.num_vars()) throw Error("substitute: need one image per variable");
    const int m = images.front().num_vars();
    const int cap = images.front().cap();
    for (const auto& im : images) {
        if (im.num_vars() != m || im.cap() != cap) throw Error("substitute: images must share ring and cap");
        if (mode == SubstMode::series && !is_zero(im.constant_term()))
            throw Error("substitute: image with nonzero constant term in series mode");
    }
    std::map<Monomial, TruncSeries<T>, GradedLess> memo;
    memo.emplace(Monomial{}, TruncSeries<T>::constant(m, cap, T(1)));
    std::function<const TruncSeries<T>&(const Monomial&)> power = [&](const Monomial& e) -> const TruncSeries<T>& {
        auto it = memo.find(e);
        if (it != memo.end()) return it->second;
        std::size_t i = 0;
        while (e[i] == 0) ++i;
        Monomial prev = e;
        --prev[i];
        TruncSeries<T> p = power(prev) * images[i];
        return memo.emplace(e, std::move(p)).first->second;
    };
    TruncSeries<T> r(m, cap);
    for (const auto& [e, c] : f.terms()) {
        if (mode == SubstMode::series && degree(e) > cap) break;
        r += power(e) * c;
    }
    return r;
}

template <class T>
std::vector<TruncSeries<T>> substitute(const std::vector<TruncSeries<T>>& fs,
                                       const std::vector<TruncSeries<T>>& images,
                                       SubstMode mode = SubstMode::series) {
    std::vector<TruncSeries<T>> out;
    for (const auto& f : fs) out.push_back(substitute(f, images, mode));
    return out;
}

// log f for f with constant term 1. Floating series may carry a constant that
// is 1 up to rounding; it is then split off as log(c0).
template <class T>
TruncSeries<T> log_series(const TruncSeries<T>& f) {
    T c0 = f.constant_term();
    TruncSeries<T> u(f.num_vars(), f.cap());
    T shift(0);
    if constexpr (std::is_floating_point_v<T>) {
        if (std::abs(c0 - 1.0) > 1e-12) throw Error("log_series: constant term must be 1");
        u = f * (T(1) / c0) - T(1);
        shift = std::log(c0);
    } else {
        if (c0 != T(1)) throw Error("log_series: constant term must be exactly 1");
        u = f - T(1);
    }
    TruncSeries<T> r = TruncSeries<T>::constant(f.num_vars(), f.cap(), shift);
    TruncSeries<T> p = TruncSeries<T>::constant(f.num_vars(), f.cap(), T(1));
    for (int k = 1; k <= f.cap(); ++k) {
        p *= u;
        if (p.is_zero()) break;
        T s = T(k % 2 ? 1 : -1) / T(k);
        r += p * s;
    }
    return r;
}

template <class T>
std::vector<TruncSeries<T>> gradient(const TruncSeries<T>& f) {
    std::vector<TruncSeries<T>> g;
    for (int i = 0; i < f.num_vars(); ++i) g.push_back(f.derivative(i));
    return g;
}

// Linear part of a map given by n component series: L[i][j] = d W_i / d x_j at 0.
template <class T>
Matrix<T> linear_part(const std::vector<TruncSeries<T>>& w) {
    const int n = static_cast<int>(w.size());
    auto L = zeros<T>(w.size(), w.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Monomial m{};
            m[static_cast<std::size_t>(j)] = 1;
            L[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = w[static_cast<std::size_t>(i)].coeff(m);
        }
    return L;
}

// Compositional inverse of x -> W(x), as series in the W variables, with the
// same cap. Fixed point  x = L^{-1}(w - H(x))  where H is W minus its linear
// part; each sweep fixes one more degree.
template <class T>
std::vector<TruncSeries<T>> invert_map(const std::vector<TruncSeries<T>>& w) {
    const int n = static_cast<int>(w.size());
    if (n == 0) throw Error("invert_map: empty map");
    const int cap = w.front().cap();
    for (const auto& c : w) {
        if (c.num_vars() != n) throw Error("invert_map: map must be square");
        if (c.cap() != cap) throw Error("invert_map: components must share cap");
        if (!is_zero(c.constant_term())) throw Error("invert_map: nonzero constant term");
    }
    auto L = linear_part(w);
    auto Linv = inverse(L, std::is_floating_point_v<T> ? 1e-14 : 0.0);
    if (!Linv) throw Error("invert_map: singular linear part");

    std::vector<TruncSeries<T>> higher;
    for (const auto& c : w) {
        TruncSeries<T> h = c;
        for (int d = 0; d <= 1; ++d) h -= c.homogeneous(d);
        higher.push_back(h);
    }
    auto vars = TruncSeries<T>::variables(n, cap);
    auto apply_Linv = [&](const std::vector<TruncSeries<T>>& v) {
        std::vector<TruncSeries<T>> out;
        for (int i = 0; i < n; ++i) {
            TruncSeries<T> s(n, cap);
            for (int j = 0; j < n; ++j) {
                const T& a = (*Linv)[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                if (!is_zero(a)) s += v[static_cast<std::size_t>(j)] * a;
            }
            out.push_back(s);
        }
        return out;
    };
    auto x = apply_Linv(vars);
    for (int sweep = 1; sweep < cap; ++sweep) {
        auto hx = substitute(higher, x);
        std::vector<TruncSeries<T>> rhs;
        for (int i = 0; i < n; ++i) rhs.push_back(vars[static_cast<std::size_t>(i)] - hx[static_cast<std::size_t>(i)]);
        x = apply_Linv(rhs);
    }
    return x;
}

}  // namespace lcb
