#pragma once

#include "wf/qrational.hpp"

#include <json.hpp>

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wf {

using Exp = std::vector<int>;

// Exponent bounds. |value| >= kInf means unbounded.
constexpr long kInf = 1L << 40;

struct Interval {
    long lo = -kInf;
    long hi = kInf;

    static Interval point(long v) { return {v, v}; }
    bool empty() const { return lo > hi; }
    bool contains(long v) const { return v >= lo && v <= hi; }
    bool lo_finite() const { return lo > -kInf; }
    bool hi_finite() const { return hi < kInf; }
    Interval meet(const Interval& o) const;
    bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);  // {x - y}

// Box on which a series is known exactly (missing terms inside are zero).
struct ExponentWindow {
    std::vector<Interval> box;

    static ExponentWindow full(size_t n) { return {std::vector<Interval>(n)}; }
    static ExponentWindow lower(const std::vector<long>& lo);
    size_t size() const { return box.size(); }
    bool contains(const Exp& e) const;
    bool covers(const std::vector<Interval>& need) const;
    bool operator==(const ExponentWindow& o) const { return box == o.box; }
};

// Linear constraint  sum_{v in mask} e_v  in range, satisfied by every term.
struct SumConstraint {
    std::vector<char> mask;
    Interval range;
};

// Over-approximation of the support of the full (untruncated) series.
struct SupportBound {
    std::vector<Interval> box;
    std::vector<SumConstraint> sums;

    static SupportBound any(size_t n) { return {std::vector<Interval>(n), {}}; }
    bool admits(const Exp& e) const;
    void add_sum(std::vector<char> mask, Interval range);
};

// Bounds propagation for c = a*b restricted to `target`: returns the boxes in
// which contributing exponents of a (X) and b (Y) must lie. nullopt when no
// pair can contribute at all.
struct FactorNeeds {
    std::vector<Interval> a;
    std::vector<Interval> b;
};
std::optional<FactorNeeds> factor_needs(const SupportBound& sa, const SupportBound& sb,
                                        const ExponentWindow& target);
SupportBound support_product(const SupportBound& sa, const SupportBound& sb);

class WindowError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline bool coef_is_zero(const QRational& c) { return c.is_zero(); }
inline bool coef_is_zero(const std::vector<QRational>& v) {
    for (const auto& c : v)
        if (!c.is_zero()) return false;
    return true;
}
inline void coef_add(QRational& a, const QRational& b) { a += b; }
inline void coef_add(std::vector<QRational>& a, const std::vector<QRational>& b) {
    if (a.empty()) a.resize(b.size());
    for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
}

template <class C>
void add_term(std::map<Exp, C>& terms, const Exp& e, const C& c) {
    if (coef_is_zero(c)) return;
    auto it = terms.find(e);
    if (it == terms.end()) {
        terms.emplace(e, c);
        return;
    }
    coef_add(it->second, c);
    if (coef_is_zero(it->second)) terms.erase(it);
}

// Multivariate Laurent series, exact on `window`, with a declared support bound.
// Variables are listed in region order: earlier variables dominate later ones.
template <class C>
struct NestedSeries {
    std::vector<std::string> vars;
    ExponentWindow window;
    SupportBound support;
    std::map<Exp, C> terms;

    NestedSeries() = default;
    explicit NestedSeries(std::vector<std::string> v)
        : vars(std::move(v)), window(ExponentWindow::full(vars.size())),
          support(SupportBound::any(vars.size())) {}

    size_t nvars() const { return vars.size(); }

    // Coefficient inside the window; throws WindowError outside.
    C at(const Exp& e) const {
        if (!window.contains(e)) throw WindowError("coefficient requested outside exact window");
        auto it = terms.find(e);
        return it == terms.end() ? C{} : it->second;
    }
    void add(const Exp& e, const C& c) { add_term(terms, e, c); }

    // Drop knowledge outside `w` (intersected with the current window).
    NestedSeries restricted(const ExponentWindow& w) const {
        NestedSeries r = *this;
        for (size_t v = 0; v < nvars(); ++v) r.window.box[v] = window.box[v].meet(w.box[v]);
        for (auto it = r.terms.begin(); it != r.terms.end();)
            it = r.window.contains(it->first) ? std::next(it) : r.terms.erase(it);
        r.normalize_window();
        return r;
    }

    // Window bounds lying beyond the support bound carry no extra information.
    void normalize_window() {
        for (size_t v = 0; v < nvars(); ++v) {
            auto& w = window.box[v];
            const auto& s = support.box[v];
            if (w.lo <= s.lo) w.lo = -kInf;
            if (w.hi >= s.hi) w.hi = kInf;
        }
    }
};

template <class C>
NestedSeries<C> constant_series(std::vector<std::string> vars, const C& c) {
    NestedSeries<C> s(std::move(vars));
    Exp zero(s.nvars(), 0);
    for (size_t v = 0; v < s.nvars(); ++v) s.support.box[v] = Interval::point(0);
    s.add(zero, c);
    return s;
}

// c = a * b with bilinear `op`. With an explicit target the product is checked
// to be exact there (WindowError otherwise); without one, the target is the
// box implied coordinatewise by the factor windows.
template <class A, class B, class Op>
auto series_mul(const NestedSeries<A>& a, const NestedSeries<B>& b, Op op,
                std::optional<ExponentWindow> target = std::nullopt)
    -> NestedSeries<decltype(op(std::declval<A>(), std::declval<B>()))> {
    using Cc = decltype(op(std::declval<A>(), std::declval<B>()));
    if (a.vars != b.vars) throw std::invalid_argument("series_mul: incompatible variable lists");
    const size_t n = a.nvars();
    NestedSeries<Cc> c(a.vars);
    c.support = support_product(a.support, b.support);
    if (!target) {
        auto needs = factor_needs(a.support, b.support, ExponentWindow::full(n));
        ExponentWindow t = ExponentWindow::full(n);
        if (needs) {
            for (size_t v = 0; v < n; ++v) {
                const Interval& X = needs->a[v];
                const Interval& Y = needs->b[v];
                const Interval& wa = a.window.box[v];
                const Interval& wb = b.window.box[v];
                long lo = -kInf, hi = kInf;
                if (wa.lo_finite()) lo = std::max(lo, (Interval{wa.lo, wa.lo} + Interval{Y.hi, Y.hi}).lo);
                if (wb.lo_finite()) lo = std::max(lo, (Interval{wb.lo, wb.lo} + Interval{X.hi, X.hi}).lo);
                if (wa.hi_finite()) hi = std::min(hi, (Interval{wa.hi, wa.hi} + Interval{Y.lo, Y.lo}).hi);
                if (wb.hi_finite()) hi = std::min(hi, (Interval{wb.hi, wb.hi} + Interval{X.lo, X.lo}).hi);
                t.box[v] = {lo, hi};
            }
        }
        target = t;
    }
    c.window = *target;
    auto needs = factor_needs(a.support, b.support, *target);
    if (needs) {
        if (!a.window.covers(needs->a) || !b.window.covers(needs->b))
            throw WindowError("series_mul: factor windows too small for requested target");
        std::vector<std::pair<const Exp*, const B*>> bs;
        for (const auto& [eb, cb] : b.terms) {
            bool ok = true;
            for (size_t v = 0; v < n && ok; ++v) ok = needs->b[v].contains(eb[v]);
            if (ok) bs.emplace_back(&eb, &cb);
        }
        Exp e(n);
        for (const auto& [ea, ca] : a.terms) {
            bool ok = true;
            for (size_t v = 0; v < n && ok; ++v) ok = needs->a[v].contains(ea[v]);
            if (!ok) continue;
            for (const auto& [eb, cb] : bs) {
                for (size_t v = 0; v < n; ++v) e[v] = ea[v] + (*eb)[v];
                if (!c.window.contains(e)) continue;
                c.add(e, op(ca, *cb));
            }
        }
    }
    c.normalize_window();
    return c;
}

template <class C>
NestedSeries<C> series_mul(const NestedSeries<C>& a, const NestedSeries<C>& b,
                           std::optional<ExponentWindow> target = std::nullopt) {
    return series_mul(a, b, [](const C& x, const C& y) { return x * y; }, std::move(target));
}

// Scalar series acting on a series with coefficients in a module over Q(q).
template <class C>
NestedSeries<C> scale_series(const NestedSeries<QRational>& s, const NestedSeries<C>& x,
                             std::optional<ExponentWindow> target = std::nullopt) {
    return series_mul(
        s, x, [](const QRational& a, const C& c) { return a * c; }, std::move(target));
}

template <class C>
NestedSeries<C> series_add(const NestedSeries<C>& a, const NestedSeries<C>& b, const QRational& sb = 1) {
    if (a.vars != b.vars) throw std::invalid_argument("series_add: incompatible variable lists");
    NestedSeries<C> c(a.vars);
    for (size_t v = 0; v < a.nvars(); ++v) {
        c.window.box[v] = a.window.box[v].meet(b.window.box[v]);
        c.support.box[v] = {std::min(a.support.box[v].lo, b.support.box[v].lo),
                            std::max(a.support.box[v].hi, b.support.box[v].hi)};
    }
    for (const auto& [e, x] : a.terms)
        if (c.window.contains(e)) c.add(e, x);
    for (const auto& [e, x] : b.terms)
        if (c.window.contains(e)) c.add(e, sb * x);
    return c;
}

// First exponent (inside both windows and `on`) where a and b differ.
template <class C>
std::optional<Exp> first_difference(const NestedSeries<C>& a, const NestedSeries<C>& b,
                                    const ExponentWindow& on, size_t* checked = nullptr) {
    std::map<Exp, int> keys;
    for (const auto& kv : a.terms) keys.emplace(kv.first, 0);
    for (const auto& kv : b.terms) keys.emplace(kv.first, 0);
    if (checked) *checked = 0;
    for (const auto& kv : keys) {
        const Exp& e = kv.first;
        if (!on.contains(e) || !a.window.contains(e) || !b.window.contains(e)) continue;
        if (checked) ++*checked;
        auto ia = a.terms.find(e);
        auto ib = b.terms.find(e);
        if (ia == a.terms.end() || ib == b.terms.end() || !(ia->second == ib->second)) return e;
    }
    return std::nullopt;
}

// Calls f(e) for every point of a finite window in lexicographic order.
template <class F>
void for_each_point(const ExponentWindow& w, F f) {
    const size_t n = w.size();
    for (const auto& i : w.box)
        if (!i.lo_finite() || !i.hi_finite()) throw WindowError("for_each_point: unbounded window");
        else if (i.empty()) return;
    Exp e(n);
    for (size_t v = 0; v < n; ++v) e[v] = static_cast<int>(w.box[v].lo);
    while (true) {
        f(static_cast<const Exp&>(e));
        size_t v = n;
        while (v > 0) {
            --v;
            if (e[v] < w.box[v].hi) {
                ++e[v];
                break;
            }
            e[v] = static_cast<int>(w.box[v].lo);
            if (v == 0) return;
        }
        if (n == 0) return;
    }
}

// Number of lattice points of a finite window (saturates at `cap`).
long window_points(const ExponentWindow& w, long cap = 1L << 40);

// ---------------------------------------------------------------------------
// Multivariate Laurent polynomials with Q(q) coefficients.
struct MPoly {
    size_t nvars = 0;
    std::map<Exp, QRational> terms;

    MPoly() = default;
    explicit MPoly(size_t n) : nvars(n) {}
    static MPoly constant(size_t n, const QRational& c);
    static MPoly monomial(size_t n, const Exp& e, const QRational& c);
    // c * x_i^{ei} for a single variable.
    static MPoly var(size_t n, size_t i, int e = 1, const QRational& c = 1);

    bool is_zero() const { return terms.empty(); }
    MPoly operator-() const;
    friend MPoly operator+(const MPoly& a, const MPoly& b);
    friend MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    friend MPoly operator*(const QRational& s, const MPoly& a);

    // Leading term under the region order (lexicographically largest exponent).
    std::pair<Exp, QRational> leading() const;
    NestedSeries<QRational> as_series(std::vector<std::string> vars) const;
};

class ExpansionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Support of the expansion of num/den (without computing it).
SupportBound rational_support(const MPoly& num, const MPoly& den);

// Expansion of num/den in the region x_0 >> x_1 >> ... on `window`.
// Lower bounds are required for every variable that some correction term
// decreases first; throws ExpansionError for a zero denominator.
NestedSeries<QRational> expand_rational(const MPoly& num, const MPoly& den, std::vector<std::string> vars,
                                        const ExponentWindow& window);

// ---------------------------------------------------------------------------
// JSON.
nlohmann::json interval_json(const Interval& i);
nlohmann::json window_json(const ExponentWindow& w);

template <class C, class F>
nlohmann::json series_json(const NestedSeries<C>& s, F coef_json) {
    nlohmann::json j;
    j["vars"] = s.vars;
    j["window"] = window_json(s.window);
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : s.terms) terms.push_back({{"exp", e}, {"coef", coef_json(c)}});
    j["terms"] = terms;
    return j;
}

ExponentWindow window_from_json(const nlohmann::json& j);

template <class C, class F>
NestedSeries<C> series_from_json(const nlohmann::json& j, F coef_parse) {
    NestedSeries<C> s(j.at("vars").get<std::vector<std::string>>());
    s.window = window_from_json(j.at("window"));
    for (const auto& t : j.at("terms")) s.add(t.at("exp").get<Exp>(), coef_parse(t.at("coef")));
    return s;
}

}  // namespace wf
