#include "wf/series.hpp"

#include <algorithm>

namespace wf {

namespace {

long sat_add(long a, long b) {
    if (a <= -kInf || b <= -kInf) return -kInf;
    if (a >= kInf || b >= kInf) return kInf;
    return std::clamp(a + b, -kInf, kInf);
}

Interval sum_over(const std::vector<Interval>& box, const std::vector<char>& mask) {
    Interval s{0, 0};
    for (size_t v = 0; v < box.size(); ++v)
        if (mask[v]) s = s + box[v];
    return s;
}

const SumConstraint* find_mask(const SupportBound& s, const std::vector<char>& mask) {
    for (const auto& c : s.sums)
        if (c.mask == mask) return &c;
    return nullptr;
}

// Tighten box from  sum_M box in range.
bool tighten(std::vector<Interval>& box, const std::vector<char>& mask, const Interval& range) {
    bool changed = false;
    for (size_t v = 0; v < box.size(); ++v) {
        if (!mask[v]) continue;
        Interval rest{0, 0};
        for (size_t u = 0; u < box.size(); ++u)
            if (mask[u] && u != v) rest = rest + box[u];
        Interval nv = box[v].meet(range - rest);
        if (!(nv == box[v])) {
            box[v] = nv;
            changed = true;
        }
    }
    return changed;
}

bool any_empty(const std::vector<Interval>& b) {
    return std::any_of(b.begin(), b.end(), [](const Interval& i) { return i.empty(); });
}

}  // namespace

Interval Interval::meet(const Interval& o) const { return {std::max(lo, o.lo), std::min(hi, o.hi)}; }

Interval operator+(const Interval& a, const Interval& b) { return {sat_add(a.lo, b.lo), sat_add(a.hi, b.hi)}; }

Interval operator-(const Interval& a, const Interval& b) {
    return {sat_add(a.lo, b.hi >= kInf ? -kInf : -b.hi), sat_add(a.hi, b.lo <= -kInf ? kInf : -b.lo)};
}

ExponentWindow ExponentWindow::lower(const std::vector<long>& lo) {
    ExponentWindow w = full(lo.size());
    for (size_t v = 0; v < lo.size(); ++v) w.box[v].lo = lo[v];
    return w;
}

bool ExponentWindow::contains(const Exp& e) const {
    for (size_t v = 0; v < box.size(); ++v)
        if (!box[v].contains(e[v])) return false;
    return true;
}

bool ExponentWindow::covers(const std::vector<Interval>& need) const {
    for (size_t v = 0; v < box.size(); ++v)
        if (need[v].lo < box[v].lo || need[v].hi > box[v].hi) return false;
    return true;
}

bool SupportBound::admits(const Exp& e) const {
    for (size_t v = 0; v < box.size(); ++v)
        if (!box[v].contains(e[v])) return false;
    for (const auto& c : sums) {
        long s = 0;
        for (size_t v = 0; v < e.size(); ++v)
            if (c.mask[v]) s += e[v];
        if (!c.range.contains(s)) return false;
    }
    return true;
}

void SupportBound::add_sum(std::vector<char> mask, Interval range) {
    for (auto& c : sums)
        if (c.mask == mask) {
            c.range = c.range.meet(range);
            return;
        }
    sums.push_back({std::move(mask), range});
}

std::optional<FactorNeeds> factor_needs(const SupportBound& sa, const SupportBound& sb,
                                        const ExponentWindow& target) {
    const size_t n = target.size();
    std::vector<Interval> X = sa.box, Y = sb.box, E = target.box;
    std::vector<std::vector<char>> masks;
    for (const auto& c : sa.sums) masks.push_back(c.mask);
    for (const auto& c : sb.sums)
        if (!find_mask(sa, c.mask)) masks.push_back(c.mask);

    for (int round = 0; round < 1000; ++round) {
        bool changed = false;
        for (size_t v = 0; v < n; ++v) {
            Interval e = E[v].meet(X[v] + Y[v]);
            Interval x = X[v].meet(e - Y[v]);
            Interval y = Y[v].meet(e - x);
            if (!(e == E[v]) || !(x == X[v]) || !(y == Y[v])) changed = true;
            E[v] = e, X[v] = x, Y[v] = y;
        }
        if (any_empty(X) || any_empty(Y) || any_empty(E)) return std::nullopt;
        for (const auto& m : masks) {
            Interval SA = sum_over(X, m), SB = sum_over(Y, m), SE = sum_over(E, m);
            if (auto* c = find_mask(sa, m)) SA = SA.meet(c->range);
            if (auto* c = find_mask(sb, m)) SB = SB.meet(c->range);
            SA = SA.meet(SE - SB);
            SB = SB.meet(SE - SA);
            if (SA.empty() || SB.empty()) return std::nullopt;
            changed |= tighten(X, m, SA);
            changed |= tighten(Y, m, SB);
            changed |= tighten(E, m, SA + SB);
        }
        if (any_empty(X) || any_empty(Y) || any_empty(E)) return std::nullopt;
        if (!changed) break;
    }
    return FactorNeeds{X, Y};
}

SupportBound support_product(const SupportBound& sa, const SupportBound& sb) {
    SupportBound r = SupportBound::any(sa.box.size());
    for (size_t v = 0; v < r.box.size(); ++v) r.box[v] = sa.box[v] + sb.box[v];
    auto range_of = [](const SupportBound& s, const std::vector<char>& m) {
        Interval i = sum_over(s.box, m);
        if (auto* c = find_mask(s, m)) i = i.meet(c->range);
        return i;
    };
    for (const auto* s : {&sa, &sb})
        for (const auto& c : s->sums) {
            if (find_mask(r, c.mask)) continue;
            Interval i = range_of(sa, c.mask) + range_of(sb, c.mask);
            if (i.lo_finite() || i.hi_finite()) r.add_sum(c.mask, i);
        }
    return r;
}

long window_points(const ExponentWindow& w, long cap) {
    long n = 1;
    for (const auto& i : w.box) {
        if (!i.lo_finite() || !i.hi_finite()) return cap;
        if (i.empty()) return 0;
        const long len = i.hi - i.lo + 1;
        if (n > cap / len) return cap;
        n *= len;
    }
    return n;
}

// ---------------------------------------------------------------------------

MPoly MPoly::constant(size_t n, const QRational& c) { return monomial(n, Exp(n, 0), c); }

MPoly MPoly::monomial(size_t n, const Exp& e, const QRational& c) {
    MPoly p(n);
    if (!c.is_zero()) p.terms.emplace(e, c);
    return p;
}

MPoly MPoly::var(size_t n, size_t i, int e, const QRational& c) {
    Exp x(n, 0);
    x[i] = e;
    return monomial(n, x, c);
}

MPoly MPoly::operator-() const {
    MPoly r = *this;
    for (auto& kv : r.terms) kv.second = -kv.second;
    return r;
}

MPoly operator+(const MPoly& a, const MPoly& b) {
    MPoly r = a;
    r.nvars = std::max(a.nvars, b.nvars);
    for (const auto& [e, c] : b.terms) add_term(r.terms, e, c);
    return r;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly r(std::max(a.nvars, b.nvars));
    Exp e(r.nvars);
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) {
            for (size_t v = 0; v < e.size(); ++v) e[v] = ea[v] + eb[v];
            add_term(r.terms, e, ca * cb);
        }
    return r;
}

MPoly operator*(const QRational& s, const MPoly& a) {
    MPoly r(a.nvars);
    if (s.is_zero()) return r;
    for (const auto& [e, c] : a.terms) r.terms.emplace(e, s * c);
    return r;
}

std::pair<Exp, QRational> MPoly::leading() const {
    if (terms.empty()) throw std::logic_error("MPoly::leading of zero");
    return *terms.rbegin();
}

NestedSeries<QRational> MPoly::as_series(std::vector<std::string> vars) const {
    NestedSeries<QRational> s(std::move(vars));
    std::vector<char> all(s.nvars(), 1);
    Interval tot{kInf, -kInf};
    for (size_t v = 0; v < s.nvars(); ++v) s.support.box[v] = {kInf, -kInf};
    for (const auto& [e, c] : terms) {
        long sum = 0;
        for (size_t v = 0; v < s.nvars(); ++v) {
            auto& b = s.support.box[v];
            b = {std::min<long>(b.lo, e[v]), std::max<long>(b.hi, e[v])};
            sum += e[v];
        }
        tot = {std::min(tot.lo, sum), std::max(tot.hi, sum)};
        s.terms.emplace(e, c);
    }
    if (terms.empty())
        for (auto& b : s.support.box) b = Interval::point(0);
    else
        s.support.add_sum(all, tot);
    return s;
}

SupportBound rational_support(const MPoly& num, const MPoly& den) {
    const size_t n = den.nvars;
    if (den.is_zero()) throw ExpansionError("non-expandable in declared region: zero denominator");
    const Exp eL = den.leading().first;
    SupportBound sb = SupportBound::any(n);
    if (num.is_zero()) {
        for (auto& b : sb.box) b = Interval::point(0);
        return sb;
    }
    std::vector<char> all(n, 1);
    Interval tot{kInf, -kInf};
    for (auto& b : sb.box) b = {kInf, -kInf};
    for (const auto& [e, c] : num.terms) {
        long sum = 0;
        for (size_t v = 0; v < n; ++v) {
            const long x = e[v] - eL[v];
            sb.box[v] = {std::min(sb.box[v].lo, x), std::max(sb.box[v].hi, x)};
            sum += x;
        }
        tot = {std::min(tot.lo, sum), std::max(tot.hi, sum)};
    }
    for (const auto& [e, c] : den.terms) {
        long sum = 0;
        for (size_t v = 0; v < n; ++v) {
            const long s = e[v] - eL[v];
            if (s < 0) sb.box[v].lo = -kInf;
            if (s > 0) sb.box[v].hi = kInf;
            sum += s;
        }
        if (sum < 0) tot.lo = -kInf;
        if (sum > 0) tot.hi = kInf;
    }
    sb.add_sum(all, tot);
    return sb;
}

NestedSeries<QRational> expand_rational(const MPoly& num, const MPoly& den, std::vector<std::string> vars,
                                        const ExponentWindow& window) {
    const size_t n = vars.size();
    if (den.is_zero()) throw ExpansionError("non-expandable in declared region: zero denominator");
    if (window.size() != n) throw std::invalid_argument("expand_rational: window arity mismatch");
    const auto [eL, cL] = den.leading();

    // 1/den = L^{-1} * sum_k R^k,  R = 1 - den/L.
    std::vector<std::pair<Exp, QRational>> steps;
    for (const auto& [e, c] : den.terms) {
        if (e == eL) continue;
        Exp s(n);
        for (size_t v = 0; v < n; ++v) s[v] = e[v] - eL[v];
        steps.emplace_back(s, -c / cL);
    }
    std::map<Exp, QRational> base;
    for (const auto& [e, c] : num.terms) {
        Exp s(n);
        for (size_t v = 0; v < n; ++v) s[v] = e[v] - eL[v];
        base.emplace(s, c / cL);
    }

    NestedSeries<QRational> out(vars);
    out.window = window;

    out.support = rational_support(num, den);
    if (base.empty()) {
        out.normalize_window();
        return out;
    }

    // Budget on the number of correction steps, by pivot variable.
    std::vector<int> pivot(steps.size());
    std::vector<long> min_step(n, 0), max_step(n, 0);
    for (size_t i = 0; i < steps.size(); ++i) {
        const Exp& s = steps[i].first;
        size_t p = 0;
        while (p < n && s[p] == 0) ++p;
        pivot[i] = static_cast<int>(p);
        for (size_t v = 0; v < n; ++v) {
            min_step[v] = std::min<long>(min_step[v], s[v]);
            max_step[v] = std::max<long>(max_step[v], s[v]);
        }
    }
    long budget = 0, earlier = 0;
    for (size_t p = 0; p < n; ++p) {
        bool has = false;
        long up = 0;
        for (size_t i = 0; i < steps.size(); ++i) {
            if (pivot[i] == static_cast<int>(p)) has = true;
            if (pivot[i] < static_cast<int>(p)) up = std::max<long>(up, steps[i].first[p]);
        }
        if (!has) continue;
        if (!window.box[p].lo_finite())
            throw ExpansionError("expand_rational: window needs a lower bound on " + vars[p]);
        long bmax = -kInf;
        for (const auto& kv : base) bmax = std::max<long>(bmax, kv.first[p]);
        long c = bmax + earlier * up - window.box[p].lo;
        c = std::max<long>(c, 0);
        earlier += c;
        budget += c;
        if (budget > 100000) throw ExpansionError("expand_rational: expansion budget too large");
    }

    auto reachable = [&](const Exp& e, long left) {
        for (size_t v = 0; v < n; ++v) {
            const long lo = e[v] + left * min_step[v], hi = e[v] + left * max_step[v];
            if (hi < window.box[v].lo || lo > window.box[v].hi) return false;
        }
        return true;
    };

    std::map<Exp, QRational> cur;
    for (const auto& [e, c] : base)
        if (reachable(e, budget)) cur.emplace(e, c);
    for (long k = 0;; ++k) {
        for (const auto& [e, c] : cur)
            if (window.contains(e)) out.add(e, c);
        if (k == budget || cur.empty()) break;
        std::map<Exp, QRational> next;
        Exp e(n);
        for (const auto& [ec, cc] : cur)
            for (const auto& [s, cs] : steps) {
                for (size_t v = 0; v < n; ++v) e[v] = ec[v] + s[v];
                if (!reachable(e, budget - k - 1)) continue;
                add_term(next, e, cc * cs);
            }
        cur = std::move(next);
    }
    out.normalize_window();
    return out;
}

// ---------------------------------------------------------------------------

nlohmann::json interval_json(const Interval& i) {
    nlohmann::json j = nlohmann::json::array();
    j.push_back(i.lo_finite() ? nlohmann::json(i.lo) : nlohmann::json("-inf"));
    j.push_back(i.hi_finite() ? nlohmann::json(i.hi) : nlohmann::json("inf"));
    return j;
}

nlohmann::json window_json(const ExponentWindow& w) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& i : w.box) j.push_back(interval_json(i));
    return j;
}

ExponentWindow window_from_json(const nlohmann::json& j) {
    ExponentWindow w;
    for (const auto& b : j) {
        Interval i;
        if (b.at(0).is_number()) i.lo = b.at(0).get<long>();
        if (b.at(1).is_number()) i.hi = b.at(1).get<long>();
        w.box.push_back(i);
    }
    return w;
}

}  // namespace wf
