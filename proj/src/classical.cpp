#include "wf/classical.hpp"

#include <algorithm>
#include <functional>

namespace wf {

namespace {

bool is_lyndon(const std::vector<int>& w) {
    for (size_t i = 1; i < w.size(); ++i)
        if (!std::lexicographical_compare(w.begin(), w.end(), w.begin() + static_cast<long>(i), w.end())) return false;
    return !w.empty();
}

QRational as_q(const mpz_class& c) { return QRational(LaurentPoly::monomial(c, 0)); }

}  // namespace

FreeLie::FreeLie(std::vector<int> colors, int max_depth) : colors_(std::move(colors)), max_depth_(max_depth) {
    std::sort(colors_.begin(), colors_.end());
    colors_.erase(std::unique(colors_.begin(), colors_.end()), colors_.end());
    if (colors_.empty() || max_depth_ < 1) throw std::invalid_argument("FreeLie: need colors and depth >= 1");
    std::vector<std::vector<int>> level{{}};
    for (int d = 1; d <= max_depth_; ++d) {
        std::vector<std::vector<int>> next;
        for (const auto& w : level)
            for (int c : colors_) {
                auto x = w;
                x.push_back(c);
                next.push_back(x);
            }
        for (const auto& w : next)
            if (is_lyndon(w)) words_.push_back(w);
        level = std::move(next);
    }
    // (depth, lex) order: the loop above already produces it
    for (size_t i = 0; i < words_.size(); ++i) index_[words_[i]] = static_cast<int>(i);
    for (const auto& w : words_) {
        if (w.size() == 1) {
            split_.emplace_back(-1, -1);
            continue;
        }
        for (size_t i = 1; i < w.size(); ++i) {
            std::vector<int> v(w.begin() + static_cast<long>(i), w.end());
            if (is_lyndon(v)) {
                std::vector<int> u(w.begin(), w.begin() + static_cast<long>(i));
                split_.emplace_back(index_.at(u), index_.at(v));
                break;
            }
        }
    }
}

int FreeLie::letter(int color) const {
    auto it = index_.find({color});
    if (it == index_.end()) throw std::invalid_argument("FreeLie: unknown color " + std::to_string(color));
    return it->second;
}

std::string FreeLie::name(int h) const {
    const auto& [u, v] = split_[static_cast<size_t>(h)];
    if (u < 0) return "f" + std::to_string(words_[static_cast<size_t>(h)][0]);
    return "[" + name(u) + "," + name(v) + "]";
}

FreeLie::Assoc FreeLie::expand(int h) const {
    const auto& [u, v] = split_[static_cast<size_t>(h)];
    if (u < 0) return {{words_[static_cast<size_t>(h)], 1}};
    Assoc a = expand(u), b = expand(v), r;
    for (const auto& [x, cx] : a)
        for (const auto& [y, cy] : b) {
            auto xy = x;
            xy.insert(xy.end(), y.begin(), y.end());
            r[xy] += cx * cy;
            auto yx = y;
            yx.insert(yx.end(), x.begin(), x.end());
            r[yx] -= cx * cy;
        }
    for (auto it = r.begin(); it != r.end();) it = it->second == 0 ? r.erase(it) : std::next(it);
    return r;
}

// The standard bracketing of a Lyndon word w is w plus lexicographically
// larger words, so peeling off the smallest word is triangular.
LieElem FreeLie::decompose(Assoc p) const {
    LieElem out;
    while (!p.empty()) {
        const auto [w, c] = *p.begin();
        auto it = index_.find(w);
        if (it == index_.end()) throw std::logic_error("FreeLie: element is not a Lie polynomial");
        out[it->second] = as_q(c);
        for (const auto& [x, cx] : expand(it->second)) {
            auto& slot = p[x];
            slot -= c * cx;
            if (slot == 0) p.erase(x);
        }
    }
    return out;
}

LieElem FreeLie::bracket(int a, int b) const {
    if (a == b) return {};
    if (depth(a) + depth(b) > max_depth_)
        throw DepthError("free Lie truncation: bracket depth exceeds " + std::to_string(max_depth_));
    if (a > b) {
        LieElem r = bracket(b, a);
        for (auto& kv : r) kv.second = -kv.second;
        return r;
    }
    if (auto it = cache_.find({a, b}); it != cache_.end()) return it->second;
    Assoc x = expand(a), y = expand(b), p;
    for (const auto& [u, cu] : x)
        for (const auto& [v, cv] : y) {
            auto uv = u;
            uv.insert(uv.end(), v.begin(), v.end());
            p[uv] += cu * cv;
            auto vu = v;
            vu.insert(vu.end(), u.begin(), u.end());
            p[vu] -= cu * cv;
        }
    for (auto it = p.begin(); it != p.end();) it = it->second == 0 ? p.erase(it) : std::next(it);
    LieElem r = decompose(std::move(p));
    cache_.emplace(std::make_pair(a, b), r);
    return r;
}

LieElem FreeLie::bracket(const LieElem& x, const LieElem& y) const {
    LieElem r;
    for (const auto& [a, ca] : x)
        for (const auto& [b, cb] : y)
            for (const auto& [h, c] : bracket(a, b)) {
                auto& slot = r[h];
                slot += ca * cb * c;
                if (slot.is_zero()) r.erase(h);
            }
    return r;
}

LieElem FreeLie::nested(const std::vector<int>& colors) const {
    if (colors.empty()) throw std::invalid_argument("FreeLie::nested: empty");
    LieElem x{{letter(colors[0]), 1}};
    for (size_t i = 1; i < colors.size(); ++i) x = bracket(x, LieElem{{letter(colors[i]), 1}});
    return x;
}

// ---------------------------------------------------------------------------

ClassicalElement ClassicalElement::word(const LoopWord& w, const QRational& c) {
    ClassicalElement x;
    x.add(w, c);
    return x;
}

void ClassicalElement::add(const LoopWord& w, const QRational& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(w, c);
    if (fresh) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

ClassicalElement& ClassicalElement::operator+=(const ClassicalElement& o) {
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
}

ClassicalElement operator*(const QRational& s, const ClassicalElement& x) {
    ClassicalElement r;
    if (s.is_zero()) return r;
    for (const auto& [w, c] : x.terms_) r.terms_.emplace(w, s * c);
    return r;
}

ClassicalElement operator*(const ClassicalElement& a, const ClassicalElement& b) {
    ClassicalElement r;
    for (const auto& [wa, ca] : a.terms_)
        for (const auto& [wb, cb] : b.terms_) {
            LoopWord w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            r.add(w, ca * cb);
        }
    return r;
}

std::string ClassicalElement::to_string(const FreeLie& L) const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [w, c] : terms_) {
        if (!s.empty()) s += " + ";
        if (!c.is_one()) s += "(" + c.pretty() + ")*";
        if (w.empty()) s += "1";
        for (size_t i = 0; i < w.size(); ++i)
            s += (i ? " " : "") + L.name(w[i].h) + "[" + std::to_string(w[i].mode) + "]";
    }
    return s;
}

ClassicalElement ClassicalAlgebra::separate(const LoopWord& w) {
    if (auto it = memo_.find(w); it != memo_.end()) return it->second;
    size_t i = 0;
    while (i + 1 < w.size() && !(w[i + 1] < w[i])) ++i;
    if (i + 1 >= w.size()) {
        auto r = ClassicalElement::word(w);
        memo_.emplace(w, r);
        return r;
    }
    // xy = yx + [x,y][m+n]
    const LoopLetter x = w[i], y = w[i + 1];
    LoopWord swapped = w;
    std::swap(swapped[i], swapped[i + 1]);
    ClassicalElement out = separate(swapped);
    for (const auto& [h, c] : L_.bracket(x.h, y.h)) {
        LoopWord nw(w.begin(), w.begin() + static_cast<long>(i));
        nw.push_back({h, x.mode + y.mode});
        nw.insert(nw.end(), w.begin() + static_cast<long>(i) + 2, w.end());
        out += c * separate(nw);
    }
    memo_.emplace(w, out);
    return out;
}

ClassicalElement ClassicalAlgebra::separate(const ClassicalElement& x) {
    ClassicalElement r;
    for (const auto& [w, c] : x.terms()) r += c * separate(w);
    return r;
}

ClassicalElement ClassicalAlgebra::project(const LoopWord& w) {
    ClassicalElement r;
    const ClassicalElement sep = separate(w);
    for (const auto& [nw, c] : sep.terms())
        if (std::all_of(nw.begin(), nw.end(), [](const LoopLetter& l) { return l.mode > 0; })) r.add(nw, c);
    return r;
}

ClassicalElement ClassicalAlgebra::project(const ClassicalElement& x) {
    ClassicalElement r;
    for (const auto& [w, c] : x.terms()) r += c * project(w);
    return r;
}

// ---------------------------------------------------------------------------

ClassicalSeries classical_direct(const OrderedMultiset& ms, const ExponentWindow& window, ClassicalAlgebra& A) {
    const size_t n = ms.size();
    ClassicalSeries S(ms.vars());
    S.window = window;
    if (n == 0) {
        S.add({}, ClassicalElement::word({}));
        return S;
    }
    S.support.box[0].hi = -1;
    S.support.add_sum(std::vector<char>(n, 1), {-kInf, -1});
    std::vector<long> amin(n), amax(n);
    for (size_t i = 0; i < n; ++i) {
        if (!window.box[i].lo_finite()) throw WindowError("classical_direct: window needs lower bounds");
        amax[i] = -window.box[i].lo;
    }
    long total = 0;
    for (long a : amax) total += a;
    for (size_t i = 0; i < n; ++i) {
        amin[i] = 1 - (total - amax[i]);
        if (window.box[i].hi_finite()) amin[i] = std::max(amin[i], -window.box[i].hi);
    }
    amin[0] = std::max(amin[0], 1L);
    LoopWord w(n);
    Exp e(n);
    std::function<void(size_t, long)> rec = [&](size_t i, long sum) {
        if (i == n) {
            if (sum < 1) return;
            auto c = A.project(w);
            if (!c.is_zero()) S.add(e, c);
            return;
        }
        for (long a = amin[i]; a <= amax[i]; ++a) {
            w[i] = {A.lie().letter(ms.colors[i]), static_cast<int>(a)};
            e[i] = static_cast<int>(-a);
            rec(i + 1, sum + a);
        }
    };
    rec(0, 0);
    S.normalize_window();
    return S;
}

const char* denominator_name(LieDenominator d) {
    switch (d) {
        case LieDenominator::Literal: return "literal";
        case LieDenominator::Last: return "last";
        case LieDenominator::Chain: return "chain";
        case LieDenominator::First: return "first";
    }
    return "?";
}

namespace {

std::pair<MPoly, MPoly> lie_ratio(size_t n, const std::vector<size_t>& b, LieDenominator d) {
    MPoly num = MPoly::constant(n, 1), den = MPoly::constant(n, 1);
    const size_t k = b.size();
    auto t = [n](size_t i) { return MPoly::var(n, i); };
    for (size_t j = 0; j + 1 < k; ++j) {
        switch (d) {
            case LieDenominator::Literal:  // t_k / (t_j - t_k)
                num = num * t(b[k - 1]);
                den = den * (t(b[j]) - t(b[k - 1]));
                break;
            case LieDenominator::Last:  // t_j / (t_j - t_k)
                num = num * t(b[j]);
                den = den * (t(b[j]) - t(b[k - 1]));
                break;
            case LieDenominator::Chain:  // t_j / (t_j - t_{j+1})
                num = num * t(b[j]);
                den = den * (t(b[j]) - t(b[j + 1]));
                break;
            case LieDenominator::First:  // t_1 / (t_1 - t_{j+1})
                num = num * t(b[0]);
                den = den * (t(b[0]) - t(b[j + 1]));
                break;
        }
    }
    return {num, den};
}

SupportBound bracket_support(size_t n, size_t pos) {
    SupportBound s = SupportBound::any(n);
    for (size_t v = 0; v < n; ++v) s.box[v] = Interval::point(0);
    s.box[pos] = {-kInf, -1};
    return s;
}

SupportBound w_lie_support(const OrderedMultiset& ms, const std::vector<size_t>& block, LieDenominator d) {
    auto [num, den] = lie_ratio(ms.size(), block, d);
    return support_product(bracket_support(ms.size(), block[0]), rational_support(num, den));
}

ClassicalSeries zero_series(const OrderedMultiset& ms, const ExponentWindow& w) {
    ClassicalSeries z(ms.vars());
    z.window = w;
    return z;
}

}  // namespace

ClassicalSeries classical_w_lie(const OrderedMultiset& ms, const std::vector<size_t>& block, LieDenominator d,
                                const ExponentWindow& window, ClassicalAlgebra& A) {
    const size_t n = ms.size();
    if (block.empty()) throw std::invalid_argument("classical_w_lie: empty block");
    if (static_cast<int>(block.size()) > A.lie().max_depth())
        throw DepthError("classical_w_lie: block longer than the free Lie truncation");
    std::vector<int> colors;
    for (size_t i : block) colors.push_back(ms.colors[i]);
    const LieElem B = A.lie().nested(colors);

    auto [num, den] = lie_ratio(n, block, d);
    const SupportBound sb = bracket_support(n, block[0]);
    if (B.empty()) {  // identically zero
        auto z = zero_series(ms, window);
        for (auto& b : z.support.box) b = {1, 0};
        return z;
    }
    auto needs = factor_needs(sb, rational_support(num, den), window);
    if (!needs) {
        auto z = zero_series(ms, window);
        z.support = support_product(sb, rational_support(num, den));
        return z;
    }

    ClassicalSeries bplus(ms.vars());
    bplus.support = sb;
    bplus.window = ExponentWindow{needs->a};
    if (!bplus.window.box[block[0]].lo_finite()) throw WindowError("classical_w_lie: unbounded bracket window");
    for (long m = 1; m <= -bplus.window.box[block[0]].lo; ++m) {
        ClassicalElement c;
        for (const auto& [h, x] : B) c.add({{h, static_cast<int>(m)}}, x);
        Exp e(n, 0);
        e[block[0]] = static_cast<int>(-m);
        bplus.add(e, c);
    }
    bplus.normalize_window();
    auto ratio = expand_rational(num, den, ms.vars(), ExponentWindow{needs->b});
    return series_mul(
        bplus, ratio, [](const ClassicalElement& x, const QRational& r) { return r * x; }, window);
}

ClassicalSeries classical_weight(const OrderedMultiset& ms, LieDenominator d, const ExponentWindow& window,
                                 ClassicalAlgebra& A) {
    const size_t n = ms.size();
    ClassicalSeries total = zero_series(ms, window);
    if (n == 0) {
        total.add({}, ClassicalElement::word({}));
        return total;
    }
    // blocks listed by their minima
    std::function<ClassicalSeries(const std::vector<std::vector<size_t>>&, size_t, const ExponentWindow&)> product =
        [&](const std::vector<std::vector<size_t>>& blocks, size_t from, const ExponentWindow& target) {
            if (from + 1 == blocks.size()) return classical_w_lie(ms, blocks[from], d, target, A);
            // same association as the recursion below
            SupportBound rest = w_lie_support(ms, blocks.back(), d);
            for (size_t j = blocks.size() - 1; j-- > from + 1;) rest = support_product(w_lie_support(ms, blocks[j], d), rest);
            auto needs = factor_needs(w_lie_support(ms, blocks[from], d), rest, target);
            if (!needs) return zero_series(ms, target);
            auto head = classical_w_lie(ms, blocks[from], d, ExponentWindow{needs->a}, A);
            auto tail = product(blocks, from + 1, ExponentWindow{needs->b});
            return series_mul(head, tail, target);
        };
    // restricted growth strings enumerate set partitions
    std::vector<size_t> label(n, 0);
    std::function<void(size_t, size_t)> rec = [&](size_t i, size_t used) {
        if (i == n) {
            std::vector<std::vector<size_t>> blocks(used);
            for (size_t k = 0; k < n; ++k) blocks[label[k]].push_back(k);
            total = series_add(total, product(blocks, 0, window));
            return;
        }
        for (size_t b = 0; b <= used; ++b) {
            label[i] = b;
            rec(i + 1, std::max(used, b + 1));
        }
    };
    rec(0, 0);
    for (auto it = total.terms.begin(); it != total.terms.end();) {
        it->second = A.separate(it->second);
        it = it->second.is_zero() ? total.terms.erase(it) : std::next(it);
    }
    total.window = window;
    return total;
}

Report check_classical(const OrderedMultiset& ms, LieDenominator d, const ExponentWindow& window) {
    Report r(std::string("classical ") + denominator_name(d));
    std::vector<int> colors = ms.colors;
    if (colors.empty()) colors.push_back(1);
    FreeLie L(colors, std::max<int>(1, static_cast<int>(ms.size())));
    ClassicalAlgebra A(L);
    auto direct = classical_direct(ms, window, A);
    auto formula = classical_weight(ms, d, window, A);
    for_each_point(window, [&](const Exp& e) {
        ++r.checked;
        auto x = direct.at(e), y = formula.at(e);
        if (x != y) r.fail("partition sum differs from direct projection",
                           {{"exp", e}, {"direct", x.to_string(L)}, {"formula", y.to_string(L)}});
    });
    return r;
}

Report check_q1_limit(size_t n, const ExponentWindow& window, Straightener& st) {
    Report r("q=1 limit n=" + std::to_string(n));
    auto ms = OrderedMultiset::uniform(n);
    auto W = universal_weight(ms, window, st);
    FreeLie L({1}, std::max<int>(1, static_cast<int>(n)));
    ClassicalAlgebra A(L);
    auto direct = classical_direct(ms, window, A);
    const int f = L.letter(1);
    for_each_point(window, [&](const Exp& e) {
        ++r.checked;
        ClassicalElement lim;
        const AlgebraElement at1 = W.at(e).at_one();
        for (const auto& [w, c] : at1.terms()) {
            LoopWord lw;
            for (const auto& g : w) lw.push_back({f, g.mode});
            lim.add(lw, c);
        }
        lim = A.separate(lim);
        if (lim != direct.at(e))
            r.fail("q=1 coefficient differs", {{"exp", e}, {"quantum", lim.to_string(L)}, {"classical", direct.at(e).to_string(L)}});
    });
    return r;
}

}  // namespace wf
