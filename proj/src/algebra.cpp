#include "wf/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace wf {

Gen Gen::psi(int n) {
    if (n < 0) throw std::invalid_argument("psi+ modes are nonnegative");
    return {Psi, n};
}

std::string word_text(const Word& w) {
    if (w.empty()) return "1";
    std::string s;
    for (const auto& g : w) {
        if (!s.empty()) s += ' ';
        s += (g.is_f() ? "f[" : "psi[") + std::to_string(g.mode) + "]";
    }
    return s;
}

Word parse_word(const std::string& text) {
    Word w;
    size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*')) ++i;
    };
    skip();
    if (text.substr(i) == "1") return w;
    while (i < text.size()) {
        Gen::Kind kind;
        if (text.compare(i, 4, "psi[") == 0) {
            kind = Gen::Psi;
            i += 4;
        } else if (text.compare(i, 2, "f[") == 0) {
            kind = Gen::F;
            i += 2;
        } else {
            throw std::invalid_argument("bad word syntax: '" + text + "'");
        }
        const size_t close = text.find(']', i);
        if (close == std::string::npos) throw std::invalid_argument("unterminated mode in '" + text + "'");
        size_t used = 0;
        const std::string num = text.substr(i, close - i);
        int n = 0;
        try {
            n = std::stoi(num, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != num.size()) throw std::invalid_argument("bad mode in '" + text + "'");
        w.push_back(kind == Gen::F ? Gen::f(n) : Gen::psi(n));
        i = close + 1;
        skip();
    }
    return w;
}

int principal_degree(const Word& w) {
    int d = 0;
    for (const auto& g : w) d += g.mode;
    return d;
}

Word concat(const Word& a, const Word& b) {
    Word r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

// ---------------------------------------------------------------------------

AlgebraElement::AlgebraElement(const QRational& c) {
    if (!c.is_zero()) terms_.emplace(Word{}, c);
}

AlgebraElement AlgebraElement::word(const Word& w, const QRational& c) {
    AlgebraElement x;
    x.add(w, c);
    return x;
}

QRational AlgebraElement::coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? QRational() : it->second;
}

void AlgebraElement::add(const Word& w, const QRational& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(w, c);
    if (fresh) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

AlgebraElement AlgebraElement::operator-() const {
    AlgebraElement r = *this;
    for (auto& kv : r.terms_) kv.second = -kv.second;
    return r;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
    for (const auto& [w, c] : o.terms_) add(w, -c);
    return *this;
}

AlgebraElement operator*(const QRational& s, const AlgebraElement& x) {
    AlgebraElement r;
    if (s.is_zero()) return r;
    for (const auto& [w, c] : x.terms_) r.terms_.emplace(w, s * c);
    return r;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    AlgebraElement r;
    for (const auto& [wa, ca] : a.terms_)
        for (const auto& [wb, cb] : b.terms_) r.add(concat(wa, wb), ca * cb);
    return r;
}

AlgebraElement AlgebraElement::at_one() const {
    AlgebraElement r;
    for (const auto& [w, c] : terms_) r.add(w, c.at_one());
    return r;
}

std::string AlgebraElement::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [w, c] : terms_) {
        if (!s.empty()) s += " + ";
        const std::string cs = c.pretty();
        const bool bare = cs.find_first_of("+-", 1) == std::string::npos && cs.find('/') == std::string::npos;
        if (w.empty()) {
            s += bare ? cs : "(" + cs + ")";
            continue;
        }
        if (!c.is_one()) s += (bare ? cs : "(" + cs + ")") + "*";
        s += word_text(w);
    }
    return s;
}

nlohmann::json AlgebraElement::to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [w, c] : terms_) terms.push_back({{"word", word_text(w)}, {"coef", c.to_string()}});
    return {{"terms", terms}};
}

AlgebraElement AlgebraElement::from_json(const nlohmann::json& j) {
    AlgebraElement x;
    for (const auto& t : j.at("terms"))
        x.add(parse_word(t.at("word").get<std::string>()), QRational::parse(t.at("coef").get<std::string>()));
    return x;
}

// ---------------------------------------------------------------------------

AlgebraElement straighten_ff(int a, int b) {
    if (a <= b) return AlgebraElement::word({Gen::f(a), Gen::f(b)});
    const QRational qm2 = qpow(-2);
    if (a == b + 1) return AlgebraElement::word({Gen::f(b), Gen::f(a)}, qm2);
    // q f[a]f[b] - q^-1 f[b]f[a] = -(q f[b+1]f[a-1] - q^-1 f[a-1]f[b+1])
    AlgebraElement r = AlgebraElement::word({Gen::f(b), Gen::f(a)}, qm2);
    r.add({Gen::f(b + 1), Gen::f(a - 1)}, -1);
    r += qm2 * straighten_ff(a - 1, b + 1);
    return r;
}

AlgebraElement straighten_psif(int m, int n) {
    AlgebraElement r = AlgebraElement::word({Gen::f(n), Gen::psi(m)}, qpow(-2));
    const QRational c = qpow(-2) - qpow(2);
    for (int k = 1; k <= m; ++k) r.add({Gen::f(n + k), Gen::psi(m - k)}, c * qpow(-2 * k));
    return r;
}

bool is_canonical(const Word& w) { return std::is_sorted(w.begin(), w.end()); }

bool is_separated(const Word& w) {
    // (f, n <= 0)* (f, n > 0)* psi*
    int phase = 0;
    for (const auto& g : w) {
        const int p = !g.is_f() ? 2 : (g.mode > 0 ? 1 : 0);
        if (p < phase) return false;
        phase = p;
    }
    return true;
}

namespace {

AlgebraElement pair_rule(const Gen& x, const Gen& y) {
    if (x.is_f() && y.is_f()) return straighten_ff(x.mode, y.mode);
    if (!x.is_f() && y.is_f()) return straighten_psif(x.mode, y.mode);
    return AlgebraElement::word({y, x});  // psi-modes commute
}

}  // namespace

AlgebraElement Straightener::normal(const Word& w, long& budget) {
    if (auto it = memo_.find(w); it != memo_.end()) return it->second;
    long at = -1;
    if (strategy_ == Strategy::Leftmost) {
        for (size_t i = 0; i + 1 < w.size(); ++i)
            if (w[i + 1] < w[i]) {
                at = static_cast<long>(i);
                break;
            }
    } else {
        for (size_t i = w.size(); i-- > 1;)
            if (w[i] < w[i - 1]) {
                at = static_cast<long>(i) - 1;
                break;
            }
    }
    if (at < 0) {
        AlgebraElement r = AlgebraElement::word(w);
        memo_.emplace(w, r);
        return r;
    }
    if (--budget < 0) throw StraightenError("straightening step cap exceeded", w);
    if (active_[w]++) throw StraightenError("straightening cycle detected", w);
    ++steps_;
    const size_t i = static_cast<size_t>(at);
    AlgebraElement out;
    try {
        const AlgebraElement rule = pair_rule(w[i], w[i + 1]);
        for (const auto& [pw, c] : rule.terms()) {
            Word nw(w.begin(), w.begin() + static_cast<long>(i));
            nw.insert(nw.end(), pw.begin(), pw.end());
            nw.insert(nw.end(), w.begin() + static_cast<long>(i) + 2, w.end());
            out += c * normal(nw, budget);
        }
    } catch (...) {
        active_.erase(w);
        throw;
    }
    active_.erase(w);
    memo_.emplace(w, out);
    return out;
}

AlgebraElement Straightener::separate(const Word& w) {
    long budget = cap_;
    return normal(w, budget);
}

AlgebraElement Straightener::separate(const AlgebraElement& x) {
    AlgebraElement r;
    for (const auto& [w, c] : x.terms()) r += c * separate(w);
    return r;
}

AlgebraElement Straightener::project(const Word& w) {
    AlgebraElement r;
    const AlgebraElement sep = separate(w);
    for (const auto& [nw, c] : sep.terms()) {
        const bool killed = std::any_of(nw.begin(), nw.end(), [](const Gen& g) { return g.is_f() && g.mode <= 0; });
        if (!killed) r.add(nw, c);
    }
    return r;
}

AlgebraElement Straightener::project(const AlgebraElement& x) {
    AlgebraElement r;
    for (const auto& [w, c] : x.terms()) r += c * project(w);
    return r;
}

AlgebraElement Straightener::project_minus(const AlgebraElement& x) {
    AlgebraElement r;
    const AlgebraElement sep = separate(x);
    for (const auto& [nw, c] : sep.terms()) {
        size_t k = 0;
        while (k < nw.size() && nw[k].is_f() && nw[k].mode <= 0) ++k;
        const QRational e = counit(Word(nw.begin() + static_cast<long>(k), nw.end()));
        r.add(Word(nw.begin(), nw.begin() + static_cast<long>(k)), c * e);
    }
    return r;
}

QRational counit(const Word& w) {
    for (const auto& g : w)
        if (g.is_f() || g.mode != 0) return {};
    return 1;
}

QRational counit(const AlgebraElement& x) {
    QRational r;
    for (const auto& [w, c] : x.terms()) r += c * counit(w);
    return r;
}

TwoLeg coproduct_drinfeld(const Word& w, const std::vector<int>& kmax) {
    if (kmax.size() != w.size()) throw std::invalid_argument("coproduct_drinfeld: one k-bound per letter");
    TwoLeg acc;
    acc[{Word{}, Word{}}] = 1;
    for (size_t i = 0; i < w.size(); ++i) {
        if (!w[i].is_f()) throw std::invalid_argument("coproduct_drinfeld: f-words only");
        if (kmax[i] < 0) throw std::invalid_argument("coproduct_drinfeld: window too small to bound psi modes");
        const int n = w[i].mode;
        TwoLeg next;
        auto put = [&next](Word l, Word r, const QRational& c) {
            auto [it, fresh] = next.emplace(std::make_pair(std::move(l), std::move(r)), c);
            if (!fresh) {
                it->second += c;
                if (it->second.is_zero()) next.erase(it);
            }
        };
        for (const auto& [lr, c] : acc) {
            const auto& [l, r] = lr;
            Word r1 = r;
            r1.push_back(Gen::f(n));
            put(l, r1, c);
            for (int k = 0; k <= kmax[i]; ++k) {
                Word l2 = l, r2 = r;
                l2.push_back(Gen::f(n - k));
                r2.push_back(Gen::psi(k));
                put(l2, r2, c);
            }
        }
        acc = std::move(next);
    }
    return acc;
}

}  // namespace wf
