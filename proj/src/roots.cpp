#include "wf/roots.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace wf {

AffineCartan AffineCartan::untwisted_A(int r) {
    if (r < 1) throw std::invalid_argument("affine A_r needs r >= 1");
    AffineCartan c;
    c.r = r;
    c.name = "A" + std::to_string(r) + "~";
    const int n = r + 1;
    c.a.assign(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) {
        c.a[i][i] = 2;
        if (r == 1) {
            c.a[i][1 - i] = -2;
        } else {
            c.a[i][(i + 1) % n] = -1;
            c.a[i][(i + n - 1) % n] = -1;
        }
    }
    c.d.assign(n, 1);
    c.marks.assign(n, 1);
    c.validate();
    return c;
}

AffineCartan AffineCartan::parse(const std::string& type) {
    // only the untwisted A series for now
    if (type.size() >= 3 && type[0] == 'A' && type.back() == '~') {
        const std::string digits = type.substr(1, type.size() - 2);
        if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit))
            return untwisted_A(std::stoi(digits));
    }
    throw std::invalid_argument("unsupported root system type '" + type + "'");
}

void AffineCartan::validate() const {
    const size_t n = size();
    if (r < 1 || a.size() != n || d.size() != n || marks.size() != n)
        throw std::invalid_argument("cartan data: inconsistent sizes");
    if (marks[0] != 1) throw std::invalid_argument("cartan data: n_0 must be 1");
    for (size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) throw std::invalid_argument("cartan data: matrix not square");
        if (a[i][i] != 2) throw std::invalid_argument("cartan data: a_ii != 2");
        if (d[i] <= 0 || marks[i] <= 0) throw std::invalid_argument("cartan data: d_i and n_i must be positive");
        for (size_t j = 0; j < n; ++j) {
            if (i != j && a[i][j] > 0) throw std::invalid_argument("cartan data: positive off-diagonal entry");
            if (d[i] * a[i][j] != d[j] * a[j][i]) throw std::invalid_argument("cartan data: not symmetrizable by d");
        }
    }
    // delta must be in the kernel
    for (size_t i = 0; i < n; ++i) {
        long s = 0;
        for (size_t j = 0; j < n; ++j) s += static_cast<long>(a[i][j]) * marks[j];
        if (s != 0) throw std::invalid_argument("cartan data: delta is not in the kernel");
    }
    // corank 1: the finite part (drop row/col 0) must be positive definite.
    // Leading principal minors by fraction-free elimination.
    std::vector<std::vector<long>> m(r, std::vector<long>(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) m[i][j] = static_cast<long>(d[i + 1]) * a[i + 1][j + 1];
    long prev = 1;
    for (int k = 0; k < r; ++k) {
        if (m[k][k] <= 0) throw std::invalid_argument("cartan data: not of affine type");
        for (int i = k + 1; i < r; ++i)
            for (int j = k + 1; j < r; ++j) m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
}

AffineRoot AffineCartan::simple(int i) const {
    AffineRoot g(size(), 0);
    g.at(static_cast<size_t>(i)) = 1;
    return g;
}

long AffineCartan::form(const AffineRoot& x, const AffineRoot& y) const {
    long s = 0;
    for (size_t i = 0; i < size(); ++i)
        for (size_t j = 0; j < size(); ++j) s += static_cast<long>(x[i]) * y[j] * d[i] * a[i][j];
    return s;
}

AffineRoot AffineCartan::reflect(int i, const AffineRoot& g) const {
    if (i < 0 || i > r) throw std::out_of_range("simple index out of range");
    long pairing = 0;  // <gamma, alpha_i^vee>
    for (size_t j = 0; j < size(); ++j) pairing += static_cast<long>(a[i][j]) * g[j];
    AffineRoot out = g;
    out[i] -= static_cast<int>(pairing);
    return out;
}

int height(const AffineRoot& g) { return std::accumulate(g.begin(), g.end(), 0); }

bool is_positive(const AffineRoot& g) {
    bool any = false;
    for (int x : g) {
        if (x < 0) return false;
        if (x > 0) any = true;
    }
    return any;
}

AffineRoot negate(const AffineRoot& g) {
    AffineRoot out(g.size());
    for (size_t i = 0; i < g.size(); ++i) out[i] = -g[i];
    return out;
}

namespace {

// k if g = k delta (k may be 0 or negative), nullopt otherwise
std::optional<int> delta_multiple(const AffineRoot& g, const AffineCartan& c) {
    const int k = g[0];  // marks_0 = 1
    for (size_t i = 0; i < g.size(); ++i)
        if (g[i] != k * c.marks[i]) return std::nullopt;
    return k;
}

// finite part and delta multiple: g = fin + l delta
std::pair<AffineRoot, int> split_delta(const AffineRoot& g, const AffineCartan& c) {
    const int l = g[0];
    AffineRoot fin = g;
    for (size_t i = 0; i < g.size(); ++i) fin[i] -= l * c.marks[i];
    return {fin, l};
}

std::string term(int coef, const std::string& name, bool first) {
    std::string s;
    if (coef < 0) s = "-";
    else if (!first) s = "+";
    const int a = std::abs(coef);
    if (a != 1) s += std::to_string(a);
    return s + name;
}

}  // namespace

std::string root_text(const AffineRoot& g, const AffineCartan& c) {
    auto [fin, l] = split_delta(g, c);
    std::string s;
    bool first = true;
    if (l != 0) {
        s += term(l, "delta", true);
        first = false;
    }
    for (size_t i = 1; i < fin.size(); ++i) {
        if (fin[i] == 0) continue;
        s += term(fin[i], "a" + std::to_string(i), first);
        first = false;
    }
    return first ? "0" : s;
}

const char* relation_name(CircularRelation r) {
    switch (r) {
        case CircularRelation::Precedes: return "precedes";
        case CircularRelation::Follows: return "follows";
        default: return "incomparable";
    }
}

NormalOrdering::NormalOrdering(AffineCartan cartan, std::vector<int> word, int count, bool check_translation)
    : cartan_(std::move(cartan)), word_(std::move(word)), count_(count) {
    cartan_.validate();
    if (word_.empty()) throw std::invalid_argument("empty word");
    if (count < 0) throw std::invalid_argument("negative count");
    for (int i : word_)
        if (i < 0 || i > cartan_.r) throw std::invalid_argument("word letter out of range");
    if (check_translation) {
        if (word_[0] != 0) throw std::invalid_argument("word must start with the affine index 0");
        const auto c = translation();  // throws if p is not a translation
        for (size_t i = 0; i < c.size(); ++i)
            if (c[i] <= 0)
                throw std::invalid_argument("translation fails positivity on alpha_" + std::to_string(i + 1));
    }

    // forward: gamma_k = s_{i1} ... s_{i_{k-1}} (alpha_{i_k})
    for (int k = 1; k <= count; ++k) {
        AffineRoot g = cartan_.simple(index(k));
        for (int j = k - 1; j >= 1; --j) g = cartan_.reflect(index(j), g);
        forward_.push_back(std::move(g));
    }
    // backward: gamma_{-l} = s_{i0} s_{i-1} ... s_{i_{1-l}} (alpha_{i_{-l}})
    for (int l = 0; l < count; ++l) {
        AffineRoot g = cartan_.simple(index(-l));
        for (int j = 1 - l; j <= 0; ++j) g = cartan_.reflect(index(j), g);
        backward_.push_back(std::move(g));
    }

    auto insert = [&](const AffineRoot& g, OrderKey k) {
        if (!is_positive(g) || cartan_.form(g, g) <= 0)
            throw std::invalid_argument("word is not reduced: ladder produced " + root_text(g, cartan_));
        if (!keys_.emplace(g, k).second)
            throw std::invalid_argument("word is not reduced: repeated ladder root " + root_text(g, cartan_));
    };
    for (size_t k = 0; k < forward_.size(); ++k) insert(forward_[k], {0, static_cast<long>(k + 1)});
    for (size_t l = 0; l < backward_.size(); ++l) insert(backward_[l], {2, -static_cast<long>(l)});
}

int NormalOrdering::index(long k) const {
    const long m = static_cast<long>(word_.size());
    return word_[static_cast<size_t>(((k % m) + m) % m)];
}

std::vector<long> NormalOrdering::translation() const {
    std::vector<long> out;
    for (int i = 1; i <= cartan_.r; ++i) {
        AffineRoot g = cartan_.simple(i);
        for (auto it = word_.rbegin(); it != word_.rend(); ++it) g = cartan_.reflect(*it, g);
        AffineRoot diff = g;
        diff[i] -= 1;
        const auto k = delta_multiple(diff, cartan_);
        if (!k) throw std::invalid_argument("word does not give a translation element");
        out.push_back(-*k);
    }
    return out;
}

std::optional<OrderKey> NormalOrdering::key(const AffineRoot& g) const {
    if (g.size() != cartan_.size()) throw std::invalid_argument("root has wrong rank");
    if (auto it = keys_.find(g); it != keys_.end()) return it->second;
    if (auto k = delta_multiple(g, cartan_); k && *k > 0) return OrderKey{1, *k};
    return std::nullopt;
}

OrderKey NormalOrdering::require_key(const AffineRoot& g) const {
    if (!is_positive(g)) throw std::invalid_argument("expected a positive root, got " + root_text(g, cartan_));
    auto k = key(g);
    if (!k)
        throw std::out_of_range("root " + root_text(g, cartan_) +
                                " is outside the computed ladders (count " + std::to_string(count_) +
                                "); use a larger count");
    return *k;
}

bool NormalOrdering::precedes(const AffineRoot& a, const AffineRoot& b) const {
    return require_key(a) < require_key(b);
}

CircularRelation NormalOrdering::circular_compare(const AffineRoot& a, const AffineRoot& b) const {
    const bool pa = is_positive(a), pb = is_positive(b);
    const AffineRoot ua = pa ? a : negate(a), ub = pb ? b : negate(b);
    const OrderKey ka = require_key(ua), kb = require_key(ub);
    if (ka == kb) return CircularRelation::Incomparable;  // a = b or a = -b
    bool before;
    if (pa == pb) before = ka < kb;  // same half of the circle
    else before = kb < ka;           // a and -b, or -a and b
    return before ? CircularRelation::Precedes : CircularRelation::Follows;
}

void NormalOrdering::override_key(const AffineRoot& g, OrderKey k) { keys_[g] = k; }

CircularRelation circular_by_segments(const NormalOrdering& ord, const AffineRoot& a, const AffineRoot& b) {
    // position on the circle: positives in order, then negatives in the same order
    auto pos = [&](const AffineRoot& g) {
        const bool p = is_positive(g);
        const auto k = ord.key(p ? g : negate(g));
        if (!k) throw std::out_of_range("root outside the computed ladders");
        return std::pair<int, OrderKey>{p ? 0 : 1, *k};
    };
    const auto pa = pos(a), pb = pos(b), pna = pos(negate(a)), pnb = pos(negate(b));
    // clockwise segment [x, y] contains z
    auto in_segment = [](auto x, auto y, auto z) {
        if (x <= y) return x <= z && z <= y;
        return z >= x || z <= y;
    };
    auto precedes = [&](auto x, auto y, auto nx, auto ny) {
        if (x == y) return false;
        return !in_segment(x, y, nx) && !in_segment(x, y, ny);
    };
    if (precedes(pa, pb, pna, pnb)) return CircularRelation::Precedes;
    if (precedes(pb, pa, pnb, pna)) return CircularRelation::Follows;
    return CircularRelation::Incomparable;
}

std::vector<AffineRoot> finite_positive_roots(const AffineCartan& c) {
    std::set<AffineRoot> seen;
    std::vector<AffineRoot> todo;
    for (int i = 1; i <= c.r; ++i) todo.push_back(c.simple(i));
    while (!todo.empty()) {
        AffineRoot g = todo.back();
        todo.pop_back();
        if (!seen.insert(g).second) continue;
        for (int i = 1; i <= c.r; ++i) {
            AffineRoot h = c.reflect(i, g);
            if (!seen.count(h)) todo.push_back(std::move(h));
        }
    }
    std::vector<AffineRoot> out;
    for (const auto& g : seen)
        if (is_positive(g)) out.push_back(g);
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        return height(x) != height(y) ? height(x) < height(y) : x > y;
    });
    return out;
}

Report verify_ord1(const NormalOrdering& ord, int max_height) {
    Report rep("roots-ord1");
    const AffineCartan& c = ord.cartan();
    const AffineRoot delta = c.delta();
    const int hd = height(delta);
    auto txt = [&](const AffineRoot& g) { return root_text(g, c); };

    // every ladder root is real, positive, and of the expected class
    auto classify = [&](const std::vector<AffineRoot>& ladder, bool fwd) {
        for (const auto& g : ladder) {
            ++rep.checked;
            auto [fin, l] = split_delta(g, c);
            const bool ok = c.form(g, g) > 0 && (fwd ? (is_positive(fin) && l >= 0) : (is_positive(negate(fin)) && l >= 1));
            if (!ok) rep.fail("ladder root of the wrong class", {{"root", txt(g)}, {"ladder", fwd ? "forward" : "backward"}});
        }
    };
    classify(ord.forward(), true);
    classify(ord.backward(), false);

    std::vector<AffineRoot> lower, imag, upper;  // l delta + a, (m+1) delta, (n+1) delta - b
    for (const auto& a : finite_positive_roots(c)) {
        for (int l = 0; height(a) + l * hd <= max_height; ++l) {
            AffineRoot g = a;
            for (size_t i = 0; i < g.size(); ++i) g[i] += l * delta[i];
            lower.push_back(g);
        }
        for (int n = 0; (n + 1) * hd - height(a) <= max_height; ++n) {
            AffineRoot g = negate(a);
            for (size_t i = 0; i < g.size(); ++i) g[i] += (n + 1) * delta[i];
            upper.push_back(g);
        }
    }
    for (int m = 1; m * hd <= max_height; ++m) {
        AffineRoot g = delta;
        for (auto& x : g) x *= m;
        imag.push_back(g);
    }

    std::map<AffineRoot, OrderKey> k;
    for (const auto* set : {&lower, &imag, &upper})
        for (const auto& g : *set) {
            auto key = ord.key(g);
            if (!key) {
                rep.fail("root missing from the ladders (count too small or word not admissible)", {{"root", txt(g)}});
                return rep;
            }
            k[g] = *key;
        }

    for (const auto& a : lower)
        for (const auto& m : imag)
            for (const auto& b : upper) {
                ++rep.checked;
                if (!(k[a] < k[m] && k[m] < k[b]))
                    rep.fail("ord1 violated", {{"l_delta_plus_alpha", txt(a)}, {"m_delta", txt(m)}, {"n_delta_minus_beta", txt(b)}});
            }
    // with no imaginary root in range, still compare the two families directly
    if (imag.empty())
        for (const auto& a : lower)
            for (const auto& b : upper) {
                ++rep.checked;
                if (!(k[a] < k[b])) rep.fail("ord1 violated", {{"l_delta_plus_alpha", txt(a)}, {"n_delta_minus_beta", txt(b)}});
            }

    // convexity among real roots in range
    std::vector<AffineRoot> real = lower;
    real.insert(real.end(), upper.begin(), upper.end());
    for (const auto& a : real)
        for (const auto& b : real) {
            if (!(k[a] < k[b])) continue;
            AffineRoot s = a;
            for (size_t i = 0; i < s.size(); ++i) s[i] += b[i];
            if (height(s) > max_height) continue;
            auto ks = ord.key(s);
            const bool is_root = (delta_multiple(s, c).has_value()) || (c.form(s, s) > 0 && ks.has_value());
            if (!is_root || !ks) continue;
            ++rep.checked;
            if (!(k[a] < *ks && *ks < k[b]))
                rep.fail("ordering is not convex", {{"alpha", txt(a)}, {"beta", txt(b)}, {"sum", txt(s)}});
        }
    return rep;
}

Report verify_shift_correspondence(const AffineCartan& cartan, const std::vector<int>& word, int c, int bound) {
    Report rep("roots-shift-c" + std::to_string(c));
    if (c < 0) throw std::invalid_argument("shift must be nonnegative");
    const int m = static_cast<int>(word.size());
    NormalOrdering ord(cartan, word, m * (2 * bound + 4 * c + 8));
    std::vector<int> shifted(word.size());
    for (int n = 0; n < m; ++n) shifted[n] = ord.index(n - c);
    NormalOrdering tilde(cartan, shifted, m * (bound + 4), false);
    auto txt = [&](const AffineRoot& g) { return root_text(g, cartan); };

    // w = s_{i0} s_{i-1} ... s_{i_{1-c}}, inverse of the map sending gamma_{n-c} to tilde gamma_n
    auto w = [&](AffineRoot g) {
        for (int j = 1 - c; j <= 0; ++j) g = cartan.reflect(ord.index(j), g);
        return g;
    };
    auto w_inv = [&](AffineRoot g) {
        for (int j = 0; j >= 1 - c; --j) g = cartan.reflect(ord.index(j), g);
        return g;
    };

    // ladder correspondence: tilde gamma_n = w^{-1}(+-gamma_{n-c})
    auto ladder_root = [](const NormalOrdering& o, long n) -> const AffineRoot& {
        return n >= 1 ? o.forward().at(static_cast<size_t>(n - 1)) : o.backward().at(static_cast<size_t>(-n));
    };
    const long span = static_cast<long>(tilde.count()) - 1;
    for (long n = -span; n <= span; ++n) {
        if (n - c < -(ord.count() - 1)) continue;
        ++rep.checked;
        const AffineRoot& g = ladder_root(ord, n - c);
        const AffineRoot expect = w_inv(n >= 1 && n <= c ? negate(g) : g);
        if (expect != ladder_root(tilde, n))
            rep.fail("shifted ladder mismatch", {{"n", n}, {"expected", txt(expect)}, {"got", txt(ladder_root(tilde, n))}});
    }

    std::vector<AffineRoot> sample;
    for (const auto* lad : {&tilde.forward(), &tilde.backward()})
        for (const auto& g : *lad)
            if (height(g) <= bound) sample.push_back(g);
    for (int k = 1; k * height(cartan.delta()) <= bound; ++k) {
        AffineRoot g = cartan.delta();
        for (auto& x : g) x *= k;
        sample.push_back(g);
    }

    for (const auto& a : sample)
        for (const auto& b : sample) {
            if (a == b) continue;
            ++rep.checked;
            const bool lhs = tilde.precedes(a, b);
            bool rhs;
            try {
                rhs = ord.circular_compare(w(a), w(b)) == CircularRelation::Precedes;
            } catch (const std::out_of_range& e) {
                rep.fail(e.what(), {{"alpha", txt(w(a))}, {"beta", txt(w(b))}});
                continue;
            }
            if (lhs != rhs)
                rep.fail("shift correspondence fails",
                         {{"alpha_tilde", txt(a)}, {"beta_tilde", txt(b)}, {"alpha", txt(w(a))}, {"beta", txt(w(b))},
                          {"tilde_precedes", lhs}, {"circular_precedes", rhs}});
        }
    return rep;
}

}  // namespace wf
