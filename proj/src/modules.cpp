#include "wf/modules.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace wf {

namespace {

QRational qint(int k) { return (QRational::q(k) - QRational::q(-k)) / (QRational::q(1) - QRational::q(-1)); }

QRational qpow_r(const QRational& x, int n) {
    if (n < 0) return qpow_r(QRational(1) / x, -n);
    QRational r = 1;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

Vec poly_mul(const Vec& a, const Vec& b) {
    Vec r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

Matrix zero_matrix(int d) { return Matrix(d, Vec(d)); }

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    const size_t d = a.size();
    Matrix r(d, Vec(d));
    for (size_t i = 0; i < d; ++i)
        for (size_t k = 0; k < d; ++k) {
            if (a[i][k].is_zero()) continue;
            for (size_t j = 0; j < d; ++j)
                if (!b[k][j].is_zero()) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

// sum of c_i * m_i
Matrix combo(std::initializer_list<std::pair<QRational, Matrix>> parts, int d) {
    Matrix r = zero_matrix(d);
    for (const auto& [c, m] : parts)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) r[i][j] += c * m[i][j];
    return r;
}

std::optional<std::pair<int, int>> first_nonzero(const Matrix& m) {
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m.size(); ++j)
            if (!m[i][j].is_zero()) return std::pair<int, int>{static_cast<int>(i), static_cast<int>(j)};
    return std::nullopt;
}

Vec outer(const Vec& a, const Vec& b) {
    Vec r(a.size() * b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j)
            if (!b[j].is_zero()) r[i * b.size() + j] = a[i] * b[j];
    }
    return r;
}

Vec act_element(const EvalModule& m, const AlgebraElement& x, const Vec& v, int* degree) {
    Vec out(v.size());
    for (const auto& [w, c] : x.terms()) {
        const int d = principal_degree(w);
        if (degree) {
            if (*degree == INT32_MIN) *degree = d;
            else if (*degree != d) throw std::logic_error("inhomogeneous element");
        }
        const Vec r = m.act(w, v);
        for (size_t i = 0; i < out.size(); ++i)
            if (!r[i].is_zero()) out[i] += c * r[i];
    }
    return out;
}

// Re-express a series/support over a subset of variables in the full list.
std::vector<int> var_map(const std::vector<std::string>& sub, const std::vector<std::string>& full) {
    std::vector<int> idx;
    for (const auto& v : sub) {
        auto it = std::find(full.begin(), full.end(), v);
        if (it == full.end()) throw std::invalid_argument("unknown variable " + v);
        idx.push_back(static_cast<int>(it - full.begin()));
    }
    return idx;
}

SupportBound embed_support(const SupportBound& s, const std::vector<int>& idx, size_t n) {
    SupportBound out = SupportBound::any(n);
    for (auto& b : out.box) b = Interval::point(0);
    for (size_t v = 0; v < idx.size(); ++v) out.box[idx[v]] = s.box[v];
    for (const auto& c : s.sums) {
        std::vector<char> mask(n, 0);
        for (size_t v = 0; v < idx.size(); ++v) mask[idx[v]] = c.mask[v];
        out.add_sum(mask, c.range);
    }
    return out;
}

template <class C>
NestedSeries<C> embed(const NestedSeries<C>& s, const std::vector<std::string>& full) {
    const auto idx = var_map(s.vars, full);
    NestedSeries<C> out(full);
    out.support = embed_support(s.support, idx, full.size());
    for (size_t v = 0; v < idx.size(); ++v) out.window.box[idx[v]] = s.window.box[v];
    Exp e(full.size(), 0);
    for (const auto& [x, c] : s.terms) {
        for (size_t v = 0; v < idx.size(); ++v) e[idx[v]] = x[v];
        out.terms.emplace(e, c);
    }
    return out;
}

ExponentWindow sub_window(const ExponentWindow& w, const std::vector<int>& idx) {
    ExponentWindow out;
    for (int i : idx) out.box.push_back(w.box[i]);
    return out;
}

OrderedMultiset sub_multiset(const OrderedMultiset& ms, const std::vector<size_t>& pos) {
    OrderedMultiset out;
    for (size_t p : pos) {
        out.ids.push_back(ms.ids[p]);
        out.colors.push_back(ms.colors[p]);
    }
    return out;
}

// num/den of a rational function in x = z/t as polynomials in (t, z), homogeneous
std::pair<MPoly, MPoly> in_ratio(const RationalFn& f, size_t n, size_t t, size_t z) {
    const int D = static_cast<int>(std::max(f.num.size(), f.den.size())) - 1;
    MPoly num(n), den(n);
    auto fill = [&](const Vec& c, MPoly& p) {
        for (size_t k = 0; k < c.size(); ++k) {
            if (c[k].is_zero()) continue;
            Exp e(n, 0);
            e[t] = D - static_cast<int>(k);
            e[z] = static_cast<int>(k);
            p = p + MPoly::monomial(n, e, c[k]);
        }
    };
    fill(f.num, num);
    fill(f.den, den);
    return {num, den};
}

MPoly linear(size_t n, size_t a, const QRational& ca, size_t b, const QRational& cb) {
    return MPoly::var(n, a, 1, ca) + MPoly::var(n, b, 1, cb);
}

}  // namespace

Vec RationalFn::at_zero(int count) const {
    if (den.empty() || den[0].is_zero()) throw std::invalid_argument("rational function has a pole at 0");
    Vec c(std::max(count, 0));
    for (int m = 0; m < count; ++m) {
        QRational s = m < static_cast<int>(num.size()) ? num[m] : QRational(0);
        for (int k = 1; k <= m && k < static_cast<int>(den.size()); ++k) s -= den[k] * c[m - k];
        c[m] = s / den[0];
    }
    return c;
}

Vec RationalFn::at_infinity(int count) const {
    const size_t D = std::max(num.size(), den.size());
    RationalFn rev;
    rev.num.assign(D, 0);
    rev.den.assign(D, 0);
    for (size_t k = 0; k < num.size(); ++k) rev.num[D - 1 - k] = num[k];
    for (size_t k = 0; k < den.size(); ++k) rev.den[D - 1 - k] = den[k];
    return rev.at_zero(count);
}

const char* op_name(ModeOp op) {
    switch (op) {
        case ModeOp::F: return "f";
        case ModeOp::E: return "e";
        case ModeOp::PsiPlus: return "psi+";
        default: return "psi-";
    }
}

Matrix EvalModule::op(ModeOp kind, int mode) const {
    Matrix m = zero_matrix(dim);
    switch (kind) {
        case ModeOp::F:
            for (int j = 0; j + 1 < dim; ++j) m[j + 1][j] = f_coef[j] * qpow_r(ratio[j], mode);
            break;
        case ModeOp::E:
            for (int j = 0; j + 1 < dim; ++j) m[j][j + 1] = e_coef[j] * qpow_r(ratio[j], mode);
            break;
        case ModeOp::PsiPlus:
            if (mode >= 0)
                for (int j = 0; j < dim; ++j) m[j][j] = lambda[j].at_zero(mode + 1)[mode];
            break;
        case ModeOp::PsiMinus:
            if (mode <= 0)
                for (int j = 0; j < dim; ++j) m[j][j] = lambda[j].at_infinity(1 - mode)[-mode];
            break;
    }
    if (patch) patch(kind, mode, m);
    return m;
}

Vec EvalModule::apply(ModeOp kind, int mode, const Vec& v) const {
    const Matrix m = op(kind, mode);
    Vec r(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            if (!m[i][j].is_zero() && !v[j].is_zero()) r[i] += m[i][j] * v[j];
    return r;
}

Vec EvalModule::basis(int j) const {
    Vec v(dim);
    v.at(j) = 1;
    return v;
}

Vec EvalModule::act(const Word& w, const Vec& v) const {
    Vec r = v;
    for (auto it = w.rbegin(); it != w.rend(); ++it) r = apply(it->is_f() ? ModeOp::F : ModeOp::PsiPlus, it->mode, r);
    return r;
}

EvalModule make_spin_module(int d) {
    if (d < 1) throw std::invalid_argument("spin must be positive");
    static const char* names[] = {"", "half", "one", "three-halves"};
    EvalModule m;
    m.name = d < 4 ? names[d] : "spin" + std::to_string(d) + "/2";
    m.dim = d + 1;
    for (int j = 0; j < d; ++j) {
        m.f_coef.push_back(1);
        m.e_coef.push_back(qint(j + 1) * qint(d - j));
        m.ratio.push_back(QRational::q(-2 * j));
    }
    RationalFn l{{QRational::q(d), -QRational::q(-d)}, {1, -1}};
    m.lambda.push_back(l);
    for (int j = 0; j < d; ++j) {
        // g(x_j x) with g(y) = (q^-2 - y) / (1 - q^-2 y)
        const QRational x = m.ratio[j];
        l.num = poly_mul(l.num, {QRational::q(-2), -x});
        l.den = poly_mul(l.den, {1, -QRational::q(-2) * x});
        m.lambda.push_back(l);
    }
    return m;
}

EvalModule make_trivial_module() {
    EvalModule m;
    m.name = "trivial";
    m.dim = 1;
    m.lambda.push_back({{1}, {1}});
    return m;
}

EvalModule module_by_name(const std::string& name) {
    if (name == "half" || name == "spin-half") return make_spin_module(1);
    if (name == "one" || name == "spin-one") return make_spin_module(2);
    if (name == "three-halves" || name == "spin-three-halves") return make_spin_module(3);
    if (name == "trivial") return make_trivial_module();
    throw std::invalid_argument("unknown module '" + name + "'");
}

std::vector<std::string> shipped_modules() { return {"trivial", "half", "one", "three-halves"}; }

Report validate_relations(const EvalModule& m, int bound) {
    Report rep("module " + m.name);
    if (bound < 0) {
        rep.detail = "warning: empty mode window, nothing checked";
        return rep;
    }
    const int d = m.dim;
    const QRational q2 = QRational::q(2), qm2 = QRational::q(-2);
    const QRational inv = QRational(1) / (QRational::q(1) - QRational::q(-1));
    auto O = [&](ModeOp k, int n) { return m.op(k, n); };
    auto check = [&](const std::string& rel, int a, int b, const Matrix& x) {
        rep.checked += static_cast<size_t>(d * d);
        if (auto p = first_nonzero(x))
            rep.fail("relation " + rel + " fails", {{"relation", rel}, {"m", a}, {"n", b}, {"entry", {p->first, p->second}},
                                                   {"value", x[p->first][p->second].to_string()}});
    };
    // (z - c w) X(z) Y(w) = (c z - w) Y(w) X(z), read on modes (m, n)
    auto exchange = [&](const std::string& rel, ModeOp X, ModeOp Y, const QRational& c, int a, int b) {
        check(rel, a, b,
              combo({{1, mat_mul(O(X, a + 1), O(Y, b))},
                     {-c, mat_mul(O(X, a), O(Y, b + 1))},
                     {-c, mat_mul(O(Y, b), O(X, a + 1))},
                     {1, mat_mul(O(Y, b + 1), O(X, a))}},
                    d));
    };
    for (int a = -bound; a <= bound; ++a)
        for (int b = -bound; b <= bound; ++b) {
            exchange("ff", ModeOp::F, ModeOp::F, qm2, a, b);
            exchange("ee", ModeOp::E, ModeOp::E, q2, a, b);
            exchange("psi+f", ModeOp::PsiPlus, ModeOp::F, qm2, a, b);
            exchange("psi+e", ModeOp::PsiPlus, ModeOp::E, q2, a, b);
            exchange("psi-f", ModeOp::PsiMinus, ModeOp::F, qm2, a, b);
            exchange("psi-e", ModeOp::PsiMinus, ModeOp::E, q2, a, b);
            for (ModeOp X : {ModeOp::PsiPlus, ModeOp::PsiMinus})
                for (ModeOp Y : {ModeOp::PsiPlus, ModeOp::PsiMinus})
                    check(std::string(op_name(X)) + op_name(Y), a, b,
                          combo({{1, mat_mul(O(X, a), O(Y, b))}, {-1, mat_mul(O(Y, b), O(X, a))}}, d));
            check("ef", a, b,
                  combo({{1, mat_mul(O(ModeOp::E, a), O(ModeOp::F, b))},
                         {-1, mat_mul(O(ModeOp::F, b), O(ModeOp::E, a))},
                         {-inv, O(ModeOp::PsiPlus, a + b)},
                         {inv, O(ModeOp::PsiMinus, a + b)}},
                        d));
        }
    // top vector singular
    for (int a = 0; a <= bound; ++a) {
        const Vec v = m.apply(ModeOp::E, a, m.top());
        ++rep.checked;
        if (std::any_of(v.begin(), v.end(), [](const QRational& x) { return !x.is_zero(); }))
            rep.fail("top vector is not singular", {{"mode", a}});
    }
    return rep;
}

SupportBound weight_vector_support(size_t n) {
    SupportBound s = SupportBound::any(n + 1);
    if (n == 0) {
        s.box[0] = Interval::point(0);
        return s;
    }
    s.box[0].hi = -1;
    s.box[n] = {static_cast<long>(n), kInf};
    std::vector<char> ts(n + 1, 1);
    ts.back() = 0;
    s.add_sum(ts, {-kInf, -static_cast<long>(n)});
    s.add_sum(std::vector<char>(n + 1, 1), Interval::point(0));
    return s;
}

ModuleSeries weight_vector(const EvalModule& m, const OrderedMultiset& ms, const ExponentWindow& window,
                           Straightener& st, const std::string& zvar) {
    const size_t n = ms.size();
    const WeightSeries W = universal_weight(ms, window, st);
    auto vars = ms.vars();
    vars.push_back(zvar);
    ModuleSeries out(vars);
    out.support = weight_vector_support(n);
    for (size_t v = 0; v < n; ++v) out.window.box[v] = window.box[v];
    const Vec top = m.top();
    std::map<Word, Vec> cache;
    Exp e(n + 1);
    for (const auto& [t, x] : W.terms) {
        std::copy(t.begin(), t.end(), e.begin());
        for (const auto& [w, c] : x.terms()) {
            auto it = cache.find(w);
            if (it == cache.end()) it = cache.emplace(w, m.act(w, top)).first;
            e[n] = principal_degree(w);
            Vec r = it->second;
            for (auto& y : r) y *= c;
            out.add(e, r);
        }
    }
    out.normalize_window();
    return out;
}

ModuleSeries tensor_weight_vector(const EvalModule& m1, const EvalModule& m2, const OrderedMultiset& ms,
                                  const ExponentWindow& window, Straightener& st) {
    const size_t n = ms.size();
    if (window.size() != n) throw std::invalid_argument("tensor_weight_vector: window arity mismatch");
    if (!ms.single_color()) throw std::invalid_argument("tensor_weight_vector: rank 1 only");
    auto vars = ms.vars();
    vars.push_back("z1");
    vars.push_back("z2");
    ModuleSeries out(vars);
    for (size_t v = 0; v < n; ++v) out.window.box[v] = window.box[v];
    const Vec v1 = m1.top(), v2 = m2.top();

    std::map<Word, Vec> leg1, leg2;
    auto acted = [&](std::map<Word, Vec>& cache, const EvalModule& m, const Vec& v, const Word& w) -> const Vec& {
        auto it = cache.find(w);
        if (it != cache.end()) return it->second;
        const AlgebraElement p = st.project(w);
        return cache.emplace(w, act_element(m, p, v, nullptr)).first->second;
    };
    auto nonzero = [](const Vec& v) {
        return std::any_of(v.begin(), v.end(), [](const QRational& x) { return !x.is_zero(); });
    };

    Exp e(n + 2);
    std::vector<int> k(n);
    for_each_point(window, [&](const Exp& t) {
        std::vector<int> a(n);
        for (size_t i = 0; i < n; ++i) a[i] = -t[i];
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            std::vector<size_t> I1;
            for (size_t i = 0; i < n; ++i)
                if (mask & (1u << i)) I1.push_back(i);
            long budget = -static_cast<long>(I1.size());
            for (size_t i : I1) budget += a[i];
            if (budget < 0) continue;  // P kills the first leg
            std::fill(k.begin(), k.end(), 0);
            auto rec = [&](auto&& self, size_t idx, long left) -> void {
                if (idx < I1.size()) {
                    const size_t i = I1[idx];
                    long cap = left;
                    if (idx == 0) cap = std::min<long>(cap, a[i] - 1);
                    for (int x = 0; x <= cap; ++x) {
                        k[i] = x;
                        self(self, idx + 1, left - x);
                    }
                    k[i] = 0;
                    return;
                }
                Word w1, w2;
                int d1 = 0, d2 = 0;
                for (size_t i = 0; i < n; ++i) {
                    if (mask & (1u << i)) {
                        w1.push_back(Gen::f(a[i] - k[i]));
                        w2.push_back(Gen::psi(k[i]));
                        d1 += a[i] - k[i];
                        d2 += k[i];
                    } else {
                        w2.push_back(Gen::f(a[i]));
                        d2 += a[i];
                    }
                }
                const Vec& x1 = acted(leg1, m1, v1, w1);
                if (!nonzero(x1)) return;
                const Vec& x2 = acted(leg2, m2, v2, w2);
                if (!nonzero(x2)) return;
                std::copy(t.begin(), t.end(), e.begin());
                e[n] = d1;
                e[n + 1] = d2;
                out.add(e, outer(x1, x2));
            };
            rec(rec, 0, budget);
        }
    });
    return out;
}

ModuleSeries factorization_rhs(const EvalModule& m1, const EvalModule& m2, const OrderedMultiset& ms,
                               const ExponentWindow& window, Straightener& st, FactorVariant variant) {
    const size_t n = ms.size();
    const size_t N = n + 2, z1 = n, z2 = n + 1;
    auto vars = ms.vars();
    vars.push_back("z1");
    vars.push_back("z2");
    ExponentWindow target = ExponentWindow::full(N);
    for (size_t v = 0; v < n; ++v) target.box[v] = window.box[v];
    ModuleSeries out(vars);
    out.window = target;

    auto tensor = [](const Vec& a, const Vec& b) { return outer(a, b); };
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<size_t> I1, I2;
        for (size_t i = 0; i < n; ++i) ((mask & (1u << i)) ? I1 : I2).push_back(i);
        const OrderedMultiset ms1 = sub_multiset(ms, I1), ms2 = sub_multiset(ms, I2);
        auto vars1 = ms1.vars(), vars2 = ms2.vars();
        vars1.push_back("z1");
        vars2.push_back("z2");
        const auto idx1 = var_map(vars1, vars), idx2 = var_map(vars2, vars);
        const SupportBound s1 = embed_support(weight_vector_support(I1.size()), idx1, N);
        const SupportBound s2 = embed_support(weight_vector_support(I2.size()), idx2, N);

        MPoly num = MPoly::constant(N, 1), den = MPoly::constant(N, 1);
        for (size_t i : I1) {
            auto [a, b] = in_ratio(m2.lambda[0], N, i, z2);
            num = num * a;
            den = den * b;
        }
        if (variant != FactorVariant::DroppedRatio)
            for (size_t k : I1)
                for (size_t l : I2) {
                    if (k > l) continue;
                    MPoly a = linear(N, k, QRational::q(-2), l, -1);
                    MPoly b = linear(N, k, 1, l, -QRational::q(-2));
                    if (variant == FactorVariant::UninvertedRatio) std::swap(a, b);
                    num = num * a;
                    den = den * b;
                }
        const SupportBound sS = rational_support(num, den);
        const SupportBound sW = support_product(s1, s2);
        auto needs = factor_needs(sS, sW, target);
        if (!needs) continue;
        const auto S = expand_rational(num, den, vars, ExponentWindow{needs->a});
        const ExponentWindow wtarget{needs->b};
        auto needs2 = factor_needs(s1, s2, wtarget);
        if (!needs2) continue;
        ExponentWindow w1win{needs2->a}, w2win{needs2->b};
        const auto W1 = embed(weight_vector(m1, ms1, sub_window(w1win, std::vector<int>(idx1.begin(), idx1.end() - 1)), st, "z1"), vars);
        const auto W2 = embed(weight_vector(m2, ms2, sub_window(w2win, std::vector<int>(idx2.begin(), idx2.end() - 1)), st, "z2"), vars);
        const auto W = series_mul(W1, W2, tensor, wtarget);
        const auto P = scale_series(S, W, target);
        for (const auto& [e, c] : P.terms) out.add(e, c);
    }
    (void)z1;
    return out;
}

Report check_factorization(const EvalModule& m1, const EvalModule& m2, size_t n, const ExponentWindow& window,
                           Straightener& st, FactorVariant variant) {
    Report rep("factorization n=" + std::to_string(n) + " " + m1.name + "(x)" + m2.name);
    const auto ms = OrderedMultiset::uniform(n);
    const auto lhs = tensor_weight_vector(m1, m2, ms, window, st);
    const auto rhs = factorization_rhs(m1, m2, ms, window, st, variant);
    ExponentWindow on = ExponentWindow::full(n + 2);
    for (size_t v = 0; v < n; ++v) on.box[v] = window.box[v];
    size_t checked = 0;
    auto diff = first_difference(lhs, rhs, on, &checked);
    rep.checked = checked;
    if (diff) {
        auto show = [](const ModuleSeries& s, const Exp& e) {
            auto it = s.terms.find(e);
            nlohmann::json j = nlohmann::json::array();
            if (it != s.terms.end())
                for (const auto& c : it->second) j.push_back(c.to_string());
            return j;
        };
        rep.fail("tensor side differs from the factorized sum",
                 {{"exp", *diff}, {"vars", lhs.vars}, {"lhs", show(lhs, *diff)}, {"rhs", show(rhs, *diff)}});
    }
    return rep;
}

Report bethe_check(const EvalModule& m, size_t n, Straightener& st, BetheOptions opt) {
    Report rep("bethe n=" + std::to_string(n) + " " + m.name + (opt.prefactor ? "" : " (prefactor omitted)"));
    const size_t N = n + 1, z = n;
    const auto ms = OrderedMultiset::uniform(n);
    auto vars = ms.vars();
    vars.push_back("z");
    const QRational q = QRational::q(1), qi = QRational::q(-1);

    // B(u1)...B(un) v: step j acts with k(u_{n-j}) then f+(u_{n-j}) on v_j
    MPoly num = MPoly::constant(N, 1), den = MPoly::constant(N, 1);
    const bool dead = static_cast<int>(n) >= m.dim;
    for (size_t j = 0; j < n && !dead; ++j) {
        const size_t u = n - 1 - j;
        for (size_t i = 0; i < j; ++i) {  // k eigenvalue on v_j: prod h(x_i z / u)
            num = num * linear(N, u, q, z, -qi * m.ratio[i]);
            den = den * linear(N, u, 1, z, -m.ratio[i]);
        }
        num = num * MPoly::var(N, z, 1, m.f_coef[j] * m.ratio[j]);
        den = den * linear(N, u, 1, z, -m.ratio[j]);
    }

    // pole clearing
    MPoly poles = MPoly::constant(N, 1), D = MPoly::constant(N, 1), Q = MPoly::constant(N, 1);
    for (size_t i = 0; i < n; ++i)
        for (int j = -1; j < static_cast<int>(n); ++j) poles = poles * linear(N, i, 1, z, -QRational::q(-2 * j));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = i + 1; k < n; ++k) {
            const MPoly s = linear(N, i, q, k, -qi);
            D = D * linear(N, i, 1, k, -1) * s;
            Q = Q * s * s;
        }
    const MPoly left_mult = poles * D, right_mult = poles * (opt.prefactor ? Q : D);
    std::vector<long> dmax(std::max<size_t>(n, 1), 0);
    for (const auto* p : {&left_mult, &right_mult})
        for (const auto& [e, c] : p->terms)
            for (size_t i = 0; i < n; ++i) dmax[i] = std::max<long>(dmax[i], e[i]);

    const long need = -*std::max_element(dmax.begin(), dmax.end()) - 1;
    if (opt.lo == 0) opt.lo = static_cast<int>(need);
    if (opt.lo > need) {
        rep.fail("window too small for stabilization", {{"lo", opt.lo}, {"required_lo", need}});
        return rep;
    }
    const int target_index = static_cast<int>(n);
    auto run = [&](int lo) {
        ExponentWindow w = ExponentWindow::full(N);
        for (size_t i = 0; i < n; ++i) w.box[i] = {lo, kInf};
        NestedSeries<QRational> L(vars);
        if (dead) {
            for (auto& b : L.support.box) b = Interval::point(0);
        } else {
            L = expand_rational(num, den, vars, w);
        }
        const auto Wv = weight_vector(m, ms, ExponentWindow{std::vector<Interval>(w.box.begin(), w.box.end() - 1)}, st);
        ExponentWindow tw = ExponentWindow::full(N);
        for (size_t i = 0; i < n; ++i) tw.box[i] = {lo + dmax[i], kInf};
        const auto Lc = series_mul(left_mult.as_series(vars), L, tw);
        const auto Rc = scale_series(right_mult.as_series(vars), Wv, tw);
        // compare the component along v_n; every other component must vanish
        NestedSeries<QRational> R(vars);
        R.window = Rc.window;
        for (const auto& [e, c] : Rc.terms)
            for (int j = 0; j < m.dim; ++j) {
                if (c[j].is_zero()) continue;
                if (j != target_index) rep.fail("weight vector leaves the weight space", {{"exp", e}, {"component", j}});
                else R.add(e, c[j]);
            }
        return std::pair{Lc, R};
    };

    const auto [L1, R1] = run(opt.lo);
    const auto [L2, R2] = run(opt.lo - 2);
    // polynomial: nothing moves when the window grows
    const std::pair<const NestedSeries<QRational>*, const NestedSeries<QRational>*> pairs[] = {{&L1, &L2}, {&R1, &R2}};
    for (const auto& pr : pairs) {
        const auto& a = *pr.first;
        const auto& b = *pr.second;
        for (const auto& [e, c] : b.terms)
            if (!a.window.contains(e)) {
                rep.fail("pole-cleared side did not stabilize; lower the window bound",
                         {{"exp", e}, {"lo", opt.lo}});
                return rep;
            }
        if (first_difference(a, b, a.window)) {
            rep.fail("pole-cleared side did not stabilize; lower the window bound", {{"lo", opt.lo}});
            return rep;
        }
    }
    size_t checked = 0;
    if (auto d = first_difference(L1, R1, L1.window, &checked)) {
        auto val = [&](const NestedSeries<QRational>& s) {
            auto it = s.terms.find(*d);
            return it == s.terms.end() ? std::string("0") : it->second.to_string();
        };
        rep.fail("Bethe vector differs from the weight vector", {{"exp", *d}, {"vars", vars}, {"lhs", val(L1)}, {"rhs", val(R1)}});
    }
    rep.checked += checked;
    if (dead) rep.detail = "both sides vanish: n exceeds the module";
    return rep;
}

std::string mpoly_text(const MPoly& p, const std::vector<std::string>& vars) {
    if (p.is_zero()) return "0";
    std::string s;
    for (auto it = p.terms.rbegin(); it != p.terms.rend(); ++it) {
        const auto& [e, c] = *it;
        std::string mono;
        for (size_t v = 0; v < e.size(); ++v) {
            if (e[v] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars[v];
            if (e[v] != 1) mono += "^" + std::to_string(e[v]);
        }
        if (!s.empty()) s += " + ";
        const std::string cs = c.pretty();
        if (mono.empty()) s += "(" + cs + ")";
        else if (cs == "1") s += mono;
        else s += "(" + cs + ")*" + mono;
    }
    return s;
}

Reconstruction rational_reconstruct(const NestedSeries<QRational>& s, const MPoly& den, const ExponentWindow& box) {
    Reconstruction out;
    out.denominator = den;
    Report& rep = out.report;
    const size_t nv = s.nvars();
    if (den.is_zero()) {
        rep.fail("zero denominator");
        return out;
    }
    // homogeneity: every term of s and den has one total degree
    auto total = [](const Exp& e) { return std::accumulate(e.begin(), e.end(), 0L); };
    long ds = 0, dd = total(den.terms.begin()->first);
    if (!s.terms.empty()) ds = total(s.terms.begin()->first);
    for (const auto& [e, c] : s.terms)
        if (total(e) != ds) {
            rep.fail("series is not homogeneous", {{"exp", e}});
            return out;
        }
    for (const auto& [e, c] : den.terms)
        if (total(e) != dd) {
            rep.fail("denominator is not homogeneous");
            return out;
        }
    const long D = dd + ds;
    if (D < 0) {
        rep.fail("numerator degree would be negative");
        return out;
    }

    ExponentWindow simplex = ExponentWindow::full(nv);
    for (auto& b : simplex.box) b = {0, D};
    NestedSeries<QRational> Nser;
    try {
        Nser = series_mul(den.as_series(s.vars), s, simplex);
    } catch (const WindowError&) {
        rep.fail("window too small to determine the numerator");
        return out;
    }
    MPoly N(nv);
    for (const auto& [e, c] : Nser.terms) {
        if (std::any_of(e.begin(), e.end(), [](int x) { return x < 0; }) || total(e) != D) {
            rep.fail("numerator is not a polynomial of the expected degree", {{"exp", e}, {"coef", c.to_string()}});
            return out;
        }
        N.terms.emplace(e, c);
    }
    // every candidate numerator monomial must be determined by the window
    Exp e(nv, 0);
    long unknowns = 0;
    bool covered = true;
    auto mono = [&](auto&& self, size_t v, long left) -> void {
        if (v + 1 == nv) {
            e[v] = static_cast<int>(left);
            ++unknowns;
            if (!Nser.window.contains(e)) covered = false;
            return;
        }
        for (long x = 0; x <= left; ++x) {
            e[v] = static_cast<int>(x);
            self(self, v + 1, left - x);
        }
    };
    mono(mono, 0, D);
    out.unknowns = unknowns;
    out.numerator = N;
    if (!covered) {
        rep.fail("window too small to determine the numerator", {{"unknowns", unknowns}});
        return out;
    }
    const auto back = expand_rational(N, den, s.vars, box);
    long checked = 0;
    for_each_point(box, [&](const Exp& x) {
        if (total(x) != ds) return;
        ++checked;
        if (!(s.at(x) == back.at(x)))
            rep.fail("re-expansion differs", {{"exp", x}, {"series", s.at(x).to_string()}, {"rational", back.at(x).to_string()}});
    });
    rep.checked = static_cast<size_t>(checked);
    out.surplus = checked - unknowns;
    out.expression = "(" + mpoly_text(N, s.vars) + ") / (" + mpoly_text(den, s.vars) + ")";
    if (rep.pass) rep.detail = std::to_string(unknowns) + " numerator coefficients, " + std::to_string(out.surplus) + " surplus checks";
    return out;
}

Reconstruction reconstruct_spin_one_pair(Straightener& st, const ExponentWindow& window) {
    const EvalModule m = make_spin_module(2);
    const auto ms = OrderedMultiset::uniform(2);
    const auto Wv = weight_vector(m, ms, window, st);
    NestedSeries<QRational> s(Wv.vars);
    s.window = Wv.window;
    s.support = Wv.support;
    for (const auto& [e, c] : Wv.terms)
        if (!c[2].is_zero()) s.add(e, c[2]);
    const size_t N = 3, z = 2;
    MPoly den = MPoly::constant(N, 1);
    for (size_t i = 0; i < 2; ++i)
        for (int k : {0, 2, -2}) den = den * linear(N, i, 1, z, -QRational::q(k));
    den = den * linear(N, 0, QRational::q(1), 1, -QRational::q(-1));
    // verification box: the t window with z fixed by homogeneity
    ExponentWindow box = ExponentWindow::full(N);
    long zmax = 0;
    for (size_t i = 0; i < 2; ++i) {
        box.box[i] = window.box[i];
        if (!window.box[i].hi_finite()) box.box[i].hi = 6;
        zmax -= box.box[i].lo;
    }
    box.box[z] = {0, zmax};
    return rational_reconstruct(s, den, box);
}

}  // namespace wf
