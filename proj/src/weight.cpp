#include "wf/weight.hpp"

#include <algorithm>
#include <numeric>

namespace wf {

OrderedMultiset OrderedMultiset::uniform(size_t n, int color) {
    OrderedMultiset ms;
    for (size_t i = 1; i <= n; ++i) {
        ms.ids.push_back(std::to_string(i));
        ms.colors.push_back(color);
    }
    return ms;
}

std::vector<std::string> OrderedMultiset::vars() const {
    std::vector<std::string> v;
    for (const auto& id : ids) v.push_back("t" + id);
    return v;
}

bool OrderedMultiset::single_color() const {
    return std::adjacent_find(colors.begin(), colors.end(), std::not_equal_to<>()) == colors.end();
}

ExponentWindow default_weight_window(size_t n) {
    ExponentWindow w = ExponentWindow::full(n);
    for (size_t j = 0; j < n; ++j) w.box[j] = {-6, j == 0 ? -1 : static_cast<long>(j) + 3};
    return w;
}

namespace {

SupportBound weight_support(size_t n) {
    SupportBound s = SupportBound::any(n);
    if (n == 0) return s;
    s.box[0].hi = -1;
    s.add_sum(std::vector<char>(n, 1), {-kInf, -static_cast<long>(n)});
    return s;
}

}  // namespace

WeightSeries universal_weight(const OrderedMultiset& ms, const ExponentWindow& window, Straightener& st) {
    if (!ms.single_color()) throw std::invalid_argument("universal_weight: quantum engine is rank 1 only");
    const size_t n = ms.size();
    if (window.size() != n) throw std::invalid_argument("universal_weight: window arity mismatch");
    WeightSeries W(ms.vars());
    W.support = weight_support(n);
    W.window = window;
    if (n == 0) {
        W.add({}, AlgebraElement(1));
        return W;
    }
    // modes a_i = -e_i
    std::vector<long> amin(n), amax(n);
    for (size_t i = 0; i < n; ++i) {
        if (!window.box[i].lo_finite()) throw WindowError("universal_weight: window needs lower bounds");
        amax[i] = -window.box[i].lo;
    }
    const long total_max = std::accumulate(amax.begin(), amax.end(), 0L);
    for (size_t i = 0; i < n; ++i) {
        amin[i] = static_cast<long>(n) - (total_max - amax[i]);
        if (window.box[i].hi_finite()) amin[i] = std::max(amin[i], -window.box[i].hi);
    }
    amin[0] = std::max(amin[0], 1L);

    // suffix maxima for pruning on sum >= n
    std::vector<long> rest(n + 1, 0);
    for (size_t i = n; i-- > 0;) rest[i] = rest[i + 1] + amax[i];
    Word w(n);
    Exp e(n);
    auto rec = [&](auto&& self, size_t i, long sum) -> void {
        if (i == n) {
            if (sum < static_cast<long>(n)) return;
            AlgebraElement c = st.project(w);
            if (!c.is_zero()) W.add(e, c);
            return;
        }
        for (long a = amin[i]; a <= amax[i]; ++a) {
            if (sum + a + rest[i + 1] < static_cast<long>(n)) continue;
            w[i] = Gen::f(static_cast<int>(a));
            e[i] = static_cast<int>(-a);
            self(self, i + 1, sum + a);
        }
    };
    rec(rec, 0, 0);
    W.normalize_window();
    return W;
}

WeightSeries closed_form_sl2_pair(const ExponentWindow& window, Straightener& st) {
    const std::vector<std::string> vars{"t1", "t2"};
    for (const auto& b : window.box)
        if (!b.lo_finite()) throw WindowError("closed_form_sl2_pair: window needs lower bounds");

    // f+(t1) f+(t2)
    WeightSeries prod(vars);
    prod.window = window;
    prod.support.box = {{-kInf, -1}, {-kInf, -1}};
    for (int a = 1; a <= -window.box[0].lo; ++a)
        for (int b = 1; b <= -window.box[1].lo; ++b)
            if (window.contains({-a, -b})) prod.add({-a, -b}, st.separate(Word{Gen::f(a), Gen::f(b)}));

    // (q - q^-1) t1 / (q t1 - q^-1 t2)
    const QRational qq = qpow(1) - qpow(-1);
    MPoly num = MPoly::var(2, 0, 1, qq);
    MPoly den = MPoly::var(2, 0, 1, qpow(1)) - MPoly::var(2, 1, 1, qpow(-1));

    SupportBound sq = SupportBound::any(2);
    sq.box = {{-kInf, -2}, Interval::point(0)};
    auto needs = factor_needs(rational_support(num, den), sq, window);
    if (!needs) return prod;
    auto ratio = expand_rational(num, den, vars, ExponentWindow{needs->a});

    // f+(t1)^2
    WeightSeries square(vars);
    square.support = sq;
    square.window = ExponentWindow{needs->b};
    for (long m = 2; m <= -needs->b[0].lo; ++m) {
        AlgebraElement c;
        for (long a = 1; a < m; ++a) c += st.separate(Word{Gen::f(static_cast<int>(a)), Gen::f(static_cast<int>(m - a))});
        square.add({static_cast<int>(-m), 0}, c);
    }
    square.normalize_window();
    auto second = scale_series(ratio, square, window);
    auto out = series_add(prod, second, -1);
    out.support.box = {{-kInf, -1}, {-kInf, kInf}};
    return out;
}

MPoly prefactor_A(const OrderedMultiset& ms) {
    if (!ms.single_color()) throw std::invalid_argument("prefactor_A: rank 1 only");
    const size_t n = ms.size();
    MPoly A = MPoly::constant(n, 1);
    for (size_t k = 0; k < n; ++k)
        for (size_t l = k + 1; l < n; ++l) A = A * (MPoly::var(n, k, -1) - MPoly::var(n, l, -1, qpow(2)));
    return A;
}

WeightSeries symmetrized_weight(const OrderedMultiset& ms, const ExponentWindow& window, Straightener& st) {
    const size_t n = ms.size();
    auto A = prefactor_A(ms).as_series(ms.vars());
    auto needs = factor_needs(A.support, weight_support(n), window);
    if (!needs) {
        WeightSeries z(ms.vars());
        z.window = window;
        return z;
    }
    auto W = universal_weight(ms, ExponentWindow{needs->b}, st);
    return scale_series(A, W, window);
}

Report check_closed_form(const ExponentWindow& window, Straightener& st) {
    Report r{"closed-form"};
    auto ms = OrderedMultiset::uniform(2);
    auto W = universal_weight(ms, window, st);
    auto C = closed_form_sl2_pair(window, st);
    for_each_point(window, [&](const Exp& e) {
        ++r.checked;
        if (W.at(e) != C.at(e))
            r.fail("coefficients differ", {{"exp", e}, {"universal", W.at(e).to_string()}, {"closed", C.at(e).to_string()}});
    });
    return r;
}

Report check_antisymmetry(size_t n, int lo, int hi, Straightener& st) {
    Report r{"antisymmetry n=" + std::to_string(n)};
    auto ms = OrderedMultiset::uniform(n);
    ExponentWindow box = ExponentWindow::full(n);
    for (auto& b : box.box) b = {lo, hi};
    auto Wb = symmetrized_weight(ms, box, st);
    // regularity: only exponents <= -1 survive
    for_each_point(box, [&](const Exp& e) {
        if (std::all_of(e.begin(), e.end(), [](int x) { return x <= -1; })) return;
        ++r.checked;
        if (!Wb.at(e).is_zero()) r.fail("nonzero coefficient at a nonnegative exponent", {{"exp", e}});
    });
    std::vector<size_t> perm(n);
    ExponentWindow neg = box;
    for (auto& b : neg.box) b.hi = std::min<long>(b.hi, -1);
    for_each_point(neg, [&](const Exp& e) {
        std::iota(perm.begin(), perm.end(), 0);
        const AlgebraElement base = Wb.at(e);
        while (std::next_permutation(perm.begin(), perm.end())) {
            int inv = 0;
            for (size_t i = 0; i < n; ++i)
                for (size_t j = i + 1; j < n; ++j) inv += perm[i] > perm[j];
            Exp pe(n);
            for (size_t i = 0; i < n; ++i) pe[i] = e[perm[i]];
            ++r.checked;
            const AlgebraElement want = inv % 2 ? -base : base;
            if (Wb.at(pe) != want)
                r.fail("permuted coefficient is not sign-weighted", {{"exp", e}, {"permuted", pe}});
        }
    });
    return r;
}

Report check_support(size_t n, const ExponentWindow& window, Straightener& st) {
    Report r{"support n=" + std::to_string(n)};
    auto W = universal_weight(OrderedMultiset::uniform(n), window, st);
    for (const auto& [e, c] : W.terms) {
        ++r.checked;
        const long sum = std::accumulate(e.begin(), e.end(), 0L);
        if ((n > 0 && e[0] > -1) || sum > -static_cast<long>(n)) r.fail("term outside expected support", {{"exp", e}});
    }
    return r;
}

}  // namespace wf
