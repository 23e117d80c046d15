#include "wf/modules.hpp"

#include <doctest.h>

using namespace wf;

namespace {

QRational q(int e) { return QRational::q(e); }

Vec vec_at(const ModuleSeries& s, const Exp& e) {
    auto it = s.terms.find(e);
    return it == s.terms.end() ? Vec{} : it->second;
}

}  // namespace

TEST_CASE("rational function expansions") {
    RationalFn g{{1}, {1, -1}};  // 1/(1-x)
    CHECK(g.at_zero(4) == Vec{1, 1, 1, 1});
    CHECK(g.at_infinity(3) == Vec{0, -1, -1});
    RationalFn h{{q(1), -q(-1)}, {1, -1}};
    CHECK(h.at_zero(3) == Vec{q(1), q(1) - q(-1), q(1) - q(-1)});
    CHECK(h.at_infinity(2) == Vec{q(-1), q(-1) - q(1)});
}

TEST_CASE("spin-half tables") {
    const EvalModule m = make_spin_module(1);
    CHECK(m.dim == 2);
    // f[n] -> z^n F, e[n] -> z^n E, psi+[0] -> K, psi+[n>0] -> z^n (K - K^-1)
    for (int n = -3; n <= 3; ++n) {
        CHECK(m.op(ModeOp::F, n) == Matrix{{0, 0}, {1, 0}});
        CHECK(m.op(ModeOp::E, n) == Matrix{{0, 1}, {0, 0}});
    }
    CHECK(m.op(ModeOp::PsiPlus, 0) == Matrix{{q(1), 0}, {0, q(-1)}});
    for (int n = 1; n <= 3; ++n) CHECK(m.op(ModeOp::PsiPlus, n) == Matrix{{q(1) - q(-1), 0}, {0, q(-1) - q(1)}});
    CHECK(m.op(ModeOp::PsiPlus, -1) == Matrix{{0, 0}, {0, 0}});
    CHECK(m.op(ModeOp::PsiMinus, 0) == Matrix{{q(-1), 0}, {0, q(1)}});
    CHECK(m.apply(ModeOp::E, 2, m.top()) == Vec{0, 0});
}

TEST_CASE("shipped modules satisfy the relations") {
    for (const auto& name : shipped_modules()) {
        auto rep = validate_relations(module_by_name(name), 3);
        CHECK_MESSAGE(rep.pass, rep.to_json().dump());
        CHECK(rep.checked > 100);
    }
    auto empty = validate_relations(make_spin_module(1), -1);
    CHECK(empty.pass);
    CHECK(empty.checked == 0);
    CHECK(empty.detail.find("warning") != std::string::npos);
}

TEST_CASE("tampered module fails at the ef relation") {
    EvalModule m = make_spin_module(1);
    m.patch = [](ModeOp op, int mode, Matrix& x) {
        if (op == ModeOp::PsiPlus && mode == 1)
            for (auto& row : x)
                for (auto& c : row) c = -c;
    };
    auto rep = validate_relations(m, 3);
    CHECK_FALSE(rep.pass);
    CHECK(rep.first_failure["relation"] == "ef");
    EvalModule m2 = make_spin_module(2);
    m2.e_coef[1] = m2.e_coef[1] * 2;
    auto rep2 = validate_relations(m2, 2);
    CHECK_FALSE(rep2.pass);
    CHECK(rep2.first_failure["relation"] == "ef");
}

TEST_CASE("weight vectors") {
    Straightener st;
    const EvalModule half = make_spin_module(1);
    auto w1 = weight_vector(half, OrderedMultiset::uniform(1), ExponentWindow{{{-6, -1}}}, st);
    for (int k = 1; k <= 6; ++k) CHECK(vec_at(w1, {-k, k}) == Vec{0, 1});
    CHECK(w1.terms.size() == 6);

    auto w2 = weight_vector(half, OrderedMultiset::uniform(2), default_weight_window(2), st);
    CHECK(w2.terms.empty());

    auto w0 = weight_vector(half, OrderedMultiset::uniform(0), ExponentWindow{}, st);
    CHECK(w0.terms.size() == 1);
    CHECK(vec_at(w0, {0}) == half.top());

    // spin one, n = 2, against the closed form applied to the module
    const EvalModule one = make_spin_module(2);
    const auto win = default_weight_window(2);
    auto wv = weight_vector(one, OrderedMultiset::uniform(2), win, st);
    auto cf = closed_form_sl2_pair(win, st);
    size_t compared = 0;
    for_each_point(ExponentWindow{{{-6, -1}, {-6, 4}}}, [&](const Exp& t) {
        const AlgebraElement x = cf.at(t);
        Vec expect(3);
        for (const auto& [w, c] : x.terms()) {
            const Vec r = one.act(w, one.top());
            for (int j = 0; j < 3; ++j) expect[j] += c * r[j];
        }
        Vec got = vec_at(wv, {t[0], t[1], -t[0] - t[1]});
        if (got.empty()) got = Vec(3);
        CHECK(got == expect);
        ++compared;
    });
    CHECK(compared == 66);
    // f[1] f[1] v = (q^-2)... spot value: t^(-2,0) -> (q^-2 - 1) f[1]f[1] v_0 = (q^-2 - 1) q^-2 v_2
    CHECK(vec_at(wv, {-2, 0, 2}) == Vec{0, 0, (q(-2) - 1) * q(-2)});
}

TEST_CASE("factorization through the Drinfeld coproduct") {
    Straightener st;
    const EvalModule half = make_spin_module(1), one = make_spin_module(2);
    for (size_t n : {1u, 2u})
        for (const auto* a : {&half, &one})
            for (const auto* b : {&half, &one}) {
                auto rep = check_factorization(*a, *b, n, default_weight_window(n), st);
                CHECK_MESSAGE(rep.pass, rep.to_json().dump());
                CHECK(rep.checked > 10);
            }
    auto r3 = check_factorization(one, half, 3, default_weight_window(3), st);
    CHECK(r3.pass);
    CHECK(r3.checked > 1000);

    // n = 1 by hand: v1 (x) f+(t) v2 + f+(t) v1 (x) lambda2(t) v2; at t^-1: z2 e_(0,1) + z1 q e_(1,0)
    auto lhs = tensor_weight_vector(half, half, OrderedMultiset::uniform(1), ExponentWindow{{{-3, -1}}}, st);
    CHECK(vec_at(lhs, {-1, 0, 1}) == Vec{0, 1, 0, 0});
    CHECK(vec_at(lhs, {-1, 1, 0}) == Vec{0, 0, q(1), 0});
    CHECK(vec_at(lhs, {-2, 1, 1}) == Vec{0, 0, q(1) - q(-1), 0});

    auto n0 = tensor_weight_vector(half, one, OrderedMultiset::uniform(0), ExponentWindow{}, st);
    CHECK(vec_at(n0, {0, 0}) == Vec{1, 0, 0, 0, 0, 0});

    for (auto variant : {FactorVariant::DroppedRatio, FactorVariant::UninvertedRatio}) {
        auto bad = check_factorization(one, half, 2, default_weight_window(2), st, variant);
        CHECK_FALSE(bad.pass);
    }
}

TEST_CASE("counit: trivial second factor") {
    Straightener st;
    const EvalModule one = make_spin_module(2), triv = make_trivial_module();
    for (size_t n : {1u, 2u, 3u}) {
        const auto ms = OrderedMultiset::uniform(n);
        const auto win = default_weight_window(n);
        auto t = tensor_weight_vector(one, triv, ms, win, st);
        auto w = weight_vector(one, ms, win, st, "z1");
        size_t seen = 0;
        for (const auto& [e, c] : t.terms) {
            CHECK(e.back() == 0);
            Exp f(e.begin(), e.end() - 1);
            CHECK(vec_at(w, f) == c);
            ++seen;
        }
        CHECK(seen == w.terms.size());
    }
}

TEST_CASE("Bethe vectors") {
    Straightener st;
    const EvalModule one = make_spin_module(2);
    for (size_t n : {1u, 2u, 3u}) {
        auto rep = bethe_check(one, n, st);
        CHECK_MESSAGE(rep.pass, rep.to_json().dump());
    }
    CHECK(bethe_check(one, 2, st).checked > 10);
    CHECK_FALSE(bethe_check(one, 2, st, {0, false}).pass);
    auto tiny = bethe_check(one, 2, st, {-2, true});
    CHECK_FALSE(tiny.pass);
    CHECK(tiny.detail == "window too small for stabilization");
}

TEST_CASE("rational reconstruction") {
    Straightener st;
    // z/(t - z)
    const EvalModule half = make_spin_module(1);
    auto w1 = weight_vector(half, OrderedMultiset::uniform(1), ExponentWindow{{{-12, -1}}}, st);
    NestedSeries<QRational> s(w1.vars);
    s.window = w1.window;
    s.support = w1.support;
    for (const auto& [e, c] : w1.terms) s.add(e, c[1]);
    MPoly den = MPoly::var(2, 0) - MPoly::var(2, 1);
    auto r = rational_reconstruct(s, den, ExponentWindow{{{-12, -1}, {0, 12}}});
    CHECK_MESSAGE(r.report.pass, r.report.to_json().dump());
    CHECK(r.numerator.terms.size() == 1);
    CHECK(r.numerator.terms.begin()->first == Exp{0, 1});
    CHECK(r.surplus >= 10);

    auto c = constant_series<QRational>({"t1", "z"}, q(3));
    auto rc = rational_reconstruct(c, MPoly::constant(2, 1), ExponentWindow{{{-3, 3}, {-3, 3}}});
    CHECK(rc.report.pass);
    CHECK(rc.numerator.terms.at(Exp{0, 0}) == q(3));

    auto pair = reconstruct_spin_one_pair(st, default_weight_window(2));
    CHECK_MESSAGE(pair.report.pass, pair.report.to_json().dump());
    CHECK(pair.surplus >= 20);

    // a denominator missing the q t1 = q^-1 t2 pole cannot work
    auto wv = weight_vector(make_spin_module(2), OrderedMultiset::uniform(2), default_weight_window(2), st);
    NestedSeries<QRational> s2(wv.vars);
    s2.window = wv.window;
    s2.support = wv.support;
    for (const auto& [e, x] : wv.terms) s2.add(e, x[2]);
    MPoly d2 = MPoly::constant(3, 1);
    for (size_t i = 0; i < 2; ++i)
        for (int k : {0, 2, -2}) d2 = d2 * (MPoly::var(3, i) - MPoly::var(3, 2, 1, q(k)));
    CHECK_FALSE(rational_reconstruct(s2, d2, ExponentWindow{{{-6, -1}, {-6, 4}, {0, 12}}}).report.pass);
}
