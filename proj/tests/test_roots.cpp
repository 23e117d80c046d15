#include "wf/roots.hpp"

#include <doctest.h>

#include <random>

using namespace wf;

namespace {
AffineRoot R(std::initializer_list<int> v) { return AffineRoot(v); }
}  // namespace

TEST_CASE("affine cartan data") {
    auto a1 = AffineCartan::parse("A1~");
    CHECK(a1.a == std::vector<std::vector<int>>{{2, -2}, {-2, 2}});
    CHECK(a1.form(a1.delta(), a1.simple(1)) == 0);
    auto a2 = AffineCartan::parse("A2~");
    CHECK(a2.a[0][1] == -1);
    CHECK(a2.a[2][0] == -1);
    CHECK_THROWS(AffineCartan::parse("B2~"));

    auto bad = a1;
    bad.a[0][1] = -1;
    CHECK_THROWS(bad.validate());
    bad = a2;
    bad.marks = {1, 1, 2};
    CHECK_THROWS(bad.validate());
}

TEST_CASE("reflections") {
    auto a1 = AffineCartan::untwisted_A(1);
    CHECK(a1.reflect(1, R({1, 0})) == R({1, 2}));  // delta + alpha_1
    CHECK(a1.reflect(0, R({1, 0})) == R({-1, 0}));
    CHECK(a1.reflect(1, a1.delta()) == a1.delta());
    CHECK(root_text(R({1, 2}), a1) == "delta+a1");
    CHECK(root_text(R({2, 1}), a1) == "2delta-a1");

    std::mt19937 rng(7);
    for (int r : {1, 2, 3}) {
        auto c = AffineCartan::untwisted_A(r);
        std::uniform_int_distribution<int> coef(-4, 4), idx(0, r);
        for (int trial = 0; trial < 100; ++trial) {
            AffineRoot x(c.size()), y(c.size());
            for (auto& v : x) v = coef(rng);
            for (auto& v : y) v = coef(rng);
            const int i = idx(rng);
            CHECK(c.form(c.reflect(i, x), c.reflect(i, y)) == c.form(x, y));
            CHECK(c.reflect(i, c.reflect(i, x)) == x);
        }
    }
}

TEST_CASE("A1 ladders") {
    NormalOrdering ord(AffineCartan::untwisted_A(1), {0, 1}, 4);
    CHECK(ord.forward() == std::vector<AffineRoot>{R({0, 1}), R({1, 2}), R({2, 3}), R({3, 4})});
    CHECK(ord.backward()[0] == R({1, 0}));  // delta - alpha_1
    CHECK(ord.backward()[1] == R({2, 1}));  // 2 delta - alpha_1
    CHECK(ord.translation() == std::vector<long>{2});

    NormalOrdering empty(AffineCartan::untwisted_A(1), {0, 1}, 0);
    CHECK(empty.forward().empty());
    CHECK(empty.backward().empty());

    CHECK_THROWS(NormalOrdering(AffineCartan::untwisted_A(1), {1, 0}, 4));
    CHECK_THROWS(NormalOrdering(AffineCartan::untwisted_A(1), {0}, 4));
}

TEST_CASE("A2 words") {
    auto a2 = AffineCartan::untwisted_A(2);
    NormalOrdering ord(a2, {0, 1, 2, 1}, 12);
    for (long c : ord.translation()) CHECK(c > 0);
    CHECK_THROWS(NormalOrdering(a2, {0, 1, 2}, 6));  // Coxeter element, not a translation
    CHECK_THROWS(NormalOrdering(a2, {0, 1, 1, 2}, 6));
}

TEST_CASE("circular order") {
    NormalOrdering ord(AffineCartan::untwisted_A(1), {0, 1}, 8);
    const AffineRoot a1 = R({0, 1}), d = R({1, 1});
    CHECK(ord.circular_compare(a1, d) == CircularRelation::Precedes);
    CHECK(ord.circular_compare(d, negate(a1)) == CircularRelation::Precedes);
    CHECK(ord.circular_compare(a1, a1) == CircularRelation::Incomparable);
    CHECK(ord.circular_compare(a1, negate(a1)) == CircularRelation::Incomparable);
    CHECK_THROWS_AS(ord.circular_compare(a1, R({40, 41})), std::out_of_range);

    // rule against the segment definition, on every pair of roots of height <= 9
    for (const auto& word : {std::vector<int>{0, 1}}) {
        NormalOrdering o(AffineCartan::untwisted_A(1), word, 10);
        std::vector<AffineRoot> roots;
        for (const auto* lad : {&o.forward(), &o.backward()})
            for (const auto& g : *lad)
                if (height(g) <= 9) roots.push_back(g);
        for (int k = 1; k <= 4; ++k) roots.push_back(R({k, k}));
        const size_t np = roots.size();
        for (size_t i = 0; i < np; ++i) roots.push_back(negate(roots[i]));
        for (const auto& x : roots)
            for (const auto& y : roots) {
                const auto rel = o.circular_compare(x, y);
                CHECK(rel == circular_by_segments(o, x, y));
                const auto back = o.circular_compare(y, x);
                if (rel == CircularRelation::Precedes) CHECK(back == CircularRelation::Follows);
            }
    }
    NormalOrdering o2(AffineCartan::untwisted_A(2), {0, 1, 2, 1}, 12);
    std::vector<AffineRoot> roots;
    for (const auto* lad : {&o2.forward(), &o2.backward()})
        for (const auto& g : *lad)
            if (height(g) <= 6) roots.push_back(g);
    const size_t np = roots.size();
    for (size_t i = 0; i < np; ++i) roots.push_back(negate(roots[i]));
    for (const auto& x : roots)
        for (const auto& y : roots) CHECK(o2.circular_compare(x, y) == circular_by_segments(o2, x, y));
}

TEST_CASE("ord1") {
    NormalOrdering a1(AffineCartan::untwisted_A(1), {0, 1}, 20);
    auto rep = verify_ord1(a1, 8);
    CHECK(rep.pass);
    CHECK(rep.checked > 50);
    NormalOrdering a2(AffineCartan::untwisted_A(2), {0, 1, 2, 1}, 40);
    CHECK(verify_ord1(a2, 8).pass);

    // count too small
    NormalOrdering shortl(AffineCartan::untwisted_A(1), {0, 1}, 2);
    CHECK_FALSE(verify_ord1(shortl, 8).pass);

    // move alpha_1 behind delta
    auto scrambled = a1;
    scrambled.override_key(R({0, 1}), OrderKey{2, 5});
    auto bad = verify_ord1(scrambled, 8);
    CHECK_FALSE(bad.pass);
    CHECK(bad.detail == "ord1 violated");
}

TEST_CASE("finite roots") {
    CHECK(finite_positive_roots(AffineCartan::untwisted_A(1)).size() == 1);
    CHECK(finite_positive_roots(AffineCartan::untwisted_A(2)).size() == 3);
    CHECK(finite_positive_roots(AffineCartan::untwisted_A(3)).size() == 6);
}

TEST_CASE("shift correspondence") {
    auto a1 = AffineCartan::untwisted_A(1);
    for (int c : {0, 1, 2, 3}) {
        auto rep = verify_shift_correspondence(a1, {0, 1}, c, 6);
        CHECK_MESSAGE(rep.pass, rep.to_json().dump());
        CHECK(rep.checked > 20);
    }
    auto a2 = AffineCartan::untwisted_A(2);
    for (int c : {1, 2, 3}) CHECK(verify_shift_correspondence(a2, {0, 1, 2, 1}, c, 6).pass);
}
