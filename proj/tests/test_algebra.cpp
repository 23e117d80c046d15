#include <doctest.h>

#include "wf/algebra.hpp"

#include <random>

using namespace wf;

namespace {
AlgebraElement W(const std::string& s, const QRational& c = 1) { return AlgebraElement::word(parse_word(s), c); }
const QRational qm2 = qpow(-2);
}  // namespace

TEST_CASE("word syntax") {
    Word w = parse_word("f[-1] f[2] psi[0]");
    CHECK(w.size() == 3);
    CHECK(word_text(w) == "f[-1] f[2] psi[0]");
    CHECK(principal_degree(parse_word("f[2] f[-1]")) == 1);
    CHECK(principal_degree(parse_word("psi[3]")) == 3);
    CHECK(principal_degree(Word{}) == 0);
    CHECK_THROWS(parse_word("psi[-1]"));
    CHECK_THROWS(parse_word("g[1]"));
    CHECK_THROWS(parse_word("f[1"));
}

TEST_CASE("ff rule values") {
    CHECK(straighten_ff(1, 0) == W("f[0] f[1]", qm2));
    CHECK(straighten_ff(2, 0) == W("f[0] f[2]", qm2) + W("f[1] f[1]", qm2 - 1));
    CHECK(straighten_ff(0, 1) == W("f[0] f[1]"));
    // two recurrence steps
    auto x = straighten_ff(3, -1);
    CHECK(x == W("f[-1] f[3]", qm2) + W("f[0] f[2]", qpow(-4) - 1) + W("f[1] f[1]", qm2 * (qm2 - 1)));
}

TEST_CASE("psi f rule values") {
    CHECK(straighten_psif(0, 5) == W("f[5] psi[0]", qm2));
    CHECK(straighten_psif(1, 0) == W("f[0] psi[1]", qm2) + W("f[1] psi[0]", qpow(-4) - 1));
    CHECK(straighten_psif(2, -1) ==
          W("f[-1] psi[2]", qm2) + W("f[0] psi[1]", qpow(-4) - 1) + W("f[1] psi[0]", qpow(-6) - qm2));
}

TEST_CASE("separate and project") {
    Straightener s;
    CHECK(s.separate(parse_word("f[1] f[0] f[1]")) == W("f[0] f[1] f[1]", qm2));
    CHECK(s.separate(parse_word("psi[1] f[1]")) == W("f[1] psi[1]", qm2) + W("f[2] psi[0]", qpow(-4) - 1));
    CHECK(s.separate(parse_word("f[0] f[3] psi[1]")) == W("f[0] f[3] psi[1]"));
    CHECK(s.project(parse_word("f[1] f[0]")).is_zero());
    CHECK(s.project(parse_word("f[2] f[0]")) == W("f[1] f[1]", qm2 - 1));
    CHECK(s.project(parse_word("f[1] f[1]")) == W("f[1] f[1]"));
    CHECK(counit(Word{}) == QRational(1));
    CHECK(counit(parse_word("f[3]")).is_zero());
    CHECK(counit(parse_word("psi[0] psi[0]")) == QRational(1));
    CHECK(counit(parse_word("psi[1]")).is_zero());
}

TEST_CASE("step cap is reported") {
    Straightener s(3);
    CHECK_THROWS_AS(s.separate(parse_word("f[4] f[3] f[2] f[1] f[0] f[-1]")), StraightenError);
}

TEST_CASE("coproduct on f-words") {
    auto d = coproduct_drinfeld(parse_word("f[1]"), {2});
    CHECK(d.size() == 4);
    CHECK(d.count({Word{}, parse_word("f[1]")}) == 1);
    CHECK(d.count({parse_word("f[-1]"), parse_word("psi[2]")}) == 1);
    CHECK(coproduct_drinfeld(Word{}, {}).size() == 1);
    CHECK(coproduct_drinfeld(parse_word("f[1] f[1]"), {1, 1}).size() == 9);
    CHECK_THROWS(coproduct_drinfeld(parse_word("f[1]"), {-1}));
}

namespace {
Word random_word(std::mt19937& rng, int maxlen, bool with_psi) {
    std::uniform_int_distribution<int> len(0, maxlen), mode(-3, 3), kind(0, with_psi ? 3 : 0);
    Word w;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) {
        if (kind(rng) == 3)
            w.push_back(Gen::psi(std::abs(mode(rng))));
        else
            w.push_back(Gen::f(mode(rng)));
    }
    return w;
}
}  // namespace

TEST_CASE("straightening properties on random words") {
    std::mt19937 rng(7);
    Straightener left, right(1000000, Straightener::Strategy::Rightmost);
    for (int trial = 0; trial < 200; ++trial) {
        Word w = random_word(rng, 5, true);
        auto a = left.separate(w);
        // confluence of the two strategies
        CHECK(a == right.separate(w));
        for (const auto& [nw, c] : a.terms()) {
            CHECK(is_canonical(nw));
            CHECK(is_separated(nw));
            CHECK(principal_degree(nw) == principal_degree(w));
        }
        auto p = left.project(w);
        CHECK(left.project(p) == p);
        CHECK(counit(p) == counit(w));
        // P(f_- x) = 0
        for (int b = -2; b <= 0; ++b) CHECK(left.project(concat({Gen::f(b)}, w)).is_zero());
        for (const auto& [nw, c] : a.terms())
            CHECK(left.project(nw).terms().size() <= 1);
    }
}

TEST_CASE("truncation: P(x f[-n]) vanishes beyond the degree") {
    Straightener s;
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        Word w = random_word(rng, 3, false);
        const int deg = principal_degree(w);
        for (int n = std::max(1, deg + 1); n <= deg + 3; ++n) CHECK(s.project(concat(w, {Gen::f(-n)})).is_zero());
    }
}

TEST_CASE("projection minus is the complement on separated words") {
    Straightener s;
    AlgebraElement x = W("f[-1] f[0] f[2]") + W("f[-2] psi[0]") + W("f[0]", 3);
    CHECK(s.project_minus(x) == W("f[-2]") + W("f[0]", 3));
}

TEST_CASE("json round trip") {
    AlgebraElement x = W("f[1] f[1]", qm2 - 1) + W("f[2] psi[0]", 5);
    CHECK(AlgebraElement::from_json(x.to_json()) == x);
}
