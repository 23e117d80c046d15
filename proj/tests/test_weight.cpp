#include <doctest.h>

#include "wf/weight.hpp"

using namespace wf;

namespace {
AlgebraElement W(const std::string& s, const QRational& c = 1) { return AlgebraElement::word(parse_word(s), c); }
const QRational qm2 = qpow(-2);
}  // namespace

TEST_CASE("universal weight small values") {
    Straightener st;
    auto w1 = universal_weight(OrderedMultiset::uniform(1), ExponentWindow{{{-5, 3}}}, st);
    for (int k = 1; k <= 5; ++k) CHECK(w1.at({-k}) == W("f[" + std::to_string(k) + "]"));
    for (int k = 0; k <= 3; ++k) CHECK(w1.at({k}).is_zero());

    auto w2 = universal_weight(OrderedMultiset::uniform(2), default_weight_window(2), st);
    CHECK(w2.at({-1, -1}) == W("f[1] f[1]"));
    CHECK(w2.at({-2, 0}) == W("f[1] f[1]", qm2 - 1));
    CHECK(w2.at({-3, 1}) == W("f[1] f[1]", qm2 * (qm2 - 1)));

    auto w0 = universal_weight(OrderedMultiset::uniform(0), ExponentWindow::full(0), st);
    CHECK(w0.at({}) == AlgebraElement(1));
}

TEST_CASE("closed form pair spot values") {
    Straightener st;
    auto c = closed_form_sl2_pair(default_weight_window(2), st);
    CHECK(c.at({-1, -1}) == W("f[1] f[1]"));
    CHECK(c.at({-2, 0}) == W("f[1] f[1]", qm2 - 1));
    CHECK(c.at({-3, 1}) == W("f[1] f[1]", qm2 * (qm2 - 1)));
    CHECK(check_closed_form(default_weight_window(2), st).pass);
}

TEST_CASE("prefactor A") {
    CHECK(prefactor_A(OrderedMultiset::uniform(1)).terms.size() == 1);
    auto A2 = prefactor_A(OrderedMultiset::uniform(2));
    CHECK(A2.terms.size() == 2);
    CHECK(A2.terms.at({-1, 0}) == QRational(1));
    CHECK(A2.terms.at({0, -1}) == -qpow(2));
}

TEST_CASE("symmetrized weight") {
    Straightener st;
    ExponentWindow box{{{-4, 2}, {-4, 2}}};
    auto wb = symmetrized_weight(OrderedMultiset::uniform(2), box, st);
    CHECK(wb.at({-2, -1}) == W("f[1] f[1]", qpow(2)));
    CHECK(check_antisymmetry(2, -5, 2, st).pass);
}

TEST_CASE("weight support and functoriality") {
    Straightener st;
    CHECK(check_support(2, default_weight_window(2), st).pass);
    CHECK(check_support(3, default_weight_window(3), st).pass);
    OrderedMultiset a = OrderedMultiset::uniform(2), b{{"x", "y"}, {4, 4}};
    auto wa = universal_weight(a, default_weight_window(2), st);
    auto wbb = universal_weight(b, default_weight_window(2), st);
    CHECK(wa.terms == wbb.terms);
    CHECK(wbb.vars == std::vector<std::string>{"tx", "ty"});
}

TEST_CASE("antisymmetry n=3") {
    Straightener st;
    auto r = check_antisymmetry(3, -5, 2, st);
    INFO(r.to_json().dump());
    CHECK(r.pass);
    CHECK(r.checked > 300);
    auto wb = symmetrized_weight(OrderedMultiset::uniform(3), ExponentWindow{{{-4, 0}, {-4, 0}, {-4, 0}}}, st);
    CHECK(!wb.at({-3, -2, -1}).is_zero());
}
