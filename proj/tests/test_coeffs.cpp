#include <doctest.h>

#include "wf/series.hpp"

using namespace wf;

TEST_CASE("qrational canonical form") {
    QRational a = QRational(1) / (QRational(1) - qpow(-2));
    QRational b = QRational(1) / (QRational(1) - qpow(2));
    CHECK(a + b == QRational(1));
    QRational c(LaurentPoly::parse("q^2-1"), LaurentPoly::parse("q-1"));
    CHECK(c == QRational(LaurentPoly::parse("q+1")));
    QRational d(LaurentPoly::parse("2*q^3-2*q"), LaurentPoly::parse("-4*q^2-4"));
    CHECK(d.to_string() == "-q^3+q/2*q^2+2");
    CHECK(QRational::parse(d.to_string()) == d);
    CHECK(QRational::parse("(q-q^-1)/(q^2+1)") == (qpow(1) - qpow(-1)) / (qpow(2) + 1));
    CHECK(d.at_one() == QRational(0));
    CHECK((qpow(2) + 1).at_one() == QRational(2));
    CHECK_THROWS(QRational(1) / QRational(0));
}

TEST_CASE("laurent gcd and division") {
    auto a = LaurentPoly::parse("q^4-1");
    auto b = LaurentPoly::parse("q^3-q");
    CHECK(LaurentPoly::gcd(a, b) == LaurentPoly::parse("q^2-1"));
    CHECK(LaurentPoly::div_exact(a, LaurentPoly::parse("q-1")) == LaurentPoly::parse("q^3+q^2+q+1"));
    CHECK_THROWS(LaurentPoly::div_exact(a, LaurentPoly::parse("q-2")));
    CHECK(LaurentPoly::parse("3*q^-2-q").to_string() == "-q+3*q^-2");
}

TEST_CASE("series_mul natural window") {
    NestedSeries<QRational> a({"t"}), b({"t"});
    for (int k = 1; k <= 3; ++k) a.add({-k}, 1);
    a.support.box[0] = {-kInf, -1};
    a.window.box[0] = {-3, kInf};
    a.normalize_window();
    b = (MPoly::constant(1, 1) - MPoly::var(1, 0, -1)).as_series({"t"});
    auto c = series_mul(a, b);
    CHECK(c.window.box[0].lo == -3);
    CHECK(c.terms.size() == 1);
    CHECK(c.at({-1}) == QRational(1));
    CHECK(c.at({-3}) == QRational(0));
    CHECK_THROWS_AS(c.at({-4}), WindowError);
    CHECK_THROWS_AS(series_mul(a, b, ExponentWindow{{{-5, kInf}}}), WindowError);
}

TEST_CASE("expand_rational geometric") {
    // 1/(t1 - t2) with t1 >> t2
    MPoly den = MPoly::var(2, 0) - MPoly::var(2, 1);
    auto s = expand_rational(MPoly::constant(2, 1), den, {"t1", "t2"}, ExponentWindow::lower({-6, -kInf}));
    CHECK(s.at({-1, 0}) == QRational(1));
    CHECK(s.at({-3, 2}) == QRational(1));
    CHECK(s.at({-6, 5}) == QRational(1));
    CHECK(s.terms.size() == 6);
    auto back = series_mul(s, den.as_series({"t1", "t2"}), ExponentWindow::lower({-5, -kInf}));
    CHECK(back.terms.size() == 1);
    CHECK_THROWS_AS(expand_rational(MPoly::constant(2, 1), MPoly(2), {"a", "b"}, ExponentWindow::full(2)),
                    ExpansionError);
    CHECK_THROWS_AS(expand_rational(MPoly::constant(2, 1), den, {"a", "b"}, ExponentWindow::full(2)),
                    ExpansionError);
}

TEST_CASE("expand_rational q-binomial") {
    // (q^2 - q^-2 x)/(1 - x) in x -> 0 means leading term 1 at x^0 ... region x large; use x^-1
    // check 1/(1-q^-2 y) with y=t^-1: coefficient of t^-k is q^-2k
    MPoly den = MPoly::constant(1, 1) - MPoly::var(1, 0, -1, qpow(-2));
    auto s = expand_rational(MPoly::constant(1, 1), den, {"t"}, ExponentWindow::lower({-4}));
    for (int k = 0; k <= 4; ++k) CHECK(s.at({-k}) == qpow(-2 * k));
}
