#include "wf/qrational.hpp"

#include <stdexcept>

namespace wf {

QRational::QRational(const LaurentPoly& num, const LaurentPoly& den) : num_(num), den_(den) {
    if (den_.is_zero()) throw std::domain_error("QRational: zero denominator");
    canonicalize();
}

void QRational::canonicalize() {
    if (num_.is_zero()) {
        den_ = 1;
        return;
    }
    const int shift = den_.low();
    if (shift != 0) {
        den_ = den_.shifted(-shift);
        num_ = num_.shifted(-shift);
    }
    if (!den_.is_monomial()) {
        LaurentPoly g = LaurentPoly::gcd(num_, den_);
        if (!g.is_one() && g.degree_span() > 0) {
            num_ = LaurentPoly::div_exact(num_, g);
            den_ = LaurentPoly::div_exact(den_, g);
        }
    }
    mpz_class cn = num_.content(), cd = den_.content(), c;
    mpz_gcd(c.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
    if (den_.leading() < 0) c = -c;
    if (c != 1) {
        num_ = num_.divided_exact(c);
        den_ = den_.divided_exact(c);
    }
}

QRational QRational::operator-() const {
    QRational r = *this;
    r.num_ = -r.num_;
    return r;
}

QRational operator+(const QRational& a, const QRational& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_.is_one() && b.den_.is_one()) return QRational(a.num_ + b.num_);
    if (a.den_ == b.den_) return QRational(a.num_ + b.num_, a.den_);
    return QRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

QRational operator*(const QRational& a, const QRational& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.den_.is_one() && b.den_.is_one()) return QRational(a.num_ * b.num_);
    return QRational(a.num_ * b.num_, a.den_ * b.den_);
}

QRational QRational::inverse() const {
    if (is_zero()) throw std::domain_error("QRational: division by zero");
    return QRational(den_, num_);
}

QRational operator/(const QRational& a, const QRational& b) {
    if (b.is_zero()) throw std::domain_error("QRational: division by zero");
    if (a.is_zero()) return {};
    return QRational(a.num_ * b.den_, a.den_ * b.num_);
}

bool QRational::operator<(const QRational& o) const {
    if (den_ != o.den_) return den_ < o.den_;
    return num_ < o.num_;
}

mpq_class QRational::eval(const mpq_class& q) const {
    if (q == 0 && (num_.low() < 0 || den_.low() < 0))
        throw std::domain_error("QRational::eval: q = 0 is a pole");
    mpq_class d = den_.eval(q);
    if (d == 0) throw std::domain_error("QRational::eval: denominator vanishes at " + q.get_str());
    return num_.eval(q) / d;
}

QRational QRational::at_one() const {
    mpq_class v = eval(1);
    if (v == 0) return {};
    return QRational(LaurentPoly::monomial(v.get_num(), 0), LaurentPoly::monomial(v.get_den(), 0));
}

std::string QRational::to_string() const { return num_.to_string() + "/" + den_.to_string(); }

std::string QRational::pretty() const {
    if (den_.is_one()) return num_.to_string();
    auto wrap = [](const LaurentPoly& p) {
        std::string s = p.to_string();
        return p.is_monomial() && s.find_first_of("+-", 1) == std::string::npos ? s : "(" + s + ")";
    };
    return wrap(num_) + "/" + wrap(den_);
}

QRational QRational::parse(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return QRational(LaurentPoly::parse(s));
    std::string a = s.substr(0, slash), b = s.substr(slash + 1);
    auto strip = [](std::string t) {
        while (!t.empty() && t.front() == ' ') t.erase(t.begin());
        while (!t.empty() && t.back() == ' ') t.pop_back();
        if (t.size() >= 2 && t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
        return t;
    };
    return QRational(LaurentPoly::parse(strip(a)), LaurentPoly::parse(strip(b)));
}

}  // namespace wf
