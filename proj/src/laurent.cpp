#include "wf/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace wf {

namespace {

const mpz_class kZero = 0;

using Poly = std::vector<mpz_class>;  // ascending coefficients

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

mpz_class content_of(const Poly& p) {
    mpz_class g = 0;
    for (const auto& c : p) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

Poly primitive(Poly p) {
    mpz_class g = content_of(p);
    if (g == 0) return {};
    if (p.back() < 0) g = -g;
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return p;
}

// Pseudo-remainder of a by b (deg b >= 0, b nonzero).
Poly prem(Poly a, const Poly& b) {
    const size_t db = b.size() - 1;
    const mpz_class& lb = b.back();
    while (!a.empty() && a.size() - 1 >= db) {
        const size_t shift = a.size() - 1 - db;
        mpz_class la = a.back();
        for (auto& c : a) c *= lb;
        for (size_t i = 0; i <= db; ++i) a[i + shift] -= la * b[i];
        trim(a);
    }
    return a;
}

Poly poly_gcd(Poly a, Poly b) {
    if (a.empty()) return primitive(b);
    if (b.empty()) return primitive(a);
    mpz_class cont;
    {
        mpz_class ca = content_of(a), cb = content_of(b);
        mpz_gcd(cont.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    }
    a = primitive(a);
    b = primitive(b);
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        Poly r = prem(a, b);
        a = std::move(b);
        b = primitive(std::move(r));
    }
    a = primitive(a);
    for (auto& c : a) c *= cont;
    return a;
}

}  // namespace

LaurentPoly::LaurentPoly(long c) {
    if (c != 0) c_.push_back(mpz_class(c));
}

LaurentPoly LaurentPoly::monomial(mpz_class c, int e) {
    LaurentPoly p;
    if (c != 0) {
        p.low_ = e;
        p.c_.push_back(std::move(c));
    }
    return p;
}

const mpz_class& LaurentPoly::coeff_at(int e) const {
    if (e < low_ || e > high()) return kZero;
    return c_[static_cast<size_t>(e - low_)];
}

void LaurentPoly::normalize() {
    trim(c_);
    size_t lead = 0;
    while (lead < c_.size() && c_[lead] == 0) ++lead;
    if (lead == c_.size()) {
        c_.clear();
        low_ = 0;
        return;
    }
    if (lead > 0) {
        c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
        low_ += static_cast<int>(lead);
    }
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    const int lo = std::min(low_, o.low_);
    const int hi = std::max(high(), o.high());
    std::vector<mpz_class> r(static_cast<size_t>(hi - lo + 1));
    for (size_t i = 0; i < c_.size(); ++i) r[static_cast<size_t>(low_ - lo) + i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[static_cast<size_t>(o.low_ - lo) + i] += o.c_[i];
    c_ = std::move(r);
    low_ = lo;
    normalize();
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    r.low_ = a.low_ + b.low_;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.normalize();
    return r;
}

bool LaurentPoly::operator<(const LaurentPoly& o) const {
    if (low_ != o.low_) return low_ < o.low_;
    if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    return false;
}

LaurentPoly LaurentPoly::shifted(int e) const {
    LaurentPoly r = *this;
    if (!r.is_zero()) r.low_ += e;
    return r;
}

mpz_class LaurentPoly::content() const { return content_of(c_); }

LaurentPoly LaurentPoly::divided_exact(const mpz_class& d) const {
    LaurentPoly r = *this;
    for (auto& c : r.c_) {
        if (!mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t()))
            throw std::logic_error("LaurentPoly::divided_exact: not divisible");
        mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
    }
    return r;
}

mpq_class LaurentPoly::eval(const mpq_class& q) const {
    mpq_class acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * q + mpq_class(c_[i]);
    if (is_zero()) return acc;
    mpq_class p = 1;
    const int n = low_ < 0 ? -low_ : low_;
    for (int i = 0; i < n; ++i) p *= q;
    if (low_ < 0) return acc / p;
    return acc * p;
}

std::string LaurentPoly::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (int e = high(); e >= low_; --e) {
        const mpz_class& c = coeff_at(e);
        if (c == 0) continue;
        mpz_class a = abs(c);
        if (c < 0) out += '-';
        else if (!out.empty()) out += '+';
        if (e == 0) {
            out += a.get_str();
            continue;
        }
        if (a != 1) out += a.get_str() + "*";
        out += "q";
        if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
}

LaurentPoly LaurentPoly::parse(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::invalid_argument("empty Laurent polynomial");
    LaurentPoly r;
    size_t i = 0;
    auto read_int = [&](size_t& k) {
        size_t start = k;
        if (k < s.size() && (s[k] == '-' || s[k] == '+')) ++k;
        const size_t digits = k;
        while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
        if (k == digits) throw std::invalid_argument("bad integer in '" + text + "'");
        return s.substr(start, k - start);
    };
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            if (s[i] == '-') sign = -1;
            ++i;
        }
        mpz_class c = 1;
        bool have_digits = false;
        if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            size_t k = i;
            while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
            c = mpz_class(s.substr(i, k - i));
            i = k;
            have_digits = true;
            if (i < s.size() && s[i] == '*') ++i;
        }
        int e = 0;
        if (i < s.size() && s[i] == 'q') {
            ++i;
            e = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                e = std::stoi(read_int(i));
            }
        } else if (!have_digits) {
            throw std::invalid_argument("bad term in '" + text + "'");
        }
        r += monomial(sign * c, e);
        if (i < s.size() && s[i] != '+' && s[i] != '-')
            throw std::invalid_argument("unexpected character in '" + text + "'");
    }
    return r;
}

LaurentPoly LaurentPoly::gcd(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    r.c_ = poly_gcd(a.c_, b.c_);
    r.low_ = 0;
    r.normalize();
    return r;
}

LaurentPoly LaurentPoly::div_exact(const LaurentPoly& a, const LaurentPoly& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    LaurentPoly r;
    if (a.is_zero()) return r;
    Poly num = a.c_;
    const Poly& den = b.c_;
    if (num.size() < den.size()) throw std::logic_error("LaurentPoly::div_exact: not exact");
    Poly quo(num.size() - den.size() + 1);
    for (size_t k = quo.size(); k-- > 0;) {
        const mpz_class& top = num[k + den.size() - 1];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), den.back().get_mpz_t()))
            throw std::logic_error("LaurentPoly::div_exact: not exact");
        mpz_class t;
        mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), den.back().get_mpz_t());
        for (size_t i = 0; i < den.size(); ++i) num[k + i] -= t * den[i];
        quo[k] = t;
    }
    trim(num);
    if (!num.empty()) throw std::logic_error("LaurentPoly::div_exact: not exact");
    r.c_ = std::move(quo);
    r.low_ = a.low_ - b.low_;
    r.normalize();
    return r;
}

}  // namespace wf
