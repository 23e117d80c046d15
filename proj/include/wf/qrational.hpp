#pragma once

#include "wf/laurent.hpp"

#include <optional>
#include <string>

namespace wf {

// Element of Q(q) stored as num/den in lowest terms.
// den has lowest exponent 0 and positive leading coefficient; the integer
// contents of num and den are coprime. Equal values have equal representations.
class QRational {
public:
    QRational() = default;
    QRational(long c) : num_(c), den_(1) {}  // NOLINT
    QRational(LaurentPoly p) : num_(std::move(p)), den_(1) {}  // NOLINT
    QRational(const LaurentPoly& num, const LaurentPoly& den);

    static QRational q(int e = 1) { return QRational(LaurentPoly::q(e)); }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_.is_one() && num_.is_one(); }
    bool is_laurent() const { return den_.is_one(); }

    QRational operator-() const;
    friend QRational operator+(const QRational& a, const QRational& b);
    friend QRational operator-(const QRational& a, const QRational& b) { return a + (-b); }
    friend QRational operator*(const QRational& a, const QRational& b);
    friend QRational operator/(const QRational& a, const QRational& b);
    QRational& operator+=(const QRational& o) { return *this = *this + o; }
    QRational& operator-=(const QRational& o) { return *this = *this - o; }
    QRational& operator*=(const QRational& o) { return *this = *this * o; }
    QRational& operator/=(const QRational& o) { return *this = *this / o; }
    QRational inverse() const;

    bool operator==(const QRational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const QRational& o) const { return !(*this == o); }
    bool operator<(const QRational& o) const;  // structural order, for containers

    // Substitution q -> value. Throws std::domain_error on a zero denominator.
    mpq_class eval(const mpq_class& q) const;
    // Substitution q -> 1 as an element of Q(q) (a constant).
    QRational at_one() const;

    // Canonical "num/den", e.g. "q^2-1/q".
    std::string to_string() const;
    // Human-oriented: "q-q^-1" or "(q^2-1)/(q^2+1)".
    std::string pretty() const;
    static QRational parse(const std::string& s);

private:
    void canonicalize();
    LaurentPoly num_;
    LaurentPoly den_ = 1;
};

// Frequently used constants.
inline QRational qpow(int e) { return QRational::q(e); }

}  // namespace wf
