#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace wf {

// Integer Laurent polynomial in q: sum_{i} c_[i] q^{low_ + i}.
// Normalized: no leading/trailing zero coefficients; zero has c_ empty.
class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(long c);  // NOLINT: constants convert implicitly
    static LaurentPoly monomial(mpz_class c, int e);
    static LaurentPoly q(int e = 1) { return monomial(1, e); }

    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return low_ == 0 && c_.size() == 1 && c_[0] == 1; }
    bool is_monomial() const { return c_.size() == 1; }
    int low() const { return low_; }
    int high() const { return low_ + static_cast<int>(c_.size()) - 1; }
    int degree_span() const { return static_cast<int>(c_.size()) - 1; }
    const mpz_class& coeff_at(int e) const;
    const mpz_class& leading() const { return c_.back(); }
    const mpz_class& trailing() const { return c_.front(); }
    const std::vector<mpz_class>& coeffs() const { return c_; }

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    bool operator==(const LaurentPoly& o) const { return low_ == o.low_ && c_ == o.c_; }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }
    bool operator<(const LaurentPoly& o) const;

    LaurentPoly shifted(int e) const;
    mpz_class content() const;  // nonnegative gcd of coefficients
    LaurentPoly divided_exact(const mpz_class& d) const;

    // Value at a rational point; caller guarantees q != 0 when low() < 0.
    mpq_class eval(const mpq_class& q) const;

    // Descending exponents, e.g. "q^2-1-q^-2"; zero prints "0".
    std::string to_string() const;
    static LaurentPoly parse(const std::string& s);

    // Polynomial division helpers on the nonnegative-exponent representation.
    // Both operands are treated as polynomials p(q) = q^{-low} * this.
    static LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b);
    // Exact quotient a / b in Z[q, q^-1]; throws if not exact.
    static LaurentPoly div_exact(const LaurentPoly& a, const LaurentPoly& b);

private:
    void normalize();
    int low_ = 0;
    std::vector<mpz_class> c_;
};

}  // namespace wf
