#pragma once

#include "wf/qrational.hpp"

#include <json.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wf {

// Mode generators of the negative-current Borel algebra: f[n] and psi+[n], n >= 0.
struct Gen {
    enum Kind : std::uint8_t { F = 0, Psi = 1 };
    Kind kind = F;
    int mode = 0;

    static Gen f(int n) { return {F, n}; }
    static Gen psi(int n);
    bool is_f() const { return kind == F; }
    auto operator<=>(const Gen&) const = default;  // f-modes sort before psi-modes
};

using Word = std::vector<Gen>;

std::string word_text(const Word& w);  // "f[-1] f[2] psi[0]"; empty word prints "1"
Word parse_word(const std::string& s);
int principal_degree(const Word& w);
Word concat(const Word& a, const Word& b);

class AlgebraElement {
public:
    AlgebraElement() = default;
    AlgebraElement(const QRational& c);  // NOLINT: scalar multiple of the empty word
    static AlgebraElement word(const Word& w, const QRational& c = 1);

    const std::map<Word, QRational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    QRational coeff(const Word& w) const;
    void add(const Word& w, const QRational& c);

    AlgebraElement operator-() const;
    AlgebraElement& operator+=(const AlgebraElement& o);
    AlgebraElement& operator-=(const AlgebraElement& o);
    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    friend AlgebraElement operator*(const QRational& s, const AlgebraElement& x);
    friend AlgebraElement operator*(const AlgebraElement& x, const QRational& s) { return s * x; }
    // Concatenation product (not normalized).
    friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
    AlgebraElement& operator*=(const QRational& s) { return *this = s * *this; }

    bool operator==(const AlgebraElement& o) const { return terms_ == o.terms_; }
    bool operator!=(const AlgebraElement& o) const { return !(*this == o); }

    // Coefficientwise q -> 1.
    AlgebraElement at_one() const;

    std::string to_string() const;  // "(q^-2-1)*f[1] f[1] + ..."
    nlohmann::json to_json() const;
    static AlgebraElement from_json(const nlohmann::json& j);

private:
    std::map<Word, QRational> terms_;
};

inline bool coef_is_zero(const AlgebraElement& x) { return x.is_zero(); }
inline void coef_add(AlgebraElement& a, const AlgebraElement& b) { a += b; }

class StraightenError : public std::runtime_error {
public:
    StraightenError(const std::string& msg, Word w) : std::runtime_error(msg), word(std::move(w)) {}
    Word word;
};

// Single rewrite rules for an adjacent pair.
AlgebraElement straighten_ff(int a, int b);
AlgebraElement straighten_psif(int m, int n);

// Rewrites words into the canonical form: f-modes ascending, then psi-modes
// ascending. Memoized per word; one instance per thread.
class Straightener {
public:
    enum class Strategy { Leftmost, Rightmost };

    explicit Straightener(long step_cap = 1000000, Strategy s = Strategy::Leftmost)
        : cap_(step_cap), strategy_(s) {}

    AlgebraElement separate(const Word& w);
    AlgebraElement separate(const AlgebraElement& x);
    AlgebraElement project(const Word& w);
    AlgebraElement project(const AlgebraElement& x);
    // P^-: f_- f_+ -> f_- eps(f_+)
    AlgebraElement project_minus(const AlgebraElement& x);

    const std::map<Word, AlgebraElement>& memo() const { return memo_; }
    void preload(const Word& w, const AlgebraElement& normal) { memo_.emplace(w, normal); }
    long steps() const { return steps_; }

private:
    AlgebraElement normal(const Word& w, long& budget);
    long cap_;
    Strategy strategy_;
    long steps_ = 0;
    std::map<Word, AlgebraElement> memo_;
    std::map<Word, int> active_;
};

bool is_canonical(const Word& w);
bool is_separated(const Word& w);
QRational counit(const Word& w);
QRational counit(const AlgebraElement& x);

// Two-leg elements sum c * (left (x) right).
using TwoLeg = std::map<std::pair<Word, Word>, QRational>;

// Drinfeld coproduct of an f-word with psi-mode sums truncated per letter:
// Delta f[n] = 1 (x) f[n] + sum_{0<=k<=kmax[i]} f[n-k] (x) psi[k].
TwoLeg coproduct_drinfeld(const Word& w, const std::vector<int>& kmax);

}  // namespace wf
