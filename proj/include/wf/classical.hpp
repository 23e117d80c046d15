#pragma once

#include "wf/qrational.hpp"
#include "wf/report.hpp"
#include "wf/series.hpp"
#include "wf/weight.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace wf {

class DepthError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using LieElem = std::map<int, QRational>;  // Hall index -> coefficient

// Free Lie algebra on the given colors, truncated at maxDepth, in the Lyndon
// basis. Basis indices are ordered by (depth, lexicographic word).
class FreeLie {
public:
    FreeLie(std::vector<int> colors, int max_depth);

    int size() const { return static_cast<int>(words_.size()); }
    int max_depth() const { return max_depth_; }
    int letter(int color) const;
    int depth(int h) const { return static_cast<int>(words_[static_cast<size_t>(h)].size()); }
    const std::vector<int>& lyndon_word(int h) const { return words_[static_cast<size_t>(h)]; }
    std::string name(int h) const;  // "f1", "[f1,f2]", ...

    LieElem bracket(int a, int b) const;
    LieElem bracket(const LieElem& x, const LieElem& y) const;
    // [[f_c1, f_c2], ..., f_ck]
    LieElem nested(const std::vector<int>& colors) const;

private:
    using Assoc = std::map<std::vector<int>, mpz_class>;
    Assoc expand(int h) const;
    LieElem decompose(Assoc p) const;

    std::vector<int> colors_;
    int max_depth_;
    std::vector<std::vector<int>> words_;
    std::map<std::vector<int>, int> index_;
    std::vector<std::pair<int, int>> split_;  // standard factorization; (-1,-1) for letters
    mutable std::map<std::pair<int, int>, LieElem> cache_;
};

struct LoopLetter {
    int h = 0;
    int mode = 0;
    bool operator==(const LoopLetter&) const = default;
    bool operator<(const LoopLetter& o) const {  // PBW order: nonpositive modes first
        const bool p = mode > 0, op = o.mode > 0;
        if (p != op) return op;
        if (h != o.h) return h < o.h;
        return mode < o.mode;
    }
};

using LoopWord = std::vector<LoopLetter>;

class ClassicalElement {
public:
    ClassicalElement() = default;
    static ClassicalElement word(const LoopWord& w, const QRational& c = 1);
    const std::map<LoopWord, QRational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add(const LoopWord& w, const QRational& c);
    ClassicalElement& operator+=(const ClassicalElement& o);
    friend ClassicalElement operator+(ClassicalElement a, const ClassicalElement& b) { return a += b; }
    friend ClassicalElement operator*(const QRational& s, const ClassicalElement& x);
    friend ClassicalElement operator*(const ClassicalElement& a, const ClassicalElement& b);  // concatenation
    bool operator==(const ClassicalElement& o) const { return terms_ == o.terms_; }
    bool operator!=(const ClassicalElement& o) const { return !(*this == o); }
    std::string to_string(const FreeLie& L) const;

private:
    std::map<LoopWord, QRational> terms_;
};

inline bool coef_is_zero(const ClassicalElement& x) { return x.is_zero(); }
inline void coef_add(ClassicalElement& a, const ClassicalElement& b) { a += b; }

// Enveloping algebra of the loop algebra of the truncated free Lie algebra.
class ClassicalAlgebra {
public:
    explicit ClassicalAlgebra(const FreeLie& L) : L_(L) {}
    const FreeLie& lie() const { return L_; }

    ClassicalElement separate(const LoopWord& w);
    ClassicalElement separate(const ClassicalElement& x);
    ClassicalElement project(const LoopWord& w);
    ClassicalElement project(const ClassicalElement& x);

private:
    const FreeLie& L_;
    std::map<LoopWord, ClassicalElement> memo_;
};

using ClassicalSeries = NestedSeries<ClassicalElement>;

// Coefficient of t^{-a}: P(f_{c1}[a1] ... f_{cn}[an]) at q = 1.
ClassicalSeries classical_direct(const OrderedMultiset& ms, const ExponentWindow& window, ClassicalAlgebra& A);

// Denominator of the W^Lie factor of a block (i_1, ..., i_k).
enum class LieDenominator {
    Literal,  // prod_{j<k} 1/(-1 + t_{i_j}/t_{i_k})
    Last,     // prod_{j<k} 1/(1 - t_{i_k}/t_{i_j})
    Chain,    // prod_{j>1} 1/(1 - t_{i_j}/t_{i_{j-1}})
    First,    // prod_{j>1} 1/(1 - t_{i_j}/t_{i_1})
};
const char* denominator_name(LieDenominator d);

// W^Lie for the sub-multiset on positions `block` (ascending) of ms, as a
// series in all variables of ms.
ClassicalSeries classical_w_lie(const OrderedMultiset& ms, const std::vector<size_t>& block, LieDenominator d,
                                const ExponentWindow& window, ClassicalAlgebra& A);

// Sum over ordered set partitions of products of W^Lie factors.
ClassicalSeries classical_weight(const OrderedMultiset& ms, LieDenominator d, const ExponentWindow& window,
                                 ClassicalAlgebra& A);

Report check_classical(const OrderedMultiset& ms, LieDenominator d, const ExponentWindow& window);

// q -> 1 of the quantum engine against the rank-1 classical projection.
Report check_q1_limit(size_t n, const ExponentWindow& window, Straightener& st);

}  // namespace wf
