#pragma once

#include "wf/algebra.hpp"
#include "wf/report.hpp"
#include "wf/series.hpp"
#include "wf/weight.hpp"

#include <functional>
#include <string>
#include <vector>

namespace wf {

using Vec = std::vector<QRational>;
using Matrix = std::vector<Vec>;

inline Vec operator*(const QRational& s, const Vec& v) {
    Vec r(v.size());
    if (s.is_zero()) return r;
    for (size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) r[i] = s * v[i];
    return r;
}

// Polynomials in one variable x, low degree first.
struct RationalFn {
    Vec num, den;
    // Taylor coefficients at x = 0 and at x = infinity (in 1/x).
    Vec at_zero(int count) const;
    Vec at_infinity(int count) const;
};

enum class ModeOp { F, E, PsiPlus, PsiMinus };
const char* op_name(ModeOp op);

// Evaluation module with basis v_0 (top) .. v_{d-1}. A mode X[n] acts as
// z^n times a matrix; everything below is stored at z = 1.
//   f[n] v_j     = f_coef[j] ratio[j]^n v_{j+1}
//   e[n] v_{j+1} = e_coef[j] ratio[j]^n v_j
//   psi+(u) v_j  = lambda[j](z/u) v_j, psi- is the expansion at infinity
struct EvalModule {
    std::string name;
    int dim = 1;
    Vec f_coef, e_coef, ratio;
    std::vector<RationalFn> lambda;
    std::function<void(ModeOp, int, Matrix&)> patch;  // tampering hook for negative controls

    Matrix op(ModeOp kind, int mode) const;
    Vec apply(ModeOp kind, int mode, const Vec& v) const;
    Vec basis(int j) const;
    Vec top() const { return basis(0); }
    // Word in f and psi+ at z = 1, rightmost letter first.
    Vec act(const Word& w, const Vec& v) const;
};

// twice_spin = 1, 2, 3: spin one-half, one, three-halves
EvalModule make_spin_module(int twice_spin);
EvalModule make_trivial_module();
// "half", "one", "three-halves", "trivial"
EvalModule module_by_name(const std::string& name);
std::vector<std::string> shipped_modules();

// Defining relations on all modes in [-bound, bound]; also checks that the top
// vector is singular.
Report validate_relations(const EvalModule& m, int bound);

// Coefficients are vectors of the module (or of a tensor product, flattened
// as j1 * dim2 + j2). The last variables are evaluation parameters.
using ModuleSeries = NestedSeries<Vec>;

// W(t) v_top over variables (ms.vars(), zvar); `window` covers the t's only.
ModuleSeries weight_vector(const EvalModule& m, const OrderedMultiset& ms, const ExponentWindow& window,
                           Straightener& st, const std::string& zvar = "z");
SupportBound weight_vector_support(size_t n);

// (P x P) of the Drinfeld coproduct of f(t1)...f(tn), applied to v1 (x) v2.
// Variables t1..tn, z1, z2; `window` is a finite box in the t's.
ModuleSeries tensor_weight_vector(const EvalModule& m1, const EvalModule& m2, const OrderedMultiset& ms,
                                  const ExponentWindow& window, Straightener& st);

enum class FactorVariant { Exact, DroppedRatio, UninvertedRatio };
// Sum over splits of w1 (x) w2 times lambda2 and the exchange factors.
ModuleSeries factorization_rhs(const EvalModule& m1, const EvalModule& m2, const OrderedMultiset& ms,
                               const ExponentWindow& window, Straightener& st,
                               FactorVariant variant = FactorVariant::Exact);
Report check_factorization(const EvalModule& m1, const EvalModule& m2, size_t n, const ExponentWindow& window,
                           Straightener& st, FactorVariant variant = FactorVariant::Exact);

// Pole-cleared comparison of B(u1)...B(un) v with the weight vector.
struct BetheOptions {
    int lo = 0;  // lower bound of every u exponent; 0 picks the smallest that works
    bool prefactor = true;  // false: negative control
};
Report bethe_check(const EvalModule& m, size_t n, Straightener& st, BetheOptions opt = {});

// Numerator N with s = N / den on the window of s; checks N is a polynomial of
// total degree deg(den) and re-expands it against every point of the window.
struct Reconstruction {
    Report report{"rational-reconstruction"};
    MPoly numerator, denominator;
    long unknowns = 0, surplus = 0;
    std::string expression;
};
Reconstruction rational_reconstruct(const NestedSeries<QRational>& s, const MPoly& den, const ExponentWindow& box);

// Spin-one, n = 2: the ansatz with poles at t_i in {z, zq^2, zq^-2} and q t1 = q^-1 t2.
Reconstruction reconstruct_spin_one_pair(Straightener& st, const ExponentWindow& window);

std::string mpoly_text(const MPoly& p, const std::vector<std::string>& vars);

}  // namespace wf
