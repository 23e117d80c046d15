#pragma once

#include "wf/algebra.hpp"
#include "wf/report.hpp"
#include "wf/series.hpp"

#include <string>
#include <vector>

namespace wf {

// Ordered multiset: identifiers in order, with a color (simple root index) each.
struct OrderedMultiset {
    std::vector<std::string> ids;
    std::vector<int> colors;

    static OrderedMultiset uniform(size_t n, int color = 1);
    size_t size() const { return ids.size(); }
    std::vector<std::string> vars() const;  // "t1", "t2", ... from ids
    bool single_color() const;
};

using WeightSeries = NestedSeries<AlgebraElement>;

// t1 in [-6,-1], tj in [-6, j+2]
ExponentWindow default_weight_window(size_t n);

// Coefficient of t^{-a} is P(f[a1]...f[an]). Upper window bounds may be open:
// the degree bound makes every lower-bounded window finite.
WeightSeries universal_weight(const OrderedMultiset& ms, const ExponentWindow& window, Straightener& st);

// f+(t1)f+(t2) - (q-q^-1) t1/(q t1 - q^-1 t2) f+(t1)^2, canonicalized by `st`.
WeightSeries closed_form_sl2_pair(const ExponentWindow& window, Straightener& st);

// prod_{k<l} (t_k^-1 - q^{(a_k,a_l)} t_l^-1); rank 1 only, (a,a) = 2.
MPoly prefactor_A(const OrderedMultiset& ms);

// A * W exact on `window`.
WeightSeries symmetrized_weight(const OrderedMultiset& ms, const ExponentWindow& window, Straightener& st);

Report check_closed_form(const ExponentWindow& window, Straightener& st);
// Regularity and antisymmetry of A*W on the box [lo, hi]^n.
Report check_antisymmetry(size_t n, int lo, int hi, Straightener& st);
// Support of W inside t1 <= -1 and sum of t's <= -n.
Report check_support(size_t n, const ExponentWindow& window, Straightener& st);

}  // namespace wf
