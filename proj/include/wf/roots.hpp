#pragma once

#include "wf/report.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wf {

using AffineRoot = std::vector<int>;  // coefficients on alpha_0 .. alpha_r

struct AffineCartan {
    std::string name;
    int r = 0;
    std::vector<std::vector<int>> a;  // a[i][j] = <alpha_i^vee, alpha_j>
    std::vector<int> d;               // symmetrizers, d_i a_ij = d_j a_ji
    std::vector<int> marks;           // delta = sum marks_i alpha_i, marks_0 = 1

    static AffineCartan untwisted_A(int r);
    // "A1~", "A2~", ...
    static AffineCartan parse(const std::string& type);
    void validate() const;  // throws std::invalid_argument

    size_t size() const { return static_cast<size_t>(r + 1); }
    AffineRoot simple(int i) const;
    AffineRoot delta() const { return marks; }
    long form(const AffineRoot& x, const AffineRoot& y) const;  // symmetrized
    AffineRoot reflect(int i, const AffineRoot& g) const;
};

int height(const AffineRoot& g);
bool is_positive(const AffineRoot& g);
AffineRoot negate(const AffineRoot& g);
std::string root_text(const AffineRoot& g, const AffineCartan& c);  // "delta+a1", "2delta-a1", ...

// Position in the normal ordering: forward ladder, imaginary roots, backward ladder.
struct OrderKey {
    int block = 0;  // 0 forward, 1 imaginary, 2 backward
    long pos = 0;
    auto operator<=>(const OrderKey&) const = default;
};

enum class CircularRelation { Precedes, Follows, Incomparable };
const char* relation_name(CircularRelation r);

class NormalOrdering {
public:
    // `word` is one period i_0 .. i_{m-1}. The translation and i_0 = 0 checks
    // can be disabled for shifted sequences.
    NormalOrdering(AffineCartan cartan, std::vector<int> word, int count, bool check_translation = true);

    const AffineCartan& cartan() const { return cartan_; }
    const std::vector<int>& word() const { return word_; }
    int index(long k) const;  // periodic extension
    int count() const { return count_; }
    const std::vector<AffineRoot>& forward() const { return forward_; }    // gamma_1 ..
    const std::vector<AffineRoot>& backward() const { return backward_; }  // gamma_0, gamma_-1, ..
    // translation part: p(alpha_i) = alpha_i - c_i delta
    std::vector<long> translation() const;

    // Key of a positive root; nullopt if outside the computed ladders.
    std::optional<OrderKey> key(const AffineRoot& positive) const;
    bool precedes(const AffineRoot& a, const AffineRoot& b) const;
    CircularRelation circular_compare(const AffineRoot& a, const AffineRoot& b) const;

    // Test hook: move a root elsewhere in the order.
    void override_key(const AffineRoot& positive, OrderKey k);

private:
    OrderKey require_key(const AffineRoot& positive) const;
    AffineCartan cartan_;
    std::vector<int> word_;
    int count_;
    std::vector<AffineRoot> forward_, backward_;
    std::map<AffineRoot, OrderKey> keys_;
};

// Segment-avoidance definition on the circle gamma_1, gamma_2, ..., -gamma_1, -gamma_2, ...
CircularRelation circular_by_segments(const NormalOrdering& ord, const AffineRoot& a, const AffineRoot& b);

// Positive roots of the finite root system (alpha_0 coefficient zero).
std::vector<AffineRoot> finite_positive_roots(const AffineCartan& c);

Report verify_ord1(const NormalOrdering& ord, int max_height);
Report verify_shift_correspondence(const AffineCartan& cartan, const std::vector<int>& word, int c, int bound);

}  // namespace wf
