#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ncmap {

// A point's side sequence down the tree: bit j is 0 for the "<= h" half at
// depth j+1, 1 otherwise.  A code at depth k is a prefix of the same point's
// code at depth k+1.
using binary_code = std::vector<std::uint8_t>;

namespace detail {
// 3^e as u128; e <= 80 fits.
inline unsigned __int128 pow3(unsigned e) {
    unsigned __int128 v = 1;
    while (e--) v *= 3;
    return v;
}
}  // namespace detail

// The exact rational sum of bits_i * 3^-i, stored as num / 3^depth.  The value
// is always in [0, 1/2]: the all-ones tail sums to (1 - 3^-k)/2.
struct ternary_value {
    unsigned __int128 num = 0;
    unsigned depth = 0;

    double to_double() const {
        double v = 0.0, p = 1.0;
        unsigned __int128 n128 = num;
        // decompose num back into digits for a cancellation-free conversion
        std::vector<unsigned> digits(depth);
        for (unsigned i = depth; i-- > 0;) {
            digits[i] = static_cast<unsigned>(n128 % 3);
            n128 /= 3;
        }
        for (unsigned i = 0; i < depth; ++i) {
            p /= 3.0;
            v += static_cast<double>(digits[i]) * p;
        }
        return v;
    }
};

// Exact comparison via cross multiplication; safe for combined depth <= 80.
inline int compare(const ternary_value& a, const ternary_value& b) {
    if (a.depth + b.depth > 80)
        throw std::invalid_argument("ternary_value: combined depth exceeds exact-compare range");
    const unsigned __int128 lhs = a.num * detail::pow3(b.depth);
    const unsigned __int128 rhs = b.num * detail::pow3(a.depth);
    return lhs < rhs ? -1 : lhs > rhs ? 1 : 0;
}

inline ternary_value ternary_of(const binary_code& code) {
    if (code.size() > 40)
        throw std::invalid_argument("ternary_of: codes beyond depth 40 exceed exact arithmetic range");
    ternary_value t;
    t.depth = static_cast<unsigned>(code.size());
    for (std::uint8_t bit : code) {
        if (bit > 1) throw std::invalid_argument("ternary_of: code digits must be 0 or 1");
        t.num = t.num * 3 + bit;
    }
    return t;
}

// |ternary_of(a) - ternary_of(b)| together with the finite-depth separation
// bound 1/(2*3^(l+1)), l = common prefix length.  For distinct codes the gap
// always clears the bound: the diverging digit contributes 3^-(l+1) and the
// losing side's tail recovers at most half of that.
struct separation_gap_result {
    unsigned __int128 gap_num = 0;  // gap = gap_num / 3^gap_depth
    unsigned gap_depth = 0;
    unsigned common_prefix = 0;     // l
    bool distinct = false;          // identical codes have gap 0 and no bound

    double gap() const {
        ternary_value t{gap_num, gap_depth};
        return t.to_double();
    }
    double bound() const {
        if (!distinct) return 0.0;
        double b = 0.5;
        for (unsigned i = 0; i <= common_prefix; ++i) b /= 3.0;
        return b;
    }
};

inline separation_gap_result separation_gap(const binary_code& a, const binary_code& b) {
    const ternary_value ta = ternary_of(a), tb = ternary_of(b);
    separation_gap_result r;
    r.gap_depth = std::max(ta.depth, tb.depth);
    const unsigned __int128 na = ta.num * detail::pow3(r.gap_depth - ta.depth);
    const unsigned __int128 nb = tb.num * detail::pow3(r.gap_depth - tb.depth);
    r.gap_num = na > nb ? na - nb : nb - na;
    const std::size_t m = std::min(a.size(), b.size());
    while (r.common_prefix < m && a[r.common_prefix] == b[r.common_prefix]) ++r.common_prefix;
    r.distinct = (a != b);
    if (r.distinct) {
        if (r.common_prefix == m)
            throw std::invalid_argument("separation_gap: one code is a prefix of the other; "
                                        "codes of distinct leaves never nest");
        // gap >= 1/(2*3^(l+1))  <=>  2*gap_num >= 3^(gap_depth - l - 1)
        if (2 * r.gap_num < detail::pow3(r.gap_depth - r.common_prefix - 1))
            throw std::logic_error("separation_gap: bound violated, tree codes are inconsistent");
    }
    return r;
}

}  // namespace ncmap
