#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "ncmap/cloud.hpp"
#include "ncmap/schedule.hpp"
#include "ncmap/ternary.hpp"

namespace ncmap {

inline constexpr std::size_t full_depth = std::numeric_limits<std::size_t>::max();

// Equal-count split of a subset along direction v.  The left side receives the
// ceil(m/2) smallest points under the tie-broken order (projection, then the
// full coordinate tuple lexicographically, then original index); h is the
// midpoint of the straddling projections, or their shared value on a tie.
// A single-element input returns it on the left with h unused.
struct split_result {
    std::vector<std::uint32_t> left, right;
    double h = 0.0;
};

split_result split_median(std::span<const std::uint32_t> indices, const point_cloud& cloud,
                          const std::vector<double>& v);

// Node of the partition tree, preorder-indexed.  An internal node at depth k
// (root: k = 1) splits its span of order[] with the schedule direction v_k;
// [lo, lo+left_size) is the left child's span.  right_child == 0 marks leaves
// (index 0 is the root, which is never anyone's child).
struct bsp_node {
    std::uint32_t lo = 0, hi = 0;
    std::uint32_t left_size = 0;
    std::uint32_t right_child = 0;
    std::uint32_t depth = 0;
    std::uint32_t leaf_rank = 0;  // leaves only
    double h = 0.0;
};

// Breadth-synchronous equal-count partition tree.  order is the concatenation
// of leaf payloads in code order; at full depth every leaf is a singleton and
// order is a total order on the cloud.
struct bsp_tree {
    std::size_t n = 0, d = 0;
    direction_schedule schedule;
    std::size_t depth = 0;  // max code length over leaves (0 for n == 1)
    std::vector<bsp_node> nodes;
    std::vector<std::uint32_t> order;
    std::vector<std::uint32_t> pos_in_order;  // inverse of order
    std::vector<std::uint32_t> leaves;        // leaf rank (code order) -> node index

    std::span<const std::uint32_t> leaf_payload(std::size_t rank) const {
        const bsp_node& nd = nodes[leaves[rank]];
        return {order.data() + nd.lo, order.data() + nd.hi};
    }
};

// Splits every cell one level at a time until each holds a single point or its
// code reaches max_depth.  Splitting per node is deterministic (seeded
// selection keyed on the node index), so serial and parallel builds produce
// bit-identical trees; parallel=false is the serial reference path.
bsp_tree build_tree(const point_cloud& cloud, const direction_schedule& schedule,
                    std::size_t max_depth = full_depth, bool parallel = true);

// Side sequence of the point's leaf: bit j is 0 if the point fell in the
// "<= h" half at depth j+1.  Distinct leaves yield distinct codes.
binary_code encode(const bsp_tree& tree, std::size_t point_index);

}  // namespace ncmap
