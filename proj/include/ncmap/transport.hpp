#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ncmap/bsp.hpp"
#include "ncmap/cloud.hpp"
#include "ncmap/schedule.hpp"

namespace ncmap {

enum class map_method { hv, lex, oracle };

std::string method_name(map_method m);
map_method method_from_name(const std::string& name);

// A bijection of source indices onto target indices; the push-forward of the
// uniform empirical source measure is the uniform empirical target measure.
struct transport_map {
    std::vector<std::uint32_t> sigma;  // sigma[source index] = target index
    map_method method = map_method::hv;
    // Which schedule built the map; only HV maps consume a schedule.
    std::optional<std::uint64_t> schedule_fingerprint;

    void validate() const;  // throws std::invalid_argument unless sigma is a permutation
};

// Cells of the source and target partitions carrying the same binary code at
// the same depth; always equal-sized because both trees use the ceil(m/2)
// rule on equal n.
struct dual_pair {
    std::size_t depth = 0;
    std::vector<std::uint32_t> a;  // source cell
    std::vector<std::uint32_t> b;  // target cell
};

// Leaf-rank matching of the two full-depth trees: the point at source leaf
// rank j goes to the point at target leaf rank j.  O(n log n) expected,
// deterministic; parallel=false forces the serial reference build.
transport_map hv_map(const point_cloud& source, const point_cloud& target,
                     const direction_schedule& schedule, bool parallel = true);

// Knothe-Rosenblatt baseline: both clouds sorted lexicographically by
// coordinates (axis 1, then 2, ...) with index tie-break, k-th matched to k-th.
transport_map lex_map(const point_cloud& source, const point_cloud& target);

// The frontier of both trees cut at the given depth, paired in code order.
// Cells that became singleton leaves above the cut still count as cells.
std::vector<dual_pair> dual_pairs(const bsp_tree& source_tree, const bsp_tree& target_tree,
                                  std::size_t depth);

// Sub-map of sigma restricted to pair.a, expressed between the sub-clouds
// (position in a -> position in b).  Throws std::logic_error if sigma does not
// send a into b, which signals a construction bug.
transport_map restrict_map(const transport_map& map, const dual_pair& pair);

// maps[0] applied first: result(i) = maps.back()(... maps[0](i) ...).  The
// method tag and fingerprint survive only when uniform across the inputs.
transport_map compose(const std::vector<transport_map>& maps);

}  // namespace ncmap
