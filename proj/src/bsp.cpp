#include "ncmap/bsp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace ncmap {
namespace {

inline std::uint64_t splitmix64(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Total order used by every split: projection, then the full coordinate tuple
// lexicographically, then original index.  Totality is what makes builds
// deterministic and the equal block of any pivot a single element.
struct proj_less {
    const point_cloud& cloud;
    std::size_t axis;                // SIZE_MAX means a general direction
    const std::vector<double>* v;

    double proj(std::uint32_t i) const {
        if (axis != SIZE_MAX) return cloud[i][axis];
        const double* x = cloud[i];
        double s = 0.0;
        for (std::size_t k = 0; k < cloud.d; ++k) s += (*v)[k] * x[k];
        return s;
    }
    bool operator()(std::uint32_t a, std::uint32_t b) const {
        const double pa = proj(a), pb = proj(b);
        if (pa != pb) return pa < pb;
        const double* xa = cloud[a];
        const double* xb = cloud[b];
        for (std::size_t k = 0; k < cloud.d; ++k)
            if (xa[k] != xb[k]) return xa[k] < xb[k];
        return a < b;
    }
};

void insertion_sort(std::uint32_t* idx, std::size_t lo, std::size_t hi, const proj_less& less) {
    for (std::size_t i = lo + 1; i < hi; ++i) {
        const std::uint32_t t = idx[i];
        std::size_t j = i;
        while (j > lo && less(t, idx[j - 1])) {
            idx[j] = idx[j - 1];
            --j;
        }
        idx[j] = t;
    }
}

#ifdef NCMAP_MEDIAN_OF_MEDIANS
// Worst-case linear pivot: medians of groups of five, repeated on the median
// prefix until it fits in one group.
std::uint32_t choose_pivot(std::uint32_t* idx, std::size_t lo, std::size_t hi, const proj_less& less,
                           std::uint64_t&) {
    while (hi - lo > 5) {
        std::size_t out = lo;
        for (std::size_t g = lo; g < hi; g += 5) {
            const std::size_t ge = std::min(g + 5, hi);
            insertion_sort(idx, g, ge, less);
            std::swap(idx[out++], idx[g + (ge - g) / 2]);
        }
        hi = out;
    }
    insertion_sort(idx, lo, hi, less);
    return idx[lo + (hi - lo) / 2];
}
#else
std::uint32_t choose_pivot(std::uint32_t* idx, std::size_t lo, std::size_t hi, const proj_less&,
                           std::uint64_t& state) {
    return idx[lo + splitmix64(state) % (hi - lo)];
}
#endif

// Expected-linear selection; afterwards [lo, lo+k] hold the k+1 smallest and
// idx[lo+k] is their maximum.
void select_kth(std::uint32_t* idx, std::size_t lo, std::size_t hi, std::size_t k,
                const proj_less& less, std::uint64_t seed) {
    std::uint64_t state = seed;
    while (hi - lo > 24) {
        const std::uint32_t pivot = choose_pivot(idx, lo, hi, less, state);
        std::size_t lt = lo, i = lo, gt = hi;
        while (i < gt) {
            if (less(idx[i], pivot)) std::swap(idx[lt++], idx[i++]);
            else if (less(pivot, idx[i])) std::swap(idx[i], idx[--gt]);
            else ++i;
        }
        if (k < lt) hi = lt;
        else if (k >= gt) lo = gt;
        else return;
    }
    insertion_sort(idx, lo, hi, less);
}

// Node and leaf counts of the subtree for a cell of m points with the given
// remaining depth budget; the recursion only ever visits O(depth) distinct
// (m, budget) states, so a small memo suffices.  Read-only after prefill.
struct size_counts {
    std::unordered_map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>> memo;
    static std::uint64_t key(std::uint64_t m, std::uint64_t b) { return (m << 7) | b; }

    const std::pair<std::uint64_t, std::uint64_t>& prefill(std::uint64_t m, std::uint64_t b) {
        const std::uint64_t k = key(m, b);
        auto it = memo.find(k);
        if (it != memo.end()) return it->second;
        std::pair<std::uint64_t, std::uint64_t> r{1, 1};
        if (m > 1 && b > 0) {
            const std::uint64_t ml = (m + 1) / 2;
            const auto& l = prefill(ml, b - 1);
            const auto& rr = prefill(m - ml, b - 1);
            r = {1 + l.first + rr.first, l.second + rr.second};
        }
        return memo.emplace(k, r).first->second;
    }
    std::uint64_t nodes(std::uint64_t m, std::uint64_t b) const { return memo.at(key(m, b)).first; }
    std::uint64_t leafs(std::uint64_t m, std::uint64_t b) const { return memo.at(key(m, b)).second; }
};

struct build_ctx {
    const point_cloud& cloud;
    const direction_schedule& schedule;
    std::size_t budget;  // canonicalized max code length
    const size_counts& counts;
    bsp_tree& tree;
    bool parallel;
};

constexpr std::size_t task_grain = 8192;

void build_rec(build_ctx& c, std::uint32_t node_id, std::uint32_t lo, std::uint32_t hi,
               std::uint32_t depth, std::uint32_t leaves_before) {
    const std::size_t m = hi - lo;
    bsp_node& nd = c.tree.nodes[node_id];
    nd.lo = lo;
    nd.hi = hi;
    nd.depth = depth;
    const std::size_t budget_left = c.budget - (depth - 1);
    if (m == 1 || budget_left == 0) {
        nd.right_child = 0;
        nd.left_size = 0;
        nd.leaf_rank = leaves_before;
        c.tree.leaves[leaves_before] = node_id;
        for (std::uint32_t p = lo; p < hi; ++p) c.tree.pos_in_order[c.tree.order[p]] = p;
        return;
    }

    const std::size_t axis = c.schedule.axis_at(depth);
    std::vector<double> dir;
    if (axis == SIZE_MAX) dir = c.schedule.direction(depth);
    const proj_less less{c.cloud, axis, &dir};

    const std::uint32_t ml = static_cast<std::uint32_t>((m + 1) / 2);
    select_kth(c.tree.order.data(), lo, hi, lo + ml - 1, less,
               0x9e3779b97f4a7c15ull ^ (static_cast<std::uint64_t>(node_id) * 0xd1b54a32d192ed03ull));
    const std::uint32_t boundary_left = c.tree.order[lo + ml - 1];
    std::uint32_t boundary_right = c.tree.order[lo + ml];
    for (std::uint32_t p = lo + ml + 1; p < hi; ++p)
        if (less(c.tree.order[p], boundary_right)) boundary_right = c.tree.order[p];

    nd.h = 0.5 * (less.proj(boundary_left) + less.proj(boundary_right));
    nd.left_size = ml;
    const std::uint32_t left_id = node_id + 1;
    const std::uint32_t right_id =
        node_id + 1 + static_cast<std::uint32_t>(c.counts.nodes(ml, budget_left - 1));
    nd.right_child = right_id;
    const std::uint32_t right_leaves_before =
        leaves_before + static_cast<std::uint32_t>(c.counts.leafs(ml, budget_left - 1));

    if (c.parallel && m >= task_grain) {
#pragma omp task default(none) firstprivate(left_id, lo, ml, depth, leaves_before) shared(c)
        build_rec(c, left_id, lo, lo + ml, depth + 1, leaves_before);
        build_rec(c, right_id, lo + ml, hi, depth + 1, right_leaves_before);
    } else {
        build_rec(c, left_id, lo, lo + ml, depth + 1, leaves_before);
        build_rec(c, right_id, lo + ml, hi, depth + 1, right_leaves_before);
    }
}

}  // namespace

split_result split_median(std::span<const std::uint32_t> indices, const point_cloud& cloud,
                          const std::vector<double>& v) {
    if (indices.empty()) throw std::invalid_argument("split_median: empty index set");
    if (v.size() != cloud.d) throw std::invalid_argument("split_median: direction dimension mismatch");
    double n2 = 0.0;
    for (double x : v) n2 += x * x;
    if (std::fabs(std::sqrt(n2) - 1.0) > 1e-12)
        throw std::invalid_argument("split_median: direction must be a unit vector");
    for (std::uint32_t i : indices)
        if (i >= cloud.n) throw std::invalid_argument("split_median: index out of range");

    std::size_t axis = SIZE_MAX;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] == 1.0 && axis == SIZE_MAX) axis = k;
        else if (v[k] != 0.0) {
            axis = SIZE_MAX;
            break;
        }
    }
    const proj_less less{cloud, axis, &v};

    split_result r;
    if (indices.size() == 1) {
        r.left.assign(indices.begin(), indices.end());
        r.h = less.proj(indices.front());  // unused by contract: a single element is a leaf
        return r;
    }
    std::vector<std::uint32_t> idx(indices.begin(), indices.end());
    const std::size_t ml = (idx.size() + 1) / 2;
    select_kth(idx.data(), 0, idx.size(), ml - 1, less, 0x9e3779b97f4a7c15ull);
    std::uint32_t boundary_right = idx[ml];
    for (std::size_t p = ml + 1; p < idx.size(); ++p)
        if (less(idx[p], boundary_right)) boundary_right = idx[p];
    r.h = 0.5 * (less.proj(idx[ml - 1]) + less.proj(boundary_right));
    r.left.assign(idx.begin(), idx.begin() + ml);
    r.right.assign(idx.begin() + ml, idx.end());
    return r;
}

bsp_tree build_tree(const point_cloud& cloud, const direction_schedule& schedule,
                    std::size_t max_depth, bool parallel) {
    cloud.validate();
    if (schedule.dim != cloud.d)
        throw std::invalid_argument("build_tree: schedule dimension does not match the cloud");
    if (cloud.n > std::numeric_limits<std::uint32_t>::max())
        throw std::invalid_argument("build_tree: cloud too large for 32-bit indices");

    bsp_tree tree;
    tree.n = cloud.n;
    tree.d = cloud.d;
    tree.schedule = schedule;
    // Any budget >= 64 is indistinguishable from unbounded for 32-bit counts.
    const std::size_t budget = std::min<std::size_t>(max_depth, 64);

    size_counts counts;
    counts.prefill(cloud.n, budget);
    tree.nodes.resize(counts.nodes(cloud.n, budget));
    tree.leaves.resize(counts.leafs(cloud.n, budget));
    tree.order.resize(cloud.n);
    std::iota(tree.order.begin(), tree.order.end(), 0u);
    tree.pos_in_order.resize(cloud.n);

    build_ctx ctx{cloud, schedule, budget, counts, tree, parallel};
    const auto root_hi = static_cast<std::uint32_t>(cloud.n);
    if (parallel) {
#pragma omp parallel default(none) shared(ctx, root_hi)
#pragma omp single nowait
        build_rec(ctx, 0, 0, root_hi, 1, 0);
    } else {
        build_rec(ctx, 0, 0, static_cast<std::uint32_t>(cloud.n), 1, 0);
    }

    std::size_t depth = 0;
    for (std::uint32_t leaf : tree.leaves) depth = std::max<std::size_t>(depth, tree.nodes[leaf].depth - 1);
    tree.depth = depth;
    return tree;
}

binary_code encode(const bsp_tree& tree, std::size_t point_index) {
    if (point_index >= tree.n) throw std::invalid_argument("encode: point index out of range");
    binary_code code;
    const std::uint32_t pos = tree.pos_in_order[point_index];
    std::uint32_t id = 0;
    while (tree.nodes[id].right_child != 0) {
        const bsp_node& nd = tree.nodes[id];
        if (pos < nd.lo + nd.left_size) {
            code.push_back(0);
            id = id + 1;
        } else {
            code.push_back(1);
            id = nd.right_child;
        }
    }
    return code;
}

}  // namespace ncmap
