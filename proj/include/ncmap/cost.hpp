#pragma once

#include <string>

#include "ncmap/cloud.hpp"
#include "ncmap/schedule.hpp"
#include "ncmap/transport.hpp"

namespace ncmap {

// c(x, y) = ||x - y||_p ^ q with p in {1, 2, inf} and q in {1, 2}.
enum class norm_p { l1, l2, linf };

struct cost_spec {
    norm_p p = norm_p::l2;
    int q = 2;
};

// The six combinations in a fixed order (p-major), used by tables and tests.
inline constexpr cost_spec all_cost_specs[6] = {
    {norm_p::l1, 1}, {norm_p::l1, 2}, {norm_p::l2, 1},
    {norm_p::l2, 2}, {norm_p::linf, 1}, {norm_p::linf, 2},
};

std::string cost_family_name(cost_spec spec);     // "p1q1" .. "pinfq2"
cost_spec parse_cost_spec(const std::string& s);  // "p:q", e.g. "2:2", "inf:1"

double point_cost(const double* x, const double* y, std::size_t d, cost_spec spec);

// Mean per point: (1/n) sum of c(x_i, y_sigma(i)); the uniform weights of the
// empirical measure.
double map_cost(const point_cloud& source, const transport_map& map, const point_cloud& target,
                cost_spec spec);

// Exact minimum-mean-cost bijection via shortest augmenting paths with dual
// potentials, O(n^3); the ground truth for ratio columns.  Materializes the
// dense cost matrix, so the cap guards both time and memory.
transport_map optimal_assignment(const point_cloud& source, const point_cloud& target,
                                 cost_spec spec, std::size_t cap = 4096);

// map_cost(method) / map_cost(oracle).  Exactly 1 for the oracle itself; a
// zero-cost oracle (source == target) yields 1 when the method also reaches
// zero and +inf otherwise.  HV consumes the schedule (axis-cycling by default).
double cost_ratio(const point_cloud& source, const point_cloud& target, cost_spec spec,
                  map_method method, const direction_schedule* schedule = nullptr,
                  std::size_t cap = 4096);

}  // namespace ncmap
