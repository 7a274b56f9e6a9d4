#pragma once

#include <optional>
#include <vector>

#include "ncmap/cloud.hpp"
#include "ncmap/schedule.hpp"
#include "ncmap/transport.hpp"
#include "ncmap/verify.hpp"

namespace ncmap {

struct interpolation_frame {
    double lambda = 0.0;
    point_cloud points;
};

// Point i moves to (1-lambda) x_i + lambda y_sigma(i).  The endpoint frames
// reproduce source and (reordered) target bit-exactly.
interpolation_frame interpolate(const point_cloud& source, const transport_map& map,
                                const point_cloud& target, double lambda);

// Weighted average of maps from one reference shape to all others.
struct barycenter_spec {
    std::vector<point_cloud> shapes;  // equal n and d
    std::vector<double> weights;      // nonnegative, summing to 1 within 1e-12
    std::size_t reference = 0;        // which shape anchors the maps
};

// Point i of the result is sum_j w_j T_j(x_i) with T_j the HV map from the
// reference shape to shape j (identity for the reference itself).  Zero
// weights contribute nothing, so a one-hot weight vector returns that shape
// exactly, reordered by its map.
point_cloud barycenter(const barycenter_spec& spec, const direction_schedule& schedule);

// Exact certificate first (check_no_collision), then a sweep of the sampled
// frames at lambda = j/samples, j = 0..samples, for coincident points.
struct path_report {
    bool pass = false;
    std::size_t samples = 0;
    std::optional<collision_witness> collision;  // exact checker refused the map
    struct coincidence_t {
        double lambda = 0.0;
        std::uint32_t i = 0, j = 0;
    };
    std::optional<coincidence_t> coincidence;  // two points met in a sampled frame
};

path_report no_collision_along_path(const point_cloud& source, const transport_map& map,
                                    const point_cloud& target, std::size_t samples);

}  // namespace ncmap
