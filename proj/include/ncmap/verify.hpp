#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ncmap/cloud.hpp"
#include "ncmap/transport.hpp"

namespace ncmap {

// Per-pair outcome.  Pairs of exactly coincident source points are skipped:
// the no-collision property is ill-posed for them, and both checkers must
// agree on the skip for pairwise equivalence to hold.
enum class pair_verdict { ok, violation, skipped };

// Relative collinearity tolerance shared by both checkers.  The half-space
// checker reuses it to decide "antiparallel", otherwise the two sides of the
// equivalence could split on pairs inside the tolerance band.
inline constexpr double collision_band_atol = 1e-9;

// A colliding pair: the image displacement is a strictly negative multiple of
// the source displacement, T(x_i) - T(x_j) = kappa (x_i - x_j) with kappa < 0,
// so both particles sit at the same point at time lambda = 1/(1-kappa), which
// lies in (0,1).
struct collision_witness {
    std::uint32_t i = 0, j = 0;
    double kappa = 0.0;
    double lambda = 0.0;
};

// A direction v with (x_j - x_i).v >= 0 and (T(x_j) - T(x_i)).v >= 0, at
// least one strict: parallel separating hyperplanes with matched sides.
struct half_space_witness {
    std::uint32_t i = 0, j = 0;
    std::vector<double> v;
};

struct collision_report {
    bool pass = false;
    std::vector<collision_witness> witnesses;                      // sorted by (i, j)
    std::vector<std::pair<std::uint32_t, std::uint32_t>> skipped;  // coincident source pairs
    std::size_t pairs_checked = 0;                                 // excludes skipped
    double atol = 0.0;
};

struct half_space_report {
    bool pass = false;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> failures;  // no certifying direction
    std::vector<std::pair<std::uint32_t, std::uint32_t>> skipped;
    std::size_t pairs_checked = 0;
    double stol = 0.0;
};

// Antiparallel-collinearity test for one pair.  Collinear means every 2x2
// minor of (dx, dT) is at most atol * max(|dx|, |dT|)^2; a collision
// additionally needs dx . dT < 0.  In d = 1 there are no minors and
// collinearity always holds.
pair_verdict collision_pair(const double* xi, const double* xj, const double* ti, const double* tj,
                            std::size_t d, double atol, collision_witness* w = nullptr);

// First decides antiparallelism with the same collinearity band as
// collision_pair (no direction can certify such a pair), then searches for a
// certifying direction: dx/|dx| (covers coincident images and every acute
// pair), dT/|dT|, then the normalized bisector of the two, which certifies
// every remaining pair with margin ~|dx| * angle-from-antiparallel / 2, far
// above rounding noise once outside the band.  Dot products below noise level
// are snapped to zero so they cannot fake the strict inequality.  The weak
// inequalities are taken at >= -stol, the strict one at > stol.
pair_verdict half_space_pair(const double* xi, const double* xj, const double* ti, const double* tj,
                             std::size_t d, double stol, half_space_witness* w = nullptr);

// Exhaustive O(n^2) pairwise certification; parallel=false runs the plain
// serial reference loop, and both produce identical reports (witnesses are
// sorted by pair).
collision_report check_no_collision(const point_cloud& source, const transport_map& map,
                                    const point_cloud& target, double atol = collision_band_atol,
                                    bool parallel = true);

half_space_report check_half_space(const point_cloud& source, const transport_map& map,
                                   const point_cloud& target, double stol = 0.0,
                                   bool parallel = true);

}  // namespace ncmap
