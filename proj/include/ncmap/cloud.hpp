#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace ncmap {

// Uniform-weight point cloud: n points of dimension d, stored flat row-major.
// Represents the empirical measure (1/n) sum of point masses; every coordinate
// must be finite.
struct point_cloud {
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<double> xs;  // n*d values, point i occupies [i*d, (i+1)*d)

    point_cloud() = default;
    point_cloud(std::size_t n_, std::size_t d_) : n(n_), d(d_), xs(n_ * d_, 0.0) {}

    double* operator[](std::size_t i) { return xs.data() + i * d; }
    const double* operator[](std::size_t i) const { return xs.data() + i * d; }

    bool operator==(const point_cloud& o) const = default;

    // Throws std::invalid_argument on empty cloud, d == 0, shape mismatch, or
    // non-finite coordinates.
    void validate() const;
};

// Convenience constructor for literals: make_cloud(2, {0,0, 1,0}) is two 2-d points.
point_cloud make_cloud(std::size_t d, std::initializer_list<double> flat);

std::vector<double> centroid(const point_cloud& cloud);

// y = c + R(angle) * diag(scale) * (x - c).  Angle is radians, counter-clockwise
// (angle pi/2 sends (1,0) to (0,1)).  Rotation requires d == 2; pure scaling
// (angle == 0) works in any dimension.  Empty center means the origin, empty
// scale means unit scales.
struct rigid_transform {
    double angle = 0.0;
    std::vector<double> center;
    std::vector<double> scale;
};

point_cloud apply_transform(const point_cloud& cloud, const rigid_transform& t);

}  // namespace ncmap
