#include "ncmap/cloud.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ncmap {

void point_cloud::validate() const {
    if (n == 0) throw std::invalid_argument("point_cloud: n must be >= 1");
    if (d == 0) throw std::invalid_argument("point_cloud: d must be >= 1");
    if (xs.size() != n * d)
        throw std::invalid_argument("point_cloud: storage size " + std::to_string(xs.size()) +
                                    " does not match n*d = " + std::to_string(n * d));
    for (double v : xs)
        if (!std::isfinite(v)) throw std::invalid_argument("point_cloud: non-finite coordinate");
}

point_cloud make_cloud(std::size_t d, std::initializer_list<double> flat) {
    if (d == 0 || flat.size() % d != 0)
        throw std::invalid_argument("make_cloud: flat list length must be a multiple of d");
    point_cloud c(flat.size() / d, d);
    std::copy(flat.begin(), flat.end(), c.xs.begin());
    c.validate();
    return c;
}

std::vector<double> centroid(const point_cloud& cloud) {
    cloud.validate();
    std::vector<double> c(cloud.d, 0.0);
    for (std::size_t i = 0; i < cloud.n; ++i)
        for (std::size_t k = 0; k < cloud.d; ++k) c[k] += cloud[i][k];
    for (double& v : c) v /= static_cast<double>(cloud.n);
    return c;
}

point_cloud apply_transform(const point_cloud& cloud, const rigid_transform& t) {
    cloud.validate();
    const std::size_t d = cloud.d;
    if (!t.center.empty() && t.center.size() != d)
        throw std::invalid_argument("apply_transform: center dimension mismatch");
    if (!t.scale.empty() && t.scale.size() != d)
        throw std::invalid_argument("apply_transform: scale dimension mismatch");
    if (t.angle != 0.0 && d != 2)
        throw std::invalid_argument("apply_transform: rotation requires d == 2");
    for (double s : t.scale)
        if (!(s > 0.0)) throw std::invalid_argument("apply_transform: scale factors must be positive");

    const double ca = std::cos(t.angle), sa = std::sin(t.angle);
    point_cloud out(cloud.n, d);
    std::vector<double> v(d);
    for (std::size_t i = 0; i < cloud.n; ++i) {
        for (std::size_t k = 0; k < d; ++k) {
            double x = cloud[i][k] - (t.center.empty() ? 0.0 : t.center[k]);
            v[k] = t.scale.empty() ? x : x * t.scale[k];
        }
        if (t.angle != 0.0) {
            double x = v[0], y = v[1];
            v[0] = ca * x - sa * y;
            v[1] = sa * x + ca * y;
        }
        for (std::size_t k = 0; k < d; ++k)
            out[i][k] = v[k] + (t.center.empty() ? 0.0 : t.center[k]);
    }
    return out;
}

}  // namespace ncmap
