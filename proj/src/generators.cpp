#include "ncmap/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <tuple>

namespace ncmap {

point_cloud gen_grid(std::size_t side) {
    if (side == 0) throw std::invalid_argument("gen_grid: side must be >= 1");
    point_cloud c(side * side, 2);
    std::size_t at = 0;
    for (std::size_t i = 0; i < side; ++i)
        for (std::size_t j = 0; j < side; ++j) {
            c[at][0] = (static_cast<double>(i) + 0.5) / static_cast<double>(side);
            c[at][1] = (static_cast<double>(j) + 0.5) / static_cast<double>(side);
            ++at;
        }
    return c;
}

point_cloud gen_ellipse(std::size_t n, double a, double b) {
    if (n == 0) throw std::invalid_argument("gen_ellipse: n must be >= 1");
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("gen_ellipse: semi-axes must be positive");
    if (n == 1) return make_cloud(2, {0.0, 0.0});

    const double root_n = std::sqrt(static_cast<double>(n));
    // Generous lattice radius so that at least n points are available below it.
    const double r0 = (static_cast<double>(n) + 2.0 * root_n + 16.0) / (std::numbers::pi * a * b) * 1.5;
    const long imax = static_cast<long>(a * std::sqrt(r0)) + 1;
    const long jmax = static_cast<long>(b * std::sqrt(r0)) + 1;

    std::vector<std::tuple<double, long, long>> lattice;
    for (long i = -imax; i <= imax; ++i)
        for (long j = -jmax; j <= jmax; ++j) {
            const double r = (i / a) * (i / a) + (j / b) * (j / b);
            if (r <= r0) lattice.emplace_back(r, i, j);
        }
    if (lattice.size() < n) throw std::logic_error("gen_ellipse: lattice bound too small");
    std::sort(lattice.begin(), lattice.end());

    const double r_th = std::get<0>(lattice[n - 1]);
    std::size_t count = n;
    while (count < lattice.size() && std::get<0>(lattice[count]) <= r_th) ++count;
    // A large tie ring can overshoot the allowed surplus; drop back to exactly n.
    const std::size_t cap = n + static_cast<std::size_t>(std::ceil(root_n));
    if (count > cap) count = n;

    // Pitch puts the threshold ring just inside the ellipse boundary.
    const double pitch = r_th > 0.0 ? 1.0 / std::sqrt(r_th * (1.0 + 1e-12)) : 1.0;

    std::vector<std::pair<long, long>> kept(count);
    for (std::size_t k = 0; k < count; ++k)
        kept[k] = {std::get<1>(lattice[k]), std::get<2>(lattice[k])};
    std::sort(kept.begin(), kept.end());

    point_cloud c(count, 2);
    for (std::size_t k = 0; k < count; ++k) {
        c[k][0] = static_cast<double>(kept[k].first) * pitch;
        c[k][1] = static_cast<double>(kept[k].second) * pitch;
    }
    return c;
}

point_cloud gen_gaussian(std::size_t n, std::uint64_t seed, std::size_t d) {
    if (n == 0) throw std::invalid_argument("gen_gaussian: n must be >= 1");
    if (d == 0) throw std::invalid_argument("gen_gaussian: d must be >= 1");
    std::mt19937_64 rng(seed);
    auto unit_open = [&rng]() {  // (0, 1], 53-bit resolution
        return (static_cast<double>(rng() >> 11) + 1.0) * 0x1p-53;
    };
    point_cloud c(n, d);
    const std::size_t total = n * d;
    for (std::size_t k = 0; k < total; k += 2) {
        const double u1 = unit_open();
        const double u2 = unit_open();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        c.xs[k] = r * std::cos(t);
        if (k + 1 < total) c.xs[k + 1] = r * std::sin(t);
    }
    return c;
}

}  // namespace ncmap
