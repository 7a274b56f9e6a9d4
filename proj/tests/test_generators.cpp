#include <cmath>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "ncmap/generators.hpp"

using namespace ncmap;

TEST_CASE("gen_grid produces cell centers of the unit square") {
    point_cloud g = gen_grid(2);
    REQUIRE(g.n == 4);
    REQUIRE(g.d == 2);
    // i outer, j inner
    CHECK(g[0][0] == 0.25);
    CHECK(g[0][1] == 0.25);
    CHECK(g[1][0] == 0.25);
    CHECK(g[1][1] == 0.75);
    CHECK(g[2][0] == 0.75);
    CHECK(g[2][1] == 0.25);
    CHECK(g[3][0] == 0.75);
    CHECK(g[3][1] == 0.75);

    point_cloud g8 = gen_grid(8);
    CHECK(g8.n == 64);
    for (std::size_t i = 0; i < g8.n; ++i) {
        CHECK(g8[i][0] > 0.0);
        CHECK(g8[i][0] < 1.0);
        CHECK(g8[i][1] > 0.0);
        CHECK(g8[i][1] < 1.0);
    }
    CHECK_THROWS_AS(gen_grid(0), std::invalid_argument);
}

TEST_CASE("gen_ellipse counts are frozen for the default semi-axes") {
    // Deterministic lattice construction: counts land in [n, n + ceil(sqrt n)].
    CHECK(gen_ellipse(16, 2.0, 1.0).n == 17);
    CHECK(gen_ellipse(64, 2.0, 1.0).n == 67);
    CHECK(gen_ellipse(256, 2.0, 1.0).n == 257);
    CHECK(gen_ellipse(1024, 2.0, 1.0).n == 1031);

    point_cloud one = gen_ellipse(1, 2.0, 1.0);
    REQUIRE(one.n == 1);
    CHECK(one[0][0] == 0.0);
    CHECK(one[0][1] == 0.0);

    CHECK_THROWS_AS(gen_ellipse(0, 2.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(gen_ellipse(16, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("gen_ellipse points fill the ellipse quasi-uniformly") {
    for (std::size_t n : {16, 64, 256}) {
        point_cloud e = gen_ellipse(n, 2.0, 1.0);
        REQUIRE(e.n >= n);
        REQUIRE(e.n <= n + static_cast<std::size_t>(std::ceil(std::sqrt(double(n)))));
        double nn_min = 1e300, nn_max = 0.0;
        for (std::size_t i = 0; i < e.n; ++i) {
            CHECK(e[i][0] * e[i][0] / 4.0 + e[i][1] * e[i][1] <= 1.0 + 1e-12);
            double best = 1e300;
            for (std::size_t j = 0; j < e.n; ++j) {
                if (i == j) continue;
                double dx = e[i][0] - e[j][0], dy = e[i][1] - e[j][1];
                best = std::min(best, std::hypot(dx, dy));
            }
            nn_min = std::min(nn_min, best);
            nn_max = std::max(nn_max, best);
        }
        CHECK(nn_max / nn_min <= 2.5);  // quasi-uniformity contract
    }
}

TEST_CASE("gen_ellipse points are distinct and sorted by lattice index") {
    point_cloud e = gen_ellipse(64, 2.0, 1.0);
    std::set<std::pair<double, double>> seen;
    for (std::size_t i = 0; i < e.n; ++i) seen.insert({e[i][0], e[i][1]});
    CHECK(seen.size() == e.n);
}

TEST_CASE("gen_gaussian matches the reference stream") {
    // Frozen against an independent mt19937_64 + Box-Muller implementation.
    point_cloud g = gen_gaussian(3, 1, 2);
    const double expect[6] = {1.312851528985561,  1.5159465040060633, 1.2506039211781215,
                              0.1661713810523931, 1.2285219999610568, -0.7650179338846085};
    for (std::size_t k = 0; k < 6; ++k)
        CHECK(g.xs[k] == doctest::Approx(expect[k]).epsilon(1e-14));

    point_cloud g3 = gen_gaussian(2, 5, 3);
    const double expect3[6] = {0.8639450355930127,  0.21313376994404487, -0.7747838515274029,
                               -1.5428727846644488, 1.8030460589590969,  1.247709740787123};
    for (std::size_t k = 0; k < 6; ++k)
        CHECK(g3.xs[k] == doctest::Approx(expect3[k]).epsilon(1e-14));
}

TEST_CASE("gen_gaussian is reproducible and seed-sensitive") {
    point_cloud a = gen_gaussian(100, 42, 2);
    point_cloud b = gen_gaussian(100, 42, 2);
    CHECK(a == b);
    point_cloud c = gen_gaussian(100, 43, 2);
    CHECK(a.xs != c.xs);
}

TEST_CASE("gen_gaussian sample means are near zero at n=4096") {
    point_cloud g = gen_gaussian(4096, 1, 2);
    double mean[2] = {0.0, 0.0};
    for (std::size_t i = 0; i < g.n; ++i) {
        mean[0] += g[i][0];
        mean[1] += g[i][1];
    }
    mean[0] /= double(g.n);
    mean[1] /= double(g.n);
    CHECK(std::fabs(mean[0]) < 0.1);
    CHECK(std::fabs(mean[1]) < 0.1);
}

TEST_CASE("gen_gaussian handles odd total coordinate counts") {
    point_cloud g = gen_gaussian(3, 7, 3);  // 9 coordinates, last Box-Muller pair truncated
    CHECK(g.n == 3);
    CHECK(g.d == 3);
    g.validate();
    CHECK_THROWS_AS(gen_gaussian(0, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(gen_gaussian(4, 1, 0), std::invalid_argument);
}
