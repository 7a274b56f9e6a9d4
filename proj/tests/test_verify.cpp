#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "ncmap/generators.hpp"
#include "ncmap/transport.hpp"
#include "ncmap/verify.hpp"

using namespace ncmap;

namespace {

const direction_schedule hv2 = direction_schedule::axis_cycling(2);

transport_map identity_map(std::size_t n) {
    transport_map m;
    m.sigma.resize(n);
    std::iota(m.sigma.begin(), m.sigma.end(), 0u);
    return m;
}

transport_map random_perm(std::size_t n, std::uint64_t seed) {
    transport_map m = identity_map(n);
    std::mt19937_64 rng(seed);
    std::shuffle(m.sigma.begin(), m.sigma.end(), rng);
    return m;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> witness_pairs(const collision_report& r) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (const collision_witness& w : r.witnesses) out.emplace_back(w.i, w.j);
    return out;
}

// Theorem-style equivalence: a pair collides iff it has no separating
// direction, and both checkers skip exactly the coincident source pairs.
void check_equivalence(const point_cloud& cloud, const transport_map& map,
                       const point_cloud& target) {
    collision_report c = check_no_collision(cloud, map, target);
    half_space_report h = check_half_space(cloud, map, target);
    CHECK(c.pass == h.pass);
    CHECK(witness_pairs(c) == h.failures);
    CHECK(c.skipped == h.skipped);
    CHECK(c.pairs_checked == h.pairs_checked);
}

}  // namespace

TEST_CASE("identity maps pass both checkers") {
    point_cloud g = gen_gaussian(64, 11, 2);
    transport_map id = identity_map(64);
    collision_report c = check_no_collision(g, id, g);
    CHECK(c.pass);
    CHECK(c.witnesses.empty());
    CHECK(c.pairs_checked == 64 * 63 / 2);
    half_space_report h = check_half_space(g, id, g);
    CHECK(h.pass);
    CHECK(h.failures.empty());
}

TEST_CASE("the head-on swap collides at the midpoint") {
    // The motion swaps the two points: i stays at index i, but the target
    // cloud lists the positions exchanged.
    point_cloud s = make_cloud(2, {0.0, 0.0, 1.0, 0.0});
    point_cloud t = make_cloud(2, {1.0, 0.0, 0.0, 0.0});
    transport_map swap{{0, 1}, map_method::lex, {}};

    collision_report c = check_no_collision(s, swap, t);
    REQUIRE_FALSE(c.pass);
    REQUIRE(c.witnesses.size() == 1);
    const collision_witness& w = c.witnesses.front();
    CHECK(w.i == 0);
    CHECK(w.j == 1);
    CHECK(w.kappa == doctest::Approx(-1.0));
    CHECK(w.lambda == doctest::Approx(0.5));

    half_space_report h = check_half_space(s, swap, t);
    CHECK_FALSE(h.pass);
    REQUIRE(h.failures.size() == 1);
    CHECK(h.failures.front() == std::pair<std::uint32_t, std::uint32_t>{0, 1});
}

TEST_CASE("collision witnesses satisfy the interpolation residual") {
    // 1-D reversal: every pair collides, each with its own kappa and lambda.
    point_cloud s = make_cloud(1, {0.0, 1.0, 3.0, 6.0});
    point_cloud t = s;
    transport_map rev{{3, 2, 1, 0}, map_method::lex, {}};

    collision_report c = check_no_collision(s, rev, t);
    CHECK_FALSE(c.pass);
    CHECK(c.witnesses.size() == 6);
    for (const collision_witness& w : c.witnesses) {
        CHECK(w.kappa < 0.0);
        CHECK(w.lambda > 0.0);
        CHECK(w.lambda < 1.0);
        const double dx = s[w.i][0] - s[w.j][0];
        const double dT = t[rev.sigma[w.i]][0] - t[rev.sigma[w.j]][0];
        CHECK(std::fabs((1.0 - w.lambda) * dx + w.lambda * dT) <=
              1e-9 * std::max(std::fabs(dx), std::fabs(dT)));
    }
    check_equivalence(s, rev, t);
}

TEST_CASE("hv maps on rotated grids are certified collision-free") {
    point_cloud g = gen_grid(8);
    point_cloud r = apply_transform(g, {-0.7853981633974483, {}, {}});
    transport_map m = hv_map(g, r, hv2);
    collision_report c = check_no_collision(g, m, r);
    CHECK(c.pass);
    CHECK(c.witnesses.empty());
    half_space_report h = check_half_space(g, m, r);
    CHECK(h.pass);
}

TEST_CASE("tied projections can void the guarantee, and both checkers say so") {
    // gen_grid(6) rotated by 45 degrees shares projections between rows, and
    // the rank matching happens to order one tied pair oppositely on the two
    // sides: a genuine head-on pair.  The verifier must report it, and the
    // half-space checker must refuse to certify it.
    point_cloud g = gen_grid(6);
    point_cloud r = apply_transform(g, {-0.7853981633974483, {}, {}});
    transport_map m = hv_map(g, r, hv2);
    collision_report c = check_no_collision(g, m, r);
    CHECK_FALSE(c.pass);
    CHECK(c.witnesses.size() > 0);
    for (const collision_witness& w : c.witnesses) {
        CHECK(w.kappa < 0.0);
        CHECK(w.lambda > 0.0);
        CHECK(w.lambda < 1.0);
    }
    check_equivalence(g, m, r);
}

TEST_CASE("checkers agree pair-by-pair on random permutations") {
    // 1-D and lattice clouds make collisions generic; Gaussian clouds mostly
    // produce clean passes.  Equivalence must hold everywhere.
    for (std::uint64_t seed : {1, 2, 3, 4}) {
        point_cloud line = gen_gaussian(40, seed, 1);
        check_equivalence(line, random_perm(40, seed), line);

        point_cloud grid = gen_grid(6);
        check_equivalence(grid, random_perm(36, seed + 100), grid);

        point_cloud a = gen_gaussian(48, seed + 200, 2);
        point_cloud b = gen_gaussian(48, seed + 300, 2);
        check_equivalence(a, random_perm(48, seed + 400), b);
    }
}

TEST_CASE("coincident source points are skipped by both checkers") {
    point_cloud s = make_cloud(2, {1.0, 1.0, 1.0, 1.0, 0.0, 0.0});
    point_cloud t = make_cloud(2, {2.0, 2.0, 3.0, 3.0, 4.0, 4.0});
    transport_map m{{0, 1, 2}, map_method::lex, {}};

    collision_report c = check_no_collision(s, m, t);
    REQUIRE(c.skipped.size() == 1);
    CHECK(c.skipped.front() == std::pair<std::uint32_t, std::uint32_t>{0, 1});
    CHECK(c.pairs_checked == 2);

    half_space_report h = check_half_space(s, m, t);
    CHECK(h.skipped == c.skipped);
    CHECK(h.pairs_checked == 2);
    check_equivalence(s, m, t);
}

TEST_CASE("collinearity tolerance is relative to the pair scale") {
    // dx = (-1e8, 0) and dT = (1e8, 1): the cross minor is 1e8, which is 1e-8
    // of scale^2.  Below that tolerance the pair counts as non-collinear and
    // passes; above it the pair is antiparallel and collides.
    point_cloud s = make_cloud(2, {0.0, 0.0, 1e8, 0.0});
    point_cloud t = make_cloud(2, {1e8, 1.0, 0.0, 0.0});
    transport_map m{{0, 1}, map_method::lex, {}};
    CHECK(check_no_collision(s, m, t, 1e-12).pass);
    CHECK_FALSE(check_no_collision(s, m, t, 1e-7).pass);
}

TEST_CASE("serial and parallel checkers produce identical reports") {
    point_cloud a = gen_gaussian(96, 21, 2);
    point_cloud b = gen_gaussian(96, 22, 2);
    transport_map perm = random_perm(96, 5);
    collision_report cs = check_no_collision(a, perm, b, 1e-9, false);
    collision_report cp = check_no_collision(a, perm, b, 1e-9, true);
    CHECK(cs.pass == cp.pass);
    CHECK(witness_pairs(cs) == witness_pairs(cp));
    CHECK(cs.skipped == cp.skipped);
    CHECK(cs.pairs_checked == cp.pairs_checked);

    point_cloud line = gen_gaussian(80, 31, 1);
    transport_map lperm = random_perm(80, 6);
    collision_report ls = check_no_collision(line, lperm, line, 1e-9, false);
    collision_report lp = check_no_collision(line, lperm, line, 1e-9, true);
    REQUIRE(ls.witnesses.size() == lp.witnesses.size());
    for (std::size_t k = 0; k < ls.witnesses.size(); ++k) {
        CHECK(ls.witnesses[k].kappa == lp.witnesses[k].kappa);
        CHECK(ls.witnesses[k].lambda == lp.witnesses[k].lambda);
    }
    half_space_report hs = check_half_space(line, lperm, line, 0.0, false);
    half_space_report hp = check_half_space(line, lperm, line, 0.0, true);
    CHECK(hs.failures == hp.failures);
}

TEST_CASE("one-dimensional pairs are always collinear") {
    point_cloud s = make_cloud(1, {0.0, 1.0});
    point_cloud t = make_cloud(1, {0.0, 1.0});
    transport_map id = identity_map(2);
    CHECK(check_no_collision(s, id, t).pass);  // kappa = +1, no collision
    transport_map swap{{1, 0}, map_method::lex, {}};
    CHECK_FALSE(check_no_collision(s, swap, t).pass);  // kappa = -1
}

TEST_CASE("checkers reject inconsistent inputs") {
    point_cloud a = gen_grid(2);
    point_cloud b = gen_grid(3);
    transport_map id4 = identity_map(4);
    CHECK_THROWS_AS(check_no_collision(a, id4, b), std::invalid_argument);
    transport_map id9 = identity_map(9);
    CHECK_THROWS_AS(check_half_space(a, id9, a), std::invalid_argument);
}
