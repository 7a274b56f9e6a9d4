#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "ncmap/ternary.hpp"

using namespace ncmap;

namespace {
binary_code bits(std::initializer_list<int> v) {
    binary_code c;
    for (int b : v) c.push_back(static_cast<std::uint8_t>(b));
    return c;
}
}  // namespace

TEST_CASE("ternary_of evaluates base-3 digit sums") {
    CHECK(ternary_of({}).to_double() == 0.0);
    CHECK(ternary_of(bits({1})).to_double() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(ternary_of(bits({1, 1})).to_double() == doctest::Approx(4.0 / 9.0).epsilon(1e-15));
    CHECK(ternary_of(bits({0, 1})).to_double() == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
    CHECK(ternary_of(bits({0})).to_double() == 0.0);
}

TEST_CASE("all-ones codes approach 1/2 from below") {
    for (unsigned k = 1; k <= 40; ++k) {
        binary_code c(k, 1);
        double v = ternary_of(c).to_double();
        double closed = (1.0 - std::pow(3.0, -double(k))) / 2.0;
        CHECK(v == doctest::Approx(closed).epsilon(1e-14));
        CHECK(v < 0.5);
    }
}

TEST_CASE("ternary values are monotone in the prefix depth") {
    binary_code full = bits({1, 0, 1, 1, 0, 0, 1, 0, 1, 1, 1, 0});
    ternary_value prev = ternary_of({});
    for (std::size_t k = 1; k <= full.size(); ++k) {
        binary_code prefix(full.begin(), full.begin() + k);
        ternary_value cur = ternary_of(prefix);
        CHECK(compare(prev, cur) <= 0);
        prev = cur;
    }
}

TEST_CASE("compare orders values exactly") {
    CHECK(compare(ternary_of(bits({0})), ternary_of(bits({1}))) < 0);
    CHECK(compare(ternary_of(bits({1})), ternary_of(bits({1}))) == 0);
    CHECK(compare(ternary_of(bits({1, 0})), ternary_of(bits({0, 1}))) > 0);
    // 1/3 == 9/27 at different depths
    CHECK(compare(ternary_of(bits({1})), ternary_of(bits({1, 0, 0}))) == 0);
}

TEST_CASE("depth guards keep the arithmetic exact") {
    binary_code deep(41, 0);
    CHECK_THROWS_AS(ternary_of(deep), std::invalid_argument);
    binary_code bad = bits({0, 2});
    CHECK_THROWS_AS(ternary_of(bad), std::invalid_argument);

    ternary_value a = ternary_of(binary_code(40, 1));
    ternary_value b = ternary_of(binary_code(40, 1));
    CHECK(compare(a, b) == 0);  // combined depth exactly 80 still allowed
    ternary_value c{0, 41};
    CHECK_THROWS_AS(compare(c, c), std::invalid_argument);
}

TEST_CASE("separation gap for the documented code pairs") {
    separation_gap_result g01 = separation_gap(bits({0}), bits({1}));
    CHECK(g01.distinct);
    CHECK(g01.common_prefix == 0);
    CHECK(g01.gap() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(g01.bound() == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(g01.gap() >= g01.bound());

    separation_gap_result g1011 = separation_gap(bits({1, 0}), bits({1, 1}));
    CHECK(g1011.common_prefix == 1);
    CHECK(g1011.gap() == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
    CHECK(g1011.bound() == doctest::Approx(1.0 / 18.0).epsilon(1e-15));

    separation_gap_result same = separation_gap(bits({1, 0, 1}), bits({1, 0, 1}));
    CHECK_FALSE(same.distinct);
    CHECK(same.gap() == 0.0);
    CHECK(same.bound() == 0.0);
}

TEST_CASE("distinct leaf codes never nest") {
    CHECK_THROWS_AS(separation_gap(bits({0}), bits({0, 0})), std::invalid_argument);
    CHECK_THROWS_AS(separation_gap(bits({1, 1}), bits({1})), std::invalid_argument);
    CHECK_THROWS_AS(separation_gap({}, bits({1})), std::invalid_argument);
}

TEST_CASE("gap clears the finite-depth bound for every code pair up to length 8") {
    // Exhaustive: all 2^0 + ... + 2^8 = 511 codes, all non-nesting pairs.
    std::vector<binary_code> codes;
    codes.push_back({});
    for (int len = 1; len <= 8; ++len)
        for (unsigned m = 0; m < (1u << len); ++m) {
            binary_code c(len);
            for (int i = 0; i < len; ++i) c[i] = (m >> (len - 1 - i)) & 1u;
            codes.push_back(std::move(c));
        }
    std::size_t checked = 0;
    for (std::size_t i = 0; i < codes.size(); ++i)
        for (std::size_t j = i + 1; j < codes.size(); ++j) {
            const binary_code& a = codes[i];
            const binary_code& b = codes[j];
            const std::size_t m = std::min(a.size(), b.size());
            if (std::equal(a.begin(), a.begin() + m, b.begin())) continue;  // nesting pair
            separation_gap_result g = separation_gap(a, b);  // throws if the bound fails
            CHECK(g.gap() >= g.bound() * (1.0 - 1e-15));
            ++checked;
        }
    CHECK(checked > 100000);
}
