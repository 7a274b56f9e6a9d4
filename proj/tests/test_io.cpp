#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "ncmap/generators.hpp"
#include "ncmap/io.hpp"

using namespace ncmap;
namespace fs = std::filesystem;

namespace {

std::string tmp(const std::string& name) {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "ncmap_io_tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return (dir / name).string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("format_double is the shortest round-trip form") {
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(-2.25) == "-2.25");
    for (double v : {0.1, 1.0 / 3.0, 3.141592653589793, 1e-300, 123456789.123456789, -0.0}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("cloud csv round-trips exactly") {
    point_cloud c = gen_gaussian(37, 3, 3);
    const std::string path = tmp("cloud.csv");
    write_cloud_csv(path, c);
    point_cloud back = read_cloud_csv(path);
    CHECK(back.n == c.n);
    CHECK(back.d == c.d);
    CHECK(back.xs == c.xs);
}

TEST_CASE("cloud csv reader tolerates CRLF and an announced header") {
    const std::string path = tmp("header.csv");
    write_text(path, "x,y\r\n0.5,0.25\r\n1.5,-2\r\n");
    point_cloud c = read_cloud_csv(path, true);
    CHECK(c.n == 2);
    CHECK(c.d == 2);
    CHECK(c[1][1] == -2.0);
    // without the flag the header row is a parse error
    CHECK_THROWS_AS(read_cloud_csv(path), io_error);
}

TEST_CASE("cloud csv rejects malformed content") {
    const std::string ragged = tmp("ragged.csv");
    write_text(ragged, "1,2\n3\n");
    CHECK_THROWS_AS(read_cloud_csv(ragged), io_error);

    const std::string bad = tmp("bad.csv");
    write_text(bad, "1,2\n3,oops\n");
    CHECK_THROWS_AS(read_cloud_csv(bad), io_error);

    const std::string empty = tmp("empty.csv");
    write_text(empty, "");
    CHECK_THROWS_AS(read_cloud_csv(empty), io_error);

    CHECK_THROWS_AS(read_cloud_csv(tmp("no_such_file.csv")), io_error);
}

TEST_CASE("cloud json round-trips and validates") {
    point_cloud c = gen_gaussian(10, 4, 2);
    const std::string path = tmp("cloud.json");
    write_cloud_json(path, c);
    point_cloud back = read_cloud_json(path);
    CHECK(back.d == 2);
    CHECK(back.xs == c.xs);

    const std::string arity = tmp("arity.json");
    write_text(arity, R"({"d": 2, "points": [[0.0], [1.0, 2.0]]})");
    CHECK_THROWS_AS(read_cloud_json(arity), io_error);

    const std::string keyless = tmp("keyless.json");
    write_text(keyless, R"({"points": []})");
    CHECK_THROWS_AS(read_cloud_json(keyless), io_error);

    const std::string garbage = tmp("garbage.json");
    write_text(garbage, "{not json");
    CHECK_THROWS_AS(read_cloud_json(garbage), io_error);
}

TEST_CASE("read_cloud and write_cloud dispatch on the extension") {
    point_cloud c = gen_grid(2);
    const std::string as_json = tmp("dispatch.json");
    const std::string as_csv = tmp("dispatch.csv");
    write_cloud(as_json, c);
    write_cloud(as_csv, c);
    CHECK(read_cloud_json(as_json).xs == c.xs);   // the .json path wrote JSON
    CHECK(read_cloud_csv(as_csv).xs == c.xs);     // everything else is CSV
    CHECK(read_cloud(as_json).xs == c.xs);
    CHECK(read_cloud(as_csv).xs == c.xs);
}

TEST_CASE("map csv carries the permutation, the reader tags the method") {
    transport_map m;
    m.sigma = {2, 0, 3, 1};
    m.method = map_method::hv;
    m.schedule_fingerprint = 12345u;
    const std::string path = tmp("map.csv");
    write_map_csv(path, m);

    transport_map back = read_map_csv(path, map_method::lex);
    CHECK(back.sigma == m.sigma);
    CHECK(back.method == map_method::lex);
    CHECK_FALSE(back.schedule_fingerprint.has_value());

    // headerless files parse the same way
    const std::string bare = tmp("bare_map.csv");
    write_text(bare, "0,1\n1,0\n");
    transport_map two = read_map_csv(bare);
    CHECK(two.sigma == std::vector<std::uint32_t>{1, 0});
    CHECK(two.method == map_method::hv);
}

TEST_CASE("map csv rejects broken permutations") {
    const std::string dup = tmp("dup_map.csv");
    write_text(dup, "0,1\n0,0\n");
    CHECK_THROWS_AS(read_map_csv(dup), io_error);

    const std::string oob = tmp("oob_map.csv");
    write_text(oob, "0,0\n5,1\n");
    CHECK_THROWS_AS(read_map_csv(oob), io_error);

    const std::string not_perm = tmp("not_perm.csv");
    write_text(not_perm, "0,1\n1,1\n");
    CHECK_THROWS_AS(read_map_csv(not_perm), io_error);
}

TEST_CASE("map json keeps method and fingerprint") {
    point_cloud s = gen_gaussian(16, 5, 2);
    point_cloud t = gen_gaussian(16, 6, 2);
    transport_map m = hv_map(s, t, direction_schedule::axis_cycling(2));
    REQUIRE(m.schedule_fingerprint.has_value());

    const std::string path = tmp("map.json");
    write_map_json(path, m);
    transport_map back = read_map_json(path);
    CHECK(back.sigma == m.sigma);
    CHECK(back.method == map_method::hv);
    CHECK(back.schedule_fingerprint == m.schedule_fingerprint);

    transport_map lex = lex_map(s, t);
    const std::string lex_path = tmp("lex_map.json");
    write_map(lex_path, lex);  // dispatches to JSON
    transport_map lex_back = read_map(lex_path);
    CHECK(lex_back.method == map_method::lex);
    CHECK_FALSE(lex_back.schedule_fingerprint.has_value());

    const std::string mismatch = tmp("n_mismatch.json");
    write_text(mismatch, R"({"n": 3, "method": "hv", "sigma": [0, 1]})");
    CHECK_THROWS_AS(read_map_json(mismatch), io_error);
}

TEST_CASE("tree json mirrors the recursive structure") {
    point_cloud g = gen_grid(2);
    bsp_tree tree = build_tree(g, direction_schedule::axis_cycling(2));
    nlohmann::json j = nlohmann::json::parse(tree_to_json(tree));

    CHECK(j.at("dir").get<std::vector<double>>() == std::vector<double>{1.0, 0.0});
    CHECK(j.at("h").get<double>() == 0.5);
    const auto& left = j.at("left");
    CHECK(left.at("dir").get<std::vector<double>>() == std::vector<double>{0.0, 1.0});
    CHECK(left.at("h").get<double>() == 0.5);
    CHECK(left.at("left").get<std::vector<int>>() == std::vector<int>{0});
    CHECK(left.at("right").get<std::vector<int>>() == std::vector<int>{1});
    const auto& right = j.at("right");
    CHECK(right.at("left").get<std::vector<int>>() == std::vector<int>{2});
    CHECK(right.at("right").get<std::vector<int>>() == std::vector<int>{3});

    const std::string path = tmp("tree.json");
    write_tree_json(path, tree);
    CHECK(nlohmann::json::parse(slurp(path)) == j);
}

TEST_CASE("verification reports serialize with stable keys") {
    point_cloud s = make_cloud(2, {0.0, 0.0, 1.0, 0.0});
    point_cloud t = make_cloud(2, {1.0, 0.0, 0.0, 0.0});
    transport_map swap;
    swap.sigma = {0, 1};  // targets listed exchanged: the points swap places

    collision_report c = check_no_collision(s, swap, t);
    nlohmann::json jc = nlohmann::json::parse(collision_report_to_json(c));
    CHECK(jc.at("status") == "fail");
    REQUIRE(jc.at("witnesses").size() == 1);
    CHECK(jc.at("witnesses")[0].at("i") == 0);
    CHECK(jc.at("witnesses")[0].at("j") == 1);
    CHECK(jc.at("witnesses")[0].at("kappa").get<double>() == doctest::Approx(-1.0));
    CHECK(jc.at("witnesses")[0].at("lambda").get<double>() == doctest::Approx(0.5));
    CHECK(jc.at("pairs_checked") == 1);
    CHECK(jc.at("tolerance").get<double>() == 1e-9);
    CHECK(jc.at("skipped").empty());

    half_space_report h = check_half_space(s, swap, t);
    nlohmann::json jh = nlohmann::json::parse(half_space_report_to_json(h));
    CHECK(jh.at("status") == "fail");
    CHECK(jh.at("witnesses")[0] == nlohmann::json::array({0, 1}));

    transport_map back;
    back.sigma = {1, 0};  // undoes the listing swap: nobody moves
    nlohmann::json ok =
        nlohmann::json::parse(collision_report_to_json(check_no_collision(s, back, t)));
    CHECK(ok.at("status") == "pass");
}

TEST_CASE("frame exports") {
    point_cloud s = make_cloud(2, {0.0, 0.0, 1.0, 1.0});
    point_cloud t = make_cloud(2, {2.0, 0.0, 3.0, 1.0});
    transport_map id;
    id.sigma = {0, 1};
    std::vector<interpolation_frame> frames;
    for (double lam : {0.0, 0.5, 1.0}) frames.push_back(interpolate(s, id, t, lam));

    const std::string dir = tmp("frames");
    write_frames_csv(dir, frames);
    CHECK(read_cloud_csv(dir + "/frame_000.csv").xs == s.xs);
    CHECK(read_cloud_csv(dir + "/frame_002.csv").xs == t.xs);
    CHECK(read_cloud_csv(dir + "/frame_001.csv")[0][0] == 1.0);

    const std::string anim = tmp("anim.json");
    write_animation_json(anim, frames);
    nlohmann::json j = nlohmann::json::parse(slurp(anim));
    REQUIRE(j.at("frames").size() == 3);
    CHECK(j.at("frames")[1].at("lambda").get<double>() == 0.5);
    CHECK(j.at("frames")[2].at("points").size() == 2);
}

TEST_CASE("write failures surface as io_error") {
    point_cloud c = gen_grid(2);
    CHECK_THROWS_AS(write_cloud_csv("/no_such_dir_ncmap/x.csv", c), io_error);
    CHECK_THROWS_AS(write_text("/no_such_dir_ncmap/x.txt", "hi"), io_error);
}
