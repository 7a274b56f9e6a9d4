#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ncmap/cost.hpp"
#include "ncmap/experiments.hpp"
#include "ncmap/generators.hpp"
#include "ncmap/interp.hpp"
#include "ncmap/io.hpp"
#include "ncmap/transport.hpp"
#include "ncmap/verify.hpp"

namespace {

using namespace ncmap;

// Default outputs land in $NCMAP_OUT_DIR (falling back to the working
// directory); explicit --out paths are taken verbatim.
std::string resolve_out(const std::string& explicit_out, const std::string& fallback_name) {
    if (!explicit_out.empty()) return explicit_out;
    const char* dir = std::getenv("NCMAP_OUT_DIR");
    return (std::filesystem::path(dir ? dir : ".") / fallback_name).string();
}

// "hv" cycles the coordinate axes; "axes:2,1" cycles the listed 1-based axes.
direction_schedule parse_schedule(const std::string& text, std::size_t d) {
    if (text == "hv") return direction_schedule::axis_cycling(d);
    const std::string prefix = "axes:";
    if (text.rfind(prefix, 0) != 0)
        throw std::invalid_argument("--schedule must be \"hv\" or \"axes:i,j,...\"");
    std::vector<std::vector<double>> dirs;
    std::size_t start = prefix.size();
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::size_t end = (comma == std::string::npos) ? text.size() : comma;
        std::size_t axis = 0;
        try {
            axis = std::stoul(text.substr(start, end - start));
        } catch (const std::exception&) {
            throw std::invalid_argument("--schedule axes must be integers");
        }
        if (axis < 1 || axis > d)
            throw std::invalid_argument("--schedule axis " + std::to_string(axis) +
                                        " out of range for dimension " + std::to_string(d));
        std::vector<double> v(d, 0.0);
        v[axis - 1] = 1.0;
        dirs.push_back(std::move(v));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (dirs.empty()) throw std::invalid_argument("--schedule axes list is empty");
    return direction_schedule::explicit_dirs(std::move(dirs));
}

std::vector<double> parse_vector(const std::string& text, const char* flag) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::size_t end = (comma == std::string::npos) ? text.size() : comma;
        try {
            out.push_back(std::stod(text.substr(start, end - start)));
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string(flag) + ": expected comma-separated numbers");
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

bool want_json(const std::string& format, const std::string& out_path) {
    if (format == "json") return true;
    if (format == "csv") return false;
    auto dot = out_path.rfind('.');
    return dot != std::string::npos && out_path.substr(dot) == ".json";
}

struct gen_args {
    std::string kind;
    std::size_t n = 64;
    std::uint64_t seed = 1;
    std::size_t d = 2;
    double a = 2.0, b = 1.0;
    double rotate = 0.0;
    std::string center, scale;
    std::string out, format;
};

int cmd_gen(const gen_args& a) {
    point_cloud cloud;
    if (a.kind == "grid") {
        auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(a.n))));
        if (side * side != a.n)
            throw std::invalid_argument("gen grid: --n must be a perfect square");
        cloud = gen_grid(side);
    } else if (a.kind == "ellipse") {
        cloud = gen_ellipse(a.n, a.a, a.b);
    } else if (a.kind == "gaussian") {
        cloud = gen_gaussian(a.n, a.seed, a.d);
    } else {
        throw std::invalid_argument("gen: kind must be grid, ellipse, or gaussian");
    }
    if (a.rotate != 0.0 || !a.center.empty() || !a.scale.empty()) {
        rigid_transform t;
        t.angle = a.rotate;
        if (a.center == "centroid")
            t.center = centroid(cloud);
        else if (!a.center.empty())
            t.center = parse_vector(a.center, "--center");
        if (!a.scale.empty()) t.scale = parse_vector(a.scale, "--scale");
        cloud = apply_transform(cloud, t);
    }
    std::string out = resolve_out(a.out, want_json(a.format, a.out) ? "cloud.json" : "cloud.csv");
    if (want_json(a.format, out))
        write_cloud_json(out, cloud);
    else
        write_cloud_csv(out, cloud);
    std::cout << "wrote " << out << " (" << cloud.n << " points, d=" << cloud.d << ")\n";
    return 0;
}

struct map_args {
    std::string source, target;
    std::string method = "hv";
    std::string schedule = "hv";
    std::string cost = "2:2";
    std::size_t oracle_cap = 4096;
    bool header = false;
    std::string out, format, dump_tree;
};

int cmd_map(const map_args& a) {
    point_cloud source = read_cloud(a.source, a.header);
    point_cloud target = read_cloud(a.target, a.header);
    map_method method = method_from_name(a.method);
    direction_schedule schedule = parse_schedule(a.schedule, source.d);

    auto t0 = std::chrono::steady_clock::now();
    transport_map map;
    switch (method) {
        case map_method::hv: map = hv_map(source, target, schedule); break;
        case map_method::lex: map = lex_map(source, target); break;
        case map_method::oracle:
            map = optimal_assignment(source, target, parse_cost_spec(a.cost), a.oracle_cap);
            break;
    }
    auto t1 = std::chrono::steady_clock::now();

    std::string out = resolve_out(a.out, want_json(a.format, a.out) ? "map.json" : "map.csv");
    if (want_json(a.format, out))
        write_map_json(out, map);
    else
        write_map_csv(out, map);

    if (!a.dump_tree.empty())
        write_tree_json(a.dump_tree, build_tree(source, schedule));

    std::cout << "n: " << source.n << "\n";
    std::cout << "method: " << method_name(map.method) << "\n";
    std::cout << "wall_time_s: " << format_double(std::chrono::duration<double>(t1 - t0).count())
              << "\n";
    for (cost_spec spec : all_cost_specs)
        std::cout << "mean_cost_" << cost_family_name(spec) << ": "
                  << format_double(map_cost(source, map, target, spec)) << "\n";
    std::cout << "wrote " << out << "\n";
    return 0;
}

struct table_args {
    std::string experiment;
    table_options opt;
    std::string schedule = "hv";
    std::string out;
};

int cmd_table(const table_args& a) {
    experiment_kind kind = experiment_from_name(a.experiment);
    table_options opt = a.opt;
    opt.schedule = parse_schedule(a.schedule, 2);
    for (std::size_t n : opt.sizes)
        if (n > opt.oracle_cap)
            std::cerr << "warning: n=" << n << " exceeds the oracle cap (" << opt.oracle_cap
                      << "); ratio column omitted\n";
    std::vector<table_row> rows = ncmap::run_table(kind, opt);
    std::string csv = table_to_csv(rows);
    std::string out = resolve_out(a.out, "table.csv");
    write_text(out, csv);
    std::cout << "wrote " << out << " (" << rows.size() << " rows)\n";
    return 0;
}

struct interp_args {
    std::string source, target;
    std::string map_file;
    std::string method = "hv";
    std::string schedule = "hv";
    std::size_t frames = 5;
    bool header = false;
    std::string out, format;
};

int cmd_interp(const interp_args& a) {
    if (a.frames < 2) throw std::invalid_argument("interp: --frames must be >= 2");
    point_cloud source = read_cloud(a.source, a.header);
    point_cloud target = read_cloud(a.target, a.header);
    transport_map map;
    if (!a.map_file.empty()) {
        map = read_map(a.map_file);
    } else {
        map_method method = method_from_name(a.method);
        if (method == map_method::hv)
            map = hv_map(source, target, parse_schedule(a.schedule, source.d));
        else if (method == map_method::lex)
            map = lex_map(source, target);
        else
            throw std::invalid_argument("interp: --method must be hv or lex (or pass --map)");
    }
    std::vector<interpolation_frame> frames;
    frames.reserve(a.frames);
    for (std::size_t j = 0; j < a.frames; ++j) {
        double lambda = static_cast<double>(j) / static_cast<double>(a.frames - 1);
        frames.push_back(interpolate(source, map, target, lambda));
    }
    if (want_json(a.format, a.out)) {
        std::string out = resolve_out(a.out, "animation.json");
        write_animation_json(out, frames);
        std::cout << "wrote " << out << " (" << frames.size() << " frames)\n";
    } else {
        std::string out = resolve_out(a.out, "frames");
        write_frames_csv(out, frames);
        std::cout << "wrote " << out << "/frame_*.csv (" << frames.size() << " frames)\n";
    }
    return 0;
}

struct bench_args {
    std::vector<std::size_t> sizes = {4096, 16384, 65536, 262144};
    std::string schedule = "hv";
    std::size_t d = 2;
    std::uint64_t seed = 1;
    int repeats = 5;
    std::string out;
};

int cmd_bench(const bench_args& a) {
    std::vector<bench_result> results =
        bench_hv(a.sizes, parse_schedule(a.schedule, a.d), a.seed, a.repeats);
    std::string csv = "n,seconds,ratio_vs_prev\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
        csv += std::to_string(results[i].n) + ',' + format_double(results[i].seconds) + ',';
        if (i > 0 && results[i - 1].seconds > 0.0)
            csv += format_double(results[i].seconds / results[i - 1].seconds);
        csv += '\n';
    }
    std::cout << csv;
    if (!a.out.empty()) write_text(a.out, csv);
    return 0;
}

struct verify_args {
    std::string source, map_file, target;
    double atol = 1e-9;
    bool half_space = false;
    bool serial = false;
    bool header = false;
    std::string out;
};

int cmd_verify(const verify_args& a) {
    point_cloud source = read_cloud(a.source, a.header);
    point_cloud target = read_cloud(a.target, a.header);
    transport_map map = read_map(a.map_file);
    if (map.sigma.size() != source.n)
        throw std::invalid_argument("verify: map size does not match the source cloud");

    bool pass = false;
    std::string report;
    if (a.half_space) {
        half_space_report rep = check_half_space(source, map, target, a.atol, !a.serial);
        pass = rep.pass;
        report = half_space_report_to_json(rep);
    } else {
        collision_report rep = check_no_collision(source, map, target, a.atol, !a.serial);
        pass = rep.pass;
        report = collision_report_to_json(rep);
    }
    if (a.out.empty())
        std::cout << report;
    else
        write_text(a.out, report);
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"No-collision transport maps between point clouds"};
    app.require_subcommand(1);

    gen_args ga;
    CLI::App* gen = app.add_subcommand("gen", "Generate a point cloud");
    gen->add_option("kind", ga.kind, "grid, ellipse, or gaussian")->required();
    gen->add_option("--n", ga.n, "point count (squares only for grid)");
    gen->add_option("--seed", ga.seed, "RNG seed (gaussian)");
    gen->add_option("--d", ga.d, "dimension (gaussian)");
    gen->add_option("--a", ga.a, "ellipse semi-axis a");
    gen->add_option("--b", ga.b, "ellipse semi-axis b");
    gen->add_option("--rotate", ga.rotate, "rotation angle in radians, counter-clockwise");
    gen->add_option("--center", ga.center, "rotation center: x,y or \"centroid\"");
    gen->add_option("--scale", ga.scale, "per-axis scale factors sx,sy");
    gen->add_option("--out", ga.out, "output file (.csv or .json)");
    gen->add_option("--format", ga.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    map_args ma;
    CLI::App* map = app.add_subcommand("map", "Build a transport map between two clouds");
    map->add_option("--source", ma.source, "source cloud file")->required();
    map->add_option("--target", ma.target, "target cloud file")->required();
    map->add_option("--method", ma.method, "hv, lex, or oracle")
        ->check(CLI::IsMember({"hv", "lex", "oracle"}));
    map->add_option("--schedule", ma.schedule, "hv or axes:i,j,...");
    map->add_option("--cost", ma.cost, "p:q for the oracle (p in {1,2,inf}, q in {1,2})");
    map->add_option("--oracle-cap", ma.oracle_cap, "largest n the oracle accepts");
    map->add_flag("--header", ma.header, "input CSVs start with a header row");
    map->add_option("--out", ma.out, "output map file (.csv or .json)");
    map->add_option("--format", ma.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    map->add_option("--dump-tree", ma.dump_tree, "also write the source partition tree as JSON");

    table_args ta;
    CLI::App* table = app.add_subcommand("table", "Reproduce a cost-ratio table");
    table
        ->add_option("experiment", ta.experiment,
                     "grid-rot, ellipse-rot, gauss-rot, grid-gauss, or gauss-aniso")
        ->required();
    table->add_option("--n", ta.opt.sizes, "sizes to evaluate")->delimiter(',');
    table->add_option("--seeds", ta.opt.seeds, "seed list for random experiments")->delimiter(',');
    table->add_option("--oracle-cap", ta.opt.oracle_cap, "largest n the oracle accepts");
    table->add_option("--schedule", ta.schedule, "hv or axes:i,j,...");
    table->add_option("--out", ta.out, "output CSV path");

    interp_args ia;
    CLI::App* interp = app.add_subcommand("interp", "Write displacement interpolation frames");
    interp->add_option("--source", ia.source, "source cloud file")->required();
    interp->add_option("--target", ia.target, "target cloud file")->required();
    interp->add_option("--map", ia.map_file, "reuse an existing map file");
    interp->add_option("--method", ia.method, "hv or lex (when no --map)");
    interp->add_option("--schedule", ia.schedule, "hv or axes:i,j,...");
    interp->add_option("--frames", ia.frames, "frame count (>= 2), at lambda = j/(frames-1)");
    interp->add_flag("--header", ia.header, "input CSVs start with a header row");
    interp->add_option("--out", ia.out, "frames directory (csv) or animation file (json)");
    interp->add_option("--format", ia.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    bench_args ba;
    CLI::App* bench = app.add_subcommand("bench", "Time hv_map construction");
    bench->add_option("--n", ba.sizes, "sizes to time")->delimiter(',');
    bench->add_option("--schedule", ba.schedule, "hv or axes:i,j,...");
    bench->add_option("--d", ba.d, "dimension of the random clouds");
    bench->add_option("--seed", ba.seed, "RNG seed");
    bench->add_option("--repeats", ba.repeats, "timed repetitions (best is reported)");
    bench->add_option("--out", ba.out, "also write the timing CSV here");

    verify_args va;
    CLI::App* verify = app.add_subcommand("verify", "Certify the no-collision property of a map");
    verify->add_option("--source", va.source, "source cloud file")->required();
    verify->add_option("--map", va.map_file, "map file")->required();
    verify->add_option("--target", va.target, "target cloud file")->required();
    verify->add_option("--atol", va.atol, "certification tolerance");
    verify->add_flag("--half-space", va.half_space,
                     "check the half-space property instead of no-collision");
    verify->add_flag("--serial", va.serial, "use the serial reference checker");
    verify->add_flag("--header", va.header, "input CSVs start with a header row");
    verify->add_option("--out", va.out, "write the JSON report here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (gen->parsed()) return cmd_gen(ga);
        if (map->parsed()) return cmd_map(ma);
        if (table->parsed()) return cmd_table(ta);
        if (interp->parsed()) return cmd_interp(ia);
        if (bench->parsed()) return cmd_bench(ba);
        if (verify->parsed()) return cmd_verify(va);
    } catch (const ncmap::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
