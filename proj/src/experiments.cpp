#include "ncmap/experiments.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ncmap/generators.hpp"
#include "ncmap/io.hpp"
#include "ncmap/transport.hpp"

namespace ncmap {

namespace {

constexpr double quarter_turn = 1.5707963267948966;
constexpr double eighth_turn = 0.7853981633974483;

std::size_t square_side(std::size_t n, const char* who) {
    auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
    if (side * side != n)
        throw std::invalid_argument(std::string(who) + ": n must be a perfect square, got " +
                                    std::to_string(n));
    return side;
}

}  // namespace

std::string experiment_name(experiment_kind kind) {
    switch (kind) {
        case experiment_kind::grid_rot: return "grid-rot";
        case experiment_kind::ellipse_rot: return "ellipse-rot";
        case experiment_kind::gauss_rot: return "gauss-rot";
        case experiment_kind::grid_gauss: return "grid-gauss";
        case experiment_kind::gauss_aniso: return "gauss-aniso";
    }
    throw std::invalid_argument("experiment_name: bad kind");
}

experiment_kind experiment_from_name(const std::string& name) {
    if (name == "grid-rot") return experiment_kind::grid_rot;
    if (name == "ellipse-rot") return experiment_kind::ellipse_rot;
    if (name == "gauss-rot") return experiment_kind::gauss_rot;
    if (name == "grid-gauss") return experiment_kind::grid_gauss;
    if (name == "gauss-aniso") return experiment_kind::gauss_aniso;
    throw std::invalid_argument("unknown experiment \"" + name +
                                "\" (grid-rot, ellipse-rot, gauss-rot, grid-gauss, gauss-aniso)");
}

bool experiment_is_random(experiment_kind kind) {
    return kind == experiment_kind::gauss_rot || kind == experiment_kind::grid_gauss ||
           kind == experiment_kind::gauss_aniso;
}

experiment_instance make_instance(experiment_kind kind, std::size_t n, std::uint64_t seed) {
    experiment_instance inst;
    switch (kind) {
        case experiment_kind::grid_rot: {
            inst.source = gen_grid(square_side(n, "grid-rot"));
            inst.target = apply_transform(inst.source, {-eighth_turn, {}, {}});
            break;
        }
        case experiment_kind::ellipse_rot: {
            inst.source = gen_ellipse(n, 2.0, 1.0);
            inst.target = apply_transform(inst.source, {-eighth_turn, {}, {}});
            break;
        }
        case experiment_kind::gauss_rot: {
            inst.source = gen_gaussian(n, seed, 2);
            inst.target = apply_transform(inst.source, {-eighth_turn, centroid(inst.source), {}});
            break;
        }
        case experiment_kind::grid_gauss: {
            inst.source = gen_grid(square_side(n, "grid-gauss"));
            inst.target = gen_gaussian(n, seed, 2);
            break;
        }
        case experiment_kind::gauss_aniso: {
            inst.source = gen_gaussian(n, seed, 2);
            point_cloud base = gen_gaussian(n, seed + 7777, 2);
            inst.target = apply_transform(base, {quarter_turn, centroid(base), {3.0, 1.0}});
            break;
        }
    }
    return inst;
}

std::vector<table_row> run_table(experiment_kind kind, const table_options& opt) {
    if (opt.sizes.empty()) throw std::invalid_argument("run_table: no sizes");
    if (opt.seeds.empty()) throw std::invalid_argument("run_table: no seeds");
    const std::size_t n_seeds = experiment_is_random(kind) ? opt.seeds.size() : 1;
    const char* methods[3] = {"hv", "lex", "oracle"};

    std::vector<table_row> rows;
    for (std::size_t size : opt.sizes) {
        // costs[seed][spec][method]; reduced in fixed order afterwards so the
        // parallel loop cannot perturb the means.
        std::vector<std::array<std::array<double, 3>, 6>> costs(n_seeds);
        bool with_oracle = true;
        std::size_t actual_n = 0;

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
        for (std::size_t s = 0; s < n_seeds; ++s) {
            experiment_instance inst = make_instance(kind, size, opt.seeds[s]);
            transport_map hv = hv_map(inst.source, inst.target, opt.schedule);
            transport_map lex = lex_map(inst.source, inst.target);
            bool fits = inst.source.n <= opt.oracle_cap;
            for (std::size_t c = 0; c < 6; ++c) {
                cost_spec spec = all_cost_specs[c];
                costs[s][c][0] = map_cost(inst.source, hv, inst.target, spec);
                costs[s][c][1] = map_cost(inst.source, lex, inst.target, spec);
                costs[s][c][2] =
                    fits ? map_cost(inst.source,
                                    optimal_assignment(inst.source, inst.target, spec,
                                                       opt.oracle_cap),
                                    inst.target, spec)
                         : 0.0;
            }
            if (s == 0) {
                with_oracle = fits;
                actual_n = inst.source.n;
            }
        }

        for (std::size_t c = 0; c < 6; ++c) {
            double mean[3] = {0.0, 0.0, 0.0};
            for (std::size_t m = 0; m < 3; ++m) {
                for (std::size_t s = 0; s < n_seeds; ++s) mean[m] += costs[s][c][m];
                mean[m] /= static_cast<double>(n_seeds);
            }
            for (std::size_t m = 0; m < 3; ++m) {
                if (m == 2 && !with_oracle) continue;
                table_row row;
                row.experiment = experiment_name(kind);
                row.cost_family = cost_family_name(all_cost_specs[c]);
                row.method = methods[m];
                row.n = actual_n;
                row.mean_cost = mean[m];
                if (with_oracle) {
                    if (m == 2)
                        row.ratio = 1.0;
                    else if (mean[2] > 0.0)
                        row.ratio = mean[m] / mean[2];
                    else
                        row.ratio = mean[m] == 0.0
                                        ? 1.0
                                        : std::numeric_limits<double>::infinity();
                }
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

std::string table_to_csv(const std::vector<table_row>& rows) {
    std::string out = "experiment,cost_family,method,n,mean_cost,ratio\n";
    for (const table_row& r : rows) {
        out += r.experiment + ',' + r.cost_family + ',' + r.method + ',' + std::to_string(r.n) +
               ',' + format_double(r.mean_cost) + ',';
        if (r.ratio) out += format_double(*r.ratio);
        out += '\n';
    }
    return out;
}

std::vector<bench_result> bench_hv(const std::vector<std::size_t>& sizes,
                                   const direction_schedule& schedule, std::uint64_t seed,
                                   int repeats) {
    if (repeats < 1) throw std::invalid_argument("bench_hv: repeats must be >= 1");
    std::vector<bench_result> results;
    for (std::size_t n : sizes) {
        point_cloud source = gen_gaussian(n, seed, schedule.dim ? schedule.dim : 2);
        point_cloud target = gen_gaussian(n, seed + 1, source.d);
        double best = std::numeric_limits<double>::infinity();
        for (int r = 0; r <= repeats; ++r) {  // r == 0 is the warmup
            auto t0 = std::chrono::steady_clock::now();
            transport_map map = hv_map(source, target, schedule);
            auto t1 = std::chrono::steady_clock::now();
            if (map.sigma.size() != n) throw std::logic_error("bench_hv: bad map size");
            double sec = std::chrono::duration<double>(t1 - t0).count();
            if (r > 0 && sec < best) best = sec;
        }
        results.push_back({n, best});
    }
    return results;
}

}  // namespace ncmap
