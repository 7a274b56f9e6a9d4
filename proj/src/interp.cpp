#include "ncmap/interp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ncmap {

interpolation_frame interpolate(const point_cloud& source, const transport_map& map,
                                const point_cloud& target, double lambda) {
    source.validate();
    target.validate();
    if (source.n != target.n || source.d != target.d)
        throw std::invalid_argument("interpolate: source and target shapes differ");
    if (map.sigma.size() != source.n)
        throw std::invalid_argument("interpolate: map size does not match the clouds");
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw std::invalid_argument("interpolate: lambda must lie in [0, 1]");

    interpolation_frame f;
    f.lambda = lambda;
    f.points = point_cloud(source.n, source.d);
    const double mu = 1.0 - lambda;
    for (std::size_t i = 0; i < source.n; ++i) {
        const double* x = source[i];
        const double* y = target[map.sigma[i]];
        for (std::size_t k = 0; k < source.d; ++k) f.points[i][k] = mu * x[k] + lambda * y[k];
    }
    return f;
}

point_cloud barycenter(const barycenter_spec& spec, const direction_schedule& schedule) {
    if (spec.shapes.empty()) throw std::invalid_argument("barycenter: no shapes");
    if (spec.weights.size() != spec.shapes.size())
        throw std::invalid_argument("barycenter: weights and shapes differ in count");
    if (spec.reference >= spec.shapes.size())
        throw std::invalid_argument("barycenter: reference index out of range");
    const point_cloud& ref = spec.shapes[spec.reference];
    ref.validate();
    double wsum = 0.0;
    for (double w : spec.weights) {
        if (w < 0.0) throw std::invalid_argument("barycenter: weights must be nonnegative");
        wsum += w;
    }
    if (std::fabs(wsum - 1.0) > 1e-12)
        throw std::invalid_argument("barycenter: weights must sum to 1");
    for (const point_cloud& s : spec.shapes) {
        s.validate();
        if (s.n != ref.n || s.d != ref.d)
            throw std::invalid_argument("barycenter: shapes must share size and dimension");
    }

    point_cloud out(ref.n, ref.d);
    for (std::size_t j = 0; j < spec.shapes.size(); ++j) {
        const double w = spec.weights[j];
        if (w == 0.0) continue;
        if (j == spec.reference) {
            for (std::size_t i = 0; i < ref.n; ++i)
                for (std::size_t k = 0; k < ref.d; ++k) out[i][k] += w * ref[i][k];
            continue;
        }
        const transport_map t = hv_map(ref, spec.shapes[j], schedule);
        for (std::size_t i = 0; i < ref.n; ++i) {
            const double* y = spec.shapes[j][t.sigma[i]];
            for (std::size_t k = 0; k < ref.d; ++k) out[i][k] += w * y[k];
        }
    }
    return out;
}

namespace {

// Exact coincidence scan: lexicographic sort, then adjacent comparison.  A
// frame with no exactly equal points has strictly positive minimum pairwise
// distance.
std::optional<path_report::coincidence_t> find_coincidence(const point_cloud& frame, double lambda) {
    std::vector<std::uint32_t> ord(frame.n);
    std::iota(ord.begin(), ord.end(), 0u);
    std::sort(ord.begin(), ord.end(), [&frame](std::uint32_t a, std::uint32_t b) {
        const double* xa = frame[a];
        const double* xb = frame[b];
        for (std::size_t k = 0; k < frame.d; ++k)
            if (xa[k] != xb[k]) return xa[k] < xb[k];
        return a < b;
    });
    for (std::size_t r = 0; r + 1 < ord.size(); ++r) {
        const double* xa = frame[ord[r]];
        const double* xb = frame[ord[r + 1]];
        if (std::equal(xa, xa + frame.d, xb)) {
            path_report::coincidence_t c;
            c.lambda = lambda;
            c.i = std::min(ord[r], ord[r + 1]);
            c.j = std::max(ord[r], ord[r + 1]);
            return c;
        }
    }
    return std::nullopt;
}

}  // namespace

path_report no_collision_along_path(const point_cloud& source, const transport_map& map,
                                    const point_cloud& target, std::size_t samples) {
    if (samples < 2) throw std::invalid_argument("no_collision_along_path: samples must be >= 2");
    path_report rep;
    rep.samples = samples;

    const collision_report cert = check_no_collision(source, map, target);
    if (!cert.pass) {
        rep.pass = false;
        rep.collision = cert.witnesses.front();
        return rep;
    }
    for (std::size_t j = 0; j <= samples; ++j) {
        const double lambda = static_cast<double>(j) / static_cast<double>(samples);
        const interpolation_frame f = interpolate(source, map, target, lambda);
        if (auto c = find_coincidence(f.points, lambda)) {
            rep.pass = false;
            rep.coincidence = c;
            return rep;
        }
    }
    rep.pass = true;
    return rep;
}

}  // namespace ncmap
