#include "ncmap/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ncmap {
namespace {

constexpr std::size_t small_dim = 8;

double norm2(const double* v, std::size_t d) {
    double s = 0.0;
    for (std::size_t k = 0; k < d; ++k) s += v[k] * v[k];
    return std::sqrt(s);
}

void check_inputs(const point_cloud& source, const transport_map& map, const point_cloud& target) {
    source.validate();
    target.validate();
    if (source.n != target.n || source.d != target.d)
        throw std::invalid_argument("verify: source and target shapes differ");
    if (map.sigma.size() != source.n)
        throw std::invalid_argument("verify: map size does not match the clouds");
    map.validate();
}

}  // namespace

pair_verdict collision_pair(const double* xi, const double* xj, const double* ti, const double* tj,
                            std::size_t d, double atol, collision_witness* w) {
    double dx_buf[small_dim], dt_buf[small_dim];
    std::vector<double> dx_heap, dt_heap;
    double *dx = dx_buf, *dt = dt_buf;
    if (d > small_dim) {
        dx_heap.resize(d);
        dt_heap.resize(d);
        dx = dx_heap.data();
        dt = dt_heap.data();
    }
    bool same_source = true;
    for (std::size_t k = 0; k < d; ++k) {
        dx[k] = xi[k] - xj[k];
        dt[k] = ti[k] - tj[k];
        if (dx[k] != 0.0) same_source = false;
    }
    if (same_source) return pair_verdict::skipped;

    const double scale = std::max(norm2(dx, d), norm2(dt, d));
    const double minor_tol = atol * scale * scale;
    for (std::size_t a = 0; a + 1 < d; ++a)
        for (std::size_t b = a + 1; b < d; ++b)
            if (std::fabs(dx[a] * dt[b] - dx[b] * dt[a]) > minor_tol) return pair_verdict::ok;

    double dot = 0.0, dx2 = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        dot += dx[k] * dt[k];
        dx2 += dx[k] * dx[k];
    }
    if (dot >= 0.0) return pair_verdict::ok;
    if (w != nullptr) {
        w->kappa = dot / dx2;
        w->lambda = 1.0 / (1.0 - w->kappa);
    }
    return pair_verdict::violation;
}

pair_verdict half_space_pair(const double* xi, const double* xj, const double* ti, const double* tj,
                             std::size_t d, double stol, half_space_witness* w) {
    std::vector<double> dx(d), dt(d);
    bool same_source = true;
    for (std::size_t k = 0; k < d; ++k) {
        dx[k] = xj[k] - xi[k];
        dt[k] = tj[k] - ti[k];
        if (dx[k] != 0.0) same_source = false;
    }
    if (same_source) return pair_verdict::skipped;

    const double nx = norm2(dx.data(), d);
    const double nt = norm2(dt.data(), d);

    // Antiparallel within the shared band: no direction can certify the pair.
    // Signs differ from collision_pair but minors and dot are negation-even,
    // so this reproduces its verdict bit for bit.
    const double scale = std::max(nx, nt);
    const double minor_tol = collision_band_atol * scale * scale;
    bool in_band = true;
    for (std::size_t a = 0; a + 1 < d && in_band; ++a)
        for (std::size_t b = a + 1; b < d; ++b)
            if (std::fabs(dx[a] * dt[b] - dx[b] * dt[a]) > minor_tol) {
                in_band = false;
                break;
            }
    double dot = 0.0;
    for (std::size_t k = 0; k < d; ++k) dot += dx[k] * dt[k];
    if (in_band && dot < 0.0) return pair_verdict::violation;

    // A dot product below accumulated rounding noise has no trustworthy sign;
    // snapped to zero it still satisfies the weak inequality but can no longer
    // fake the strict one.
    const double eps = std::numeric_limits<double>::epsilon();
    const double snap_x = 4.0 * static_cast<double>(d) * eps * nx;
    const double snap_t = 4.0 * static_cast<double>(d) * eps * nt;
    auto certifies = [&](const std::vector<double>& v) {
        double a = 0.0, b = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            a += dx[k] * v[k];
            b += dt[k] * v[k];
        }
        if (std::fabs(a) <= snap_x) a = 0.0;
        if (std::fabs(b) <= snap_t) b = 0.0;
        return a >= -stol && b >= -stol && (a > stol || b > stol);
    };
    auto accept = [&](std::vector<double> v) {
        if (w != nullptr) w->v = std::move(v);
        return pair_verdict::ok;
    };

    std::vector<double> v(d);
    for (std::size_t k = 0; k < d; ++k) v[k] = dx[k] / nx;
    if (certifies(v)) return accept(std::move(v));

    if (nt > 0.0) {
        for (std::size_t k = 0; k < d; ++k) v[k] = dt[k] / nt;
        if (certifies(v)) return accept(std::move(v));

        double nb = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            v[k] = dx[k] / nx + dt[k] / nt;
            nb += v[k] * v[k];
        }
        nb = std::sqrt(nb);
        if (nb > 0.0) {
            for (std::size_t k = 0; k < d; ++k) v[k] /= nb;
            if (certifies(v)) return accept(std::move(v));
        }
    }
    return pair_verdict::violation;
}

namespace {

// One row of the pair triangle; appends findings to the caller's buffers.
template <typename OnViolation>
void scan_row(const point_cloud& source, const transport_map& map, const point_cloud& target,
              std::uint32_t i, std::size_t& checked,
              std::vector<std::pair<std::uint32_t, std::uint32_t>>& skipped, OnViolation&& on_violation) {
    const std::size_t n = source.n;
    const std::size_t d = source.d;
    for (std::uint32_t j = i + 1; j < n; ++j) {
        const pair_verdict v =
            on_violation(source[i], source[j], target[map.sigma[i]], target[map.sigma[j]], d, i, j);
        if (v == pair_verdict::skipped) skipped.emplace_back(i, j);
        else ++checked;
    }
}

}  // namespace

collision_report check_no_collision(const point_cloud& source, const transport_map& map,
                                    const point_cloud& target, double atol, bool parallel) {
    check_inputs(source, map, target);
    collision_report rep;
    rep.atol = atol;
    const std::uint32_t n = static_cast<std::uint32_t>(source.n);

    auto test_pair = [&](const double* xi, const double* xj, const double* ti, const double* tj,
                         std::size_t d, std::uint32_t i, std::uint32_t j,
                         std::vector<collision_witness>& out) {
        collision_witness w;
        const pair_verdict v = collision_pair(xi, xj, ti, tj, d, atol, &w);
        if (v == pair_verdict::violation) {
            w.i = i;
            w.j = j;
            out.push_back(w);
        }
        return v;
    };

    if (!parallel) {
        for (std::uint32_t i = 0; i < n; ++i)
            scan_row(source, map, target, i, rep.pairs_checked, rep.skipped,
                     [&](const double* xi, const double* xj, const double* ti, const double* tj,
                         std::size_t d, std::uint32_t a, std::uint32_t b) {
                         return test_pair(xi, xj, ti, tj, d, a, b, rep.witnesses);
                     });
    } else {
        std::size_t checked_total = 0;
#pragma omp parallel reduction(+ : checked_total)
        {
            std::vector<collision_witness> local;
            std::vector<std::pair<std::uint32_t, std::uint32_t>> local_skipped;
            std::size_t checked = 0;
#pragma omp for schedule(dynamic, 16) nowait
            for (std::uint32_t i = 0; i < n; ++i)
                scan_row(source, map, target, i, checked, local_skipped,
                         [&](const double* xi, const double* xj, const double* ti, const double* tj,
                             std::size_t d, std::uint32_t a, std::uint32_t b) {
                             return test_pair(xi, xj, ti, tj, d, a, b, local);
                         });
            checked_total += checked;
#pragma omp critical(ncmap_collision_merge)
            {
                rep.witnesses.insert(rep.witnesses.end(), local.begin(), local.end());
                rep.skipped.insert(rep.skipped.end(), local_skipped.begin(), local_skipped.end());
            }
        }
        rep.pairs_checked = checked_total;
        std::sort(rep.witnesses.begin(), rep.witnesses.end(),
                  [](const collision_witness& a, const collision_witness& b) {
                      return a.i != b.i ? a.i < b.i : a.j < b.j;
                  });
        std::sort(rep.skipped.begin(), rep.skipped.end());
    }
    rep.pass = rep.witnesses.empty();
    return rep;
}

half_space_report check_half_space(const point_cloud& source, const transport_map& map,
                                   const point_cloud& target, double stol, bool parallel) {
    check_inputs(source, map, target);
    half_space_report rep;
    rep.stol = stol;
    const std::uint32_t n = static_cast<std::uint32_t>(source.n);

    auto test_pair = [&](const double* xi, const double* xj, const double* ti, const double* tj,
                         std::size_t d, std::uint32_t i, std::uint32_t j,
                         std::vector<std::pair<std::uint32_t, std::uint32_t>>& out) {
        const pair_verdict v = half_space_pair(xi, xj, ti, tj, d, stol, nullptr);
        if (v == pair_verdict::violation) out.emplace_back(i, j);
        return v;
    };

    if (!parallel) {
        for (std::uint32_t i = 0; i < n; ++i)
            scan_row(source, map, target, i, rep.pairs_checked, rep.skipped,
                     [&](const double* xi, const double* xj, const double* ti, const double* tj,
                         std::size_t d, std::uint32_t a, std::uint32_t b) {
                         return test_pair(xi, xj, ti, tj, d, a, b, rep.failures);
                     });
    } else {
        std::size_t checked_total = 0;
#pragma omp parallel reduction(+ : checked_total)
        {
            std::vector<std::pair<std::uint32_t, std::uint32_t>> local, local_skipped;
            std::size_t checked = 0;
#pragma omp for schedule(dynamic, 16) nowait
            for (std::uint32_t i = 0; i < n; ++i)
                scan_row(source, map, target, i, checked, local_skipped,
                         [&](const double* xi, const double* xj, const double* ti, const double* tj,
                             std::size_t d, std::uint32_t a, std::uint32_t b) {
                             return test_pair(xi, xj, ti, tj, d, a, b, local);
                         });
            checked_total += checked;
#pragma omp critical(ncmap_half_space_merge)
            {
                rep.failures.insert(rep.failures.end(), local.begin(), local.end());
                rep.skipped.insert(rep.skipped.end(), local_skipped.begin(), local_skipped.end());
            }
        }
        rep.pairs_checked = checked_total;
        std::sort(rep.failures.begin(), rep.failures.end());
        std::sort(rep.skipped.begin(), rep.skipped.end());
    }
    rep.pass = rep.failures.empty();
    return rep;
}

}  // namespace ncmap
