#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <vector>

namespace ncmap {

// Produces the unit split direction for every tree depth k >= 1.  Either
// cycles the standard basis of R^d (v_k = e_{1 + (k-1) mod d}; in 2-d this is
// the horizontal-vertical schedule) or cycles an explicit list of unit
// vectors.  Each basis direction therefore recurs infinitely often.
struct direction_schedule {
    enum class kind_t { axis_cycling, explicit_list };
    kind_t kind = kind_t::axis_cycling;
    std::size_t dim = 0;                            // axis_cycling
    std::vector<std::vector<double>> dirs;          // explicit_list

    static direction_schedule axis_cycling(std::size_t d) {
        if (d == 0) throw std::invalid_argument("direction_schedule: d must be >= 1");
        direction_schedule s;
        s.kind = kind_t::axis_cycling;
        s.dim = d;
        return s;
    }

    static direction_schedule explicit_dirs(std::vector<std::vector<double>> list) {
        if (list.empty()) throw std::invalid_argument("direction_schedule: empty direction list");
        direction_schedule s;
        s.kind = kind_t::explicit_list;
        s.dim = list.front().size();
        s.dirs = std::move(list);
        for (const auto& v : s.dirs) {
            if (v.size() != s.dim)
                throw std::invalid_argument("direction_schedule: mixed direction dimensions");
            double n2 = 0.0;
            for (double x : v) n2 += x * x;
            if (std::fabs(std::sqrt(n2) - 1.0) > 1e-12)
                throw std::invalid_argument("direction_schedule: directions must be unit vectors");
        }
        return s;
    }

    // Axis index for depth k (>= 1) when the direction is a basis vector,
    // SIZE_MAX otherwise.  The axis fast path avoids a dot product per
    // comparison during splits.
    std::size_t axis_at(std::size_t k) const {
        if (kind == kind_t::axis_cycling) return (k - 1) % dim;
        const auto& v = dirs[(k - 1) % dirs.size()];
        std::size_t axis = SIZE_MAX;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] == 1.0 && axis == SIZE_MAX) axis = i;
            else if (v[i] != 0.0) return SIZE_MAX;
        }
        return axis;
    }

    std::vector<double> direction(std::size_t k) const {
        if (k == 0) throw std::invalid_argument("direction_schedule: depths are 1-based");
        if (kind == kind_t::axis_cycling) {
            std::vector<double> v(dim, 0.0);
            v[(k - 1) % dim] = 1.0;
            return v;
        }
        return dirs[(k - 1) % dirs.size()];
    }

    // Stable across runs and platforms (FNV-1a over the kind, dim, and raw
    // IEEE bit patterns); identifies which schedule built a map.
    std::uint64_t fingerprint() const {
        std::uint64_t h = 1469598103934665603ull;
        auto mix = [&h](std::uint64_t x) {
            for (int b = 0; b < 8; ++b) {
                h ^= (x >> (8 * b)) & 0xff;
                h *= 1099511628211ull;
            }
        };
        mix(kind == kind_t::axis_cycling ? 1 : 2);
        mix(dim);
        for (const auto& v : dirs)
            for (double x : v) {
                std::uint64_t bits;
                static_assert(sizeof bits == sizeof x);
                std::memcpy(&bits, &x, sizeof bits);
                mix(bits);
            }
        return h;
    }
};

}  // namespace ncmap
