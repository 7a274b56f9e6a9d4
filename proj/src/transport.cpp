#include "ncmap/transport.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace ncmap {

std::string method_name(map_method m) {
    switch (m) {
        case map_method::hv: return "hv";
        case map_method::lex: return "lex";
        case map_method::oracle: return "oracle";
    }
    throw std::logic_error("method_name: bad enum");
}

map_method method_from_name(const std::string& name) {
    if (name == "hv") return map_method::hv;
    if (name == "lex") return map_method::lex;
    if (name == "oracle") return map_method::oracle;
    throw std::invalid_argument("unknown map method: " + name);
}

void transport_map::validate() const {
    if (sigma.empty()) throw std::invalid_argument("transport_map: empty map");
    std::vector<bool> hit(sigma.size(), false);
    for (std::uint32_t t : sigma) {
        if (t >= sigma.size() || hit[t])
            throw std::invalid_argument("transport_map: sigma is not a permutation");
        hit[t] = true;
    }
}

namespace {

void check_same_shape(const point_cloud& source, const point_cloud& target) {
    source.validate();
    target.validate();
    if (source.n != target.n)
        throw std::invalid_argument("transport: source and target sizes differ");
    if (source.d != target.d)
        throw std::invalid_argument("transport: source and target dimensions differ");
}

}  // namespace

transport_map hv_map(const point_cloud& source, const point_cloud& target,
                     const direction_schedule& schedule, bool parallel) {
    check_same_shape(source, target);
    const bsp_tree st = build_tree(source, schedule, full_depth, parallel);
    const bsp_tree tt = build_tree(target, schedule, full_depth, parallel);
    transport_map m;
    m.method = map_method::hv;
    m.schedule_fingerprint = schedule.fingerprint();
    m.sigma.resize(source.n);
    // Full depth makes both orders total, so rank matching is well defined.
    for (std::size_t k = 0; k < source.n; ++k) m.sigma[st.order[k]] = tt.order[k];
    return m;
}

transport_map lex_map(const point_cloud& source, const point_cloud& target) {
    check_same_shape(source, target);
    auto lex_order = [](const point_cloud& c) {
        std::vector<std::uint32_t> ord(c.n);
        std::iota(ord.begin(), ord.end(), 0u);
        std::sort(ord.begin(), ord.end(), [&c](std::uint32_t a, std::uint32_t b) {
            const double* xa = c[a];
            const double* xb = c[b];
            for (std::size_t k = 0; k < c.d; ++k)
                if (xa[k] != xb[k]) return xa[k] < xb[k];
            return a < b;
        });
        return ord;
    };
    const std::vector<std::uint32_t> so = lex_order(source);
    const std::vector<std::uint32_t> to = lex_order(target);
    transport_map m;
    m.method = map_method::lex;
    m.sigma.resize(source.n);
    for (std::size_t k = 0; k < source.n; ++k) m.sigma[so[k]] = to[k];
    return m;
}

namespace {

// Frontier of the tree cut at code length `depth`: nodes whose code reached
// the cut plus leaves that bottomed out above it, in code order.
void frontier(const bsp_tree& t, std::uint32_t id, std::size_t code_len, std::size_t depth,
              std::vector<std::uint32_t>& out) {
    const bsp_node& nd = t.nodes[id];
    if (code_len == depth || nd.right_child == 0) {
        out.push_back(id);
        return;
    }
    frontier(t, id + 1, code_len + 1, depth, out);
    frontier(t, nd.right_child, code_len + 1, depth, out);
}

}  // namespace

std::vector<dual_pair> dual_pairs(const bsp_tree& source_tree, const bsp_tree& target_tree,
                                  std::size_t depth) {
    if (source_tree.n != target_tree.n)
        throw std::invalid_argument("dual_pairs: trees have different point counts");
    std::vector<std::uint32_t> sf, tf;
    frontier(source_tree, 0, 0, depth, sf);
    frontier(target_tree, 0, 0, depth, tf);
    if (sf.size() != tf.size())
        throw std::logic_error("dual_pairs: frontier shapes differ despite equal counts");
    std::vector<dual_pair> out(sf.size());
    for (std::size_t k = 0; k < sf.size(); ++k) {
        const bsp_node& sn = source_tree.nodes[sf[k]];
        const bsp_node& tn = target_tree.nodes[tf[k]];
        if (sn.hi - sn.lo != tn.hi - tn.lo)
            throw std::logic_error("dual_pairs: dual cells have different sizes");
        out[k].depth = depth;
        out[k].a.assign(source_tree.order.begin() + sn.lo, source_tree.order.begin() + sn.hi);
        out[k].b.assign(target_tree.order.begin() + tn.lo, target_tree.order.begin() + tn.hi);
    }
    return out;
}

transport_map restrict_map(const transport_map& map, const dual_pair& pair) {
    if (pair.a.size() != pair.b.size())
        throw std::invalid_argument("restrict_map: dual cells have different sizes");
    std::unordered_map<std::uint32_t, std::uint32_t> pos_in_b;
    pos_in_b.reserve(pair.b.size());
    for (std::uint32_t k = 0; k < pair.b.size(); ++k) pos_in_b.emplace(pair.b[k], k);
    transport_map r;
    r.method = map.method;
    r.schedule_fingerprint = map.schedule_fingerprint;
    r.sigma.resize(pair.a.size());
    for (std::uint32_t k = 0; k < pair.a.size(); ++k) {
        const std::uint32_t src = pair.a[k];
        if (src >= map.sigma.size())
            throw std::invalid_argument("restrict_map: cell index outside the map");
        auto it = pos_in_b.find(map.sigma[src]);
        if (it == pos_in_b.end())
            throw std::logic_error("restrict_map: map does not send the source cell into its dual");
        r.sigma[k] = it->second;
    }
    return r;
}

transport_map compose(const std::vector<transport_map>& maps) {
    if (maps.empty()) throw std::invalid_argument("compose: no maps given");
    const std::size_t n = maps.front().sigma.size();
    for (const transport_map& m : maps)
        if (m.sigma.size() != n)
            throw std::invalid_argument("compose: intermediate sizes do not match");
    transport_map out;
    out.method = maps.front().method;
    out.schedule_fingerprint = maps.front().schedule_fingerprint;
    for (const transport_map& m : maps)
        if (m.schedule_fingerprint != out.schedule_fingerprint) out.schedule_fingerprint.reset();
    out.sigma.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint32_t at = static_cast<std::uint32_t>(i);
        for (const transport_map& m : maps) at = m.sigma[at];
        out.sigma[i] = at;
    }
    return out;
}

}  // namespace ncmap
