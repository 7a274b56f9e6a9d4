#include "ncmap/io.hpp"

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

#include "json.hpp"

namespace ncmap {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw io_error("read failed on " + path);
    return std::move(ss).str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open " + path + " for writing");
    out << text;
    out.flush();
    if (!out) throw io_error("write failed on " + path);
}

bool has_json_ext(const std::string& path) {
    auto dot = path.rfind('.');
    if (dot == std::string::npos) return false;
    std::string ext = path.substr(dot);
    for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return ext == ".json";
}

// Lines without the trailing \n; \r\n is tolerated, blank lines are dropped.
std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        std::size_t end = (nl == std::string::npos) ? text.size() : nl;
        std::size_t len = end - start;
        if (len > 0 && text[start + len - 1] == '\r') --len;
        if (len > 0) lines.emplace_back(text, start, len);
        if (nl == std::string::npos) break;
        start = nl + 1;
    }
    return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        std::size_t end = (comma == std::string::npos) ? line.size() : comma;
        std::size_t a = start, b = end;
        while (a < b && (line[a] == ' ' || line[a] == '\t')) ++a;
        while (b > a && (line[b - 1] == ' ' || line[b - 1] == '\t')) --b;
        fields.emplace_back(line, a, b - a);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return fields;
}

double parse_double(const std::string& field, const std::string& path, std::size_t lineno) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size())
        throw io_error(path + ":" + std::to_string(lineno) + ": expected a number, got \"" +
                       field + "\"");
    return v;
}

bool try_parse_u32(const std::string& field, std::uint32_t& out) {
    unsigned long v = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size() ||
        v > std::numeric_limits<std::uint32_t>::max())
        return false;
    out = static_cast<std::uint32_t>(v);
    return true;
}

std::uint32_t parse_u32(const std::string& field, const std::string& path, std::size_t lineno) {
    std::uint32_t v = 0;
    if (!try_parse_u32(field, v))
        throw io_error(path + ":" + std::to_string(lineno) + ": expected an index, got \"" +
                       field + "\"");
    return v;
}

// File contents that parse but violate the type's invariants are still a bad
// file, so they surface as io_error, not invalid_argument.
template <typename T>
void validate_read(const T& value, const std::string& path) {
    try {
        value.validate();
    } catch (const std::invalid_argument& e) {
        throw io_error(path + ": " + e.what());
    }
}

ordered_json points_to_json(const point_cloud& cloud) {
    ordered_json pts = ordered_json::array();
    for (std::size_t i = 0; i < cloud.n; ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t k = 0; k < cloud.d; ++k) row.push_back(cloud.xs[i * cloud.d + k]);
        pts.push_back(std::move(row));
    }
    return pts;
}

point_cloud cloud_from_json(const ordered_json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("d") || !j.contains("points"))
        throw io_error(path + ": expected {\"d\", \"points\"}");
    point_cloud cloud;
    try {
        cloud.d = j.at("d").get<std::size_t>();
        const auto& pts = j.at("points");
        if (!pts.is_array()) throw io_error(path + ": \"points\" must be an array");
        cloud.n = pts.size();
        cloud.xs.reserve(cloud.n * cloud.d);
        for (const auto& row : pts) {
            if (!row.is_array() || row.size() != cloud.d)
                throw io_error(path + ": every point must have exactly " +
                               std::to_string(cloud.d) + " coordinates");
            for (const auto& c : row) cloud.xs.push_back(c.get<double>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw io_error(path + ": " + e.what());
    }
    validate_read(cloud, path);
    return cloud;
}

ordered_json parse_json(const std::string& path) {
    std::string text = slurp(path);
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw io_error(path + ": " + e.what());
    }
}

ordered_json tree_node_to_json(const bsp_tree& tree, std::uint32_t node_index) {
    const bsp_node& nd = tree.nodes[node_index];
    if (nd.right_child == 0) {  // leaf (right_child points past the left subtree otherwise)
        ordered_json leaf = ordered_json::array();
        for (std::uint32_t p = nd.lo; p < nd.hi; ++p) leaf.push_back(tree.order[p]);
        return leaf;
    }
    ordered_json obj;
    obj["dir"] = tree.schedule.direction(nd.depth);
    obj["h"] = nd.h;
    obj["left"] = tree_node_to_json(tree, node_index + 1);
    obj["right"] = tree_node_to_json(tree, nd.right_child);
    return obj;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

void write_text(const std::string& path, const std::string& text) { spill(path, text); }

point_cloud read_cloud_csv(const std::string& path, bool header) {
    std::vector<std::string> lines = split_lines(slurp(path));
    std::size_t first = header ? 1 : 0;
    if (lines.size() <= first) throw io_error(path + ": no data rows");
    point_cloud cloud;
    cloud.d = split_fields(lines[first]).size();
    cloud.n = lines.size() - first;
    cloud.xs.reserve(cloud.n * cloud.d);
    for (std::size_t r = first; r < lines.size(); ++r) {
        std::vector<std::string> fields = split_fields(lines[r]);
        if (fields.size() != cloud.d)
            throw io_error(path + ":" + std::to_string(r + 1) + ": expected " +
                           std::to_string(cloud.d) + " columns, got " +
                           std::to_string(fields.size()));
        for (const std::string& f : fields) cloud.xs.push_back(parse_double(f, path, r + 1));
    }
    validate_read(cloud, path);
    return cloud;
}

void write_cloud_csv(const std::string& path, const point_cloud& cloud) {
    std::string out;
    out.reserve(cloud.n * cloud.d * 12);
    for (std::size_t i = 0; i < cloud.n; ++i) {
        for (std::size_t k = 0; k < cloud.d; ++k) {
            if (k > 0) out += ',';
            out += format_double(cloud.xs[i * cloud.d + k]);
        }
        out += '\n';
    }
    spill(path, out);
}

point_cloud read_cloud_json(const std::string& path) {
    return cloud_from_json(parse_json(path), path);
}

void write_cloud_json(const std::string& path, const point_cloud& cloud) {
    ordered_json j;
    j["d"] = cloud.d;
    j["points"] = points_to_json(cloud);
    spill(path, j.dump(2) + "\n");
}

point_cloud read_cloud(const std::string& path, bool header) {
    return has_json_ext(path) ? read_cloud_json(path) : read_cloud_csv(path, header);
}

void write_cloud(const std::string& path, const point_cloud& cloud) {
    if (has_json_ext(path))
        write_cloud_json(path, cloud);
    else
        write_cloud_csv(path, cloud);
}

transport_map read_map_csv(const std::string& path, map_method assume) {
    std::vector<std::string> lines = split_lines(slurp(path));
    if (lines.empty()) throw io_error(path + ": no data rows");
    std::size_t first = 0;
    {
        std::uint32_t probe = 0;
        std::vector<std::string> fields = split_fields(lines[0]);
        if (!fields.empty() && !try_parse_u32(fields[0], probe)) first = 1;  // header row
    }
    if (lines.size() <= first) throw io_error(path + ": no data rows");
    std::size_t n = lines.size() - first;
    constexpr std::uint32_t unset = std::numeric_limits<std::uint32_t>::max();
    transport_map map;
    map.method = assume;
    map.sigma.assign(n, unset);
    for (std::size_t r = first; r < lines.size(); ++r) {
        std::vector<std::string> fields = split_fields(lines[r]);
        if (fields.size() != 2)
            throw io_error(path + ":" + std::to_string(r + 1) +
                           ": expected source_index,target_index");
        std::uint32_t src = parse_u32(fields[0], path, r + 1);
        std::uint32_t tgt = parse_u32(fields[1], path, r + 1);
        if (src >= n || map.sigma[src] != unset)
            throw io_error(path + ":" + std::to_string(r + 1) + ": source index " +
                           std::to_string(src) + " out of range or repeated");
        map.sigma[src] = tgt;
    }
    validate_read(map, path);
    return map;
}

void write_map_csv(const std::string& path, const transport_map& map) {
    std::string out = "source_index,target_index\n";
    for (std::size_t i = 0; i < map.sigma.size(); ++i)
        out += std::to_string(i) + ',' + std::to_string(map.sigma[i]) + '\n';
    spill(path, out);
}

transport_map read_map_json(const std::string& path) {
    ordered_json j = parse_json(path);
    if (!j.is_object() || !j.contains("sigma") || !j.contains("method"))
        throw io_error(path + ": expected {\"n\", \"method\", \"sigma\"}");
    transport_map map;
    try {
        map.method = method_from_name(j.at("method").get<std::string>());
        map.sigma = j.at("sigma").get<std::vector<std::uint32_t>>();
        if (j.contains("n") && j.at("n").get<std::size_t>() != map.sigma.size())
            throw io_error(path + ": \"n\" disagrees with the length of \"sigma\"");
        if (j.contains("schedule_fingerprint"))
            map.schedule_fingerprint = j.at("schedule_fingerprint").get<std::uint64_t>();
    } catch (const std::invalid_argument& e) {
        throw io_error(path + ": " + e.what());
    } catch (const nlohmann::json::exception& e) {
        throw io_error(path + ": " + e.what());
    }
    validate_read(map, path);
    return map;
}

void write_map_json(const std::string& path, const transport_map& map) {
    ordered_json j;
    j["n"] = map.sigma.size();
    j["method"] = method_name(map.method);
    j["sigma"] = map.sigma;
    if (map.schedule_fingerprint) j["schedule_fingerprint"] = *map.schedule_fingerprint;
    spill(path, j.dump(2) + "\n");
}

transport_map read_map(const std::string& path) {
    return has_json_ext(path) ? read_map_json(path) : read_map_csv(path);
}

void write_map(const std::string& path, const transport_map& map) {
    if (has_json_ext(path))
        write_map_json(path, map);
    else
        write_map_csv(path, map);
}

std::string tree_to_json(const bsp_tree& tree) {
    return tree_node_to_json(tree, 0).dump(2) + "\n";
}

void write_tree_json(const std::string& path, const bsp_tree& tree) {
    spill(path, tree_to_json(tree));
}

std::string collision_report_to_json(const collision_report& rep) {
    ordered_json j;
    j["status"] = rep.pass ? "pass" : "fail";
    ordered_json ws = ordered_json::array();
    for (const collision_witness& w : rep.witnesses) {
        ordered_json e;
        e["i"] = w.i;
        e["j"] = w.j;
        e["kappa"] = w.kappa;
        e["lambda"] = w.lambda;
        ws.push_back(std::move(e));
    }
    j["witnesses"] = std::move(ws);
    j["skipped"] = rep.skipped;
    j["pairs_checked"] = rep.pairs_checked;
    j["tolerance"] = rep.atol;
    return j.dump(2) + "\n";
}

std::string half_space_report_to_json(const half_space_report& rep) {
    ordered_json j;
    j["status"] = rep.pass ? "pass" : "fail";
    j["witnesses"] = rep.failures;
    j["skipped"] = rep.skipped;
    j["pairs_checked"] = rep.pairs_checked;
    j["tolerance"] = rep.stol;
    return j.dump(2) + "\n";
}

void write_frames_csv(const std::string& dir, const std::vector<interpolation_frame>& frames) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw io_error("cannot create " + dir + ": " + ec.message());
    std::size_t width = 3;
    for (std::size_t limit = 1000; frames.size() > limit; limit *= 10) ++width;
    for (std::size_t f = 0; f < frames.size(); ++f) {
        std::string name = std::to_string(f);
        name.insert(0, width > name.size() ? width - name.size() : 0, '0');
        write_cloud_csv((std::filesystem::path(dir) / ("frame_" + name + ".csv")).string(),
                        frames[f].points);
    }
}

void write_animation_json(const std::string& path, const std::vector<interpolation_frame>& frames) {
    ordered_json j;
    ordered_json fs = ordered_json::array();
    for (const interpolation_frame& f : frames) {
        ordered_json e;
        e["lambda"] = f.lambda;
        e["points"] = points_to_json(f.points);
        fs.push_back(std::move(e));
    }
    j["frames"] = std::move(fs);
    spill(path, j.dump(2) + "\n");
}

}  // namespace ncmap
