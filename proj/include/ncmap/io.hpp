#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ncmap/bsp.hpp"
#include "ncmap/cloud.hpp"
#include "ncmap/interp.hpp"
#include "ncmap/transport.hpp"
#include "ncmap/verify.hpp"

namespace ncmap {

// Unreadable, unwritable, or unparsable files.  The CLI maps this to exit
// code 2; semantic violations (std::invalid_argument) map to exit code 1.
struct io_error : std::runtime_error {
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

// Shortest representation that parses back to the same double.
std::string format_double(double v);

// Whole-file write with io_error semantics.
void write_text(const std::string& path, const std::string& text);

// Cloud CSV: one point per row, columns are coordinates, no header.  Readers
// can be told to skip a header row.
point_cloud read_cloud_csv(const std::string& path, bool header = false);
void write_cloud_csv(const std::string& path, const point_cloud& cloud);

// Cloud JSON: {"d": int, "points": [[...], ...]}.
point_cloud read_cloud_json(const std::string& path);
void write_cloud_json(const std::string& path, const point_cloud& cloud);

// Dispatch on the .json extension, CSV otherwise.
point_cloud read_cloud(const std::string& path, bool header = false);
void write_cloud(const std::string& path, const point_cloud& cloud);

// Map CSV: a source_index,target_index header row, then one pair per row.
// The CSV form carries only the permutation; the reader tags it with the
// caller's method hint.  JSON keeps method and fingerprint.
transport_map read_map_csv(const std::string& path, map_method assume = map_method::hv);
void write_map_csv(const std::string& path, const transport_map& map);
transport_map read_map_json(const std::string& path);
void write_map_json(const std::string& path, const transport_map& map);
transport_map read_map(const std::string& path);
void write_map(const std::string& path, const transport_map& map);

// Debug dump: nested {"dir", "h", "left", "right"} objects, leaves as index
// arrays.
std::string tree_to_json(const bsp_tree& tree);
void write_tree_json(const std::string& path, const bsp_tree& tree);

std::string collision_report_to_json(const collision_report& rep);
std::string half_space_report_to_json(const half_space_report& rep);

// Interpolation export: either one CSV per frame (frame_000.csv, ...) in a
// directory, or a single JSON animation {"frames": [{"lambda", "points"}]}.
void write_frames_csv(const std::string& dir, const std::vector<interpolation_frame>& frames);
void write_animation_json(const std::string& path, const std::vector<interpolation_frame>& frames);

}  // namespace ncmap
