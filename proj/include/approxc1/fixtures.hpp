#pragma once

#include "approxc1/function_space.hpp"
#include "approxc1/geometry.hpp"

#include <string>
#include <vector>

namespace approxc1 {

/// square-1, square-3-bilinear, square-6-bilinear, square-2-bicubic or
/// square-6-bicubic; all cover the unit square.
std::vector<Patch> builtin_geometry(const std::string& name);

std::vector<std::string> builtin_geometry_names();

/// Neumann-type edges for bilinear fixtures, Laplace-type for bicubic ones.
BcType default_bc(const std::string& name);

/// Geometry JSON: {"patches": [{degree_u, degree_v, knots_u, knots_v,
/// control_points: [[x, y], ...]}]}, control points with the u index running
/// fastest. Patches are checked for regularity and C0 conformity.
std::vector<Patch> parse_geometry(const std::string& text, const std::string& source = "<string>");
std::vector<Patch> load_geometry(const std::string& path);
std::string geometry_to_json(const std::vector<Patch>& patches);
void save_geometry(const std::vector<Patch>& patches, const std::string& path);

} // namespace approxc1
