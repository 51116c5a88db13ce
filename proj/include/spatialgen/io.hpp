#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "spatialgen/grid.hpp"
#include "spatialgen/network.hpp"
#include "spatialgen/pointset.hpp"

namespace spatialgen::core {

// Shortest decimal representation that round-trips the exact double.
std::string format_double(double value);
double parse_double(std::string_view text);

// Grid CSV: one comma-separated line per raster row, row 0 on top, preceded
// by a "# width,height,cellSize" header line (optional on input).
std::string grid_to_csv(const Grid& grid);
Grid grid_from_csv(std::string_view text);
Grid read_grid_csv(const std::filesystem::path& path);
void write_grid_csv(const Grid& grid, const std::filesystem::path& path);

// Network JSON: {"directed", "nodes":[{"id","x","y","weight"}],
// "edges":[{"from","to","length","capacity","freeFlowTime"}]}. Missing
// optional fields take defaults (weight 1, capacity 1, length = straight-line
// distance, freeFlowTime = length).
std::string network_to_json(const SpatialNetwork& net);
SpatialNetwork network_from_json(std::string_view text);
SpatialNetwork read_network_json(const std::filesystem::path& path);
void write_network_json(const SpatialNetwork& net, const std::filesystem::path& path);

// PointSet CSV: "# xmin,ymin,xmax,ymax" window line, "x,y" header, one point
// per line.
std::string pointset_to_csv(const PointSet& ps);
PointSet pointset_from_csv(std::string_view text);
PointSet read_pointset_csv(const std::filesystem::path& path);
void write_pointset_csv(const PointSet& ps, const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace spatialgen::core
