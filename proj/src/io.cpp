#include "spatialgen/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "json.hpp"

namespace spatialgen::core {

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  // Trim surrounding whitespace left by hand-edited files.
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument("invalid number: '" + std::string(text) + "'");
  }
  return value;
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t pos = text.find('\n', start);
    if (pos == std::string_view::npos) pos = text.size();
    std::string_view line = text.substr(start, pos - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = pos + 1;
  }
  return lines;
}

}  // namespace

std::string grid_to_csv(const Grid& grid) {
  std::string out = "# " + std::to_string(grid.width) + "," + std::to_string(grid.height) + "," +
                    format_double(grid.cell_size) + "\n";
  for (int row = 0; row < grid.height; ++row) {
    for (int col = 0; col < grid.width; ++col) {
      if (col > 0) out += ',';
      out += format_double(grid.at(col, row));
    }
    out += '\n';
  }
  return out;
}

Grid grid_from_csv(std::string_view text) {
  double cell_size = 1.0;
  int declared_width = -1;
  int declared_height = -1;
  std::vector<std::vector<double>> rows;
  for (std::string_view line : split_lines(text)) {
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto fields = split(line.substr(1), ',');
      if (fields.size() == 3) {
        declared_width = static_cast<int>(parse_double(fields[0]));
        declared_height = static_cast<int>(parse_double(fields[1]));
        cell_size = parse_double(fields[2]);
      }
      continue;
    }
    std::vector<double> row;
    for (const std::string_view field : split(line, ',')) {
      const double v = parse_double(field);
      if (v < 0.0) throw std::invalid_argument("negative cell value");
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw std::invalid_argument("non-rectangular grid");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("empty grid file");

  Grid grid(static_cast<int>(rows.front().size()), static_cast<int>(rows.size()), cell_size);
  if ((declared_width >= 0 && declared_width != grid.width) ||
      (declared_height >= 0 && declared_height != grid.height)) {
    throw std::invalid_argument("grid header does not match data");
  }
  for (int row = 0; row < grid.height; ++row) {
    for (int col = 0; col < grid.width; ++col) {
      grid.at(col, row) = rows[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
    }
  }
  return grid;
}

std::string network_to_json(const SpatialNetwork& net) {
  nlohmann::ordered_json j;
  j["directed"] = net.directed;
  j["nodes"] = nlohmann::ordered_json::array();
  for (const Node& n : net.nodes) {
    j["nodes"].push_back({{"id", n.id}, {"x", n.x}, {"y", n.y}, {"weight", n.weight}});
  }
  j["edges"] = nlohmann::ordered_json::array();
  for (const Edge& e : net.edges) {
    j["edges"].push_back({{"from", e.from},
                          {"to", e.to},
                          {"length", e.length},
                          {"capacity", e.capacity},
                          {"freeFlowTime", e.free_flow_time}});
  }
  return j.dump(2) + "\n";
}

SpatialNetwork network_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid network JSON: ") + e.what());
  }
  SpatialNetwork net;
  net.directed = j.value("directed", false);
  for (const auto& jn : j.value("nodes", nlohmann::json::array())) {
    Node n;
    n.id = jn.at("id").get<NodeId>();
    n.x = jn.at("x").get<double>();
    n.y = jn.at("y").get<double>();
    n.weight = jn.value("weight", 1.0);
    net.nodes.push_back(n);
  }
  for (const auto& je : j.value("edges", nlohmann::json::array())) {
    Edge e;
    e.from = je.at("from").get<NodeId>();
    e.to = je.at("to").get<NodeId>();
    e.length = je.value("length", 0.0);
    e.capacity = je.value("capacity", 1.0);
    e.free_flow_time = je.value("freeFlowTime", 0.0);
    net.edges.push_back(e);
  }
  // Fill defaults that depend on geometry, then check invariants.
  std::unordered_map<NodeId, Point> positions;
  for (const Node& n : net.nodes) positions[n.id] = {n.x, n.y};
  for (Edge& e : net.edges) {
    const auto a = positions.find(e.from);
    const auto b = positions.find(e.to);
    if (a == positions.end() || b == positions.end()) {
      throw std::invalid_argument("dangling edge");
    }
    if (e.length == 0.0) e.length = distance(a->second, b->second);
    if (e.free_flow_time == 0.0) e.free_flow_time = e.length;
  }
  validate(net);
  return net;
}

std::string pointset_to_csv(const PointSet& ps) {
  std::string out = "# " + format_double(ps.window.xmin) + "," + format_double(ps.window.ymin) +
                    "," + format_double(ps.window.xmax) + "," + format_double(ps.window.ymax) +
                    "\nx,y\n";
  for (const Point& p : ps.points) {
    out += format_double(p.x);
    out += ',';
    out += format_double(p.y);
    out += '\n';
  }
  return out;
}

PointSet pointset_from_csv(std::string_view text) {
  PointSet ps;
  bool window_seen = false;
  bool header_seen = false;
  for (std::string_view line : split_lines(text)) {
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto fields = split(line.substr(1), ',');
      if (fields.size() != 4) throw std::invalid_argument("invalid window line");
      ps.window = {parse_double(fields[0]), parse_double(fields[1]), parse_double(fields[2]),
                   parse_double(fields[3])};
      window_seen = true;
      continue;
    }
    if (!header_seen) {
      header_seen = true;  // "x,y" column header
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != 2) throw std::invalid_argument("invalid point line");
    ps.points.push_back({parse_double(fields[0]), parse_double(fields[1])});
  }
  if (!window_seen) throw std::invalid_argument("missing window line");
  validate(ps);
  return ps;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

Grid read_grid_csv(const std::filesystem::path& path) { return grid_from_csv(read_text_file(path)); }

void write_grid_csv(const Grid& grid, const std::filesystem::path& path) {
  write_text_file(path, grid_to_csv(grid));
}

SpatialNetwork read_network_json(const std::filesystem::path& path) {
  return network_from_json(read_text_file(path));
}

void write_network_json(const SpatialNetwork& net, const std::filesystem::path& path) {
  write_text_file(path, network_to_json(net));
}

PointSet read_pointset_csv(const std::filesystem::path& path) {
  return pointset_from_csv(read_text_file(path));
}

void write_pointset_csv(const PointSet& ps, const std::filesystem::path& path) {
  write_text_file(path, pointset_to_csv(ps));
}

}  // namespace spatialgen::core
