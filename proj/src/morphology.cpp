#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spatialgen/indicators.hpp"

namespace spatialgen::indicators {

using core::Grid;
using core::PointSet;

core::IndicatorRecord MorphologyRecord::to_record() const {
  core::IndicatorRecord r;
  r.set("mass", mass);
  r.set("centroidX", centroid_x);
  r.set("centroidY", centroid_y);
  r.set("dispersion", dispersion);
  r.set("moran", moran);
  r.set("entropy", entropy);
  r.set("rankSizeSlope", rank_size_slope);
  r.set("avgDistance", avg_distance);
  return r;
}

MorphologyRecord grid_morphology(const Grid& grid) {
  const int w = grid.width;
  const int h = grid.height;
  const std::size_t n = grid.size();

  MorphologyRecord rec;
  rec.mass = grid.total();

  // Cell centers, flattened in storage order.
  std::vector<double> cx(n), cy(n);
  for (int row = 0; row < h; ++row) {
    for (int col = 0; col < w; ++col) {
      cx[grid.idx(col, row)] = grid.cell_center_x(col);
      cy[grid.idx(col, row)] = grid.cell_center_y(row);
    }
  }

  // Moran index with inverse-distance weights; defined even for zero mass.
  // Constant grids use the moran = 0 convention (checked exactly, since the
  // floating-point mean would otherwise leave equal nonzero deviations).
  const double mean = rec.mass / static_cast<double>(n);
  const bool constant =
      std::all_of(grid.values.begin(), grid.values.end(),
                  [&](double v) { return v == grid.values.front(); });
  double variance_sum = 0.0;
  for (const double v : grid.values) variance_sum += (v - mean) * (v - mean);
  if (!constant && variance_sum > 0.0) {
    double s0 = 0.0;
    double cross = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double wij = 1.0 / std::hypot(cx[i] - cx[j], cy[i] - cy[j]);
        s0 += wij;
        cross += wij * (grid.values[i] - mean) * (grid.values[j] - mean);
      }
    }
    // Unordered sums double for the ordered-pair definition; the factor two
    // cancels in the ratio except through s0.
    rec.moran = (static_cast<double>(n) / (2.0 * s0)) * (2.0 * cross) / variance_sum;
  }

  if (!(rec.mass > 0.0)) return rec;  // remaining indicators are mass-weighted

  for (std::size_t i = 0; i < n; ++i) {
    const double p = grid.values[i] / rec.mass;
    rec.centroid_x += p * cx[i];
    rec.centroid_y += p * cy[i];
  }
  double spread = 0.0;
  double entropy_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (grid.values[i] <= 0.0) continue;
    const double p = grid.values[i] / rec.mass;
    const double dx = cx[i] - rec.centroid_x;
    const double dy = cy[i] - rec.centroid_y;
    spread += p * (dx * dx + dy * dy);
    entropy_sum -= p * std::log(p);
  }
  rec.dispersion = std::sqrt(spread);
  rec.entropy = n > 1 ? entropy_sum / std::log(static_cast<double>(n)) : 0.0;

  // Rank-size slope over strictly positive cells sorted descending.
  std::vector<double> positive;
  for (const double v : grid.values) {
    if (v > 0.0) positive.push_back(v);
  }
  std::sort(positive.begin(), positive.end(), std::greater<>());
  if (positive.size() >= 2) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t r = 0; r < positive.size(); ++r) {
      const double lx = std::log(static_cast<double>(r + 1));
      const double ly = std::log(positive[r]);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    const double m = static_cast<double>(positive.size());
    const double denom = m * sxx - sx * sx;
    rec.rank_size_slope = denom != 0.0 ? (m * sxy - sx * sy) / denom : 0.0;
  }

  // Mean pairwise distance between mass units, normalized by the diagonal.
  std::vector<std::size_t> occupied;
  for (std::size_t i = 0; i < n; ++i) {
    if (grid.values[i] > 0.0) occupied.push_back(i);
  }
  double avg = 0.0;
  for (std::size_t a = 0; a < occupied.size(); ++a) {
    for (std::size_t b = a + 1; b < occupied.size(); ++b) {
      const std::size_t i = occupied[a];
      const std::size_t j = occupied[b];
      const double pi = grid.values[i] / rec.mass;
      const double pj = grid.values[j] / rec.mass;
      avg += 2.0 * pi * pj * std::hypot(cx[i] - cx[j], cy[i] - cy[j]);
    }
  }
  const double diagonal = grid.cell_size * std::hypot(static_cast<double>(w),
                                                      static_cast<double>(h));
  rec.avg_distance = avg / diagonal;
  return rec;
}

std::vector<std::pair<double, double>> ripley_k(const PointSet& points,
                                                std::span<const double> radii) {
  const std::size_t n = points.points.size();
  if (n < 2) throw std::invalid_argument("too few points");
  for (const double r : radii) {
    if (!(r > 0.0)) throw std::invalid_argument("radii must be > 0");
  }

  std::vector<double> pair_distances;
  pair_distances.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      pair_distances.push_back(core::distance(points.points[i], points.points[j]));
    }
  }
  std::sort(pair_distances.begin(), pair_distances.end());

  const double area = points.window.area();
  const double scale = area / (static_cast<double>(n) * static_cast<double>(n - 1));
  std::vector<std::pair<double, double>> out;
  out.reserve(radii.size());
  for (const double r : radii) {
    const auto within =
        std::upper_bound(pair_distances.begin(), pair_distances.end(), r) -
        pair_distances.begin();
    out.emplace_back(r, scale * 2.0 * static_cast<double>(within));
  }
  return out;
}

}  // namespace spatialgen::indicators
