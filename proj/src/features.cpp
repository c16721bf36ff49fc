#include "vacomm/features.hpp"

#include <cmath>
#include <stdexcept>

namespace vacomm::features {

std::optional<std::pair<int, int>> GridSpec::cell_of(double x, double y) const {
  const int ix = static_cast<int>(std::floor((x - origin_x) / cell_width));
  const int iy = static_cast<int>(std::floor((y - origin_y) / cell_length));
  if (ix < 0 || ix >= nx || iy < 0 || iy >= ny) return std::nullopt;
  return std::make_pair(ix, iy);
}

std::pair<double, double> GridSpec::cell_center(int ix, int iy) const {
  return {origin_x + (ix + 0.5) * cell_width,
          origin_y + (iy + 0.5) * cell_length};
}

GridTensor encode_bdf(const geometry::BoxSet& boxes, const GridSpec& grid,
                      const SizeNorms& norms, int* skipped) {
  GridTensor out(GridRole::Bdf, grid.nx, grid.ny, 3);
  std::vector<int> count(static_cast<std::size_t>(grid.nx) * grid.ny, 0);
  for (const auto& box : boxes.boxes) {
    const auto cell = grid.cell_of(box.x, box.y);
    if (!cell) {
      if (skipped) ++*skipped;
      continue;
    }
    const auto [ix, iy] = *cell;
    out.at(ix, iy, 0) += box.length;
    out.at(ix, iy, 1) += box.width;
    out.at(ix, iy, 2) += box.height;
    ++count[static_cast<std::size_t>(ix) * grid.ny + iy];
  }
  for (int ix = 0; ix < grid.nx; ++ix)
    for (int iy = 0; iy < grid.ny; ++iy) {
      const int n = count[static_cast<std::size_t>(ix) * grid.ny + iy];
      if (n == 0) continue;
      out.at(ix, iy, 0) /= n * norms.l_max;
      out.at(ix, iy, 1) /= n * norms.w_max;
      out.at(ix, iy, 2) /= n * norms.h_max;
    }
  return out;
}

double gaussian_radius(double l_cells, double w_cells, double min_iou) {
  if (!(l_cells >= 1.0 && w_cells >= 1.0))
    throw std::invalid_argument("gaussian_radius: box must span >= 1 cell");
  if (!(min_iou > 0.0 && min_iou < 1.0))
    throw std::invalid_argument("gaussian_radius: min_iou must lie in (0, 1)");
  const double s = l_cells + w_cells;
  const double a = l_cells * w_cells;
  const double g = min_iou;

  // Same-direction shift of both corners.
  const double d1 = s * s - 4.0 * a * (1.0 - g) / (1.0 + g);
  // Both corners inward (shrunk box inside the original).
  const double d2 = s * s - 4.0 * a * (1.0 - g);
  // Both corners outward (grown box containing the original).
  const double d3 = g * g * s * s + 4.0 * a * g * (1.0 - g);
  if (d1 < 0.0 || d2 < 0.0 || d3 < 0.0)
    throw std::domain_error("gaussian_radius: no real radius for this size/IoU");

  const double r1 = 0.5 * (s - std::sqrt(d1));
  const double r2 = 0.25 * (s - std::sqrt(d2));
  const double r3 = (-g * s + std::sqrt(d3)) / (4.0 * g);
  return std::min({r1, r2, r3});
}

GridTensor render_heatmap(const geometry::Box3D& user_box, const GridSpec& grid,
                          double min_iou) {
  const auto cell = grid.cell_of(user_box.x, user_box.y);
  if (!cell)
    throw std::domain_error("render_heatmap: user box center outside the grid");
  const auto [kx, ky] = *cell;

  const double l_cells = std::ceil(user_box.length / grid.cell_length);
  const double w_cells = std::ceil(user_box.width / grid.cell_width);
  const double radius = gaussian_radius(l_cells, w_cells, min_iou);
  const int win = static_cast<int>(std::floor(radius));
  const double sigma = (2.0 * win + 1.0) / 6.0;

  GridTensor out(GridRole::Heatmap, grid.nx, grid.ny, 1);
  for (int ix = std::max(0, kx - win); ix <= std::min(grid.nx - 1, kx + win); ++ix)
    for (int iy = std::max(0, ky - win); iy <= std::min(grid.ny - 1, ky + win); ++iy) {
      const double dx = ix - kx, dy = iy - ky;
      out.at(ix, iy) = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
    }
  return out;
}

HeatmapPeak heatmap_argmax(const GridTensor& tensor, const GridSpec& grid) {
  if (tensor.nx == 0 || tensor.ny == 0)
    throw std::invalid_argument("heatmap_argmax: empty tensor");
  HeatmapPeak peak;
  peak.value = tensor.at(0, 0);
  for (int ix = 0; ix < tensor.nx; ++ix)
    for (int iy = 0; iy < tensor.ny; ++iy) {
      if (tensor.at(ix, iy) > peak.value) {
        peak.value = tensor.at(ix, iy);
        peak.ix = ix;
        peak.iy = iy;
      }
    }
  const auto [cx, cy] = grid.cell_center(peak.ix, peak.iy);
  peak.x = cx;
  peak.y = cy;
  return peak;
}

GridTensor encode_usdf(const geometry::BoxSet& boxes,
                       const std::vector<int>& user_box_indices,
                       const GridSpec& grid, const SizeNorms& norms) {
  GridTensor out(GridRole::Usdf, grid.nx, grid.ny, 4);
  const std::size_t cells = static_cast<std::size_t>(grid.nx) * grid.ny;
  std::vector<int> count(cells, 0), users(cells, 0);
  for (const auto& box : boxes.boxes) {
    const auto cell = grid.cell_of(box.x, box.y);
    if (!cell) continue;
    const auto [ix, iy] = *cell;
    out.at(ix, iy, 0) += box.length;
    out.at(ix, iy, 1) += box.width;
    out.at(ix, iy, 2) += box.height;
    ++count[static_cast<std::size_t>(ix) * grid.ny + iy];
  }
  for (int idx : user_box_indices) {
    if (idx < 0 || idx >= static_cast<int>(boxes.boxes.size()))
      throw std::invalid_argument("encode_usdf: user box index out of range");
    const auto& box = boxes.boxes[static_cast<std::size_t>(idx)];
    const auto cell = grid.cell_of(box.x, box.y);
    if (!cell) continue;
    const auto [ix, iy] = *cell;
    ++users[static_cast<std::size_t>(ix) * grid.ny + iy];
  }
  for (int ix = 0; ix < grid.nx; ++ix)
    for (int iy = 0; iy < grid.ny; ++iy) {
      const std::size_t flat = static_cast<std::size_t>(ix) * grid.ny + iy;
      if (count[flat] == 0) continue;
      out.at(ix, iy, 0) /= count[flat] * norms.l_max;
      out.at(ix, iy, 1) /= count[flat] * norms.w_max;
      out.at(ix, iy, 2) /= count[flat] * norms.h_max;
      out.at(ix, iy, 3) = users[flat] > 0 ? users[flat] : -1.0;
    }
  return out;
}

AllocationLabels encode_labels(const std::vector<int>& serving_bs,
                               const std::vector<double>& power,
                               const std::vector<double>& p_max,
                               const std::vector<std::pair<int, int>>& user_cells,
                               int num_bs, const GridSpec& grid) {
  if (serving_bs.size() != power.size() || serving_bs.size() != user_cells.size())
    throw std::invalid_argument("encode_labels: per-user vectors disagree");
  AllocationLabels labels{GridTensor(GridRole::OutputBs, grid.nx, grid.ny, num_bs),
                          GridTensor(GridRole::OutputPower, grid.nx, grid.ny, 1)};
  std::vector<int> cell_users(static_cast<std::size_t>(grid.nx) * grid.ny, 0);
  for (std::size_t u = 0; u < serving_bs.size(); ++u) {
    const int b = serving_bs[u];
    if (b < 0 || b >= num_bs)
      throw std::invalid_argument("encode_labels: user without an assigned BS");
    const auto [ix, iy] = user_cells[u];
    labels.bs.at(ix, iy, b) = 1.0;
    labels.power.at(ix, iy) += power[u] / p_max[static_cast<std::size_t>(b)];
    ++cell_users[static_cast<std::size_t>(ix) * grid.ny + iy];
  }
  for (int ix = 0; ix < grid.nx; ++ix)
    for (int iy = 0; iy < grid.ny; ++iy) {
      const int n = cell_users[static_cast<std::size_t>(ix) * grid.ny + iy];
      if (n > 1) labels.power.at(ix, iy) /= n;
    }
  return labels;
}

}  // namespace vacomm::features
