#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "vacomm/geometry.hpp"

namespace vacomm::features {

// Uniform grid over the monitored X-Y plane. Columns index X, rows index Y;
// a cell covers the half-open region [x0+ix*W, x0+(ix+1)*W) x [y0+iy*L,
// y0+(iy+1)*L), matching the membership inequalities used for all grid
// features.
struct GridSpec {
  double origin_x = 0.0;
  double origin_y = 0.0;
  double cell_width = 0.44;   // W, along X
  double cell_length = 0.52;  // L, along Y
  int nx = 40;                // columns
  int ny = 160;               // rows

  std::optional<std::pair<int, int>> cell_of(double x, double y) const;
  std::pair<double, double> cell_center(int ix, int iy) const;
  double width() const { return cell_width * nx; }
  double length() const { return cell_length * ny; }
};

enum class GridRole { Bdf, Heatmap, Usdf, OutputBs, OutputPower };

// Dense rank-3 tensor over a grid; values are stored x-major, channel-minor.
struct GridTensor {
  GridRole role = GridRole::Bdf;
  int nx = 0;
  int ny = 0;
  int channels = 0;
  std::vector<double> v;

  GridTensor() = default;
  GridTensor(GridRole r, int nx_, int ny_, int c)
      : role(r), nx(nx_), ny(ny_), channels(c),
        v(static_cast<std::size_t>(nx_) * ny_ * c, 0.0) {}

  double& at(int ix, int iy, int c = 0) {
    return v[(static_cast<std::size_t>(ix) * ny + iy) * channels + c];
  }
  double at(int ix, int iy, int c = 0) const {
    return v[(static_cast<std::size_t>(ix) * ny + iy) * channels + c];
  }
};

// Size normalizers: the maximum length/width/height over the vehicle
// catalog.
struct SizeNorms {
  double l_max = 11.08;
  double w_max = 3.25;
  double h_max = 3.33;
};

// Per cell, the mean (l, w, h) of the member boxes divided by the norms;
// empty cells stay zero. Boxes whose center falls outside the grid are
// skipped and counted into *skipped when provided.
GridTensor encode_bdf(const geometry::BoxSet& boxes, const GridSpec& grid,
                      const SizeNorms& norms, int* skipped = nullptr);

// Radius (in cells) such that any box whose two corners are displaced by at
// most r keeps at least min_iou overlap with the original l x w cell box.
// Throws std::domain_error when a closed form has no real root.
double gaussian_radius(double l_cells, double w_cells, double min_iou);

// Gaussian keypoint heatmap for the user box: 1 at the keypoint cell,
// exp(-(dx^2+dy^2)/(2 sigma^2)) inside the floor(r)-cell window (clipped at
// the borders), 0 elsewhere. sigma = (2 floor(r) + 1) / 6.
GridTensor render_heatmap(const geometry::Box3D& user_box, const GridSpec& grid,
                          double min_iou);

struct HeatmapPeak {
  int ix = 0;
  int iy = 0;
  double x = 0.0;  // cell-center coordinates
  double y = 0.0;
  double value = 0.0;
};

// Argmax cell of a single-channel tensor; ties resolve to the smallest
// storage index.
HeatmapPeak heatmap_argmax(const GridTensor& tensor, const GridSpec& grid);

// User and scatter distribution feature: per cell (normalized mean sizes,
// user count) when the cell holds user boxes, (normalized mean sizes, -1)
// when it holds only scatterers, the zero row otherwise. user_box_indices
// maps each user to its box in the set.
GridTensor encode_usdf(const geometry::BoxSet& boxes,
                       const std::vector<int>& user_box_indices,
                       const GridSpec& grid, const SizeNorms& norms);

struct AllocationLabels {
  GridTensor bs;     // one-hot serving-BS indicators, C = num_bs
  GridTensor power;  // mean normalized transmit power per user cell, C = 1
};

// Label tensors for a solved allocation: for each user cell the serving-BS
// channel is set to one and the power channel holds the mean of
// P_u / P_max[b_u] over the cell's users.
AllocationLabels encode_labels(const std::vector<int>& serving_bs,
                               const std::vector<double>& power,
                               const std::vector<double>& p_max,
                               const std::vector<std::pair<int, int>>& user_cells,
                               int num_bs, const GridSpec& grid);

}  // namespace vacomm::features
