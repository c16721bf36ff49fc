#include "vacomm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vacomm::geometry {

namespace {

struct Mat3 {
  double m[3][3];
};

Mat3 rotation(const CameraPose& pose) {
  const double cp = std::cos(pose.azimuth), sp = std::sin(pose.azimuth);
  const double ct = std::cos(pose.elevation), st = std::sin(pose.elevation);
  const Mat3 rz{{{cp, sp, 0.0}, {-sp, cp, 0.0}, {0.0, 0.0, 1.0}}};
  const Mat3 rx{{{1.0, 0.0, 0.0}, {0.0, ct, st}, {0.0, -st, ct}}};
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      r.m[i][j] = 0.0;
      for (int k = 0; k < 3; ++k) r.m[i][j] += rz.m[i][k] * rx.m[k][j];
    }
  return r;
}

// One elimination pass: seeds deterministically, merges each group and keeps
// singletons untouched. Reports whether any group had more than one member.
std::vector<Box3D> eliminate_pass(std::vector<Box3D> pool, double gamma,
                                  bool* merged_any) {
  std::vector<Box3D> out;
  while (!pool.empty()) {
    // Deterministic seed: lexicographically smallest (y, x) center.
    std::size_t seed = 0;
    for (std::size_t i = 1; i < pool.size(); ++i) {
      if (pool[i].y < pool[seed].y ||
          (pool[i].y == pool[seed].y && pool[i].x < pool[seed].x))
        seed = i;
    }
    std::vector<std::size_t> group{seed};
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (i != seed && iou3d(pool[i], pool[seed]) > gamma) group.push_back(i);
    }

    if (group.size() == 1) {
      out.push_back(pool[seed]);
    } else {
      *merged_any = true;
      Box3D merged;
      int forward = 0;
      for (std::size_t i : group) {
        const Box3D& m = pool[i];
        merged.length += m.length;
        merged.width += m.width;
        merged.height += m.height;
        merged.x += m.x;
        merged.y += m.y;
        forward += std::cos(m.azimuth) >= 0.0 ? 1 : -1;
      }
      const double n = static_cast<double>(group.size());
      merged.length /= n;
      merged.width /= n;
      merged.height /= n;
      merged.x /= n;
      merged.y /= n;
      // Lane assumption: heading snaps to the majority direction and the
      // merged box rests on the ground plane.
      merged.azimuth = forward >= 0 ? 0.0 : M_PI;
      merged.z = 0.5 * merged.height;
      merged.frame = Frame::Global;
      out.push_back(merged);
    }

    std::sort(group.begin(), group.end());
    for (auto it = group.rbegin(); it != group.rend(); ++it)
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(*it));
  }
  return out;
}

}  // namespace

Box3D ccs_to_gcs(const Box3D& box, const CameraPose& pose) {
  const Mat3 r = rotation(pose);
  Box3D out = box;
  out.x = r.m[0][0] * box.x + r.m[0][1] * box.y + r.m[0][2] * box.z + pose.x;
  out.y = r.m[1][0] * box.x + r.m[1][1] * box.y + r.m[1][2] * box.z + pose.y;
  out.z = r.m[2][0] * box.x + r.m[2][1] * box.y + r.m[2][2] * box.z + pose.z;
  out.azimuth = pose.azimuth + box.azimuth;
  out.frame = Frame::Global;
  out.camera = -1;
  return out;
}

Box3D gcs_to_ccs(const Box3D& box, const CameraPose& pose) {
  const Mat3 r = rotation(pose);
  const double dx = box.x - pose.x, dy = box.y - pose.y, dz = box.z - pose.z;
  Box3D out = box;
  // The rotation is orthonormal, so the inverse is the transpose.
  out.x = r.m[0][0] * dx + r.m[1][0] * dy + r.m[2][0] * dz;
  out.y = r.m[0][1] * dx + r.m[1][1] * dy + r.m[2][1] * dz;
  out.z = r.m[0][2] * dx + r.m[1][2] * dy + r.m[2][2] * dz;
  out.azimuth = box.azimuth - pose.azimuth;
  out.frame = Frame::Camera;
  return out;
}

double iou3d(const Box3D& a, const Box3D& b) {
  const double ow = std::min({a.width, b.width,
                              0.5 * a.width + 0.5 * b.width - std::abs(a.x - b.x)});
  const double ol = std::min({a.length, b.length,
                              0.5 * a.length + 0.5 * b.length - std::abs(a.y - b.y)});
  const double oh = std::min(a.height, b.height);
  const double overlap = std::max(0.0, ow) * std::max(0.0, ol) * oh;
  const double va = a.length * a.width * a.height;
  const double vb = b.length * b.width * b.height;
  return overlap / (va + vb - overlap);
}

BoxSet eliminate(const BoxSet& boxes, double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("eliminate: gamma must lie in (0, 1)");
  // Merged boxes can themselves overlap, so passes repeat until stable; the
  // final pass certifies that every surviving pair stays at or below gamma.
  std::vector<Box3D> pool = boxes.boxes;
  bool merged_any = true;
  while (merged_any) {
    merged_any = false;
    pool = eliminate_pass(std::move(pool), gamma, &merged_any);
  }
  return BoxSet{std::move(pool)};
}

}  // namespace vacomm::geometry
