#pragma once

#include <vector>

namespace vacomm::geometry {

// Coordinate frames. Global (GCS): X across the road, Y along the lanes,
// Z up. Camera (CCS): origin at the camera, Y along the optic axis.
enum class Frame { Global, Camera };

// Oriented 3D bounding box. Length runs along the vehicle heading (the Y
// axis in GCS under the lane assumption), width across it. The azimuth is
// measured against the Y axis of the box's frame.
struct Box3D {
  double length = 0.0;
  double width = 0.0;
  double height = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double azimuth = 0.0;
  Frame frame = Frame::Global;
  int camera = -1;      // CCS index when frame == Camera
  int vehicle_id = -1;  // ground-truth association (simulation only)
};

struct CameraPose {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double elevation = 0.0;  // tilt toward the ground plane, rad
  double azimuth = 0.0;    // optic-axis heading against global Y, rad
  double fov = 1.6;        // horizontal field of view, rad
  double max_range = 70.0; // detection range, m
};

struct BoxSet {
  std::vector<Box3D> boxes;
};

// Maps a camera-frame box into the global frame: the center is rotated by
// the azimuth-then-elevation matrices and translated to the camera position;
// the box azimuth shifts by the camera azimuth; sizes are unchanged.
Box3D ccs_to_gcs(const Box3D& box, const CameraPose& pose);

// Exact inverse of ccs_to_gcs.
Box3D gcs_to_ccs(const Box3D& box, const CameraPose& pose);

// Volume IoU of two global-frame boxes under the lane assumption
// (axis-aligned footprints, boxes resting on the ground so the height
// overlap is min(h_a, h_b)). Returns a value in [0, 1].
double iou3d(const Box3D& a, const Box3D& b);

// Redundancy removal: repeatedly seeds on the box with lexicographically
// smallest (y, x) center, gathers every box whose IoU against the seed
// exceeds gamma and replaces the group by its arithmetic mean. The output
// has pairwise IoU <= gamma.
BoxSet eliminate(const BoxSet& boxes, double gamma);

}  // namespace vacomm::geometry
