#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "vacomm/geometry.hpp"

namespace vacomm::channel {

using cdouble = std::complex<double>;

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

enum class PathKind { LineOfSight, Reflection };

struct Path {
  cdouble gain;
  double aod = 0.0;  // departure azimuth in the BS ULA frame, rad
  double aoa = 0.0;  // arrival azimuth in the user ULA frame, rad
  PathKind kind = PathKind::LineOfSight;
  std::optional<Vec3> bounce;
};

struct ChannelMatrix {
  int n_rx = 0;  // user antennas
  int n_tx = 0;  // BS antennas
  std::vector<cdouble> h;  // row-major n_rx x n_tx
  std::vector<Path> paths;
  int bs_id = -1;
  int vehicle_id = -1;

  cdouble& at(int rx, int tx) { return h[static_cast<std::size_t>(rx) * n_tx + tx]; }
  cdouble at(int rx, int tx) const { return h[static_cast<std::size_t>(rx) * n_tx + tx]; }
  double frobenius_sq() const;
};

// Half-wavelength ULA steering vector
// (1/sqrt(N)) [1, e^{j pi sin(phi)}, ..., e^{j (N-1) pi sin(phi)}].
std::vector<cdouble> steering(double phi, int n);

// DFT-style beam codebooks; beam i (1-based) points at
// (2i - 2 - N) / (2N) * pi. Beam pairs enumerate transmit-major.
struct Codebook {
  std::vector<std::vector<cdouble>> tx;
  std::vector<std::vector<cdouble>> rx;

  static Codebook make(int n_tx_beams, int n_tx_ant, int n_rx_beams, int n_rx_ant);
  int pairs() const { return static_cast<int>(tx.size() * rx.size()); }
  int pair_index(int tx_beam, int rx_beam) const {
    return tx_beam * static_cast<int>(rx.size()) + rx_beam;
  }
  std::pair<int, int> split_pair(int pair) const {
    const int n = static_cast<int>(rx.size());
    return {pair / n, pair % n};
  }
};

struct RadioConfig {
  int n_bs_antennas = 16;
  int n_user_antennas = 8;
  int n_tx_beams = 16;
  int n_rx_beams = 8;
  double carrier_hz = 28e9;
  double noise_power = 1.0;          // sigma^2
  std::vector<double> p_max;         // per BS, filled by calibrate()
  double bs_ula_height = 4.5;        // m
  double user_ula_offset = 0.05;     // above the roof center, m
  double vehicle_reflection_db = 6.0;
  double wall_reflection_db = 10.0;
  int max_paths = 25;
};

// Vertical wall plane x = const used as a first-order reflector, spanning
// y in [y0, y1] up to the given height.
struct Wall {
  double x = 0.0;
  double y0 = 0.0;
  double y1 = 0.0;
  double height = 10.0;
};

// Geometry inputs for path tracing: the target user antenna, every other
// vehicle box acting as blocker/reflector, and the environment walls.
struct PathSceneView {
  Vec3 bs;                                   // BS ULA phase center
  Vec3 user;                                 // user ULA phase center
  double user_heading = 0.0;                 // ULA axis direction, rad vs Y
  std::vector<geometry::Box3D> obstacles;    // other vehicles, grounded GCS
  std::vector<Wall> walls;
};

// LoS plus first-order image-source reflections off vehicle faces and
// walls. Gains combine free-space attenuation, per-material reflection loss
// and a seeded uniform random phase. Keeps the max_paths strongest; an empty
// list is a valid (fully blocked) outcome.
std::vector<Path> trace_paths(const PathSceneView& view, const RadioConfig& cfg,
                              std::uint64_t phase_seed);

// Assembles the geometric channel H = sum_l alpha_l a_r(phi_r) a_t(phi_t)^H.
ChannelMatrix assemble(const std::vector<Path>& paths, int n_tx, int n_rx);

struct BeamTrainResult {
  int pair = 0;      // transmit-major index into the codebook pair set
  double rsrp = 0.0; // |f_U^H H f_B|^2 at the selected pair
};

// Exhaustive beam sweep maximizing the beamformed receive power; ties take
// the lowest pair index.
BeamTrainResult beam_train(const ChannelMatrix& h, const Codebook& cb);

// Full beam response map: entry (tx, rx) holds |f_U^H H f_B|^2.
std::vector<double> beam_response(const ChannelMatrix& h, const Codebook& cb);

// 4-index table RSRP(b, u, b', u') = |f_U(b',u')^H H(b, u') f_B(b, u)|^2.
struct RsrpTable {
  int num_bs = 0;
  int num_users = 0;
  std::vector<double> v;

  RsrpTable() = default;
  RsrpTable(int b, int u)
      : num_bs(b), num_users(u),
        v(static_cast<std::size_t>(b) * u * b * u, 0.0) {}
  double& at(int b, int u, int b2, int u2) {
    return v[((static_cast<std::size_t>(b) * num_users + u) * num_bs + b2) *
                 num_users + u2];
  }
  double at(int b, int u, int b2, int u2) const {
    return v[((static_cast<std::size_t>(b) * num_users + u) * num_bs + b2) *
                 num_users + u2];
  }
};

// Builds the table from per-(BS, user) channels and their trained beams.
// channels[b][u] is the channel from BS b to user u; beams[b][u] the pair
// selected by beam_train for that link.
RsrpTable rsrp_table(const std::vector<std::vector<ChannelMatrix>>& channels,
                     const std::vector<std::vector<int>>& beams,
                     const Codebook& cb);

// Per-BS transmit power such that P_max,b / sigma^2 times the dataset-mean
// Frobenius channel energy of BS b equals the target SNR.
std::vector<double> calibrate_power(const std::vector<double>& frobenius_sums,
                                    const std::vector<std::int64_t>& channel_counts,
                                    double noise_power, double target_snr_db);

}  // namespace vacomm::channel
