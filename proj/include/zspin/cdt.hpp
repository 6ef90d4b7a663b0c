#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "zspin/model.hpp"

namespace zspin {

/// Bit array of fork indicators: rows are time steps (row 0 earliest), and
/// every row must hold at least one set bit so each slice owns a vertex.
struct ForkArray {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint8_t> bits;  // row-major

  bool at(int r, int c) const {
    return bits[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) +
                static_cast<std::size_t>(c)] != 0;
  }
  int popcount() const {
    int n = 0;
    for (auto b : bits) n += b;
    return n;
  }
};

/// Vertex of the ambient lattice: time slice and column position.
struct GridPoint {
  int slice = 0;
  int col = 0;
  friend bool operator==(const GridPoint&, const GridPoint&) = default;
  friend auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

struct TriEdge {
  GridPoint a, b;  // a < b
  bool spacelike = false;
};

struct TriFace {
  int strip = 0;  // lies between slices strip and strip+1
  bool up = false;
  std::array<GridPoint, 3> verts;  // base-left, base-right, apex
};

/// Time-sliced triangulation assembled from forks. The fork at row t,
/// column j owns the vertex (t+1, j+1), the space-like edge from (t+1, j) to
/// (t+1, j+1) and the pair of triangles sandwiching that edge: the
/// down-triangle below it (apex (t, j+1)) and the up-triangle above it
/// (apex (t+2, j)). With every fork present this tiles the regular
/// triangular lattice. rows/cols record the ambient extent so that encoding
/// reproduces the exact source array.
struct FoliatedTriangulation {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<int>> slices;  // per slice, sorted column list
  std::vector<TriEdge> edges;            // sorted, canonical
  std::vector<TriFace> faces;            // fork order: down then up
};

void validate(const ForkArray& fa);  // DegenerateRow on an all-zero row

FoliatedTriangulation decode(const ForkArray& fa);

/// Inverse of decode. Errors with NotFoliated when the complex is not the
/// closure of a fork set on the recorded extent.
ForkArray encode(const FoliatedTriangulation& tri);

struct Observables {
  long long volume = 0;      // triangle count
  double action = 0.0;       // lambda_cc * volume
  std::vector<int> coordination;  // incident triangles per vertex, slice order
  double deficit_total = 0.0;     // sum over vertices of 2*pi - (pi/3)*coordination
};

Observables observables(const FoliatedTriangulation& tri, double lambda_cc);

struct MetropolisParams {
  int rows = 0;
  int cols = 0;
  double lambda_cc = 0.0;
  long long steps = 0;
  std::uint64_t seed = 0;
  long long thin = 1000;  // sample emission period
};

struct MetropolisSummary {
  long long steps = 0;
  long long accepted = 0;
  double acceptance_rate = 0.0;
  double mean_volume = 0.0;
  double mean_action = 0.0;
  ForkArray final_state;
};

/// Single-site Metropolis chain over valid fork arrays, started from the
/// all-ones array. One step draws (row, col, u); clearing a row's last bit
/// is rejected outright, otherwise the flip is accepted when
/// u < exp(-delta_action) with delta_action = +-2*lambda_cc. Three draws per
/// step, always, so the stream is reproducible by seed alone.
MetropolisSummary metropolis_sample(
    const MetropolisParams& p,
    const std::function<void(long long step, const ForkArray&)>& on_step = nullptr,
    const std::function<void(long long step, const ForkArray&, double accept_rate)>&
        on_sample = nullptr);

}  // namespace zspin
