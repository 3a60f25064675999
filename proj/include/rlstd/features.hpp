#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

namespace rlstd {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Interpolated 4-element features for the 13-state hop chain. Anchor
// states 12, 8, 4, 0 map to the four unit vectors; states in between
// split their weight linearly over the two surrounding anchors.
Vec hopworld_features(int state);

// Feature matrix with hopworld_features(i) as row i, for analytic solves.
Mat hopworld_feature_matrix();

enum class CmacHashing {
  kAdditive,    // A(s) = sum_i (a(i) + M^(i-1))
  kPositional,  // A(s) = sum_i  a(i) * M^(i-1)
};

struct CmacConfig {
  int tilings = 4;
  int partitions = 7;
  // One [lo, hi] interval per input dimension.
  std::vector<std::pair<double, double>> bounds;
  // Per-dimension explicit partition edges (length partitions + 1,
  // strictly increasing, first = lo, last = hi). Empty inner vector or
  // empty list means uniform partitions for that dimension.
  std::vector<std::vector<double>> partition_edges;
  int memory_size = 1;
  CmacHashing hashing = CmacHashing::kPositional;
  // Per-tiling per-dimension displacement subtracted from the input
  // before tiling. Empty means the default diagonal offsets: tiling c
  // is shifted by c/C of one tile width in every dimension.
  std::vector<std::vector<double>> tiling_offsets;
};

// Hashed tile coder. Immutable after construction; evaluation is safe
// from any number of concurrent callers.
class CmacFeatureMap {
 public:
  explicit CmacFeatureMap(CmacConfig config);

  // Hashed memory index per tiling, each in [0, memory_size).
  // Out-of-bounds inputs are clipped to the coding bounds first.
  std::vector<int> active_cells(const Vec& state) const;

  // Dense count vector: entry k is the number of tilings hashing to k.
  Vec features(const Vec& state) const;

  int size() const { return config_.memory_size; }
  int dims() const { return static_cast<int>(config_.bounds.size()); }
  const CmacConfig& config() const { return config_; }

 private:
  int tile_index(int dim, double value) const;

  CmacConfig config_;
  std::vector<std::vector<double>> offsets_;  // [tiling][dim]
};

}  // namespace rlstd
