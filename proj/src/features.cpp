#include "rlstd/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace rlstd {

Vec hopworld_features(int state) {
  if (state < 0 || state > 12)
    throw std::out_of_range("hopworld_features: state must be in [0, 12]");
  // Anchors 12, 8, 4, 0 correspond to feature slots 0..3.
  Vec phi = Vec::Zero(4);
  int lo_slot = 3 - state / 4;  // slot of the anchor at or below `state`
  int offset = state % 4;       // distance above that anchor
  if (offset == 0) {
    phi[lo_slot] = 1.0;
  } else {
    phi[lo_slot - 1] = offset / 4.0;      // upper anchor weight
    phi[lo_slot] = (4 - offset) / 4.0;    // lower anchor weight
  }
  return phi;
}

Mat hopworld_feature_matrix() {
  Mat phi(13, 4);
  for (int i = 0; i < 13; ++i) phi.row(i) = hopworld_features(i).transpose();
  return phi;
}

namespace {

void validate(const CmacConfig& c) {
  if (c.tilings < 1) throw std::invalid_argument("CmacConfig: tilings must be positive");
  if (c.partitions < 1) throw std::invalid_argument("CmacConfig: partitions must be positive");
  if (c.memory_size < 1) throw std::invalid_argument("CmacConfig: memory_size must be positive");
  if (c.bounds.empty()) throw std::invalid_argument("CmacConfig: bounds must be non-empty");
  for (const auto& [lo, hi] : c.bounds)
    if (!(lo < hi)) throw std::invalid_argument("CmacConfig: bounds require lo < hi");
  if (!c.partition_edges.empty()) {
    if (c.partition_edges.size() != c.bounds.size())
      throw std::invalid_argument("CmacConfig: partition_edges dimension mismatch");
    for (std::size_t d = 0; d < c.partition_edges.size(); ++d) {
      const auto& e = c.partition_edges[d];
      if (e.empty()) continue;  // uniform for this dimension
      if (static_cast<int>(e.size()) != c.partitions + 1)
        throw std::invalid_argument("CmacConfig: edge list must have partitions+1 entries");
      if (e.front() != c.bounds[d].first || e.back() != c.bounds[d].second)
        throw std::invalid_argument("CmacConfig: edge list must span [lo, hi]");
      for (std::size_t k = 1; k < e.size(); ++k)
        if (!(e[k - 1] < e[k]))
          throw std::invalid_argument("CmacConfig: edge list must be strictly increasing");
    }
  }
  if (!c.tiling_offsets.empty()) {
    if (static_cast<int>(c.tiling_offsets.size()) != c.tilings)
      throw std::invalid_argument("CmacConfig: tiling_offsets tiling mismatch");
    for (const auto& per_dim : c.tiling_offsets)
      if (per_dim.size() != c.bounds.size())
        throw std::invalid_argument("CmacConfig: tiling_offsets dimension mismatch");
  }
}

}  // namespace

CmacFeatureMap::CmacFeatureMap(CmacConfig config) : config_(std::move(config)) {
  validate(config_);
  if (!config_.tiling_offsets.empty()) {
    offsets_ = config_.tiling_offsets;
    return;
  }
  // Default diagonal offsets: tiling c shifted by c/C of one tile width
  // per dimension (mean width when the partition is non-uniform).
  offsets_.assign(config_.tilings, std::vector<double>(config_.bounds.size(), 0.0));
  for (int c = 0; c < config_.tilings; ++c) {
    for (std::size_t d = 0; d < config_.bounds.size(); ++d) {
      double width = (config_.bounds[d].second - config_.bounds[d].first) / config_.partitions;
      offsets_[c][d] = width * c / config_.tilings;
    }
  }
}

int CmacFeatureMap::tile_index(int dim, double value) const {
  const auto [lo, hi] = config_.bounds[dim];
  const bool uniform = config_.partition_edges.empty() || config_.partition_edges[dim].empty();
  if (uniform) {
    double width = (hi - lo) / config_.partitions;
    int idx = static_cast<int>(std::floor((value - lo) / width));
    return std::clamp(idx, 0, config_.partitions - 1);
  }
  const auto& edges = config_.partition_edges[dim];
  auto it = std::upper_bound(edges.begin(), edges.end(), value);
  int idx = static_cast<int>(it - edges.begin()) - 1;
  return std::clamp(idx, 0, config_.partitions - 1);
}

std::vector<int> CmacFeatureMap::active_cells(const Vec& state) const {
  if (state.size() != dims())
    throw std::invalid_argument("CmacFeatureMap: state dimension mismatch");
  const std::uint64_t m = static_cast<std::uint64_t>(config_.partitions);
  std::vector<int> cells(config_.tilings);
  for (int c = 0; c < config_.tilings; ++c) {
    std::uint64_t address = 0;
    std::uint64_t power = 1;  // M^(i-1)
    for (int d = 0; d < dims(); ++d) {
      double v = std::clamp(state[d], config_.bounds[d].first, config_.bounds[d].second);
      std::uint64_t a = static_cast<std::uint64_t>(tile_index(d, v - offsets_[c][d]));
      address += (config_.hashing == CmacHashing::kAdditive) ? a + power : a * power;
      power *= m;
    }
    // Tag the tiling with its own block of virtual addresses; without it,
    // neighboring tilings frequently hash to one shared cell and the
    // overlapping-tilings resolution of the coder collapses.
    address += static_cast<std::uint64_t>(c) * power;
    cells[c] = static_cast<int>(address % static_cast<std::uint64_t>(config_.memory_size));
  }
  return cells;
}

Vec CmacFeatureMap::features(const Vec& state) const {
  Vec phi = Vec::Zero(config_.memory_size);
  for (int cell : active_cells(state)) phi[cell] += 1.0;
  return phi;
}

}  // namespace rlstd
