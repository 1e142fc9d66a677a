#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace refnet {

/// Node-to-community assignment. Community ids are contiguous 0..k-1 and
/// numbered by the smallest node index they contain, so equal partitions
/// always compare equal regardless of how they were produced.
struct Partition {
  std::vector<std::int32_t> community;  // node index -> community id
  std::int32_t num_communities = 0;
  std::optional<double> q;

  static Partition singletons(std::int32_t node_count);
  static Partition whole(std::int32_t node_count);

  /// Canonicalize an arbitrary labeling: ids renumbered in order of first
  /// appearance when scanning nodes by index.
  static Partition from_assignment(const std::vector<std::int32_t>& raw);

  /// Members of each community, ascending node index within each group.
  std::vector<std::vector<std::int32_t>> groups() const;

  bool same_assignment(const Partition& other) const {
    return community == other.community;
  }
};

}  // namespace refnet
