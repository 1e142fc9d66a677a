#include "refnet/partition.hpp"

#include <numeric>

namespace refnet {

Partition Partition::singletons(std::int32_t node_count) {
  Partition p;
  p.community.resize(node_count);
  std::iota(p.community.begin(), p.community.end(), 0);
  p.num_communities = node_count;
  return p;
}

Partition Partition::whole(std::int32_t node_count) {
  Partition p;
  p.community.assign(node_count, 0);
  p.num_communities = node_count > 0 ? 1 : 0;
  return p;
}

Partition Partition::from_assignment(const std::vector<std::int32_t>& raw) {
  Partition p;
  p.community.resize(raw.size());
  std::vector<std::int32_t> renumber;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    std::int32_t id = raw[i];
    if (static_cast<std::size_t>(id) >= renumber.size()) {
      renumber.resize(id + 1, -1);
    }
    if (renumber[id] < 0) {
      renumber[id] = p.num_communities++;
    }
    p.community[i] = renumber[id];
  }
  return p;
}

std::vector<std::vector<std::int32_t>> Partition::groups() const {
  std::vector<std::vector<std::int32_t>> result(num_communities);
  for (std::size_t i = 0; i < community.size(); ++i) {
    result[community[i]].push_back(static_cast<std::int32_t>(i));
  }
  return result;
}

}  // namespace refnet
