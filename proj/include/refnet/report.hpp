#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "refnet/graph.hpp"
#include "refnet/partition.hpp"

namespace refnet {

/// One node of a community table: weighted in/out referral counts on the
/// directed simplified graph (self-loops add their weight to both sides).
struct CommunityTableRow {
  std::int32_t community_id = 0;
  std::string intervention;
  std::int64_t referrals_in = 0;
  std::int64_t referrals_out = 0;
  std::int64_t total = 0;
};

/// One row per node, grouped by community id and alphabetical within each
/// group. Throws PartitionMismatchError if p does not cover g's nodes.
std::vector<CommunityTableRow> community_table(const Graph& g, const Partition& p);

struct DegreeDistributionRow {
  std::string intervention;
  std::int64_t referrals_in = 0;
  std::int64_t referrals_out = 0;
  std::int64_t total = 0;
  std::int32_t rank = 0;  // 1-based, ascending total
};

/// Referral distribution ordered smallest to largest total; ties broken
/// alphabetically.
std::vector<DegreeDistributionRow> degree_distribution(const Graph& g);

enum class ExportFormat { Dot, GraphML, Json };

ExportFormat parse_export_format(std::string_view name);  // FormatError on unknown

/// Byte-deterministic graph serialization. Nodes carry a community attribute
/// when a partition is given; edges carry their weight.
std::string export_graph(const Graph& g, const Partition* p, ExportFormat format);

/// Re-import of the Json export; nodes come back in the exported order.
Graph import_graph_json(std::string_view json_text);

}  // namespace refnet
