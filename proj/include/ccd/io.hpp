#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ccd/consensus.hpp"
#include "ccd/graph.hpp"
#include "ccd/partition.hpp"

namespace ccd {

// Edge-list format: one edge per line, `source<TAB>target[<TAB>weight]`,
// `#` comments and blank lines ignored.
std::vector<EdgeRow> parse_edge_list(std::istream& in);
Graph read_edge_list(const std::string& path);
Graph parse_edge_list_string(const std::string& text);
void write_edge_list(const Graph& g, const std::string& path);

// Membership sidecar: `node<TAB>community`, one node per line. Nodes are
// matched to the graph by label; every graph node must appear exactly once.
Partition read_partition(const Graph& g, const std::string& path);
Partition parse_partition_string(const Graph& g, const std::string& text);
void write_partition(const Graph& g, const Partition& p, const std::string& path);

// ConsensusPartition CSV: header + `node_label,community,gamma,is_outlier`.
void write_consensus_csv(const Graph& g, const ConsensusPartition& cp, const std::string& path);

// Sentinel written on a null-result: header plus a `# null-result` marker.
void write_null_result_csv(const std::string& path);

// Sparse triplets `i,j,d_ij` for d_ij > 0, i < j.
void write_cooccurrence_csv(const CoOccurrenceMatrix& d, const std::string& path);

// Fixed-precision decimal formatting used by every writer, so identical
// results serialize to identical bytes.
std::string format_double(double x);

}  // namespace ccd
