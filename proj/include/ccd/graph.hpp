#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ccd/partition.hpp"

namespace ccd {

struct Edge {
    int u;
    int v;
    double w;
};

struct EdgeRow {
    std::string source;
    std::string target;
    std::optional<double> weight;
};

// Node relabeling produced by Graph permutation. forward[old_id] = new_id.
struct Permutation {
    std::vector<int> forward;
    std::uint64_t seed = 0;

    std::vector<int> inverse() const;

    // Maps a partition over permuted ids back to original ids.
    Partition map_back(const Partition& permuted) const;
};

// Immutable simple undirected weighted graph. Node ids are dense 0..n-1;
// every node carries a stable external string label. Adjacency is indexed
// at construction and shared read-only across concurrent detector trials.
class Graph {
  public:
    Graph() = default;

    // Interns labels to dense ids in first-appearance order; duplicate
    // undirected edges collapse by summing weights; missing weight = 1.0.
    static Graph from_edge_list(const std::vector<EdgeRow>& rows);

    // Builds directly from dense-id edges (no duplicates, no self-loops).
    static Graph from_edges(int n, std::vector<Edge> edges,
                            std::vector<std::string> labels = {});

    int num_nodes() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    double total_weight() const { return total_weight_; }

    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int i) const { return labels_.at(static_cast<std::size_t>(i)); }

    // Dense id for a label, or -1.
    int node_by_label(const std::string& label) const;

    const std::vector<std::pair<int, double>>& neighbors(int i) const;

    // (unweighted degree, strength).
    std::pair<int, double> degree(int i) const;

    // Isomorphic copy: uniform random node relabeling plus an independent
    // shuffle of the edge list order.
    std::pair<Graph, Permutation> permute(std::uint64_t seed) const;

    // Component labels 1..k, numbered by order of first-visited node id.
    Partition connected_components() const;

    // Iterative-peeling core numbers (unweighted). Isolated nodes get 0.
    std::vector<int> k_coreness() const;

  private:
    int n_ = 0;
    double total_weight_ = 0.0;
    std::vector<Edge> edges_;
    std::vector<std::string> labels_;
    std::vector<std::vector<std::pair<int, double>>> adj_;

    void build_adjacency();
};

}  // namespace ccd
