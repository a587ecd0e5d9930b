#pragma once

#include <cstdint>
#include <string>

#include "ccd/graph.hpp"
#include "ccd/partition.hpp"

namespace ccd {

enum class Algorithm { Louvain, Leiden, LabelPropagation, Walktrap };

Algorithm algorithm_from_name(const std::string& name);
std::string algorithm_name(Algorithm a);

struct DetectorConfig {
    Algorithm algorithm = Algorithm::Louvain;
    double resolution = 1.0;  // louvain / leiden
    int walk_length = 4;      // walktrap; the customary default
    int max_sweeps = 100;
    std::uint64_t seed = 0;

    void validate() const;
};

// Greedy modularity optimization: randomized local moves + aggregation.
// Resolution r scales the null-model term; stochastic via node order.
Partition louvain(const Graph& g, double r, std::uint64_t seed);

// Louvain plus a refinement that splits any community inducing a
// disconnected subgraph, so every returned community is connected.
Partition leiden(const Graph& g, double r, std::uint64_t seed);

// Asynchronous weighted-majority label propagation, uniform random
// tie-breaking, fresh random node order per sweep. Converged when every
// node's label attains the weighted maximum over its neighborhood.
Partition label_propagation(const Graph& g, std::uint64_t seed, int max_sweeps = 100);

// Pons-Latapy random-walk agglomeration with exact dense length-s walk
// distances; returns the modularity-maximizing cut of the merge dendrogram.
Partition walktrap(const Graph& g, int s, std::uint64_t seed);

// Dispatch on cfg.algorithm; output labels contiguous 1..k.
Partition detect(const Graph& g, const DetectorConfig& cfg);

}  // namespace ccd
