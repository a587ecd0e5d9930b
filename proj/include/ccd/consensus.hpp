#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ccd/detectors.hpp"
#include "ccd/graph.hpp"
#include "ccd/partition.hpp"

namespace ccd {

enum class OutlierStrategy { Incorporate, Highlight, Group };

OutlierStrategy outlier_strategy_from_name(const std::string& name);
std::string outlier_strategy_name(OutlierStrategy s);

struct CcdConfig {
    int trials = 100;                       // t
    double co_occurrence_threshold = 0.8;   // p
    double prune_quantile = 0.5;            // q
    OutlierStrategy outlier_strategy = OutlierStrategy::Highlight;
    DetectorConfig detector;
    std::optional<std::pair<double, double>> resolution_range;  // per-trial uniform r
    std::uint64_t master_seed = 0;

    void validate() const;
};

struct CoOccurrenceMatrix {
    int n = 0;
    int n_used = 0;             // partitions aggregated after pruning
    std::vector<double> data;   // row-major n*n, symmetric, diagonal 1

    double at(int i, int j) const { return data[static_cast<std::size_t>(i) * n + j]; }
    double& at(int i, int j) { return data[static_cast<std::size_t>(i) * n + j]; }
};

struct ConsensusPartition {
    Partition membership;              // labels 1..k; 0 = grouped-outlier community
    std::vector<double> gamma;         // per-node uncertainty in [0,1]
    std::vector<bool> outlier_flags;
    int trials_used = 0;               // partitions surviving the prune
    int trials_valid = 0;              // partitions passing the validity gate
};

// Runs t permuted detector trials and keeps partitions passing the validity
// gate (k > 1 and mu <= 0.5). An empty result is a legal outcome.
std::vector<Partition> generate_valid_partitions(const Graph& g, const CcdConfig& cfg,
                                                 int threads = 1);

// Drops partitions whose mean-NMI similarity score falls strictly below the
// nearest-rank q-quantile. Lists of size <= 2 are kept whole.
std::vector<Partition> prune_by_quantile(const std::vector<Partition>& partitions, double q);

CoOccurrenceMatrix build_cooccurrence(const std::vector<Partition>& partitions, int n);

struct BlockExtraction {
    Partition membership;       // block labels 1..k (singleton blocks included)
    std::vector<double> gamma;
};

// Blocks = connected components of the graph with edges where d_ij >= p,
// discovered lowest-unassigned-node-id first. Multi-node block: gamma_j =
// 1 - mean co-occurrence with the rest of the block; singleton: 1 - max
// co-occurrence with any other node.
BlockExtraction extract_blocks(const CoOccurrenceMatrix& d, double p);

ConsensusPartition apply_outlier_strategy(const BlockExtraction& blocks,
                                          const CoOccurrenceMatrix& d,
                                          OutlierStrategy strategy);

// Full pipeline; nullopt = null-result (no valid partitions found).
// cooc_out, when given, receives the post-prune co-occurrence matrix.
std::optional<ConsensusPartition> ccd(const Graph& g, const CcdConfig& cfg, int threads = 1,
                                      CoOccurrenceMatrix* cooc_out = nullptr);

struct RecursiveResult {
    Partition partition;
    bool converged = false;
    int depth = 0;
};

// Recursive-consensus baseline (Lancichinetti et al. style): build D from t
// trials, threshold at p, rerun the detector on D as a weighted graph until
// D is 0/1 block-diagonal. Nodes isolated by thresholding are re-attached to
// the neighboring community with the highest weight.
RecursiveResult recursive_consensus(const Graph& g, const DetectorConfig& detector, int trials,
                                    double p = 0.6, int max_depth = 10,
                                    std::uint64_t master_seed = 0);

}  // namespace ccd
