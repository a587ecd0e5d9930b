#pragma once

#include <utility>
#include <vector>

#include "ccd/graph.hpp"
#include "ccd/partition.hpp"

namespace ccd {

struct PartitionQuality {
    int k = 0;
    double mu = 0.0;
    double modularity = 0.0;
    bool valid = false;
};

// mu = sum of external (weighted) degree / sum of total (weighted) degree.
// 0 when there are no inter-community edges.
double mixing_parameter(const Graph& g, const Partition& c);

// Q = (1/2W) * sum_ij (A_ij - r * s_i s_j / 2W) * delta(c_i, c_j).
double modularity(const Graph& g, const Partition& c, double r = 1.0);

enum class NmiVariant { Sum, Max, Sqrt };

// NMI = 2 I(c1;c2) / (H1 + H2), natural-log entropies. Both entropies zero:
// 1 if identical, else 0; exactly one zero: 0.
double nmi(const Partition& c1, const Partition& c2, NmiVariant variant = NmiVariant::Sum);

// Validity rule: (k > 1) and (mu <= 0.5).
PartitionQuality assess(const Graph& g, const Partition& c);

struct SimilarityScores {
    std::vector<double> scores;               // S_i = mean_j NMI(C_i, C_j), j != i
    std::vector<std::vector<double>> matrix;  // symmetric NMI matrix, diagonal 1
};

SimilarityScores pairwise_similarity(const std::vector<Partition>& partitions);

}  // namespace ccd
