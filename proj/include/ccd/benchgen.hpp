#pragma once

#include <cstdint>
#include <string>

#include "ccd/graph.hpp"
#include "ccd/partition.hpp"

namespace ccd {

struct BenchParams {
    std::string family;
    int k0 = 0;
    int s = 0;
    bool bridges = false;
    bool center = false;
    int n = 0;
    double tau1 = 0.0;
    double tau2 = 0.0;
    double mu_nominal = 0.0;
    double avg_deg = 0.0;
    int c_min = 0;
    int c_max = 0;
    double edge_prob = 0.0;
    std::uint64_t seed = 0;
};

struct BenchmarkInstance {
    Graph graph;
    Partition truth;
    BenchParams nominal;
    double realized_mu = 0.0;
};

// k0 cliques of size s joined in a closed ring. bridges=false: one direct
// edge between consecutive cliques (distinct endpoints, so every node has
// degree s-1 or s). bridges=true: a dedicated bridge node with one edge to
// node 0 of each adjacent clique. center=true: one extra node with an edge
// to node 0 of every clique. Truth labels cliques 1..k0; bridge and center
// nodes get outlier label 0.
BenchmarkInstance ring_of_cliques(int k0, int s, bool bridges, bool center,
                                  std::uint64_t seed = 0);

// Approximate LFR-style benchmark: truncated power-law degrees (tau1) and
// community sizes (tau2), configuration-model wiring at target mixing mu.
// Regenerates with an incremented sub-seed until realized mu is within
// +-0.03 of nominal (at most 20 attempts).
BenchmarkInstance lfr_like(int n, double tau1, double tau2, double mu_nominal, double avg_deg,
                           int c_min, int c_max, std::uint64_t seed);

Graph erdos_renyi(int n, double edge_prob, std::uint64_t seed,
                  bool largest_component_only = false);

// Embedded weighted Zachary karate network; truth = the two-faction split.
BenchmarkInstance karate();

}  // namespace ccd
