#include "ccd/detectors.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "ccd/rng.hpp"

namespace ccd {

Algorithm algorithm_from_name(const std::string& name) {
    if (name == "louvain") return Algorithm::Louvain;
    if (name == "leiden") return Algorithm::Leiden;
    if (name == "label_propagation" || name == "lp") return Algorithm::LabelPropagation;
    if (name == "walktrap") return Algorithm::Walktrap;
    throw std::invalid_argument("unknown algorithm: " + name);
}

std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::Louvain: return "louvain";
        case Algorithm::Leiden: return "leiden";
        case Algorithm::LabelPropagation: return "label_propagation";
        case Algorithm::Walktrap: return "walktrap";
    }
    return "?";
}

void DetectorConfig::validate() const {
    if (resolution <= 0.0) throw std::invalid_argument("DetectorConfig: resolution must be > 0");
    if (walk_length < 1) throw std::invalid_argument("DetectorConfig: walk_length must be >= 1");
    if (max_sweeps < 1) throw std::invalid_argument("DetectorConfig: max_sweeps must be >= 1");
}

namespace {

// Aggregated multigraph used between louvain levels. Self-loops carry the
// internal weight of a merged community; strength counts them twice.
struct AggGraph {
    int n = 0;
    double two_w = 0.0;
    std::vector<std::vector<std::pair<int, double>>> adj;
    std::vector<double> self_loop;
    std::vector<double> strength;

    static AggGraph from_graph(const Graph& g) {
        AggGraph a;
        a.n = g.num_nodes();
        a.adj.resize(static_cast<std::size_t>(a.n));
        a.self_loop.assign(static_cast<std::size_t>(a.n), 0.0);
        a.strength.assign(static_cast<std::size_t>(a.n), 0.0);
        for (const Edge& e : g.edges()) {
            a.adj[static_cast<std::size_t>(e.u)].emplace_back(e.v, e.w);
            a.adj[static_cast<std::size_t>(e.v)].emplace_back(e.u, e.w);
            a.strength[static_cast<std::size_t>(e.u)] += e.w;
            a.strength[static_cast<std::size_t>(e.v)] += e.w;
        }
        a.two_w = 2.0 * g.total_weight();
        return a;
    }
};

// One phase of randomized local moves (best-improvement). Returns true when
// at least one node changed community. comm is modified in place.
bool local_moves(const AggGraph& a, std::vector<int>& comm, double r, Rng& rng,
                 int max_sweeps) {
    std::vector<double> tot(static_cast<std::size_t>(a.n), 0.0);
    for (int i = 0; i < a.n; ++i)
        tot[static_cast<std::size_t>(comm[static_cast<std::size_t>(i)])] +=
            a.strength[static_cast<std::size_t>(i)];

    std::vector<int> order(static_cast<std::size_t>(a.n));
    std::iota(order.begin(), order.end(), 0);

    std::vector<double> k_i_c(static_cast<std::size_t>(a.n), 0.0);
    std::vector<int> touched;
    bool any_move = false;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        std::shuffle(order.begin(), order.end(), rng);
        bool moved = false;
        for (int i : order) {
            int ci = comm[static_cast<std::size_t>(i)];
            touched.clear();
            for (const auto& [j, w] : a.adj[static_cast<std::size_t>(i)]) {
                int cj = comm[static_cast<std::size_t>(j)];
                if (k_i_c[static_cast<std::size_t>(cj)] == 0.0) touched.push_back(cj);
                k_i_c[static_cast<std::size_t>(cj)] += w;
            }
            double si = a.strength[static_cast<std::size_t>(i)];
            tot[static_cast<std::size_t>(ci)] -= si;
            double stay = k_i_c[static_cast<std::size_t>(ci)] -
                          r * si * tot[static_cast<std::size_t>(ci)] / a.two_w;
            int best = ci;
            double best_gain = stay;
            for (int c : touched) {
                if (c == ci) continue;
                double gain = k_i_c[static_cast<std::size_t>(c)] -
                              r * si * tot[static_cast<std::size_t>(c)] / a.two_w;
                if (gain > best_gain + 1e-12 ||
                    (gain > best_gain - 1e-12 && best != ci && c < best)) {
                    best_gain = gain;
                    best = c;
                }
            }
            tot[static_cast<std::size_t>(best)] += si;
            if (best != ci) {
                comm[static_cast<std::size_t>(i)] = best;
                moved = true;
                any_move = true;
            }
            for (int c : touched) k_i_c[static_cast<std::size_t>(c)] = 0.0;
        }
        if (!moved) break;
    }
    return any_move;
}

// Renumbers comm to 0..k-1 and returns k.
int compress_labels(std::vector<int>& comm) {
    std::unordered_map<int, int> remap;
    int next = 0;
    for (int& c : comm) {
        auto it = remap.find(c);
        if (it == remap.end()) it = remap.emplace(c, next++).first;
        c = it->second;
    }
    return next;
}

AggGraph aggregate(const AggGraph& a, const std::vector<int>& comm, int k) {
    AggGraph b;
    b.n = k;
    b.adj.resize(static_cast<std::size_t>(k));
    b.self_loop.assign(static_cast<std::size_t>(k), 0.0);
    b.strength.assign(static_cast<std::size_t>(k), 0.0);
    b.two_w = a.two_w;
    std::vector<std::unordered_map<int, double>> acc(static_cast<std::size_t>(k));
    for (int i = 0; i < a.n; ++i) {
        int ci = comm[static_cast<std::size_t>(i)];
        b.self_loop[static_cast<std::size_t>(ci)] += a.self_loop[static_cast<std::size_t>(i)];
        for (const auto& [j, w] : a.adj[static_cast<std::size_t>(i)]) {
            int cj = comm[static_cast<std::size_t>(j)];
            if (ci == cj) {
                if (i < j) b.self_loop[static_cast<std::size_t>(ci)] += w;
            } else {
                acc[static_cast<std::size_t>(ci)][cj] += w;
            }
        }
    }
    for (int c = 0; c < k; ++c) {
        std::vector<std::pair<int, double>> nb(acc[static_cast<std::size_t>(c)].begin(),
                                               acc[static_cast<std::size_t>(c)].end());
        std::sort(nb.begin(), nb.end());
        double s = 2.0 * b.self_loop[static_cast<std::size_t>(c)];
        for (const auto& [j, w] : nb) s += w;
        b.adj[static_cast<std::size_t>(c)] = std::move(nb);
        b.strength[static_cast<std::size_t>(c)] = s;
    }
    return b;
}

// Splits every community of comm (over the nodes of a) into the connected
// components it induces. Returns the new community count.
int split_disconnected(const AggGraph& a, std::vector<int>& comm) {
    std::vector<int> out(comm.size(), -1);
    int next = 0;
    std::vector<int> stack;
    for (int s = 0; s < a.n; ++s) {
        if (out[static_cast<std::size_t>(s)] != -1) continue;
        int label = next++;
        out[static_cast<std::size_t>(s)] = label;
        stack.push_back(s);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (const auto& [v, w] : a.adj[static_cast<std::size_t>(u)]) {
                if (out[static_cast<std::size_t>(v)] == -1 &&
                    comm[static_cast<std::size_t>(v)] == comm[static_cast<std::size_t>(u)]) {
                    out[static_cast<std::size_t>(v)] = label;
                    stack.push_back(v);
                }
            }
        }
    }
    comm = std::move(out);
    return next;
}

Partition greedy_modularity(const Graph& g, double r, std::uint64_t seed, bool refine) {
    if (g.num_nodes() == 0) throw std::invalid_argument("louvain: empty graph");
    Rng rng(seed);
    // membership of the original nodes in the current level's super-nodes
    std::vector<int> node_to_super(static_cast<std::size_t>(g.num_nodes()));
    std::iota(node_to_super.begin(), node_to_super.end(), 0);

    AggGraph a = AggGraph::from_graph(g);
    if (a.two_w <= 0.0) return Partition(static_cast<std::size_t>(g.num_nodes()), 1);

    for (int level = 0; level < 64; ++level) {
        std::vector<int> comm(static_cast<std::size_t>(a.n));
        std::iota(comm.begin(), comm.end(), 0);
        bool moved = local_moves(a, comm, r, rng, 100);
        if (refine) split_disconnected(a, comm);
        int k = compress_labels(comm);
        for (int& s : node_to_super) s = comm[static_cast<std::size_t>(s)];
        if (!moved || k == a.n) break;
        a = aggregate(a, comm, k);
    }

    Partition p(std::move(node_to_super));
    for (int& c : p.membership) ++c;
    p.normalize();
    return p;
}

}  // namespace

Partition louvain(const Graph& g, double r, std::uint64_t seed) {
    return greedy_modularity(g, r, seed, false);
}

Partition leiden(const Graph& g, double r, std::uint64_t seed) {
    return greedy_modularity(g, r, seed, true);
}

Partition label_propagation(const Graph& g, std::uint64_t seed, int max_sweeps) {
    int n = g.num_nodes();
    if (n == 0) throw std::invalid_argument("label_propagation: empty graph");
    Rng rng(seed);
    std::vector<int> label(static_cast<std::size_t>(n));
    std::iota(label.begin(), label.end(), 0);

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);

    std::vector<double> weight_of(static_cast<std::size_t>(n), 0.0);
    std::vector<int> touched, best_labels;

    auto neighborhood_max = [&](int i, double& max_w) {
        best_labels.clear();
        touched.clear();
        max_w = 0.0;
        for (const auto& [j, w] : g.neighbors(i)) {
            int lj = label[static_cast<std::size_t>(j)];
            if (weight_of[static_cast<std::size_t>(lj)] == 0.0) touched.push_back(lj);
            weight_of[static_cast<std::size_t>(lj)] += w;
        }
        for (int l : touched) {
            double w = weight_of[static_cast<std::size_t>(l)];
            if (w > max_w + 1e-12) {
                max_w = w;
                best_labels.clear();
                best_labels.push_back(l);
            } else if (w > max_w - 1e-12) {
                best_labels.push_back(l);
            }
        }
        for (int l : touched) weight_of[static_cast<std::size_t>(l)] = 0.0;
    };

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        std::shuffle(order.begin(), order.end(), rng);
        bool stable = true;
        for (int i : order) {
            if (g.neighbors(i).empty()) continue;
            double max_w = 0.0;
            neighborhood_max(i, max_w);
            int cur = label[static_cast<std::size_t>(i)];
            bool cur_is_max = std::find(best_labels.begin(), best_labels.end(), cur) !=
                              best_labels.end();
            if (!cur_is_max) {
                std::uniform_int_distribution<std::size_t> pick(0, best_labels.size() - 1);
                label[static_cast<std::size_t>(i)] = best_labels[pick(rng)];
                stable = false;
            }
        }
        if (stable) break;
    }

    Partition p(std::move(label));
    for (int& c : p.membership) ++c;
    p.normalize();
    return p;
}

Partition detect(const Graph& g, const DetectorConfig& cfg) {
    cfg.validate();
    Partition p;
    switch (cfg.algorithm) {
        case Algorithm::Louvain: p = louvain(g, cfg.resolution, cfg.seed); break;
        case Algorithm::Leiden: p = leiden(g, cfg.resolution, cfg.seed); break;
        case Algorithm::LabelPropagation:
            p = label_propagation(g, cfg.seed, cfg.max_sweeps);
            break;
        case Algorithm::Walktrap: p = walktrap(g, cfg.walk_length, cfg.seed); break;
    }
    p.normalize();
    return p;
}

}  // namespace ccd
