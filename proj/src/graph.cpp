#include "ccd/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "ccd/rng.hpp"

namespace ccd {

std::vector<int> Permutation::inverse() const {
    std::vector<int> inv(forward.size());
    for (std::size_t i = 0; i < forward.size(); ++i)
        inv[static_cast<std::size_t>(forward[i])] = static_cast<int>(i);
    return inv;
}

Partition Permutation::map_back(const Partition& permuted) const {
    if (permuted.size() != forward.size())
        throw std::invalid_argument("Permutation::map_back: size mismatch");
    Partition out(permuted.size(), 0);
    for (std::size_t i = 0; i < forward.size(); ++i)
        out[i] = permuted[static_cast<std::size_t>(forward[i])];
    return out;
}

Graph Graph::from_edge_list(const std::vector<EdgeRow>& rows) {
    if (rows.empty()) throw std::invalid_argument("from_edge_list: empty edge list");
    std::unordered_map<std::string, int> ids;
    std::vector<std::string> labels;
    auto intern = [&](const std::string& s) {
        auto it = ids.find(s);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(labels.size());
        ids.emplace(s, id);
        labels.push_back(s);
        return id;
    };
    std::map<std::pair<int, int>, double> acc;
    std::vector<std::pair<int, int>> order;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const EdgeRow& row = rows[r];
        double w = row.weight.value_or(1.0);
        if (w <= 0.0)
            throw std::invalid_argument("from_edge_list: non-positive weight at row " +
                                        std::to_string(r));
        int u = intern(row.source);
        int v = intern(row.target);
        if (u == v)
            throw std::invalid_argument("from_edge_list: self-loop at row " +
                                        std::to_string(r));
        auto key = std::minmax(u, v);
        auto [it, inserted] = acc.emplace(key, w);
        if (!inserted)
            it->second += w;
        else
            order.push_back(key);
    }
    std::vector<Edge> edges;
    edges.reserve(order.size());
    for (const auto& key : order) edges.push_back({key.first, key.second, acc[key]});
    int n = static_cast<int>(labels.size());
    return from_edges(n, std::move(edges), std::move(labels));
}

Graph Graph::from_edges(int n, std::vector<Edge> edges, std::vector<std::string> labels) {
    Graph g;
    g.n_ = n;
    g.edges_ = std::move(edges);
    if (labels.empty()) {
        labels.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    }
    if (static_cast<int>(labels.size()) != n)
        throw std::invalid_argument("from_edges: label count != n");
    g.labels_ = std::move(labels);
    for (const Edge& e : g.edges_) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
            throw std::invalid_argument("from_edges: node id out of range");
        if (e.u == e.v) throw std::invalid_argument("from_edges: self-loop");
        if (e.w <= 0.0) throw std::invalid_argument("from_edges: non-positive weight");
    }
    g.build_adjacency();
    return g;
}

void Graph::build_adjacency() {
    adj_.assign(static_cast<std::size_t>(n_), {});
    total_weight_ = 0.0;
    for (const Edge& e : edges_) {
        adj_[static_cast<std::size_t>(e.u)].emplace_back(e.v, e.w);
        adj_[static_cast<std::size_t>(e.v)].emplace_back(e.u, e.w);
        total_weight_ += e.w;
    }
}

int Graph::node_by_label(const std::string& label) const {
    for (int i = 0; i < n_; ++i)
        if (labels_[static_cast<std::size_t>(i)] == label) return i;
    return -1;
}

const std::vector<std::pair<int, double>>& Graph::neighbors(int i) const {
    if (i < 0 || i >= n_) throw std::out_of_range("Graph::neighbors: node id out of range");
    return adj_[static_cast<std::size_t>(i)];
}

std::pair<int, double> Graph::degree(int i) const {
    const auto& nb = neighbors(i);
    double s = 0.0;
    for (const auto& [j, w] : nb) s += w;
    return {static_cast<int>(nb.size()), s};
}

std::pair<Graph, Permutation> Graph::permute(std::uint64_t seed) const {
    Rng rng(seed);
    Permutation perm;
    perm.seed = seed;
    perm.forward.resize(static_cast<std::size_t>(n_));
    std::iota(perm.forward.begin(), perm.forward.end(), 0);
    std::shuffle(perm.forward.begin(), perm.forward.end(), rng);

    std::vector<Edge> edges;
    edges.reserve(edges_.size());
    for (const Edge& e : edges_)
        edges.push_back({perm.forward[static_cast<std::size_t>(e.u)],
                         perm.forward[static_cast<std::size_t>(e.v)], e.w});
    std::shuffle(edges.begin(), edges.end(), rng);

    std::vector<std::string> labels(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i)
        labels[static_cast<std::size_t>(perm.forward[static_cast<std::size_t>(i)])] =
            labels_[static_cast<std::size_t>(i)];
    return {from_edges(n_, std::move(edges), std::move(labels)), std::move(perm)};
}

Partition Graph::connected_components() const {
    Partition comp(static_cast<std::size_t>(n_), 0);
    int next = 0;
    std::vector<int> stack;
    for (int s = 0; s < n_; ++s) {
        if (comp[static_cast<std::size_t>(s)] != 0) continue;
        ++next;
        comp[static_cast<std::size_t>(s)] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (const auto& [v, w] : adj_[static_cast<std::size_t>(u)]) {
                if (comp[static_cast<std::size_t>(v)] == 0) {
                    comp[static_cast<std::size_t>(v)] = next;
                    stack.push_back(v);
                }
            }
        }
    }
    return comp;
}

std::vector<int> Graph::k_coreness() const {
    std::vector<int> deg(static_cast<std::size_t>(n_));
    int maxdeg = 0;
    for (int i = 0; i < n_; ++i) {
        deg[static_cast<std::size_t>(i)] = static_cast<int>(adj_[static_cast<std::size_t>(i)].size());
        maxdeg = std::max(maxdeg, deg[static_cast<std::size_t>(i)]);
    }
    // bucket peeling, O(n + m)
    std::vector<std::vector<int>> buckets(static_cast<std::size_t>(maxdeg) + 1);
    for (int i = 0; i < n_; ++i)
        buckets[static_cast<std::size_t>(deg[static_cast<std::size_t>(i)])].push_back(i);
    std::vector<int> core(static_cast<std::size_t>(n_), 0);
    std::vector<bool> removed(static_cast<std::size_t>(n_), false);
    int k = 0;
    for (int d = 0; d <= maxdeg; ++d) {
        auto& bucket = buckets[static_cast<std::size_t>(d)];
        while (!bucket.empty()) {
            int u = bucket.back();
            bucket.pop_back();
            if (removed[static_cast<std::size_t>(u)]) continue;
            if (deg[static_cast<std::size_t>(u)] > d) continue;  // stale entry
            k = std::max(k, deg[static_cast<std::size_t>(u)]);
            core[static_cast<std::size_t>(u)] = k;
            removed[static_cast<std::size_t>(u)] = true;
            for (const auto& [v, w] : adj_[static_cast<std::size_t>(u)]) {
                if (removed[static_cast<std::size_t>(v)]) continue;
                int& dv = deg[static_cast<std::size_t>(v)];
                --dv;
                buckets[static_cast<std::size_t>(std::max(dv, d))].push_back(v);
            }
        }
    }
    return core;
}

}  // namespace ccd
