#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "ccd/detectors.hpp"

namespace ccd {

namespace {

struct Merge {
    int a;
    int b;
    int into;
    double q_after;  // modularity (r=1) of the partition after this merge
};

}  // namespace

Partition walktrap(const Graph& g, int s, std::uint64_t /*seed*/) {
    int n = g.num_nodes();
    if (n == 0) throw std::invalid_argument("walktrap: empty graph");
    if (s < 1) throw std::invalid_argument("walktrap: walk length must be >= 1");
    if (n == 1) return Partition(1, 1);
    double two_w = 2.0 * g.total_weight();
    if (two_w <= 0.0) return Partition(static_cast<std::size_t>(n), 1);

    // transition matrix and its s-th power
    Eigen::VectorXd strength = Eigen::VectorXd::Zero(n);
    for (const Edge& e : g.edges()) {
        strength[e.u] += e.w;
        strength[e.v] += e.w;
    }
    Eigen::MatrixXd trans = Eigen::MatrixXd::Zero(n, n);
    for (const Edge& e : g.edges()) {
        if (strength[e.u] > 0.0) trans(e.u, e.v) = e.w / strength[e.u];
        if (strength[e.v] > 0.0) trans(e.v, e.u) = e.w / strength[e.v];
    }
    for (int i = 0; i < n; ++i)
        if (strength[i] <= 0.0) trans(i, i) = 1.0;
    Eigen::MatrixXd ps = trans;
    for (int step = 1; step < s; ++step) ps = ps * trans;

    Eigen::VectorXd inv_d = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i)
        if (strength[i] > 0.0) inv_d[i] = 1.0 / strength[i];

    // community state; merged communities get fresh ids n, n+1, ...
    int cap = 2 * n;
    std::vector<Eigen::VectorXd> pc(static_cast<std::size_t>(cap));
    std::vector<int> size(static_cast<std::size_t>(cap), 0);
    std::vector<double> internal(static_cast<std::size_t>(cap), 0.0);
    std::vector<double> tot(static_cast<std::size_t>(cap), 0.0);
    std::vector<bool> alive(static_cast<std::size_t>(cap), false);
    std::vector<std::unordered_map<int, double>> inter(static_cast<std::size_t>(cap));

    for (int i = 0; i < n; ++i) {
        pc[static_cast<std::size_t>(i)] = ps.row(i).transpose();
        size[static_cast<std::size_t>(i)] = 1;
        tot[static_cast<std::size_t>(i)] = strength[i];
        alive[static_cast<std::size_t>(i)] = true;
    }
    for (const Edge& e : g.edges()) {
        inter[static_cast<std::size_t>(e.u)][e.v] += e.w;
        inter[static_cast<std::size_t>(e.v)][e.u] += e.w;
    }

    auto dist2 = [&](int a, int b) {
        return ((pc[static_cast<std::size_t>(a)] - pc[static_cast<std::size_t>(b)])
                    .array()
                    .square() *
                inv_d.array())
            .sum();
    };
    auto delta_sigma_direct = [&](int a, int b) {
        double sa = size[static_cast<std::size_t>(a)];
        double sb = size[static_cast<std::size_t>(b)];
        return (sa * sb / (sa + sb)) * dist2(a, b) / static_cast<double>(n);
    };

    std::unordered_map<std::uint64_t, double> delta;
    auto key = [cap](int a, int b) {
        if (a > b) std::swap(a, b);
        return static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(cap) +
               static_cast<std::uint64_t>(b);
    };

    using Entry = std::tuple<double, int, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
    for (int i = 0; i < n; ++i)
        for (const auto& [j, w] : inter[static_cast<std::size_t>(i)])
            if (i < j) {
                double d = delta_sigma_direct(i, j);
                delta[key(i, j)] = d;
                heap.emplace(d, i, j);
            }

    double q = 0.0;
    for (int i = 0; i < n; ++i) q -= (strength[i] / two_w) * (strength[i] / two_w);
    double q_singletons = q;

    std::vector<Merge> merges;
    int next_id = n;
    while (!heap.empty()) {
        auto [d, a, b] = heap.top();
        heap.pop();
        if (!alive[static_cast<std::size_t>(a)] || !alive[static_cast<std::size_t>(b)])
            continue;
        auto it = delta.find(key(a, b));
        if (it == delta.end() || std::abs(it->second - d) > 1e-12) continue;

        int c = next_id++;
        double sa = size[static_cast<std::size_t>(a)];
        double sb = size[static_cast<std::size_t>(b)];
        double e_ab = inter[static_cast<std::size_t>(a)][b];
        alive[static_cast<std::size_t>(a)] = false;
        alive[static_cast<std::size_t>(b)] = false;
        alive[static_cast<std::size_t>(c)] = true;
        size[static_cast<std::size_t>(c)] = static_cast<int>(sa + sb);
        pc[static_cast<std::size_t>(c)] =
            (sa * pc[static_cast<std::size_t>(a)] + sb * pc[static_cast<std::size_t>(b)]) /
            (sa + sb);
        internal[static_cast<std::size_t>(c)] = internal[static_cast<std::size_t>(a)] +
                                                internal[static_cast<std::size_t>(b)] + e_ab;
        tot[static_cast<std::size_t>(c)] =
            tot[static_cast<std::size_t>(a)] + tot[static_cast<std::size_t>(b)];

        q += 2.0 * e_ab / two_w -
             2.0 * (tot[static_cast<std::size_t>(a)] / two_w) *
                 (tot[static_cast<std::size_t>(b)] / two_w);

        // merge neighbor maps
        std::unordered_map<int, double> nb;
        for (const auto& [x, w] : inter[static_cast<std::size_t>(a)])
            if (x != b) nb[x] += w;
        for (const auto& [x, w] : inter[static_cast<std::size_t>(b)])
            if (x != a) nb[x] += w;
        inter[static_cast<std::size_t>(a)].clear();
        inter[static_cast<std::size_t>(b)].clear();
        for (const auto& [x, w] : nb) {
            inter[static_cast<std::size_t>(x)].erase(a);
            inter[static_cast<std::size_t>(x)].erase(b);
            inter[static_cast<std::size_t>(x)][c] = w;

            double dax = std::numeric_limits<double>::quiet_NaN();
            double dbx = std::numeric_limits<double>::quiet_NaN();
            auto ia = delta.find(key(a, x));
            if (ia != delta.end()) dax = ia->second;
            auto ib = delta.find(key(b, x));
            if (ib != delta.end()) dbx = ib->second;
            double dcx;
            if (!std::isnan(dax) && !std::isnan(dbx)) {
                // Ward / Lance-Williams update
                double sx = size[static_cast<std::size_t>(x)];
                dcx = ((sa + sx) * dax + (sb + sx) * dbx - sx * d) / (sa + sb + sx);
            } else {
                dcx = delta_sigma_direct(c, x);
            }
            delta[key(c, x)] = dcx;
            delta.erase(key(a, x));
            delta.erase(key(b, x));
            heap.emplace(dcx, std::min(c, x), std::max(c, x));
        }
        delta.erase(key(a, b));
        inter[static_cast<std::size_t>(c)] = std::move(nb);

        merges.push_back({a, b, c, q});
    }

    // best-modularity cut along the dendrogram
    int best_step = -1;  // -1 = all singletons
    double best_q = q_singletons;
    for (std::size_t m = 0; m < merges.size(); ++m)
        if (merges[m].q_after > best_q + 1e-12) {
            best_q = merges[m].q_after;
            best_step = static_cast<int>(m);
        }

    std::vector<int> parent(static_cast<std::size_t>(cap));
    for (int i = 0; i < cap; ++i) parent[static_cast<std::size_t>(i)] = i;
    for (int m = 0; m <= best_step; ++m) {
        parent[static_cast<std::size_t>(merges[static_cast<std::size_t>(m)].a)] =
            merges[static_cast<std::size_t>(m)].into;
        parent[static_cast<std::size_t>(merges[static_cast<std::size_t>(m)].b)] =
            merges[static_cast<std::size_t>(m)].into;
    }
    auto find_root = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
        return x;
    };
    Partition p(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = find_root(i) + 1;
    p.normalize();
    return p;
}

}  // namespace ccd
