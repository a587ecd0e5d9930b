#include "ccd/benchgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "ccd/io.hpp"
#include "ccd/karate_data.hpp"
#include "ccd/metrics.hpp"
#include "ccd/rng.hpp"

namespace ccd {

BenchmarkInstance ring_of_cliques(int k0, int s, bool bridges, bool center, std::uint64_t seed) {
    if (k0 < 3) throw std::invalid_argument("ring_of_cliques: k0 must be >= 3");
    if (s < 3) throw std::invalid_argument("ring_of_cliques: s must be >= 3");

    std::vector<Edge> edges;
    std::vector<int> truth;
    for (int c = 0; c < k0; ++c) {
        int base = c * s;
        for (int i = 0; i < s; ++i)
            for (int j = i + 1; j < s; ++j) edges.push_back({base + i, base + j, 1.0});
        for (int i = 0; i < s; ++i) truth.push_back(c + 1);
    }
    int next = k0 * s;
    if (bridges) {
        for (int b = 0; b < k0; ++b) {
            int bridge = next++;
            edges.push_back({bridge, b * s, 1.0});
            edges.push_back({bridge, ((b + 1) % k0) * s, 1.0});
            truth.push_back(0);
        }
    } else {
        // direct ring edges with distinct endpoints per clique (node 0 out,
        // node 1 in) so clique nodes keep degree s-1 or s
        for (int c = 0; c < k0; ++c)
            edges.push_back({c * s, ((c + 1) % k0) * s + 1, 1.0});
    }
    if (center) {
        int hub = next++;
        for (int c = 0; c < k0; ++c) edges.push_back({hub, c * s, 1.0});
        truth.push_back(0);
    }

    BenchmarkInstance inst;
    inst.graph = Graph::from_edges(next, std::move(edges));
    inst.truth = Partition(std::move(truth));
    inst.nominal.family = "rc";
    inst.nominal.k0 = k0;
    inst.nominal.s = s;
    inst.nominal.bridges = bridges;
    inst.nominal.center = center;
    inst.nominal.n = next;
    inst.nominal.seed = seed;
    inst.realized_mu = mixing_parameter(inst.graph, inst.truth);
    return inst;
}

namespace {

// Truncated continuous power law on [a, b), density ~ x^(-tau).
struct PowerLaw {
    double a, b, tau;

    double cdf(double x) const {
        if (std::abs(tau - 1.0) < 1e-9)
            return std::log(x / a) / std::log(b / a);
        double e = 1.0 - tau;
        return (std::pow(x, e) - std::pow(a, e)) / (std::pow(b, e) - std::pow(a, e));
    }
    double inv_cdf(double u) const {
        if (std::abs(tau - 1.0) < 1e-9)
            return a * std::pow(b / a, u);
        double e = 1.0 - tau;
        return std::pow(std::pow(a, e) + u * (std::pow(b, e) - std::pow(a, e)), 1.0 / e);
    }
    // expected value of floor(X)
    double mean_floor() const {
        double m = 0.0;
        int lo = static_cast<int>(std::floor(a));
        int hi = static_cast<int>(std::ceil(b)) - 1;
        for (int d = lo; d <= hi; ++d) {
            double l = std::max(a, static_cast<double>(d));
            double r = std::min(b, static_cast<double>(d) + 1.0);
            if (r <= l) continue;
            m += d * (cdf(r) - cdf(l));
        }
        return m;
    }
};

// Finds the lower cutoff so that floor-sampled degrees average avg_deg.
double solve_degree_cutoff(double tau, double d_max, double avg_deg) {
    double lo = 1.0, hi = d_max - 1e-6;
    PowerLaw pl{lo, d_max + 1.0, tau};
    if (pl.mean_floor() > avg_deg)
        throw std::invalid_argument("lfr_like: average degree too small for the degree cap");
    pl.a = hi;
    if (pl.mean_floor() < avg_deg)
        throw std::invalid_argument("lfr_like: average degree too large for the degree cap");
    for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        pl.a = mid;
        if (pl.mean_floor() < avg_deg)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<int> sample_community_sizes(int n, double tau2, int c_min, int c_max, Rng& rng) {
    if (c_min > c_max || c_max > n)
        throw std::invalid_argument("lfr_like: community size bounds infeasible");
    PowerLaw pl{static_cast<double>(c_min), static_cast<double>(c_max) + 1.0, tau2};
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<int> sizes;
    int total = 0;
    while (total < n) {
        int sz = std::clamp(static_cast<int>(std::floor(pl.inv_cdf(unif(rng)))), c_min, c_max);
        sizes.push_back(sz);
        total += sz;
    }
    int excess = total - n;
    // shave the excess off communities that can spare it
    for (std::size_t i = sizes.size(); excess > 0 && i-- > 0;) {
        int cut = std::min(excess, sizes[i] - c_min);
        sizes[i] -= cut;
        excess -= cut;
    }
    if (excess > 0) {
        // every community at c_min: drop one and redistribute
        if (sizes.size() < 2) throw std::invalid_argument("lfr_like: cannot hit n with given size bounds");
        int freed = sizes.back() - excess;
        sizes.pop_back();
        for (std::size_t i = 0; freed > 0; i = (i + 1) % sizes.size()) {
            if (sizes[i] < c_max) {
                ++sizes[i];
                --freed;
            } else if (std::all_of(sizes.begin(), sizes.end(),
                                   [&](int s) { return s >= c_max; })) {
                throw std::invalid_argument("lfr_like: cannot hit n with given size bounds");
            }
        }
    }
    return sizes;
}

// Pairs stubs at random, then repairs self-loops / duplicates / (optionally)
// same-community pairs by random stub swaps. Unrepairable pairs violating a
// hard constraint are dropped.
void match_stubs(std::vector<int>& stubs, std::set<std::pair<int, int>>& edge_set,
                 std::vector<Edge>& edges, const std::vector<int>* community, Rng& rng) {
    if (stubs.size() < 2) return;
    if (stubs.size() % 2 == 1) stubs.pop_back();
    std::shuffle(stubs.begin(), stubs.end(), rng);

    auto bad = [&](int u, int v, bool strict) {
        if (u == v) return true;
        auto key = std::minmax(u, v);
        if (edge_set.count(key)) return true;
        if (strict && community && (*community)[static_cast<std::size_t>(u)] ==
                                       (*community)[static_cast<std::size_t>(v)])
            return true;
        return false;
    };

    std::size_t pairs = stubs.size() / 2;
    std::uniform_int_distribution<std::size_t> pick(0, pairs - 1);
    std::set<std::pair<int, int>> seen;
    for (int round = 0; round < 200; ++round) {
        bool any_bad = false;
        seen.clear();
        for (std::size_t k = 0; k < pairs; ++k) {
            int u = stubs[2 * k], v = stubs[2 * k + 1];
            // a pair is bad when it is a self-loop, collides with an edge
            // already committed or with an earlier pair in this matching,
            // or (for external wiring) stays inside one community
            if (!bad(u, v, /*strict=*/true) && seen.insert(std::minmax(u, v)).second) continue;
            any_bad = true;
            std::size_t m = pick(rng);
            if (m != k) std::swap(stubs[2 * k + 1], stubs[2 * m + 1]);
        }
        if (!any_bad) break;
    }
    seen.clear();
    for (std::size_t k = 0; k < pairs; ++k) {
        int u = stubs[2 * k], v = stubs[2 * k + 1];
        if (bad(u, v, /*strict=*/false)) continue;  // drop unrepairable pairs
        edge_set.insert(std::minmax(u, v));
        edges.push_back({std::min(u, v), std::max(u, v), 1.0});
    }
}

// Wires a simple graph on `members` with the given per-node degree targets:
// Havel-Hakimi construction, then degree-preserving double-edge swaps for
// randomness. Targets exceeding what is graphical lose their tail stubs.
void wire_community(const std::vector<int>& members, const std::vector<int>& target,
                    std::set<std::pair<int, int>>& edge_set, std::vector<Edge>& edges,
                    Rng& rng) {
    std::size_t m = members.size();
    if (m < 2) return;
    std::vector<std::pair<int, int>> rem;  // (remaining degree, local id)
    for (std::size_t i = 0; i < m; ++i)
        rem.emplace_back(target[static_cast<std::size_t>(members[i])], static_cast<int>(i));
    // even stub total: shave one stub off the largest if needed
    long total = 0;
    for (const auto& [d, i] : rem) total += d;
    if (total % 2 == 1) std::max_element(rem.begin(), rem.end())->first -= 1;

    std::vector<std::pair<int, int>> local;  // edges as local id pairs
    while (true) {
        std::sort(rem.begin(), rem.end(), std::greater<>());
        if (rem[0].first <= 0) break;
        int d = rem[0].first;
        rem[0].first = 0;
        for (int j = 1; j <= d && j < static_cast<int>(m); ++j) {
            if (rem[static_cast<std::size_t>(j)].first <= 0) break;  // tail stubs dropped
            rem[static_cast<std::size_t>(j)].first -= 1;
            local.emplace_back(rem[0].second, rem[static_cast<std::size_t>(j)].second);
        }
    }

    std::set<std::pair<int, int>> present;
    for (auto& [a, b] : local) present.insert(std::minmax(a, b));
    if (local.size() > 1) {
        std::uniform_int_distribution<std::size_t> pick(0, local.size() - 1);
        for (std::size_t it = 0; it < 10 * local.size(); ++it) {
            std::size_t x = pick(rng), y = pick(rng);
            auto [a, b] = local[x];
            auto [c, d] = local[y];
            if (a == c || a == d || b == c || b == d) continue;
            auto ad = std::minmax(a, d), cb = std::minmax(c, b);
            if (present.count(ad) || present.count(cb)) continue;
            present.erase(std::minmax(a, b));
            present.erase(std::minmax(c, d));
            present.insert(ad);
            present.insert(cb);
            local[x] = {a, d};
            local[y] = {c, b};
        }
    }
    for (auto& [a, b] : local) {
        int u = members[static_cast<std::size_t>(a)], v = members[static_cast<std::size_t>(b)];
        edge_set.insert(std::minmax(u, v));
        edges.push_back({std::min(u, v), std::max(u, v), 1.0});
    }
}

BenchmarkInstance lfr_attempt(int n, double tau1, double tau2, double mu, double avg_deg,
                              int c_min, int c_max, std::uint64_t seed) {
    Rng rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    std::vector<int> sizes = sample_community_sizes(n, tau2, c_min, c_max, rng);
    int k = static_cast<int>(sizes.size());
    int s_max = *std::max_element(sizes.begin(), sizes.end());

    // degree sequence, capped so every node can fit its internal degree
    // into the largest sampled community
    int d_max = std::min(n - 1, static_cast<int>(std::floor((s_max - 1) / (1.0 - mu))));
    if (d_max < 1) throw std::invalid_argument("lfr_like: degree cap below 1");
    double cutoff = solve_degree_cutoff(tau1, static_cast<double>(d_max), avg_deg);
    PowerLaw pl{cutoff, static_cast<double>(d_max) + 1.0, tau1};
    std::vector<int> degree(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        degree[static_cast<std::size_t>(i)] =
            std::clamp(static_cast<int>(std::floor(pl.inv_cdf(unif(rng)))), 1, d_max);
    if (std::accumulate(degree.begin(), degree.end(), 0) % 2 == 1) {
        std::uniform_int_distribution<int> pick(0, n - 1);
        int i = pick(rng);
        degree[static_cast<std::size_t>(i)] += degree[static_cast<std::size_t>(i)] < d_max ? 1 : -1;
    }

    std::vector<int> internal(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        int d = degree[static_cast<std::size_t>(i)];
        internal[static_cast<std::size_t>(i)] =
            std::clamp(static_cast<int>(std::llround((1.0 - mu) * d)), 0, d);
    }

    // assign nodes to communities; a full community evicts a random member
    std::vector<int> community(static_cast<std::size_t>(n), -1);
    std::vector<std::vector<int>> members(static_cast<std::size_t>(k));
    std::vector<int> queue(static_cast<std::size_t>(n));
    std::iota(queue.begin(), queue.end(), 0);
    std::shuffle(queue.begin(), queue.end(), rng);
    std::uniform_int_distribution<int> pick_comm(0, k - 1);
    long attempts = 0;
    long max_attempts = 200L * n;
    while (!queue.empty()) {
        if (++attempts > max_attempts)
            throw std::invalid_argument(
                "lfr_like: cannot satisfy internal-degree <= community-size-1 constraint");
        int node = queue.back();
        int c = pick_comm(rng);
        if (internal[static_cast<std::size_t>(node)] > sizes[static_cast<std::size_t>(c)] - 1)
            continue;
        queue.pop_back();
        auto& mem = members[static_cast<std::size_t>(c)];
        if (static_cast<int>(mem.size()) == sizes[static_cast<std::size_t>(c)]) {
            std::uniform_int_distribution<std::size_t> pick_mem(0, mem.size() - 1);
            std::size_t victim_idx = pick_mem(rng);
            int victim = mem[victim_idx];
            mem[victim_idx] = node;
            community[static_cast<std::size_t>(node)] = c;
            community[static_cast<std::size_t>(victim)] = -1;
            queue.push_back(victim);
        } else {
            mem.push_back(node);
            community[static_cast<std::size_t>(node)] = c;
        }
    }

    // wire internal edges per community, then external edges globally
    std::set<std::pair<int, int>> edge_set;
    std::vector<Edge> edges;
    for (int c = 0; c < k; ++c)
        wire_community(members[static_cast<std::size_t>(c)], internal, edge_set, edges, rng);
    std::vector<int> ext_stubs;
    for (int i = 0; i < n; ++i)
        ext_stubs.insert(ext_stubs.end(),
                         static_cast<std::size_t>(degree[static_cast<std::size_t>(i)] -
                                                  internal[static_cast<std::size_t>(i)]),
                         i);
    match_stubs(ext_stubs, edge_set, edges, &community, rng);

    BenchmarkInstance inst;
    inst.graph = Graph::from_edges(n, std::move(edges));
    std::vector<int> truth(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) truth[static_cast<std::size_t>(i)] = community[static_cast<std::size_t>(i)] + 1;
    inst.truth = Partition(std::move(truth));
    inst.nominal.family = "lfr";
    inst.nominal.n = n;
    inst.nominal.tau1 = tau1;
    inst.nominal.tau2 = tau2;
    inst.nominal.mu_nominal = mu;
    inst.nominal.avg_deg = avg_deg;
    inst.nominal.c_min = c_min;
    inst.nominal.c_max = c_max;
    inst.nominal.seed = seed;
    inst.realized_mu = mixing_parameter(inst.graph, inst.truth);
    return inst;
}

}  // namespace

BenchmarkInstance lfr_like(int n, double tau1, double tau2, double mu_nominal, double avg_deg,
                           int c_min, int c_max, std::uint64_t seed) {
    if (!(mu_nominal > 0.0 && mu_nominal < 1.0))
        throw std::invalid_argument("lfr_like: mu must be in (0,1)");
    if (n < 2 || c_min < 2 || c_min > c_max || c_max > n)
        throw std::invalid_argument("lfr_like: invalid size parameters");
    const double tolerance = 0.03;
    const int max_attempts = 20;
    std::string last_error = "realized mu outside +-0.03 of nominal";
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        try {
            BenchmarkInstance inst =
                lfr_attempt(n, tau1, tau2, mu_nominal, avg_deg, c_min, c_max,
                            derive_seed(seed, static_cast<std::uint64_t>(attempt), 77));
            if (std::abs(inst.realized_mu - mu_nominal) <= tolerance) {
                inst.nominal.seed = seed;
                return inst;
            }
        } catch (const std::invalid_argument& e) {
            last_error = e.what();  // this size sample was infeasible; redraw
        }
    }
    throw std::runtime_error("lfr_like: no acceptable instance in 20 attempts (" + last_error +
                             ")");
}

Graph erdos_renyi(int n, double edge_prob, std::uint64_t seed, bool largest_component_only) {
    if (!(edge_prob > 0.0 && edge_prob < 1.0))
        throw std::invalid_argument("erdos_renyi: edge_prob must be in (0,1)");
    Rng rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (unif(rng) < edge_prob) edges.push_back({i, j, 1.0});
    Graph g = Graph::from_edges(n, std::move(edges));
    if (!largest_component_only) return g;

    Partition comp = g.connected_components();
    std::vector<int> count(static_cast<std::size_t>(comp.num_communities()) + 1, 0);
    for (int c : comp.membership) ++count[static_cast<std::size_t>(c)];
    int best = 1;
    for (std::size_t c = 1; c < count.size(); ++c)
        if (count[c] > count[static_cast<std::size_t>(best)]) best = static_cast<int>(c);

    std::vector<int> new_id(static_cast<std::size_t>(n), -1);
    std::vector<std::string> labels;
    int next = 0;
    for (int i = 0; i < n; ++i)
        if (comp[static_cast<std::size_t>(i)] == best) {
            new_id[static_cast<std::size_t>(i)] = next++;
            labels.push_back(g.label(i));
        }
    std::vector<Edge> kept;
    for (const Edge& e : g.edges())
        if (new_id[static_cast<std::size_t>(e.u)] >= 0 && new_id[static_cast<std::size_t>(e.v)] >= 0)
            kept.push_back({new_id[static_cast<std::size_t>(e.u)],
                            new_id[static_cast<std::size_t>(e.v)], e.w});
    return Graph::from_edges(next, std::move(kept), std::move(labels));
}

BenchmarkInstance karate() {
    BenchmarkInstance inst;
    inst.graph = parse_edge_list_string(data::kKarateEdges);
    inst.truth = parse_partition_string(inst.graph, data::kKarateTruth);
    inst.nominal.family = "karate";
    inst.nominal.n = inst.graph.num_nodes();
    inst.realized_mu = mixing_parameter(inst.graph, inst.truth);
    return inst;
}

}  // namespace ccd
