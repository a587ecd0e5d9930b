#include "ccd/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace ccd {

double mixing_parameter(const Graph& g, const Partition& c) {
    if (static_cast<int>(c.size()) != g.num_nodes())
        throw std::invalid_argument("mixing_parameter: partition length mismatch");
    double ext = 0.0;
    for (const Edge& e : g.edges())
        if (c[static_cast<std::size_t>(e.u)] != c[static_cast<std::size_t>(e.v)]) ext += e.w;
    double total = g.total_weight();
    if (total <= 0.0) return 0.0;
    return (2.0 * ext) / (2.0 * total);
}

double modularity(const Graph& g, const Partition& c, double r) {
    if (static_cast<int>(c.size()) != g.num_nodes())
        throw std::invalid_argument("modularity: partition length mismatch");
    if (g.num_edges() == 0) throw std::invalid_argument("modularity: empty graph");
    double two_w = 2.0 * g.total_weight();
    std::unordered_map<int, double> internal;  // 2 * within-community weight
    std::unordered_map<int, double> strength;
    for (const Edge& e : g.edges()) {
        if (c[static_cast<std::size_t>(e.u)] == c[static_cast<std::size_t>(e.v)])
            internal[c[static_cast<std::size_t>(e.u)]] += 2.0 * e.w;
        strength[c[static_cast<std::size_t>(e.u)]] += e.w;
        strength[c[static_cast<std::size_t>(e.v)]] += e.w;
    }
    double q = 0.0;
    for (const auto& [label, s] : strength)
        q += internal[label] / two_w - r * (s / two_w) * (s / two_w);
    return q;
}

namespace {

double entropy(const std::vector<double>& counts, double n) {
    double h = 0.0;
    for (double c : counts)
        if (c > 0.0) h -= (c / n) * std::log(c / n);
    return h;
}

}  // namespace

double nmi(const Partition& c1, const Partition& c2, NmiVariant variant) {
    if (c1.size() != c2.size()) throw std::invalid_argument("nmi: length mismatch");
    if (c1.size() == 0) throw std::invalid_argument("nmi: empty partitions");
    double n = static_cast<double>(c1.size());

    std::map<std::pair<int, int>, double> joint;
    std::unordered_map<int, double> m1, m2;
    for (std::size_t i = 0; i < c1.size(); ++i) {
        joint[{c1[i], c2[i]}] += 1.0;
        m1[c1[i]] += 1.0;
        m2[c2[i]] += 1.0;
    }
    std::vector<double> r1, r2;
    for (const auto& [l, cnt] : m1) r1.push_back(cnt);
    for (const auto& [l, cnt] : m2) r2.push_back(cnt);
    double h1 = entropy(r1, n);
    double h2 = entropy(r2, n);

    double mi = 0.0;
    for (const auto& [labels, nij] : joint) {
        double pij = nij / n;
        double pi = m1[labels.first] / n;
        double pj = m2[labels.second] / n;
        mi += pij * std::log(pij / (pi * pj));
    }

    // zero entropy means a single block, so two such partitions coincide
    if (h1 <= 0.0 && h2 <= 0.0) return 1.0;
    if (h1 <= 0.0 || h2 <= 0.0) return 0.0;

    double norm;
    switch (variant) {
        case NmiVariant::Max: norm = std::max(h1, h2); break;
        case NmiVariant::Sqrt: norm = std::sqrt(h1 * h2); break;
        case NmiVariant::Sum: default: norm = 0.5 * (h1 + h2); break;
    }
    double v = mi / norm;
    return std::clamp(v, 0.0, 1.0);
}

PartitionQuality assess(const Graph& g, const Partition& c) {
    PartitionQuality q;
    q.k = c.num_communities();
    q.mu = mixing_parameter(g, c);
    q.modularity = g.num_edges() > 0 ? modularity(g, c, 1.0) : 0.0;
    q.valid = (q.k > 1) && (q.mu <= 0.5);
    return q;
}

SimilarityScores pairwise_similarity(const std::vector<Partition>& partitions) {
    std::size_t t = partitions.size();
    if (t < 2) throw std::invalid_argument("pairwise_similarity: need at least 2 partitions");
    SimilarityScores out;
    out.matrix.assign(t, std::vector<double>(t, 1.0));
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = i + 1; j < t; ++j) {
            double v = nmi(partitions[i], partitions[j]);
            out.matrix[i][j] = v;
            out.matrix[j][i] = v;
        }
    out.scores.assign(t, 0.0);
    for (std::size_t i = 0; i < t; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < t; ++j)
            if (j != i) s += out.matrix[i][j];
        out.scores[i] = s / static_cast<double>(t - 1);
    }
    return out;
}

}  // namespace ccd
