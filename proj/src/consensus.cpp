#include "ccd/consensus.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <thread>

#include "ccd/metrics.hpp"
#include "ccd/rng.hpp"

namespace ccd {

OutlierStrategy outlier_strategy_from_name(const std::string& name) {
    if (name == "incorporate") return OutlierStrategy::Incorporate;
    if (name == "highlight") return OutlierStrategy::Highlight;
    if (name == "group") return OutlierStrategy::Group;
    throw std::invalid_argument("unknown outlier strategy: " + name);
}

std::string outlier_strategy_name(OutlierStrategy s) {
    switch (s) {
        case OutlierStrategy::Incorporate: return "incorporate";
        case OutlierStrategy::Highlight: return "highlight";
        case OutlierStrategy::Group: return "group";
    }
    return "?";
}

void CcdConfig::validate() const {
    if (trials < 1) throw std::invalid_argument("CcdConfig: trials must be >= 1");
    if (!(co_occurrence_threshold > 0.0 && co_occurrence_threshold <= 1.0))
        throw std::invalid_argument("CcdConfig: p must be in (0,1]");
    if (!(prune_quantile >= 0.0 && prune_quantile < 1.0))
        throw std::invalid_argument("CcdConfig: q must be in [0,1)");
    if (resolution_range) {
        auto [lo, hi] = *resolution_range;
        if (!(lo > 0.0 && lo <= hi))
            throw std::invalid_argument("CcdConfig: resolution range must satisfy 0 < r_min <= r_max");
    }
    detector.validate();
}

namespace {

// One permuted detector trial, mapped back to original node ids. Seeds for
// the permutation, the detector, and the resolution draw are derived
// independently from (master_seed, trial index).
Partition run_trial(const Graph& g, const CcdConfig& cfg, int trial) {
    auto [gp, perm] = g.permute(derive_seed(cfg.master_seed, static_cast<std::uint64_t>(trial), 1));
    DetectorConfig det = cfg.detector;
    det.seed = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(trial), 2);
    if (cfg.resolution_range) {
        Rng rng(derive_seed(cfg.master_seed, static_cast<std::uint64_t>(trial), 3));
        std::uniform_real_distribution<double> dist(cfg.resolution_range->first,
                                                    cfg.resolution_range->second);
        det.resolution = dist(rng);
    }
    Partition p = perm.map_back(detect(gp, det));
    p.normalize();
    return p;
}

}  // namespace

std::vector<Partition> generate_valid_partitions(const Graph& g, const CcdConfig& cfg,
                                                 int threads) {
    cfg.validate();
    int t = cfg.trials;
    std::vector<Partition> results(static_cast<std::size_t>(t));
    std::vector<char> valid(static_cast<std::size_t>(t), 0);

    auto work = [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            Partition p = run_trial(g, cfg, i);
            PartitionQuality q = assess(g, p);
            if (q.valid) {
                results[static_cast<std::size_t>(i)] = std::move(p);
                valid[static_cast<std::size_t>(i)] = 1;
            }
        }
    };

    threads = std::max(1, std::min(threads, t));
    if (threads == 1) {
        work(0, t);
    } else {
        std::vector<std::thread> pool;
        int chunk = (t + threads - 1) / threads;
        for (int w = 0; w < threads; ++w) {
            int begin = w * chunk;
            int end = std::min(t, begin + chunk);
            if (begin < end) pool.emplace_back(work, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    std::vector<Partition> out;
    for (int i = 0; i < t; ++i)
        if (valid[static_cast<std::size_t>(i)]) out.push_back(std::move(results[static_cast<std::size_t>(i)]));
    return out;
}

std::vector<Partition> prune_by_quantile(const std::vector<Partition>& partitions, double q) {
    if (partitions.empty()) throw std::invalid_argument("prune_by_quantile: empty input");
    if (partitions.size() <= 2) return partitions;

    SimilarityScores sim = pairwise_similarity(partitions);
    std::vector<double> sorted = sim.scores;
    std::sort(sorted.begin(), sorted.end());
    // nearest-rank quantile
    std::size_t rank = static_cast<std::size_t>(
        std::ceil(q * static_cast<double>(sorted.size())));
    if (rank < 1) rank = 1;
    double threshold = sorted[rank - 1];

    std::vector<Partition> kept;
    for (std::size_t i = 0; i < partitions.size(); ++i)
        if (sim.scores[i] >= threshold) kept.push_back(partitions[i]);
    if (kept.empty()) kept.push_back(partitions.front());  // unreachable guard
    return kept;
}

CoOccurrenceMatrix build_cooccurrence(const std::vector<Partition>& partitions, int n) {
    if (partitions.empty()) throw std::invalid_argument("build_cooccurrence: empty input");
    for (const Partition& p : partitions)
        if (static_cast<int>(p.size()) != n)
            throw std::invalid_argument("build_cooccurrence: partition length mismatch");

    CoOccurrenceMatrix d;
    d.n = n;
    d.n_used = static_cast<int>(partitions.size());
    d.data.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    for (const Partition& p : partitions)
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (p[static_cast<std::size_t>(i)] == p[static_cast<std::size_t>(j)]) {
                    d.at(i, j) += 1.0;
                    d.at(j, i) += 1.0;
                }
    double inv = 1.0 / static_cast<double>(d.n_used);
    for (double& x : d.data) x *= inv;
    for (int i = 0; i < n; ++i) d.at(i, i) = 1.0;
    return d;
}

BlockExtraction extract_blocks(const CoOccurrenceMatrix& d, double p) {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("extract_blocks: p must be in (0,1]");
    int n = d.n;
    BlockExtraction out;
    out.membership = Partition(static_cast<std::size_t>(n), 0);
    out.gamma.assign(static_cast<std::size_t>(n), 0.0);

    std::vector<std::vector<int>> blocks;
    std::vector<int> stack;
    int next = 0;
    for (int s = 0; s < n; ++s) {
        if (out.membership[static_cast<std::size_t>(s)] != 0) continue;
        ++next;
        blocks.emplace_back();
        out.membership[static_cast<std::size_t>(s)] = next;
        blocks.back().push_back(s);
        stack.push_back(s);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v = 0; v < n; ++v) {
                if (v == u || out.membership[static_cast<std::size_t>(v)] != 0) continue;
                if (d.at(u, v) >= p) {
                    out.membership[static_cast<std::size_t>(v)] = next;
                    blocks.back().push_back(v);
                    stack.push_back(v);
                }
            }
        }
    }

    for (const auto& block : blocks) {
        if (block.size() > 1) {
            for (int j : block) {
                double sum = 0.0;
                for (int k : block)
                    if (k != j) sum += d.at(j, k);
                double g = 1.0 - sum / static_cast<double>(block.size() - 1);
                out.gamma[static_cast<std::size_t>(j)] = std::clamp(g, 0.0, 1.0);
            }
        } else {
            int j = block.front();
            double best = 0.0;
            for (int k = 0; k < n; ++k)
                if (k != j) best = std::max(best, d.at(j, k));
            double g = (n == 1) ? 1.0 : 1.0 - best;
            out.gamma[static_cast<std::size_t>(j)] = std::clamp(g, 0.0, 1.0);
        }
    }
    return out;
}

ConsensusPartition apply_outlier_strategy(const BlockExtraction& blocks,
                                          const CoOccurrenceMatrix& d,
                                          OutlierStrategy strategy) {
    int n = d.n;
    if (static_cast<int>(blocks.membership.size()) != n)
        throw std::invalid_argument("apply_outlier_strategy: size mismatch");

    int num_blocks = 0;
    for (int c : blocks.membership.membership) num_blocks = std::max(num_blocks, c);
    std::vector<std::vector<int>> members(static_cast<std::size_t>(num_blocks) + 1);
    for (int i = 0; i < n; ++i)
        members[static_cast<std::size_t>(blocks.membership[static_cast<std::size_t>(i)])]
            .push_back(i);

    ConsensusPartition out;
    out.membership = blocks.membership;
    out.gamma = blocks.gamma;
    out.outlier_flags.assign(static_cast<std::size_t>(n), false);
    for (int b = 1; b <= num_blocks; ++b)
        if (members[static_cast<std::size_t>(b)].size() == 1)
            out.outlier_flags[static_cast<std::size_t>(
                members[static_cast<std::size_t>(b)].front())] = true;

    switch (strategy) {
        case OutlierStrategy::Highlight:
            break;  // singleton blocks stay as their own communities
        case OutlierStrategy::Group:
            for (int i = 0; i < n; ++i)
                if (out.outlier_flags[static_cast<std::size_t>(i)])
                    out.membership[static_cast<std::size_t>(i)] = 0;
            break;
        case OutlierStrategy::Incorporate: {
            std::vector<int> multi;
            for (int b = 1; b <= num_blocks; ++b)
                if (members[static_cast<std::size_t>(b)].size() > 1) multi.push_back(b);
            if (multi.empty()) {
                // degenerate: nothing to incorporate into; collapse to one community
                for (int& c : out.membership.membership) c = 1;
                out.outlier_flags.assign(static_cast<std::size_t>(n), false);
                break;
            }
            for (int i = 0; i < n; ++i) {
                if (!out.outlier_flags[static_cast<std::size_t>(i)]) continue;
                int best = multi.front();
                double best_mean = -1.0;
                for (int b : multi) {
                    double sum = 0.0;
                    for (int j : members[static_cast<std::size_t>(b)]) sum += d.at(i, j);
                    double mean = sum / static_cast<double>(members[static_cast<std::size_t>(b)].size());
                    if (mean > best_mean + 1e-12) {
                        best_mean = mean;
                        best = b;
                    }
                }
                out.membership[static_cast<std::size_t>(i)] = best;
            }
            break;
        }
    }

    out.membership.normalize(/*preserve_zero=*/true);
    return out;
}

std::optional<ConsensusPartition> ccd(const Graph& g, const CcdConfig& cfg, int threads,
                                      CoOccurrenceMatrix* cooc_out) {
    cfg.validate();
    std::vector<Partition> valid = generate_valid_partitions(g, cfg, threads);
    if (valid.empty()) return std::nullopt;
    int trials_valid = static_cast<int>(valid.size());

    std::vector<Partition> kept = prune_by_quantile(valid, cfg.prune_quantile);
    CoOccurrenceMatrix d = build_cooccurrence(kept, g.num_nodes());
    BlockExtraction blocks = extract_blocks(d, cfg.co_occurrence_threshold);
    ConsensusPartition result = apply_outlier_strategy(blocks, d, cfg.outlier_strategy);
    result.trials_valid = trials_valid;
    result.trials_used = d.n_used;
    if (cooc_out) *cooc_out = std::move(d);
    return result;
}

namespace {

bool is_block_diagonal(const CoOccurrenceMatrix& d, double eps = 1e-9) {
    for (double x : d.data)
        if (x > eps && x < 1.0 - eps) return false;
    return true;
}

}  // namespace

RecursiveResult recursive_consensus(const Graph& g, const DetectorConfig& detector, int trials,
                                    double p, int max_depth, std::uint64_t master_seed) {
    if (trials < 1) throw std::invalid_argument("recursive_consensus: trials must be >= 1");
    int n = g.num_nodes();
    Graph current = g;

    RecursiveResult res;
    for (int depth = 1; depth <= max_depth; ++depth) {
        res.depth = depth;
        std::vector<Partition> partitions;
        partitions.reserve(static_cast<std::size_t>(trials));
        for (int i = 0; i < trials; ++i) {
            DetectorConfig det = detector;
            det.seed = derive_seed(master_seed, static_cast<std::uint64_t>(depth) * 100003ULL +
                                                    static_cast<std::uint64_t>(i));
            partitions.push_back(detect(current, det));
        }
        CoOccurrenceMatrix d = build_cooccurrence(partitions, n);

        if (is_block_diagonal(d)) {
            // blocks of the 0/1 matrix are the consensus communities
            BlockExtraction blocks = extract_blocks(d, 0.5);
            res.partition = blocks.membership;
            res.converged = true;
            return res;
        }

        // threshold D and rebuild the working graph
        std::vector<Edge> edges;
        std::vector<bool> attached(static_cast<std::size_t>(n), false);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (d.at(i, j) >= p) {
                    edges.push_back({i, j, d.at(i, j)});
                    attached[static_cast<std::size_t>(i)] = true;
                    attached[static_cast<std::size_t>(j)] = true;
                }
        // re-attach nodes isolated by thresholding to their strongest neighbor
        std::set<std::pair<int, int>> reattached;
        for (int i = 0; i < n; ++i) {
            if (attached[static_cast<std::size_t>(i)]) continue;
            int best = -1;
            double best_w = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != i && d.at(i, j) > best_w) {
                    best_w = d.at(i, j);
                    best = j;
                }
            if (best < 0) {
                for (const auto& [j, w] : g.neighbors(i))
                    if (w > best_w) {
                        best_w = w;
                        best = j;
                    }
            }
            if (best >= 0) {
                auto key = std::minmax(i, best);
                if (reattached.insert(key).second)
                    edges.push_back({i, best, std::max(best_w, 1e-6)});
            }
        }
        current = Graph::from_edges(n, std::move(edges), g.labels());
    }

    // did not converge: report the blocks of the last thresholded graph
    res.partition = current.connected_components();
    res.converged = false;
    return res;
}

}  // namespace ccd
