#include "ccd/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ccd/benchgen.hpp"
#include "ccd/consensus.hpp"
#include "ccd/io.hpp"
#include "ccd/metrics.hpp"
#include "ccd/rng.hpp"

namespace ccd {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

ExperimentSpec ExperimentSpec::parse(const std::string& text) {
    ExperimentSpec spec;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("experiment spec: expected `key = value` at line " +
                                     std::to_string(lineno));
        spec.kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    auto it = spec.kv.find("name");
    if (it == spec.kv.end()) throw std::runtime_error("experiment spec: missing `name`");
    spec.name = it->second;
    return spec;
}

ExperimentSpec ExperimentSpec::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open experiment spec: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string ExperimentSpec::get(const std::string& key, const std::string& fallback) const {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
}

int ExperimentSpec::get_int(const std::string& key, int fallback) const {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : std::stoi(it->second);
}

double ExperimentSpec::get_double(const std::string& key, double fallback) const {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : std::stod(it->second);
}

std::vector<std::string> ExperimentSpec::get_list(const std::string& key,
                                                  const std::string& fallback) const {
    std::string raw = get(key, fallback);
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(raw);
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<int> ExperimentSpec::get_int_list(const std::string& key,
                                              const std::string& fallback) const {
    std::vector<int> out;
    for (const auto& s : get_list(key, fallback)) out.push_back(std::stoi(s));
    return out;
}

std::vector<double> ExperimentSpec::get_double_list(const std::string& key,
                                                    const std::string& fallback) const {
    std::vector<double> out;
    for (const auto& s : get_list(key, fallback)) out.push_back(std::stod(s));
    return out;
}

namespace {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void write(const std::string& path) const {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write file: " + path);
        for (std::size_t i = 0; i < header.size(); ++i)
            out << header[i] << (i + 1 < header.size() ? "," : "\n");
        for (const auto& row : rows)
            for (std::size_t i = 0; i < row.size(); ++i)
                out << row[i] << (i + 1 < row.size() ? "," : "\n");
    }
};

struct GammaStats {
    double mean = 0.0, median = 0.0, p10 = 0.0, p90 = 0.0, frac_pos = 0.0;
};

GammaStats gamma_stats(const std::vector<double>& gamma) {
    GammaStats st;
    if (gamma.empty()) return st;
    std::vector<double> sorted = gamma;
    std::sort(sorted.begin(), sorted.end());
    double sum = 0.0;
    int pos = 0;
    for (double g : gamma) {
        sum += g;
        if (g > 0.0) ++pos;
    }
    auto pct = [&](double p) {
        std::size_t rank = static_cast<std::size_t>(
            std::ceil(p * static_cast<double>(sorted.size())));
        rank = std::clamp<std::size_t>(rank, 1, sorted.size());
        return sorted[rank - 1];
    };
    st.mean = sum / static_cast<double>(gamma.size());
    st.median = pct(0.5);
    st.p10 = pct(0.1);
    st.p90 = pct(0.9);
    st.frac_pos = static_cast<double>(pos) / static_cast<double>(gamma.size());
    return st;
}

std::string fd(double x) { return format_double(x); }

class Timer {
  public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

DetectorConfig detector_from_spec(const ExperimentSpec& spec, const std::string& algorithm) {
    DetectorConfig det;
    det.algorithm = algorithm_from_name(algorithm);
    det.resolution = spec.get_double("r", 1.0);
    det.walk_length = spec.get_int("walk_length", 4);
    det.max_sweeps = spec.get_int("max_sweeps", 100);
    return det;
}

CcdConfig ccd_from_spec(const ExperimentSpec& spec, const std::string& algorithm) {
    CcdConfig cfg;
    cfg.trials = spec.get_int("t", 100);
    cfg.co_occurrence_threshold = spec.get_double("p", 0.8);
    cfg.prune_quantile = spec.get_double("q", 0.5);
    cfg.outlier_strategy = outlier_strategy_from_name(spec.get("strategy", "group"));
    cfg.detector = detector_from_spec(spec, algorithm);
    return cfg;
}

BenchmarkInstance lfr_from_spec(const ExperimentSpec& spec, double mu, std::uint64_t seed) {
    return lfr_like(spec.get_int("n", 1000), spec.get_double("tau1", 2.0),
                    spec.get_double("tau2", 3.0), mu, spec.get_double("avg_deg", 10.0),
                    spec.get_int("c_min", 20), spec.get_int("c_max", 50), seed);
}

// single permuted detector trial (the t=1 baseline)
Partition single_trial(const Graph& g, DetectorConfig det, std::uint64_t seed) {
    auto [gp, perm] = g.permute(mix64(seed ^ 0x5eedULL));
    det.seed = mix64(seed ^ 0x7ea1ULL);
    Partition p = perm.map_back(detect(gp, det));
    p.normalize();
    return p;
}

int non_outlier_k(const Partition& p) {
    std::vector<int> seen;
    for (int c : p.membership) {
        if (c == 0) continue;
        if (std::find(seen.begin(), seen.end(), c) == seen.end()) seen.push_back(c);
    }
    return static_cast<int>(seen.size());
}

// fills the mean-pairwise-NMI column for a group of rows sharing a grid point
void fill_mean_pairwise(CsvTable& table, const std::vector<std::size_t>& row_ids,
                        const std::vector<Partition>& parts, std::size_t column) {
    if (parts.size() < 2) return;
    SimilarityScores sim = pairwise_similarity(parts);
    for (std::size_t i = 0; i < row_ids.size(); ++i)
        table.rows[row_ids[i]][column] = fd(sim.scores[i]);
}

// ---- experiment protocols ----------------------------------------------

CsvTable run_stability(const ExperimentSpec& spec, std::uint64_t master, int threads) {
    CsvTable table;
    table.header = {"experiment", "method", "algorithm", "t", "replicate", "k", "mu",
                    "modularity", "nmi_truth", "mean_pairwise_nmi", "gamma_mean",
                    "gamma_median", "gamma_p10", "gamma_p90", "gamma_frac_pos", "wall_ms",
                    "error"};
    const std::size_t kMeanNmiCol = 9;
    int replicates = spec.get_int("replicates", 10);
    auto algorithms = spec.get_list("algorithms", "louvain");
    auto t_list = spec.get_int_list("t_list", "10,20,50,100,200,500");

    BenchmarkInstance bench =
        lfr_from_spec(spec, spec.get_double("mu", 0.3), derive_seed(master, 0xbe11));
    const Graph& g = bench.graph;

    std::uint64_t grid_idx = 0;
    for (const auto& algorithm : algorithms) {
        // t = 1 single-trial baseline, then the CCD grid
        std::vector<int> ts = {1};
        ts.insert(ts.end(), t_list.begin(), t_list.end());
        for (int t : ts) {
            ++grid_idx;
            std::vector<Partition> parts;
            std::vector<std::size_t> row_ids;
            for (int rep = 0; rep < replicates; ++rep) {
                Timer timer;
                std::vector<std::string> row(table.header.size(), "");
                row[0] = spec.name;
                row[1] = t == 1 ? "single" : "ccd";
                row[2] = algorithm;
                row[3] = std::to_string(t);
                row[4] = std::to_string(rep);
                try {
                    std::uint64_t seed = derive_seed(master, grid_idx, static_cast<std::uint64_t>(rep));
                    Partition p;
                    GammaStats gs;
                    if (t == 1) {
                        p = single_trial(g, detector_from_spec(spec, algorithm), seed);
                    } else {
                        CcdConfig cfg = ccd_from_spec(spec, algorithm);
                        cfg.trials = t;
                        cfg.master_seed = seed;
                        auto res = ccd(g, cfg, threads);
                        if (!res) throw std::runtime_error("null-result");
                        p = res->membership;
                        gs = gamma_stats(res->gamma);
                    }
                    PartitionQuality q = assess(g, p);
                    row[5] = std::to_string(q.k);
                    row[6] = fd(q.mu);
                    row[7] = fd(q.modularity);
                    row[8] = fd(nmi(p, bench.truth));
                    row[10] = fd(gs.mean);
                    row[11] = fd(gs.median);
                    row[12] = fd(gs.p10);
                    row[13] = fd(gs.p90);
                    row[14] = fd(gs.frac_pos);
                    parts.push_back(p);
                    row_ids.push_back(table.rows.size());
                } catch (const std::exception& e) {
                    row[16] = e.what();
                }
                row[15] = std::to_string(timer.ms());
                table.rows.push_back(std::move(row));
            }
            fill_mean_pairwise(table, row_ids, parts, kMeanNmiCol);
        }
    }
    return table;
}

CsvTable run_bias(const ExperimentSpec& spec, std::uint64_t master, int /*threads*/) {
    CsvTable table;
    table.header = {"experiment", "algorithm", "permuted", "replicate", "k",
                    "center_assignment", "wall_ms", "error"};
    int runs = spec.get_int("runs", 1000);
    auto algorithms = spec.get_list("algorithms", "louvain,leiden,label_propagation,walktrap");
    BenchmarkInstance bench = ring_of_cliques(spec.get_int("k0", 4), spec.get_int("s", 5),
                                              spec.get_int("bridges", 1) != 0,
                                              spec.get_int("center", 1) != 0);
    const Graph& g = bench.graph;
    int center_node = g.num_nodes() - 1;

    auto center_assignment = [&](const Partition& p) -> std::string {
        int community = p[static_cast<std::size_t>(center_node)];
        // majority ground-truth clique among the center's community mates
        std::vector<int> count(static_cast<std::size_t>(spec.get_int("k0", 4)) + 1, 0);
        int mates = 0;
        for (int i = 0; i < g.num_nodes(); ++i) {
            if (i == center_node || p[static_cast<std::size_t>(i)] != community) continue;
            ++mates;
            int t = bench.truth[static_cast<std::size_t>(i)];
            if (t > 0) ++count[static_cast<std::size_t>(t)];
        }
        if (mates == 0) return "S";
        int best = 1;
        for (std::size_t c = 1; c < count.size(); ++c)
            if (count[c] > count[static_cast<std::size_t>(best)]) best = static_cast<int>(c);
        return "C" + std::to_string(best);
    };

    std::uint64_t grid_idx = 0;
    for (const auto& algorithm : algorithms) {
        for (int permuted = 0; permuted <= 1; ++permuted) {
            ++grid_idx;
            for (int rep = 0; rep < runs; ++rep) {
                Timer timer;
                std::vector<std::string> row(table.header.size(), "");
                row[0] = spec.name;
                row[1] = algorithm;
                row[2] = std::to_string(permuted);
                row[3] = std::to_string(rep);
                try {
                    DetectorConfig det = detector_from_spec(spec, algorithm);
                    std::uint64_t seed = derive_seed(master, grid_idx, static_cast<std::uint64_t>(rep));
                    Partition p;
                    if (permuted != 0) {
                        p = single_trial(g, det, seed);
                    } else {
                        det.seed = seed;
                        p = detect(g, det);
                    }
                    row[4] = std::to_string(p.num_communities());
                    row[5] = center_assignment(p);
                } catch (const std::exception& e) {
                    row[7] = e.what();
                }
                row[6] = std::to_string(timer.ms());
                table.rows.push_back(std::move(row));
            }
        }
    }
    return table;
}

CsvTable run_uncertainty_sweep(const ExperimentSpec& spec, std::uint64_t master, int threads) {
    CsvTable table;
    table.header = {"experiment", "algorithm", "mu_nominal", "realized_mu", "replicate", "k",
                    "nmi_truth", "gamma_mean", "gamma_median", "gamma_p10", "gamma_p90",
                    "gamma_frac_pos", "wall_ms", "error"};
    auto mu_list = spec.get_double_list("mu_list",
                                        "0.05,0.10,0.15,0.20,0.25,0.30,0.35,0.40,0.45,0.50");
    auto algorithms = spec.get_list("algorithms", "louvain,leiden,label_propagation,walktrap");
    int replicates = spec.get_int("replicates", 1);

    std::uint64_t grid_idx = 0;
    for (double mu : mu_list) {
        BenchmarkInstance bench = lfr_from_spec(
            spec, mu, derive_seed(master, 0x1f2, static_cast<std::uint64_t>(mu * 1000)));
        for (const auto& algorithm : algorithms) {
            ++grid_idx;
            for (int rep = 0; rep < replicates; ++rep) {
                Timer timer;
                std::vector<std::string> row(table.header.size(), "");
                row[0] = spec.name;
                row[1] = algorithm;
                row[2] = fd(mu);
                row[3] = fd(bench.realized_mu);
                row[4] = std::to_string(rep);
                try {
                    CcdConfig cfg = ccd_from_spec(spec, algorithm);
                    cfg.master_seed = derive_seed(master, grid_idx, static_cast<std::uint64_t>(rep));
                    auto res = ccd(bench.graph, cfg, threads);
                    if (!res) throw std::runtime_error("null-result");
                    GammaStats gs = gamma_stats(res->gamma);
                    row[5] = std::to_string(res->membership.num_communities());
                    row[6] = fd(nmi(res->membership, bench.truth));
                    row[7] = fd(gs.mean);
                    row[8] = fd(gs.median);
                    row[9] = fd(gs.p10);
                    row[10] = fd(gs.p90);
                    row[11] = fd(gs.frac_pos);
                } catch (const std::exception& e) {
                    row[13] = e.what();
                }
                row[12] = std::to_string(timer.ms());
                table.rows.push_back(std::move(row));
            }
        }
    }
    return table;
}

CsvTable run_rc_sweep(const ExperimentSpec& spec, std::uint64_t master, int threads) {
    CsvTable table;
    table.header = {"experiment", "method", "algorithm", "s", "k0", "replicate", "k_detected",
                    "nmi_truth", "gamma_mean", "gamma_frac_pos", "wall_ms", "error"};
    int s = spec.get_int("s", 6);
    auto k0_list = spec.get_int_list("k0_list", "5,10,20,30,50");
    auto algorithms = spec.get_list("algorithms", "louvain,label_propagation");
    auto methods = spec.get_list("methods", "ccd,recursive,single");
    int replicates = spec.get_int("replicates", 1);

    std::uint64_t grid_idx = 0;
    for (int k0 : k0_list) {
        BenchmarkInstance bench = ring_of_cliques(k0, s, spec.get_int("bridges", 1) != 0,
                                                  spec.get_int("center", 0) != 0);
        for (const auto& algorithm : algorithms) {
            for (const auto& method : methods) {
                ++grid_idx;
                for (int rep = 0; rep < replicates; ++rep) {
                    Timer timer;
                    std::vector<std::string> row(table.header.size(), "");
                    row[0] = spec.name;
                    row[1] = method;
                    row[2] = algorithm;
                    row[3] = std::to_string(s);
                    row[4] = std::to_string(k0);
                    row[5] = std::to_string(rep);
                    try {
                        std::uint64_t seed = derive_seed(master, grid_idx, static_cast<std::uint64_t>(rep));
                        if (method == "ccd") {
                            CcdConfig cfg = ccd_from_spec(spec, algorithm);
                            cfg.master_seed = seed;
                            auto res = ccd(bench.graph, cfg, threads);
                            if (!res) throw std::runtime_error("null-result");
                            GammaStats gs = gamma_stats(res->gamma);
                            row[6] = std::to_string(non_outlier_k(res->membership));
                            row[7] = fd(nmi(res->membership, bench.truth));
                            row[8] = fd(gs.mean);
                            row[9] = fd(gs.frac_pos);
                        } else if (method == "recursive") {
                            RecursiveResult res = recursive_consensus(
                                bench.graph, detector_from_spec(spec, algorithm),
                                spec.get_int("t", 200), spec.get_double("recursive_p", 0.6),
                                spec.get_int("max_depth", 10), seed);
                            row[6] = std::to_string(res.partition.num_communities());
                            row[7] = fd(nmi(res.partition, bench.truth));
                        } else if (method == "single") {
                            Partition p = single_trial(bench.graph,
                                                       detector_from_spec(spec, algorithm), seed);
                            row[6] = std::to_string(p.num_communities());
                            row[7] = fd(nmi(p, bench.truth));
                        } else {
                            throw std::runtime_error("unknown method: " + method);
                        }
                    } catch (const std::exception& e) {
                        row[11] = e.what();
                    }
                    row[10] = std::to_string(timer.ms());
                    table.rows.push_back(std::move(row));
                }
            }
        }
    }
    return table;
}

CsvTable run_lfr_sweep(const ExperimentSpec& spec, std::uint64_t master, int threads) {
    CsvTable table;
    table.header = {"experiment", "method", "algorithm", "mu_nominal", "realized_mu",
                    "replicate", "k", "k_truth", "nmi_truth", "gamma_mean", "gamma_frac_pos",
                    "wall_ms", "error"};
    auto mu_list = spec.get_double_list("mu_list",
                                        "0.05,0.10,0.15,0.20,0.25,0.30,0.35,0.40,0.45,0.50");
    auto algorithms = spec.get_list("algorithms", "louvain,leiden,label_propagation,walktrap");
    auto methods = spec.get_list("methods", "ccd,recursive,single");
    int replicates = spec.get_int("replicates", 1);

    std::uint64_t grid_idx = 0;
    for (double mu : mu_list) {
        BenchmarkInstance bench = lfr_from_spec(
            spec, mu, derive_seed(master, 0x3d7, static_cast<std::uint64_t>(mu * 1000)));
        int k_truth = bench.truth.num_communities();
        for (const auto& algorithm : algorithms) {
            for (const auto& method : methods) {
                ++grid_idx;
                for (int rep = 0; rep < replicates; ++rep) {
                    Timer timer;
                    std::vector<std::string> row(table.header.size(), "");
                    row[0] = spec.name;
                    row[1] = method;
                    row[2] = algorithm;
                    row[3] = fd(mu);
                    row[4] = fd(bench.realized_mu);
                    row[5] = std::to_string(rep);
                    row[7] = std::to_string(k_truth);
                    try {
                        std::uint64_t seed = derive_seed(master, grid_idx, static_cast<std::uint64_t>(rep));
                        if (method == "ccd") {
                            CcdConfig cfg = ccd_from_spec(spec, algorithm);
                            cfg.master_seed = seed;
                            auto res = ccd(bench.graph, cfg, threads);
                            if (!res) throw std::runtime_error("null-result");
                            GammaStats gs = gamma_stats(res->gamma);
                            row[6] = std::to_string(non_outlier_k(res->membership));
                            row[8] = fd(nmi(res->membership, bench.truth));
                            row[9] = fd(gs.mean);
                            row[10] = fd(gs.frac_pos);
                        } else if (method == "recursive") {
                            RecursiveResult res = recursive_consensus(
                                bench.graph, detector_from_spec(spec, algorithm),
                                spec.get_int("t", 100), spec.get_double("recursive_p", 0.6),
                                spec.get_int("max_depth", 10), seed);
                            row[6] = std::to_string(res.partition.num_communities());
                            row[8] = fd(nmi(res.partition, bench.truth));
                        } else if (method == "single") {
                            Partition p = single_trial(bench.graph,
                                                       detector_from_spec(spec, algorithm), seed);
                            row[6] = std::to_string(p.num_communities());
                            row[8] = fd(nmi(p, bench.truth));
                        } else {
                            throw std::runtime_error("unknown method: " + method);
                        }
                    } catch (const std::exception& e) {
                        row[12] = e.what();
                    }
                    row[11] = std::to_string(timer.ms());
                    table.rows.push_back(std::move(row));
                }
            }
        }
    }
    return table;
}

CsvTable run_karate(const ExperimentSpec& spec, std::uint64_t master, int threads) {
    CsvTable table;
    table.header = {"experiment", "method", "r", "replicate", "k", "mu", "modularity",
                    "gamma_mean", "gamma_frac_pos", "outliers", "wall_ms", "error"};
    BenchmarkInstance bench = karate();
    const Graph& g = bench.graph;
    auto r_list = spec.get_double_list("r_list", "0.5,0.8,1.0");
    int replicates = spec.get_int("replicates", 1);

    std::uint64_t grid_idx = 0;
    for (double r : r_list) {
        ++grid_idx;
        for (int rep = 0; rep < replicates; ++rep) {
            Timer timer;
            std::vector<std::string> row(table.header.size(), "");
            row[0] = spec.name;
            row[1] = "single";
            row[2] = fd(r);
            row[3] = std::to_string(rep);
            try {
                DetectorConfig det;
                det.algorithm = Algorithm::Louvain;
                det.resolution = r;
                Partition p = single_trial(g, det,
                                           derive_seed(master, grid_idx, static_cast<std::uint64_t>(rep)));
                PartitionQuality q = assess(g, p);
                row[4] = std::to_string(q.k);
                row[5] = fd(q.mu);
                row[6] = fd(q.modularity);
            } catch (const std::exception& e) {
                row[11] = e.what();
            }
            row[10] = std::to_string(timer.ms());
            table.rows.push_back(std::move(row));
        }
    }

    // CCD at fixed r = 0.5, then with r sampled per trial in [0.5, 1.0]
    for (int ranged = 0; ranged <= 1; ++ranged) {
        ++grid_idx;
        Timer timer;
        std::vector<std::string> row(table.header.size(), "");
        row[0] = spec.name;
        row[1] = ranged ? "ccd_r_range" : "ccd";
        row[2] = ranged ? "0.5-1.0" : fd(0.5);
        row[3] = "0";
        try {
            CcdConfig cfg;
            cfg.trials = spec.get_int("t", 100);
            cfg.co_occurrence_threshold = spec.get_double("p", 0.9);
            cfg.prune_quantile = spec.get_double("q", 0.5);
            cfg.outlier_strategy = outlier_strategy_from_name(spec.get("strategy", "highlight"));
            cfg.detector.algorithm = Algorithm::Louvain;
            cfg.detector.resolution = 0.5;
            if (ranged) cfg.resolution_range = std::make_pair(0.5, 1.0);
            cfg.master_seed = derive_seed(master, grid_idx, 0);
            auto res = ccd(g, cfg, threads);
            if (!res) throw std::runtime_error("null-result");
            PartitionQuality q = assess(g, res->membership);
            GammaStats gs = gamma_stats(res->gamma);
            row[4] = std::to_string(q.k);
            row[5] = fd(q.mu);
            row[6] = fd(q.modularity);
            row[7] = fd(gs.mean);
            row[8] = fd(gs.frac_pos);
            std::string outliers;
            for (int i = 0; i < g.num_nodes(); ++i)
                if (res->outlier_flags[static_cast<std::size_t>(i)]) {
                    if (!outliers.empty()) outliers += ';';
                    outliers += g.label(i);
                }
            row[9] = outliers;
        } catch (const std::exception& e) {
            row[11] = e.what();
        }
        row[10] = std::to_string(timer.ms());
        table.rows.push_back(std::move(row));
    }
    return table;
}

CsvTable run_validity(const ExperimentSpec& spec, std::uint64_t master, int threads) {
    CsvTable table;
    table.header = {"experiment", "method", "algorithm", "replicate", "k", "mu", "valid",
                    "wall_ms", "error"};
    int trials = spec.get_int("trials", 100);
    auto algorithms = spec.get_list("algorithms", "louvain,leiden,label_propagation,walktrap");
    Graph g = erdos_renyi(spec.get_int("n", 200), spec.get_double("edge_prob", 0.05),
                          derive_seed(master, 0xe5), /*largest_component_only=*/true);

    std::uint64_t grid_idx = 0;
    for (const auto& algorithm : algorithms) {
        ++grid_idx;
        for (int rep = 0; rep < trials; ++rep) {
            Timer timer;
            std::vector<std::string> row(table.header.size(), "");
            row[0] = spec.name;
            row[1] = "single";
            row[2] = algorithm;
            row[3] = std::to_string(rep);
            try {
                Partition p = single_trial(g, detector_from_spec(spec, algorithm),
                                           derive_seed(master, grid_idx, static_cast<std::uint64_t>(rep)));
                PartitionQuality q = assess(g, p);
                row[4] = std::to_string(q.k);
                row[5] = fd(q.mu);
                row[6] = q.valid ? "1" : "0";
            } catch (const std::exception& e) {
                row[8] = e.what();
            }
            row[7] = std::to_string(timer.ms());
            table.rows.push_back(std::move(row));
        }
        // one CCD run per algorithm; null-result expected on a random graph
        Timer timer;
        std::vector<std::string> row(table.header.size(), "");
        row[0] = spec.name;
        row[1] = "ccd";
        row[2] = algorithm;
        row[3] = "0";
        try {
            CcdConfig cfg = ccd_from_spec(spec, algorithm);
            cfg.master_seed = derive_seed(master, grid_idx, 0xccdULL);
            auto res = ccd(g, cfg, threads);
            if (!res) {
                row[4] = "0";
                row[6] = "0";
                row[8] = "null-result";
            } else {
                PartitionQuality q = assess(g, res->membership);
                row[4] = std::to_string(q.k);
                row[5] = fd(q.mu);
                row[6] = q.valid ? "1" : "0";
            }
        } catch (const std::exception& e) {
            row[8] = e.what();
        }
        row[7] = std::to_string(timer.ms());
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace

std::string run_experiment(const ExperimentSpec& spec, const std::string& out_dir,
                           std::uint64_t master_seed, int threads) {
    CsvTable table;
    if (spec.name == "stability")
        table = run_stability(spec, master_seed, threads);
    else if (spec.name == "bias")
        table = run_bias(spec, master_seed, threads);
    else if (spec.name == "uncertainty-sweep")
        table = run_uncertainty_sweep(spec, master_seed, threads);
    else if (spec.name == "rc-sweep")
        table = run_rc_sweep(spec, master_seed, threads);
    else if (spec.name == "lfr-sweep")
        table = run_lfr_sweep(spec, master_seed, threads);
    else if (spec.name == "karate")
        table = run_karate(spec, master_seed, threads);
    else if (spec.name == "validity")
        table = run_validity(spec, master_seed, threads);
    else
        throw std::runtime_error("unknown experiment name: " + spec.name);

    std::string path = out_dir + "/" + spec.name + ".csv";
    table.write(path);
    return path;
}

}  // namespace ccd
