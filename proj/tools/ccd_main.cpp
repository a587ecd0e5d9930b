#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ccd/benchgen.hpp"
#include "ccd/consensus.hpp"
#include "ccd/experiment.hpp"
#include "ccd/io.hpp"
#include "ccd/metrics.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNullResult = 2;

int default_threads() {
    if (const char* env = std::getenv("CCD_THREADS")) {
        int t = std::atoi(env);
        if (t >= 1) return t;
    }
    return 1;
}

struct GenOptions {
    std::string family;
    std::string out;
    std::uint64_t seed = 0;
    int k0 = 4, s = 6;
    bool bridges = false, center = false;
    int n = 1000;
    double tau1 = 2.0, tau2 = 3.0, mu = 0.3, avg_deg = 10.0;
    int c_min = 20, c_max = 50;
    double edge_prob = 0.05;
    bool largest_component = false;
};

int cmd_gen(const GenOptions& opt) {
    if (opt.family == "rc") {
        auto inst = ccd::ring_of_cliques(opt.k0, opt.s, opt.bridges, opt.center, opt.seed);
        ccd::write_edge_list(inst.graph, opt.out + ".tsv");
        ccd::write_partition(inst.graph, inst.truth, opt.out + ".truth.tsv");
        std::cout << "realized_mu=" << ccd::format_double(inst.realized_mu) << "\n";
    } else if (opt.family == "lfr") {
        auto inst = ccd::lfr_like(opt.n, opt.tau1, opt.tau2, opt.mu, opt.avg_deg, opt.c_min,
                                  opt.c_max, opt.seed);
        ccd::write_edge_list(inst.graph, opt.out + ".tsv");
        ccd::write_partition(inst.graph, inst.truth, opt.out + ".truth.tsv");
        std::cout << "realized_mu=" << ccd::format_double(inst.realized_mu) << "\n";
    } else if (opt.family == "er") {
        ccd::Graph g = ccd::erdos_renyi(opt.n, opt.edge_prob, opt.seed, opt.largest_component);
        ccd::write_edge_list(g, opt.out + ".tsv");
        std::cout << "n=" << g.num_nodes() << " m=" << g.num_edges() << "\n";
    } else if (opt.family == "karate") {
        auto inst = ccd::karate();
        ccd::write_edge_list(inst.graph, opt.out + ".tsv");
        ccd::write_partition(inst.graph, inst.truth, opt.out + ".truth.tsv");
        std::cout << "realized_mu=" << ccd::format_double(inst.realized_mu) << "\n";
    } else {
        throw std::runtime_error("unknown family: " + opt.family);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Consensus community detection toolkit"};
    app.require_subcommand(1);

    // gen
    GenOptions gen;
    auto* sub_gen = app.add_subcommand("gen", "Generate a benchmark network");
    sub_gen->add_option("family", gen.family, "rc | lfr | er | karate")->required();
    sub_gen->add_option("--out", gen.out, "output path prefix")->required();
    sub_gen->add_option("--seed", gen.seed, "RNG seed");
    sub_gen->add_option("--k0", gen.k0, "number of cliques (rc)");
    sub_gen->add_option("--s", gen.s, "clique size (rc)");
    sub_gen->add_flag("--bridges", gen.bridges, "bridge nodes between cliques (rc)");
    sub_gen->add_flag("--center", gen.center, "central node (rc)");
    sub_gen->add_option("--n", gen.n, "node count (lfr, er)");
    sub_gen->add_option("--tau1", gen.tau1, "degree exponent (lfr)");
    sub_gen->add_option("--tau2", gen.tau2, "community-size exponent (lfr)");
    sub_gen->add_option("--mu", gen.mu, "nominal mixing parameter (lfr)");
    sub_gen->add_option("--avg-deg", gen.avg_deg, "average degree (lfr)");
    sub_gen->add_option("--c-min", gen.c_min, "min community size (lfr)");
    sub_gen->add_option("--c-max", gen.c_max, "max community size (lfr)");
    sub_gen->add_option("--p", gen.edge_prob, "edge probability (er)");
    sub_gen->add_flag("--largest-component", gen.largest_component,
                      "keep only the largest component (er)");

    // detect
    std::string det_graph, det_alg = "louvain", det_out;
    double det_r = 1.0;
    int det_walk = 4, det_sweeps = 100;
    std::uint64_t det_seed = 0;
    auto* sub_detect = app.add_subcommand("detect", "Single community-detection trial");
    sub_detect->add_option("graph", det_graph, "edge-list file")->required();
    sub_detect->add_option("--alg", det_alg, "louvain | leiden | label_propagation | walktrap");
    sub_detect->add_option("--r", det_r, "resolution (louvain/leiden)");
    sub_detect->add_option("--walk-length", det_walk, "walk length (walktrap)");
    sub_detect->add_option("--max-sweeps", det_sweeps, "sweep cap (label propagation)");
    sub_detect->add_option("--seed", det_seed, "RNG seed");
    sub_detect->add_option("--out", det_out, "partition output file")->required();

    // ccd
    std::string ccd_graph, ccd_alg = "louvain", ccd_strategy = "highlight", ccd_out, ccd_cooc;
    double ccd_r = 1.0, ccd_p = 0.8, ccd_q = 0.5;
    double ccd_rmin = 0.0, ccd_rmax = 0.0;
    int ccd_t = 100, ccd_walk = 4, ccd_threads = default_threads();
    std::uint64_t ccd_seed = 0;
    auto* sub_ccd = app.add_subcommand("ccd", "Consensus community detection");
    sub_ccd->add_option("graph", ccd_graph, "edge-list file")->required();
    sub_ccd->add_option("--alg", ccd_alg, "base algorithm");
    sub_ccd->add_option("--r", ccd_r, "resolution");
    auto* opt_rmin = sub_ccd->add_option("--r-min", ccd_rmin, "per-trial resolution range lower bound");
    auto* opt_rmax = sub_ccd->add_option("--r-max", ccd_rmax, "per-trial resolution range upper bound");
    sub_ccd->add_option("--walk-length", ccd_walk, "walk length (walktrap)");
    sub_ccd->add_option("--t", ccd_t, "number of trials");
    sub_ccd->add_option("--p", ccd_p, "co-occurrence threshold");
    sub_ccd->add_option("--q", ccd_q, "similarity prune quantile");
    sub_ccd->add_option("--strategy", ccd_strategy, "incorporate | highlight | group");
    sub_ccd->add_option("--seed", ccd_seed, "master seed");
    sub_ccd->add_option("--threads", ccd_threads, "worker threads (env CCD_THREADS)");
    sub_ccd->add_option("--out", ccd_out, "consensus CSV output")->required();
    sub_ccd->add_option("--cooc", ccd_cooc, "co-occurrence triplet CSV output");

    // metrics
    std::string met_graph, met_part1, met_part2;
    auto* sub_metrics = app.add_subcommand("metrics", "Partition quality report");
    sub_metrics->add_option("graph", met_graph, "edge-list file")->required();
    sub_metrics->add_option("partition", met_part1, "membership file")->required();
    sub_metrics->add_option("partition2", met_part2, "second membership file (adds NMI)");

    // experiment
    std::string exp_spec, exp_out = ".";
    std::uint64_t exp_seed = 0;
    int exp_threads = default_threads();
    auto* sub_exp = app.add_subcommand("experiment", "Run a declarative experiment grid");
    sub_exp->add_option("--spec", exp_spec, "experiment spec file")->required();
    sub_exp->add_option("--out", exp_out, "output directory");
    sub_exp->add_option("--seed", exp_seed, "master seed")->required();
    sub_exp->add_option("--threads", exp_threads, "worker threads (env CCD_THREADS)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sub_gen->parsed()) return cmd_gen(gen);

        if (sub_detect->parsed()) {
            ccd::Graph g = ccd::read_edge_list(det_graph);
            ccd::DetectorConfig cfg;
            cfg.algorithm = ccd::algorithm_from_name(det_alg);
            cfg.resolution = det_r;
            cfg.walk_length = det_walk;
            cfg.max_sweeps = det_sweeps;
            cfg.seed = det_seed;
            ccd::Partition p = ccd::detect(g, cfg);
            ccd::write_partition(g, p, det_out);
            ccd::PartitionQuality q = ccd::assess(g, p);
            std::cout << "k=" << q.k << " mu=" << ccd::format_double(q.mu)
                      << " modularity=" << ccd::format_double(q.modularity)
                      << " valid=" << (q.valid ? 1 : 0) << "\n";
            return kExitOk;
        }

        if (sub_ccd->parsed()) {
            ccd::Graph g = ccd::read_edge_list(ccd_graph);
            ccd::CcdConfig cfg;
            cfg.trials = ccd_t;
            cfg.co_occurrence_threshold = ccd_p;
            cfg.prune_quantile = ccd_q;
            cfg.outlier_strategy = ccd::outlier_strategy_from_name(ccd_strategy);
            cfg.detector.algorithm = ccd::algorithm_from_name(ccd_alg);
            cfg.detector.resolution = ccd_r;
            cfg.detector.walk_length = ccd_walk;
            cfg.master_seed = ccd_seed;
            if (opt_rmin->count() || opt_rmax->count()) {
                if (!(opt_rmin->count() && opt_rmax->count()))
                    throw std::runtime_error("--r-min and --r-max must be given together");
                cfg.resolution_range = std::make_pair(ccd_rmin, ccd_rmax);
            }
            ccd::CoOccurrenceMatrix cooc;
            auto result = ccd::ccd(g, cfg, ccd_threads, &cooc);
            if (!result) {
                ccd::write_null_result_csv(ccd_out);
                std::cout << "null-result\n";
                return kExitNullResult;
            }
            ccd::write_consensus_csv(g, *result, ccd_out);
            if (!ccd_cooc.empty()) ccd::write_cooccurrence_csv(cooc, ccd_cooc);
            int k = 0;
            for (int c : result->membership.membership) k = std::max(k, c);
            std::cout << "k=" << k << " trials_valid=" << result->trials_valid
                      << " trials_used=" << result->trials_used << "\n";
            return kExitOk;
        }

        if (sub_metrics->parsed()) {
            ccd::Graph g = ccd::read_edge_list(met_graph);
            ccd::Partition p1 = ccd::read_partition(g, met_part1);
            ccd::PartitionQuality q = ccd::assess(g, p1);
            std::cout << "k=" << q.k << " mu=" << ccd::format_double(q.mu)
                      << " modularity=" << ccd::format_double(q.modularity)
                      << " valid=" << (q.valid ? 1 : 0) << "\n";
            if (!met_part2.empty()) {
                ccd::Partition p2 = ccd::read_partition(g, met_part2);
                std::cout << "nmi=" << ccd::format_double(ccd::nmi(p1, p2)) << "\n";
            }
            return kExitOk;
        }

        if (sub_exp->parsed()) {
            ccd::ExperimentSpec spec = ccd::ExperimentSpec::load(exp_spec);
            std::string path = ccd::run_experiment(spec, exp_out, exp_seed, exp_threads);
            std::cout << "wrote " << path << "\n";
            return kExitOk;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
