#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ccd/benchgen.hpp"
#include "ccd/experiment.hpp"
#include "ccd/io.hpp"
#include "doctest.h"

using namespace ccd;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    // a line ending in "," loses its final empty field above; restore it
    for (std::size_t i = 1; i < rows.size(); ++i)
        while (rows[i].size() < rows[0].size()) rows[i].emplace_back();
    return rows;
}

fs::path fresh_dir(const std::string& tag) {
    fs::path dir = fs::temp_directory_path() / ("ccd_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

// quoting-free runner; every path we pass is quote-safe
int run_cli(const std::string& args) {
    std::string cmd = std::string(CCD_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("experiment spec parsing") {
    ExperimentSpec spec = ExperimentSpec::parse(
        "# comment\n"
        "name = rc-sweep\n"
        "k0_list = 3, 4 ,5\n"
        "t = 25\n"
        "mu_list = 0.1,0.2\n"
        "\n"
        "   # indented comment\n"
        "algorithms = louvain\n");
    CHECK(spec.name == "rc-sweep");
    CHECK(spec.get_int("t", 0) == 25);
    CHECK(spec.get_int_list("k0_list") == std::vector<int>{3, 4, 5});
    CHECK(spec.get_double_list("mu_list") == std::vector<double>{0.1, 0.2});
    CHECK(spec.get_list("algorithms") == std::vector<std::string>{"louvain"});
    CHECK(spec.get("missing", "fallback") == "fallback");
    CHECK(spec.get_int("missing", 7) == 7);

    CHECK_THROWS(ExperimentSpec::parse("t = 5\n"));          // no name
    CHECK_THROWS(ExperimentSpec::parse("name rc-sweep\n"));  // no `=`
}

TEST_CASE("a small rc-sweep experiment produces a complete csv") {
    ExperimentSpec spec = ExperimentSpec::parse(
        "name = rc-sweep\n"
        "k0_list = 3,4\n"
        "s = 5\n"
        "t = 20\n"
        "algorithms = label_propagation\n"
        "methods = ccd,single\n"
        "replicates = 2\n");
    fs::path dir = fresh_dir("rcsweep");
    std::string path = run_experiment(spec, dir.string(), 42);
    auto rows = parse_csv(slurp(path));
    REQUIRE(rows.size() == 1 + 2 * 2 * 2);  // header + k0 x method x replicate
    CHECK(rows[0][0] == "experiment");
    std::size_t err_col = rows[0].size() - 1;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].size() == rows[0].size());
        CHECK(rows[i][err_col].empty());
    }

    // deterministic: byte-identical on a rerun with the same seed
    fs::path dir2 = fresh_dir("rcsweep2");
    std::string path2 = run_experiment(spec, dir2.string(), 42);
    CHECK(slurp(path) == slurp(path2));

    // and different with another seed
    fs::path dir3 = fresh_dir("rcsweep3");
    std::string path3 = run_experiment(spec, dir3.string(), 43);
    CHECK(slurp(path) != slurp(path3));
}

TEST_CASE("experiment output does not depend on the thread count") {
    ExperimentSpec spec = ExperimentSpec::parse(
        "name = rc-sweep\n"
        "k0_list = 4\n"
        "s = 5\n"
        "t = 30\n"
        "algorithms = louvain\n"
        "methods = ccd\n");
    fs::path d1 = fresh_dir("thr1"), d4 = fresh_dir("thr4");
    std::string p1 = run_experiment(spec, d1.string(), 9, 1);
    std::string p4 = run_experiment(spec, d4.string(), 9, 4);
    // wall_ms differs between runs; compare everything else
    auto strip_time = [](const std::string& text) {
        auto rows = parse_csv(text);
        std::size_t col = 0;
        for (std::size_t i = 0; i < rows[0].size(); ++i)
            if (rows[0][i] == "wall_ms") col = i;
        std::string out;
        for (auto& row : rows) {
            row[col] = "-";
            for (const auto& c : row) out += c + "|";
            out += "\n";
        }
        return out;
    };
    CHECK(strip_time(slurp(p1)) == strip_time(slurp(p4)));
}

TEST_CASE("unknown experiment names are rejected") {
    ExperimentSpec spec = ExperimentSpec::parse("name = frobnicate\n");
    fs::path dir = fresh_dir("unknown");
    CHECK_THROWS(run_experiment(spec, dir.string(), 1));
}

TEST_CASE("cli: gen, detect, ccd and metrics round-trip") {
    fs::path dir = fresh_dir("cli");
    std::string prefix = (dir / "rc").string();

    CHECK(run_cli("gen rc --k0 4 --s 6 --out " + prefix + " --seed 1") == 0);
    CHECK(fs::exists(prefix + ".tsv"));
    CHECK(fs::exists(prefix + ".truth.tsv"));

    Graph g = read_edge_list(prefix + ".tsv");
    CHECK(g.num_nodes() == 24);
    Partition truth = read_partition(g, prefix + ".truth.tsv");
    CHECK(truth.num_communities() == 4);

    std::string part = (dir / "part.tsv").string();
    CHECK(run_cli("detect " + prefix + ".tsv --alg louvain --seed 3 --out " + part) == 0);
    Partition p = read_partition(g, part);
    CHECK(p.num_communities() == 4);

    std::string cons = (dir / "consensus.csv").string();
    std::string cooc = (dir / "cooc.csv").string();
    CHECK(run_cli("ccd " + prefix + ".tsv --t 20 --seed 5 --out " + cons + " --cooc " + cooc) ==
          0);
    auto rows = parse_csv(slurp(cons));
    REQUIRE(rows.size() == 25);  // header + one row per node
    CHECK(rows[0] == std::vector<std::string>{"node_label", "community", "gamma", "is_outlier"});

    CHECK(run_cli("metrics " + prefix + ".tsv " + part + " " + prefix + ".truth.tsv") == 0);
}

TEST_CASE("cli: identical seeds give byte-identical consensus output") {
    fs::path dir = fresh_dir("clidet");
    std::string prefix = (dir / "g").string();
    REQUIRE(run_cli("gen rc --k0 5 --s 5 --bridges --out " + prefix + " --seed 2") == 0);
    std::string a = (dir / "a.csv").string(), b = (dir / "b.csv").string();
    CHECK(run_cli("ccd " + prefix + ".tsv --t 30 --seed 11 --threads 1 --out " + a) == 0);
    CHECK(run_cli("ccd " + prefix + ".tsv --t 30 --seed 11 --threads 4 --out " + b) == 0);
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("cli: null-result exits with code 2 and writes the sentinel") {
    fs::path dir = fresh_dir("clinull");
    std::string prefix = (dir / "er").string();
    REQUIRE(run_cli("gen er --n 150 --p 0.05 --largest-component --out " + prefix +
                    " --seed 4") == 0);
    std::string out = (dir / "null.csv").string();
    CHECK(run_cli("ccd " + prefix + ".tsv --alg label_propagation --t 20 --seed 6 --out " +
                  out) == 2);
    CHECK(slurp(out).find("null-result") != std::string::npos);
}

TEST_CASE("cli: bad input exits with code 1") {
    CHECK(run_cli("detect /nonexistent.tsv --out /tmp/x.tsv") == 1);
    CHECK(run_cli("gen bogus --out /tmp/y") == 1);
}

TEST_CASE("cli: experiment subcommand runs a spec file") {
    fs::path dir = fresh_dir("cliexp");
    std::string spec_path = (dir / "tiny.spec").string();
    {
        std::ofstream out(spec_path);
        out << "name = validity\nn = 80\nedge_prob = 0.06\ntrials = 5\n"
            << "algorithms = label_propagation\nt = 10\n";
    }
    CHECK(run_cli("experiment --spec " + spec_path + " --out " + dir.string() + " --seed 3") ==
          0);
    auto rows = parse_csv(slurp((dir / "validity.csv").string()));
    REQUIRE(rows.size() > 1);
    CHECK(rows[0][0] == "experiment");
}

TEST_CASE("the shipped experiment specs parse and name known protocols") {
    fs::path specs = fs::path(CCD_SOURCE_DIR) / "experiments";
    REQUIRE(fs::exists(specs));
    int count = 0;
    for (const auto& entry : fs::directory_iterator(specs)) {
        if (entry.path().extension() != ".spec") continue;
        ++count;
        ExperimentSpec spec = ExperimentSpec::load(entry.path().string());
        CHECK_FALSE(spec.name.empty());
    }
    CHECK(count >= 5);
}
