#include "ccd/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace ccd {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (ss >> field) out.push_back(field);
    return out;
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    return in;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", x);
    return buf;
}

std::vector<EdgeRow> parse_edge_list(std::istream& in) {
    std::vector<EdgeRow> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_fields(line);
        if (fields.empty()) continue;
        if (fields.size() < 2 || fields.size() > 3)
            throw std::runtime_error("edge list: bad field count at line " +
                                     std::to_string(lineno));
        EdgeRow row{fields[0], fields[1], std::nullopt};
        if (fields.size() == 3) {
            try {
                row.weight = std::stod(fields[2]);
            } catch (const std::exception&) {
                throw std::runtime_error("edge list: bad weight at line " +
                                         std::to_string(lineno));
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Graph read_edge_list(const std::string& path) {
    auto in = open_or_throw(path);
    return Graph::from_edge_list(parse_edge_list(in));
}

Graph parse_edge_list_string(const std::string& text) {
    std::istringstream in(text);
    return Graph::from_edge_list(parse_edge_list(in));
}

void write_edge_list(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    for (const Edge& e : g.edges())
        out << g.label(e.u) << '\t' << g.label(e.v) << '\t' << format_double(e.w) << '\n';
}

namespace {

Partition partition_from_stream(const Graph& g, std::istream& in, const std::string& what) {
    std::unordered_map<std::string, int> by_label;
    for (int i = 0; i < g.num_nodes(); ++i) by_label[g.label(i)] = i;

    Partition p(static_cast<std::size_t>(g.num_nodes()), 0);
    std::vector<bool> seen(static_cast<std::size_t>(g.num_nodes()), false);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto fields = split_fields(line);
        if (fields.size() != 2)
            throw std::runtime_error(what + ": expected `node<TAB>community` at line " +
                                     std::to_string(lineno));
        auto it = by_label.find(fields[0]);
        if (it == by_label.end())
            throw std::runtime_error(what + ": unknown node `" + fields[0] + "` at line " +
                                     std::to_string(lineno));
        int community;
        try {
            community = std::stoi(fields[1]);
        } catch (const std::exception&) {
            throw std::runtime_error(what + ": bad community at line " + std::to_string(lineno));
        }
        if (seen[static_cast<std::size_t>(it->second)])
            throw std::runtime_error(what + ": duplicate node `" + fields[0] + "` at line " +
                                     std::to_string(lineno));
        seen[static_cast<std::size_t>(it->second)] = true;
        p[static_cast<std::size_t>(it->second)] = community;
    }
    for (int i = 0; i < g.num_nodes(); ++i)
        if (!seen[static_cast<std::size_t>(i)])
            throw std::runtime_error(what + ": node `" + g.label(i) + "` missing");
    return p;
}

}  // namespace

Partition read_partition(const Graph& g, const std::string& path) {
    auto in = open_or_throw(path);
    return partition_from_stream(g, in, path);
}

Partition parse_partition_string(const Graph& g, const std::string& text) {
    std::istringstream in(text);
    return partition_from_stream(g, in, "partition");
}

void write_partition(const Graph& g, const Partition& p, const std::string& path) {
    if (static_cast<int>(p.size()) != g.num_nodes())
        throw std::invalid_argument("write_partition: size mismatch");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    for (int i = 0; i < g.num_nodes(); ++i)
        out << g.label(i) << '\t' << p[static_cast<std::size_t>(i)] << '\n';
}

void write_consensus_csv(const Graph& g, const ConsensusPartition& cp, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << "node_label,community,gamma,is_outlier\n";
    for (int i = 0; i < g.num_nodes(); ++i)
        out << g.label(i) << ',' << cp.membership[static_cast<std::size_t>(i)] << ','
            << format_double(cp.gamma[static_cast<std::size_t>(i)]) << ','
            << (cp.outlier_flags[static_cast<std::size_t>(i)] ? 1 : 0) << '\n';
}

void write_null_result_csv(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << "node_label,community,gamma,is_outlier\n";
    out << "# null-result\n";
}

void write_cooccurrence_csv(const CoOccurrenceMatrix& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << "i,j,d_ij\n";
    for (int i = 0; i < d.n; ++i)
        for (int j = i + 1; j < d.n; ++j)
            if (d.at(i, j) > 0.0)
                out << i << ',' << j << ',' << format_double(d.at(i, j)) << '\n';
}

}  // namespace ccd
