#include "ncdisco/graph_io.hpp"

#include "ncdisco/error.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace ncdisco {

namespace {

struct Row {
    std::size_t line = 0;
    std::vector<std::string> fields;
};

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

// Non-blank, non-comment lines split on commas.
std::vector<Row> read_rows(std::istream& in) {
    std::vector<Row> rows;
    std::string line;
    for (std::size_t n = 1; std::getline(in, line); ++n) {
        const auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        Row r{n, {}};
        std::stringstream ss(t);
        std::string cell;
        while (std::getline(ss, cell, ',')) r.fields.push_back(trim(cell));
        if (t.back() == ',') r.fields.emplace_back();
        rows.push_back(std::move(r));
    }
    return rows;
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
    throw InputError(source + ":" + std::to_string(line) + ": " + what);
}

enum class EdgeType { directed, undirected };

EdgeType parse_edge_type(const std::string& token, const std::string& source, std::size_t line) {
    const auto t = lower(token);
    if (t == "directed" || t == "->" || t == "-->") return EdgeType::directed;
    if (t == "undirected" || t == "--" || t == "---") return EdgeType::undirected;
    fail(source, line, "unknown edge type '" + token + "' (expected directed or undirected)");
}

struct PendingEdge {
    Node from;
    Node to;
    EdgeType type;
    std::size_t line;
};

void add_edge(Cpdag& g, const PendingEdge& e, const std::string& source) {
    if (e.from == e.to) fail(source, e.line, "self-loop on '" + g.label(e.from) + "'");
    if (g.adjacent(e.from, e.to))
        fail(source, e.line, "duplicate edge between '" + g.label(e.from) + "' and '" + g.label(e.to) + "'");
    if (e.type == EdgeType::directed) g.add_directed(e.from, e.to);
    else g.add_undirected(e.from, e.to);
}

MixedGraph parse_edge_list(const std::vector<Row>& rows, const std::string& source) {
    std::vector<std::string> labels;
    std::map<std::string, Node> index;
    auto node = [&](const std::string& name, std::size_t line) {
        if (name.empty()) fail(source, line, "empty node label");
        const auto [it, fresh] = index.emplace(name, static_cast<Node>(labels.size()));
        if (fresh) labels.push_back(name);
        return it->second;
    };

    std::vector<PendingEdge> edges;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto& r = rows[k];
        if (k == 0 && r.fields.size() == 3 && lower(r.fields[0]) == "from" && lower(r.fields[1]) == "to" &&
            lower(r.fields[2]) == "type")
            continue;
        if (r.fields.size() == 1) {
            node(r.fields[0], r.line);
        } else if (r.fields.size() == 3) {
            const Node a = node(r.fields[0], r.line);
            const Node b = node(r.fields[1], r.line);
            edges.push_back({a, b, parse_edge_type(r.fields[2], source, r.line), r.line});
        } else {
            fail(source, r.line, "malformed row: expected from,to,type or a single node label, got " +
                                     std::to_string(r.fields.size()) + " fields");
        }
    }
    Cpdag g(std::move(labels));
    for (const auto& e : edges) add_edge(g, e, source);
    return g;
}

MixedGraph parse_matrix(const std::vector<Row>& rows, const std::string& source) {
    if (rows.empty()) throw InputError(source + ": empty matrix file");
    const auto& header = rows.front().fields;
    std::vector<std::string> labels(header.begin() + 1, header.end());
    const std::size_t d = labels.size();
    if (d == 0) fail(source, rows.front().line, "matrix header has no labels");
    if (std::set<std::string>(labels.begin(), labels.end()).size() != d)
        fail(source, rows.front().line, "duplicate label in matrix header");
    if (rows.size() != d + 1)
        throw InputError(source + ": matrix has " + std::to_string(rows.size() - 1) + " rows for " +
                         std::to_string(d) + " columns");

    std::vector<std::vector<bool>> cell(d, std::vector<bool>(d, false));
    for (std::size_t i = 0; i < d; ++i) {
        const auto& r = rows[i + 1];
        if (r.fields.size() != d + 1)
            fail(source, r.line, "malformed row: expected " + std::to_string(d + 1) + " fields");
        if (r.fields[0] != labels[i])
            fail(source, r.line, "row label '" + r.fields[0] + "' does not match column '" + labels[i] + "'");
        for (std::size_t j = 0; j < d; ++j) {
            const auto& v = r.fields[j + 1];
            if (v != "0" && v != "1") fail(source, r.line, "matrix entry '" + v + "' is not 0 or 1");
            cell[i][j] = v == "1";
        }
    }

    Cpdag g(std::move(labels));
    for (std::size_t i = 0; i < d; ++i) {
        if (cell[i][i]) fail(source, rows[i + 1].line, "self-loop on '" + g.label(static_cast<Node>(i)) + "'");
        for (std::size_t j = i + 1; j < d; ++j) {
            const auto a = static_cast<Node>(i);
            const auto b = static_cast<Node>(j);
            if (cell[i][j] && cell[j][i]) g.add_undirected(a, b);
            else if (cell[i][j]) g.add_directed(a, b);
            else if (cell[j][i]) g.add_directed(b, a);
        }
    }
    return g;
}

}  // namespace

std::string_view to_string(GraphFormat f) {
    switch (f) {
        case GraphFormat::edge_list: return "edge-list";
        case GraphFormat::matrix: return "matrix";
        case GraphFormat::detect: return "auto";
    }
    return "unknown";
}

GraphFormat parse_graph_format(std::string_view name) {
    if (name == "edge-list") return GraphFormat::edge_list;
    if (name == "matrix") return GraphFormat::matrix;
    if (name == "auto") return GraphFormat::detect;
    throw InputError("unknown graph format '" + std::string(name) + "' (expected edge-list, matrix or auto)");
}

MixedGraph parse_graph(std::istream& in, GraphFormat format, GraphKind kind, const std::string& source) {
    const auto rows = read_rows(in);
    if (format == GraphFormat::detect)
        format = !rows.empty() && rows.front().fields.size() > 1 && rows.front().fields[0].empty()
                     ? GraphFormat::matrix
                     : GraphFormat::edge_list;
    MixedGraph g = format == GraphFormat::matrix ? parse_matrix(rows, source) : parse_edge_list(rows, source);
    if (kind == GraphKind::dag) {
        if (!g.fully_directed()) throw InputError(source + ": declared dag contains undirected edges");
        if (has_directed_cycle(g)) throw InputError(source + ": declared dag contains a directed cycle");
    }
    return g;
}

MixedGraph read_graph(const std::filesystem::path& path, GraphFormat format, GraphKind kind) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open graph file '" + path.string() + "'");
    return parse_graph(in, format, kind, path.string());
}

void write_graph(std::ostream& out, const MixedGraph& g, GraphFormat format) {
    const int d = g.size();
    if (format == GraphFormat::matrix) {
        for (Node j = 0; j < d; ++j) out << ',' << g.label(j);
        out << '\n';
        for (Node i = 0; i < d; ++i) {
            out << g.label(i);
            for (Node j = 0; j < d; ++j) {
                const bool on = g.has_directed(i, j) || g.has_undirected(i, j);
                out << ',' << (on ? 1 : 0);
            }
            out << '\n';
        }
        return;
    }
    out << "from,to,type\n";
    for (Node i = 0; i < d; ++i) out << g.label(i) << '\n';
    for (Node i = 0; i < d; ++i)
        for (Node j = 0; j < d; ++j) {
            if (g.has_directed(i, j)) out << g.label(i) << ',' << g.label(j) << ",directed\n";
            else if (i < j && g.has_undirected(i, j)) out << g.label(i) << ',' << g.label(j) << ",undirected\n";
        }
}

MixedGraph align_to(const MixedGraph& g, const std::vector<std::string>& labels) {
    std::map<std::string, Node> pos;
    for (Node i = 0; i < g.size(); ++i) pos.emplace(g.label(i), i);
    std::vector<std::string> missing;
    std::vector<std::string> extra;
    for (const auto& l : labels)
        if (!pos.count(l)) missing.push_back(l);
    const std::set<std::string> wanted(labels.begin(), labels.end());
    for (const auto& l : g.labels())
        if (!wanted.count(l)) extra.push_back(l);
    if (!missing.empty() || !extra.empty() || wanted.size() != labels.size()) {
        std::string msg = "node sets differ;";
        auto list = [&msg](const char* what, const std::vector<std::string>& v) {
            if (v.empty()) return;
            msg += std::string(" ") + what + ":";
            for (const auto& l : v) msg += " " + l;
            msg += ";";
        };
        list("only in reference", missing);
        list("only in other graph", extra);
        if (wanted.size() != labels.size()) msg += " reference has duplicate labels;";
        msg.pop_back();
        throw InputError(msg);
    }

    Cpdag out(labels);
    for (Node i = 0; i < out.size(); ++i)
        for (Node j = i + 1; j < out.size(); ++j) {
            const Node a = pos.at(labels[static_cast<std::size_t>(i)]);
            const Node b = pos.at(labels[static_cast<std::size_t>(j)]);
            if (g.has_directed(a, b)) out.add_directed(i, j);
            else if (g.has_directed(b, a)) out.add_directed(j, i);
            else if (g.has_undirected(a, b)) out.add_undirected(i, j);
        }
    return out;
}

}  // namespace ncdisco
