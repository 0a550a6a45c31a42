#pragma once

#include "ncdisco/graph.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ncdisco {

/// edge_list: optional "from,to,type" header, then one row per edge;
/// a row holding a single label declares an isolated node.
/// matrix: square 0/1 table whose header row starts with an empty cell.
enum class GraphFormat { edge_list, matrix, detect };

std::string_view to_string(GraphFormat f);
/// "edge-list", "matrix" or "auto".
GraphFormat parse_graph_format(std::string_view name);

/// Reads a graph and checks it against the declared kind: a dag must be
/// fully directed and acyclic. `source` names the input in error messages.
MixedGraph parse_graph(std::istream& in, GraphFormat format, GraphKind kind,
                       const std::string& source = "<input>");
MixedGraph read_graph(const std::filesystem::path& path, GraphFormat format, GraphKind kind);

/// Canonical form: header, node declarations in node order, then edges
/// sorted by (from, to) position. Undirected edges are written once, lower
/// position first.
void write_graph(std::ostream& out, const MixedGraph& g, GraphFormat format = GraphFormat::edge_list);

/// Reorders g's nodes to follow `labels`. Throws InputError listing the
/// labels present on one side only.
MixedGraph align_to(const MixedGraph& g, const std::vector<std::string>& labels);

}  // namespace ncdisco
