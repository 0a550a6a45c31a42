#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ncdisco {

// Nodes are positional (0..d-1); labels only decorate I/O.
using Node = int;

struct Edge {
    Node from = 0;
    Node to = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Unordered node pair stored with a < b.
struct NodePair {
    Node a = 0;
    Node b = 0;

    static NodePair of(Node x, Node y) { return x < y ? NodePair{x, y} : NodePair{y, x}; }

    friend auto operator<=>(const NodePair&, const NodePair&) = default;
};

/// Collider a -> b <- c with a and c non-adjacent, stored with a < c.
struct VStructure {
    Node a = 0;
    Node c = 0;
    Node b = 0;

    friend auto operator<=>(const VStructure&, const VStructure&) = default;
};

enum class GraphKind { dag, cpdag };

std::string_view to_string(GraphKind k);
/// Accepts "dag" or "cpdag"; throws InputError otherwise.
GraphKind parse_graph_kind(std::string_view name);

/// How an unordered pair {i, j} is connected, read from i's side.
enum class PairType : std::uint8_t { none, forward, backward, undirected };

/// Partially directed graph over d labelled nodes. At most one edge per pair;
/// each edge is either directed or undirected. Base class for Dag and Cpdag.
class MixedGraph {
public:
    MixedGraph() = default;
    explicit MixedGraph(int d);
    explicit MixedGraph(std::vector<std::string> labels);

    int size() const noexcept { return d_; }
    std::size_t max_edges() const noexcept {
        return static_cast<std::size_t>(d_) * static_cast<std::size_t>(d_ > 0 ? d_ - 1 : 0) / 2;
    }

    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& label(Node i) const { return labels_.at(static_cast<std::size_t>(i)); }
    void set_labels(std::vector<std::string> labels);

    bool adjacent(Node i, Node j) const { return mark(i, j) || mark(j, i); }
    /// True for a directed edge i -> j.
    bool has_directed(Node i, Node j) const { return mark(i, j) && !mark(j, i); }
    bool has_undirected(Node i, Node j) const { return mark(i, j) && mark(j, i); }
    PairType pair_type(Node i, Node j) const;

    std::size_t edge_count() const noexcept { return edges_; }
    bool fully_directed() const;

    std::vector<Edge> directed_edges() const;
    std::vector<NodePair> undirected_edges() const;

    std::vector<Node> parents(Node i) const;
    std::vector<Node> children(Node i) const;
    /// Nodes joined to i by an undirected edge.
    std::vector<Node> neighbors(Node i) const;
    std::vector<Node> adjacents(Node i) const;

    void check_node(Node i) const;

    friend bool operator==(const MixedGraph& x, const MixedGraph& y) {
        return x.d_ == y.d_ && x.marks_ == y.marks_;
    }

protected:
    bool mark(Node i, Node j) const {
        return marks_[static_cast<std::size_t>(i) * static_cast<std::size_t>(d_) +
                      static_cast<std::size_t>(j)] != 0;
    }
    void set_mark(Node i, Node j, bool on) {
        marks_[static_cast<std::size_t>(i) * static_cast<std::size_t>(d_) +
               static_cast<std::size_t>(j)] = on ? 1 : 0;
    }

    void put_directed(Node i, Node j);
    void put_undirected(Node i, Node j);
    void drop_edge(Node i, Node j);

private:
    int d_ = 0;
    std::vector<std::string> labels_;
    std::vector<std::uint8_t> marks_;
    std::size_t edges_ = 0;
};

/// Directed acyclic graph. Every constructor validates acyclicity.
class Dag : public MixedGraph {
public:
    Dag() = default;
    explicit Dag(int d) : MixedGraph(d) {}
    Dag(int d, std::span<const Edge> edges);
    Dag(std::vector<std::string> labels, std::span<const Edge> edges);

    /// Accepts a fully directed acyclic MixedGraph; throws InputError otherwise.
    static Dag from_graph(const MixedGraph& g);

    std::vector<Node> topological_order() const;

private:
    void add_all(std::span<const Edge> edges);
};

/// Partially directed graph intended as a Markov equivalence class
/// representative. Ingested or estimated graphs may be improper.
class Cpdag : public MixedGraph {
public:
    Cpdag() = default;
    explicit Cpdag(int d) : MixedGraph(d) {}
    explicit Cpdag(std::vector<std::string> labels) : MixedGraph(std::move(labels)) {}
    explicit Cpdag(const MixedGraph& g) : MixedGraph(g) {}

    void add_directed(Node i, Node j);
    void add_undirected(Node i, Node j);
    void remove_edge(Node i, Node j);
    /// Turn an existing undirected edge into i -> j.
    void orient(Node i, Node j);
};

/// dag when fully directed and acyclic, cpdag otherwise.
GraphKind kind_of(const MixedGraph& g);

bool is_acyclic(std::span<const Edge> edges, int d);
bool has_directed_cycle(const MixedGraph& g);

std::vector<NodePair> skeleton(const MixedGraph& g);

/// Colliders formed by directed edges only.
std::vector<VStructure> v_structures(const MixedGraph& g);

std::vector<bool> descendants(const Dag& g, Node i);
std::vector<bool> ancestors_of(const Dag& g, std::span<const Node> nodes);

bool d_separated(const Dag& g, Node i, Node j, std::span<const Node> given);

/// Closes g under the four Meek orientation rules, leaving the undirected
/// edges listed in `frozen` alone. Returns true if anything changed.
bool apply_meek_rules(Cpdag& g, std::span<const NodePair> frozen = {});

Cpdag dag_to_cpdag(const Dag& g);

inline constexpr std::size_t default_extension_cap = 10000;

/// All DAGs consistent with p: same skeleton, p's directed edges kept,
/// acyclic, no v-structure absent from p. Throws ClassTooLarge past cap.
std::vector<Dag> enumerate_extensions(const Cpdag& p, std::size_t cap = default_extension_cap);

/// One consistent extension of p, if any.
std::optional<Dag> find_extension(const Cpdag& p);

std::vector<std::string> default_labels(int d);

}  // namespace ncdisco
