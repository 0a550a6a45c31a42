#include "ncdisco/graph.hpp"

#include "ncdisco/error.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <utility>

namespace ncdisco {

std::vector<std::string> default_labels(int d) {
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) out.push_back("X" + std::to_string(i + 1));
    return out;
}

namespace {
void check_unique(const std::vector<std::string>& labels) {
    std::set<std::string_view> seen;
    for (const auto& l : labels) {
        if (l.empty()) throw InputError("empty node label");
        if (!seen.insert(l).second) throw InputError("duplicate node label '" + l + "'");
    }
}
}  // namespace

std::string_view to_string(GraphKind k) { return k == GraphKind::dag ? "dag" : "cpdag"; }

GraphKind parse_graph_kind(std::string_view name) {
    if (name == "dag") return GraphKind::dag;
    if (name == "cpdag") return GraphKind::cpdag;
    throw InputError("unknown graph kind '" + std::string(name) + "' (expected dag or cpdag)");
}

GraphKind kind_of(const MixedGraph& g) {
    return g.fully_directed() && !has_directed_cycle(g) ? GraphKind::dag : GraphKind::cpdag;
}

MixedGraph::MixedGraph(int d) : MixedGraph(default_labels(d < 0 ? 0 : d)) {
    if (d < 0) throw InputError("node count must be non-negative");
}

MixedGraph::MixedGraph(std::vector<std::string> labels)
    : d_(static_cast<int>(labels.size())),
      labels_(std::move(labels)),
      marks_(labels_.size() * labels_.size(), 0) {
    check_unique(labels_);
}

void MixedGraph::set_labels(std::vector<std::string> labels) {
    if (static_cast<int>(labels.size()) != d_)
        throw InputError("label count " + std::to_string(labels.size()) +
                         " does not match node count " + std::to_string(d_));
    check_unique(labels);
    labels_ = std::move(labels);
}

void MixedGraph::check_node(Node i) const {
    if (i < 0 || i >= d_)
        throw InputError("node index " + std::to_string(i) + " out of range [0, " +
                         std::to_string(d_) + ")");
}

PairType MixedGraph::pair_type(Node i, Node j) const {
    const bool ij = mark(i, j);
    const bool ji = mark(j, i);
    if (ij && ji) return PairType::undirected;
    if (ij) return PairType::forward;
    if (ji) return PairType::backward;
    return PairType::none;
}

bool MixedGraph::fully_directed() const {
    for (Node i = 0; i < d_; ++i)
        for (Node j = i + 1; j < d_; ++j)
            if (has_undirected(i, j)) return false;
    return true;
}

std::vector<Edge> MixedGraph::directed_edges() const {
    std::vector<Edge> out;
    for (Node i = 0; i < d_; ++i)
        for (Node j = 0; j < d_; ++j)
            if (i != j && has_directed(i, j)) out.push_back({i, j});
    return out;
}

std::vector<NodePair> MixedGraph::undirected_edges() const {
    std::vector<NodePair> out;
    for (Node i = 0; i < d_; ++i)
        for (Node j = i + 1; j < d_; ++j)
            if (has_undirected(i, j)) out.push_back({i, j});
    return out;
}

std::vector<Node> MixedGraph::parents(Node i) const {
    std::vector<Node> out;
    for (Node j = 0; j < d_; ++j)
        if (j != i && has_directed(j, i)) out.push_back(j);
    return out;
}

std::vector<Node> MixedGraph::children(Node i) const {
    std::vector<Node> out;
    for (Node j = 0; j < d_; ++j)
        if (j != i && has_directed(i, j)) out.push_back(j);
    return out;
}

std::vector<Node> MixedGraph::neighbors(Node i) const {
    std::vector<Node> out;
    for (Node j = 0; j < d_; ++j)
        if (j != i && has_undirected(i, j)) out.push_back(j);
    return out;
}

std::vector<Node> MixedGraph::adjacents(Node i) const {
    std::vector<Node> out;
    for (Node j = 0; j < d_; ++j)
        if (j != i && adjacent(i, j)) out.push_back(j);
    return out;
}

void MixedGraph::put_directed(Node i, Node j) {
    check_node(i);
    check_node(j);
    if (i == j) throw InputError("self-loop on node " + labels_[static_cast<std::size_t>(i)]);
    if (adjacent(i, j))
        throw InputError("duplicate edge between " + labels_[static_cast<std::size_t>(i)] +
                         " and " + labels_[static_cast<std::size_t>(j)]);
    set_mark(i, j, true);
    ++edges_;
}

void MixedGraph::put_undirected(Node i, Node j) {
    put_directed(i, j);
    set_mark(j, i, true);
}

void MixedGraph::drop_edge(Node i, Node j) {
    check_node(i);
    check_node(j);
    if (!adjacent(i, j)) return;
    set_mark(i, j, false);
    set_mark(j, i, false);
    --edges_;
}

Dag::Dag(int d, std::span<const Edge> edges) : MixedGraph(d) { add_all(edges); }

Dag::Dag(std::vector<std::string> labels, std::span<const Edge> edges)
    : MixedGraph(std::move(labels)) {
    add_all(edges);
}

void Dag::add_all(std::span<const Edge> edges) {
    for (const auto& e : edges) put_directed(e.from, e.to);
    if (has_directed_cycle(*this)) throw InputError("edge set contains a directed cycle");
}

Dag Dag::from_graph(const MixedGraph& g) {
    if (!g.fully_directed()) throw InputError("graph has undirected edges; not a DAG");
    const auto edges = g.directed_edges();
    return Dag(g.labels(), edges);
}

std::vector<Node> Dag::topological_order() const {
    const int d = size();
    std::vector<int> indeg(static_cast<std::size_t>(d), 0);
    for (const auto& e : directed_edges()) ++indeg[static_cast<std::size_t>(e.to)];
    std::vector<Node> order;
    std::deque<Node> ready;
    for (Node i = 0; i < d; ++i)
        if (indeg[static_cast<std::size_t>(i)] == 0) ready.push_back(i);
    while (!ready.empty()) {
        const Node v = ready.front();
        ready.pop_front();
        order.push_back(v);
        for (Node c : children(v))
            if (--indeg[static_cast<std::size_t>(c)] == 0) ready.push_back(c);
    }
    return order;
}

void Cpdag::add_directed(Node i, Node j) { put_directed(i, j); }
void Cpdag::add_undirected(Node i, Node j) { put_undirected(i, j); }
void Cpdag::remove_edge(Node i, Node j) { drop_edge(i, j); }

void Cpdag::orient(Node i, Node j) {
    if (!has_undirected(i, j))
        throw InputError("orient: no undirected edge between " + label(i) + " and " + label(j));
    set_mark(j, i, false);
}

bool is_acyclic(std::span<const Edge> edges, int d) {
    std::vector<std::vector<Node>> out(static_cast<std::size_t>(d));
    std::vector<int> indeg(static_cast<std::size_t>(d), 0);
    for (const auto& e : edges) {
        if (e.from < 0 || e.from >= d || e.to < 0 || e.to >= d)
            throw InputError("edge endpoint out of range for d = " + std::to_string(d));
        out[static_cast<std::size_t>(e.from)].push_back(e.to);
        ++indeg[static_cast<std::size_t>(e.to)];
    }
    std::vector<Node> ready;
    for (Node i = 0; i < d; ++i)
        if (indeg[static_cast<std::size_t>(i)] == 0) ready.push_back(i);
    int seen = 0;
    while (!ready.empty()) {
        const Node v = ready.back();
        ready.pop_back();
        ++seen;
        for (Node c : out[static_cast<std::size_t>(v)])
            if (--indeg[static_cast<std::size_t>(c)] == 0) ready.push_back(c);
    }
    return seen == d;
}

bool has_directed_cycle(const MixedGraph& g) {
    const auto edges = g.directed_edges();
    return !is_acyclic(edges, g.size());
}

std::vector<NodePair> skeleton(const MixedGraph& g) {
    std::vector<NodePair> out;
    for (Node i = 0; i < g.size(); ++i)
        for (Node j = i + 1; j < g.size(); ++j)
            if (g.adjacent(i, j)) out.push_back({i, j});
    return out;
}

std::vector<VStructure> v_structures(const MixedGraph& g) {
    std::vector<VStructure> out;
    for (Node b = 0; b < g.size(); ++b) {
        const auto pa = g.parents(b);
        for (std::size_t x = 0; x < pa.size(); ++x)
            for (std::size_t y = x + 1; y < pa.size(); ++y)
                if (!g.adjacent(pa[x], pa[y])) out.push_back({pa[x], pa[y], b});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<bool> descendants(const Dag& g, Node i) {
    g.check_node(i);
    std::vector<bool> seen(static_cast<std::size_t>(g.size()), false);
    std::vector<Node> stack{i};
    seen[static_cast<std::size_t>(i)] = true;
    while (!stack.empty()) {
        const Node v = stack.back();
        stack.pop_back();
        for (Node c : g.children(v))
            if (!seen[static_cast<std::size_t>(c)]) {
                seen[static_cast<std::size_t>(c)] = true;
                stack.push_back(c);
            }
    }
    return seen;
}

std::vector<bool> ancestors_of(const Dag& g, std::span<const Node> nodes) {
    std::vector<bool> seen(static_cast<std::size_t>(g.size()), false);
    std::vector<Node> stack;
    for (Node v : nodes) {
        g.check_node(v);
        if (!seen[static_cast<std::size_t>(v)]) {
            seen[static_cast<std::size_t>(v)] = true;
            stack.push_back(v);
        }
    }
    while (!stack.empty()) {
        const Node v = stack.back();
        stack.pop_back();
        for (Node p : g.parents(v))
            if (!seen[static_cast<std::size_t>(p)]) {
                seen[static_cast<std::size_t>(p)] = true;
                stack.push_back(p);
            }
    }
    return seen;
}

// Reachability with direction states; a trail passes a collider only when
// the collider has a descendant in the conditioning set.
bool d_separated(const Dag& g, Node i, Node j, std::span<const Node> given) {
    g.check_node(i);
    g.check_node(j);
    if (i == j) throw InputError("d_separated: i and j must differ");
    const auto d = static_cast<std::size_t>(g.size());
    std::vector<bool> in_z(d, false);
    for (Node z : given) {
        g.check_node(z);
        if (z == i || z == j) throw InputError("d_separated: conditioning set contains an endpoint");
        in_z[static_cast<std::size_t>(z)] = true;
    }
    const auto anc = ancestors_of(g, given);

    enum Dir : std::size_t { up = 0, down = 1 };
    std::vector<bool> visited(2 * d, false);
    std::vector<std::pair<Node, Dir>> todo{{i, up}};
    while (!todo.empty()) {
        const auto [v, dir] = todo.back();
        todo.pop_back();
        const auto vi = static_cast<std::size_t>(v);
        if (visited[2 * vi + dir]) continue;
        visited[2 * vi + dir] = true;
        if (v == j) return false;
        if (dir == up && !in_z[vi]) {
            for (Node p : g.parents(v)) todo.emplace_back(p, up);
            for (Node c : g.children(v)) todo.emplace_back(c, down);
        } else if (dir == down) {
            if (!in_z[vi])
                for (Node c : g.children(v)) todo.emplace_back(c, down);
            if (anc[vi])
                for (Node p : g.parents(v)) todo.emplace_back(p, up);
        }
    }
    return true;
}

namespace {

// Rule 1: a -> x - y, a and y non-adjacent.
bool meek_r1(const Cpdag& g, Node x, Node y) {
    for (Node a : g.parents(x))
        if (a != y && !g.adjacent(a, y)) return true;
    return false;
}

// Rule 2: x -> a -> y.
bool meek_r2(const Cpdag& g, Node x, Node y) {
    for (Node a : g.children(x))
        if (g.has_directed(a, y)) return true;
    return false;
}

// Rule 3: x - a1 -> y, x - a2 -> y, a1 and a2 non-adjacent.
bool meek_r3(const Cpdag& g, Node x, Node y) {
    std::vector<Node> cand;
    for (Node a : g.neighbors(x))
        if (a != y && g.has_directed(a, y)) cand.push_back(a);
    for (std::size_t p = 0; p < cand.size(); ++p)
        for (std::size_t q = p + 1; q < cand.size(); ++q)
            if (!g.adjacent(cand[p], cand[q])) return true;
    return false;
}

// Rule 4: x - w -> z -> y, w and y non-adjacent, x adjacent to z.
bool meek_r4(const Cpdag& g, Node x, Node y) {
    for (Node w : g.neighbors(x)) {
        if (w == y || g.adjacent(w, y)) continue;
        for (Node z : g.children(w))
            if (z != x && g.has_directed(z, y) && g.adjacent(x, z)) return true;
    }
    return false;
}

}  // namespace

bool apply_meek_rules(Cpdag& g, std::span<const NodePair> frozen) {
    bool any = false;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& e : g.undirected_edges()) {
            if (std::find(frozen.begin(), frozen.end(), e) != frozen.end()) continue;
            for (const auto& [x, y] : {std::pair{e.a, e.b}, std::pair{e.b, e.a}}) {
                if (!g.has_undirected(x, y)) break;
                if (meek_r1(g, x, y) || meek_r2(g, x, y) || meek_r3(g, x, y) ||
                    meek_r4(g, x, y)) {
                    g.orient(x, y);
                    changed = any = true;
                }
            }
        }
    }
    return any;
}

Cpdag dag_to_cpdag(const Dag& g) {
    Cpdag out(g.labels());
    for (const auto& p : skeleton(g)) out.add_undirected(p.a, p.b);
    for (const auto& v : v_structures(g)) {
        if (out.has_undirected(v.a, v.b)) out.orient(v.a, v.b);
        if (out.has_undirected(v.c, v.b)) out.orient(v.c, v.b);
    }
    apply_meek_rules(out);
    return out;
}

namespace {

struct ExtensionSearch {
    std::set<VStructure> allowed;
    std::size_t cap;
    bool first_only = false;
    std::vector<Dag> found;

    bool consistent(const Cpdag& g) const {
        if (has_directed_cycle(g)) return false;
        for (const auto& v : v_structures(g))
            if (!allowed.contains(v)) return false;
        return true;
    }

    void run(Cpdag g) {
        if (first_only && !found.empty()) return;
        apply_meek_rules(g);
        if (!consistent(g)) return;
        const auto und = g.undirected_edges();
        if (und.empty()) {
            if (found.size() >= cap) throw ClassTooLarge(cap);
            found.push_back(Dag::from_graph(g));
            return;
        }
        const auto e = und.front();
        Cpdag left = g;
        left.orient(e.a, e.b);
        run(std::move(left));
        g.orient(e.b, e.a);
        run(std::move(g));
    }
};

}  // namespace

std::vector<Dag> enumerate_extensions(const Cpdag& p, std::size_t cap) {
    if (cap == 0) throw InputError("extension cap must be positive");
    const auto vs = v_structures(p);
    ExtensionSearch search{std::set<VStructure>(vs.begin(), vs.end()), cap, false, {}};
    search.run(p);
    return std::move(search.found);
}

std::optional<Dag> find_extension(const Cpdag& p) {
    const auto vs = v_structures(p);
    ExtensionSearch search{std::set<VStructure>(vs.begin(), vs.end()), 1, true, {}};
    search.run(p);
    if (search.found.empty()) return std::nullopt;
    return std::move(search.found.front());
}

}  // namespace ncdisco
