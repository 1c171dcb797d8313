#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace leafpower {

// Sorted set of vertex ids. All VertexSet values in this library are kept
// sorted and duplicate-free; the set_* helpers below rely on that.
using VertexSet = std::vector<int>;

VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
bool set_contains(const VertexSet& s, int v);
bool set_is_subset(const VertexSet& a, const VertexSet& b);

// Simple undirected graph on vertices 0..n-1, no self-loops, no multi-edges.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : adj_(n) {}
    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

    int vertex_count() const { return static_cast<int>(adj_.size()); }
    int edge_count() const;
    bool has_edge(int u, int v) const;
    void add_edge(int u, int v);
    const std::vector<int>& neighbors(int v) const;  // sorted
    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
    int max_degree() const;
    std::vector<std::pair<int, int>> edges() const;  // u < v, lexicographic

private:
    std::vector<std::vector<int>> adj_;
    void check_vertex(int v) const;
};

// N(X): vertices outside X adjacent to some member of X.
VertexSet neighbors_open(const Graph& g, const VertexSet& x);
// N[X] = N(X) union X.
VertexSet neighbors_closed(const Graph& g, const VertexSet& x);

// Partition into connected components; each component sorted, components
// ordered by smallest member.
std::vector<VertexSet> connected_components(const Graph& g);

bool is_connected(const Graph& g);

// Chordality via maximum cardinality search. On success, `peo` is a perfect
// elimination ordering (peo[0] eliminated first: its later neighbors form a
// clique, and so on).
struct ChordalityResult {
    bool chordal = false;
    std::vector<int> peo;
};
ChordalityResult is_chordal(const Graph& g);

// G[X] with vertices relabeled to 0..|X|-1 preserving order.
// to_host[i] is the original id of subgraph vertex i.
struct InducedSubgraph {
    Graph graph;
    std::vector<int> to_host;
    std::vector<int> to_sub;  // indexed by host id; -1 when absent
};
InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& x);

// True when every connected component induces a complete graph.
bool components_are_cliques(const Graph& g);

}  // namespace leafpower
