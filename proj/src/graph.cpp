#include "leafpower/graph.hpp"

#include <algorithm>
#include <queue>

#include "leafpower/errors.hpp"

namespace leafpower {

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool set_contains(const VertexSet& s, int v) {
    return std::binary_search(s.begin(), s.end(), v);
}

bool set_is_subset(const VertexSet& a, const VertexSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

void Graph::check_vertex(int v) const {
    if (v < 0 || v >= vertex_count())
        throw input_error("vertex " + std::to_string(v) + " out of range");
}

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    Graph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

void Graph::add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw input_error("self-loop at vertex " + std::to_string(u));
    if (has_edge(u, v)) return;
    adj_[u].insert(std::lower_bound(adj_[u].begin(), adj_[u].end(), v), v);
    adj_[v].insert(std::lower_bound(adj_[v].begin(), adj_[v].end(), u), u);
}

bool Graph::has_edge(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

const std::vector<int>& Graph::neighbors(int v) const {
    check_vertex(v);
    return adj_[v];
}

int Graph::edge_count() const {
    size_t total = 0;
    for (const auto& a : adj_) total += a.size();
    return static_cast<int>(total / 2);
}

int Graph::max_degree() const {
    int d = 0;
    for (const auto& a : adj_) d = std::max(d, static_cast<int>(a.size()));
    return d;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < vertex_count(); ++u)
        for (int v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

VertexSet neighbors_open(const Graph& g, const VertexSet& x) {
    std::vector<char> in_x(g.vertex_count(), 0), seen(g.vertex_count(), 0);
    for (int v : x) in_x[v] = 1;
    VertexSet out;
    for (int v : x)
        for (int w : g.neighbors(v))
            if (!in_x[w] && !seen[w]) {
                seen[w] = 1;
                out.push_back(w);
            }
    std::sort(out.begin(), out.end());
    return out;
}

VertexSet neighbors_closed(const Graph& g, const VertexSet& x) {
    return set_union(neighbors_open(g, x), x);
}

std::vector<VertexSet> connected_components(const Graph& g) {
    std::vector<VertexSet> comps;
    std::vector<char> seen(g.vertex_count(), 0);
    for (int s = 0; s < g.vertex_count(); ++s) {
        if (seen[s]) continue;
        VertexSet comp;
        std::queue<int> q;
        q.push(s);
        seen[s] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            comp.push_back(v);
            for (int w : g.neighbors(v))
                if (!seen[w]) {
                    seen[w] = 1;
                    q.push(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

bool is_connected(const Graph& g) {
    return g.vertex_count() <= 1 || connected_components(g).size() == 1;
}

// Maximum cardinality search; visiting order reversed is a candidate perfect
// elimination ordering, valid iff the graph is chordal. The verification is
// the standard one: for each vertex, its earliest-eliminated later neighbor
// must be adjacent to all its other later neighbors.
ChordalityResult is_chordal(const Graph& g) {
    int n = g.vertex_count();
    ChordalityResult res;
    if (n == 0) {
        res.chordal = true;
        return res;
    }
    std::vector<int> weight(n, 0), order;
    std::vector<char> done(n, 0);
    order.reserve(n);
    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int v = 0; v < n; ++v)
            if (!done[v] && (best == -1 || weight[v] > weight[best])) best = v;
        done[best] = 1;
        order.push_back(best);
        for (int w : g.neighbors(best))
            if (!done[w]) ++weight[w];
    }
    std::vector<int> peo(order.rbegin(), order.rend());
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[peo[i]] = i;
    for (int i = 0; i < n; ++i) {
        int v = peo[i];
        int parent = -1;
        std::vector<int> later;
        for (int w : g.neighbors(v))
            if (pos[w] > i) {
                later.push_back(w);
                if (parent == -1 || pos[w] < pos[parent]) parent = w;
            }
        for (int w : later)
            if (w != parent && !g.has_edge(parent, w)) return res;
    }
    res.chordal = true;
    res.peo = std::move(peo);
    return res;
}

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& x) {
    InducedSubgraph sub;
    sub.to_host = x;
    sub.to_sub.assign(g.vertex_count(), -1);
    for (size_t i = 0; i < x.size(); ++i) sub.to_sub[x[i]] = static_cast<int>(i);
    sub.graph = Graph(static_cast<int>(x.size()));
    for (size_t i = 0; i < x.size(); ++i)
        for (int w : g.neighbors(x[i]))
            if (sub.to_sub[w] > static_cast<int>(i))
                sub.graph.add_edge(static_cast<int>(i), sub.to_sub[w]);
    return sub;
}

bool components_are_cliques(const Graph& g) {
    for (const auto& comp : connected_components(g))
        for (size_t i = 0; i < comp.size(); ++i)
            for (size_t j = i + 1; j < comp.size(); ++j)
                if (!g.has_edge(comp[i], comp[j])) return false;
    return true;
}

}  // namespace leafpower
