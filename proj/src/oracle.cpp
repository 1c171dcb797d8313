#include "leafpower/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>

#include "leafpower/errors.hpp"

namespace leafpower {

namespace {

void enumerate_rec(WeightedTopology cur, int next_leaf, int n,
                   const std::function<void(const WeightedTopology&)>& emit) {
    if (next_leaf == n) {
        emit(cur);
        return;
    }
    // attach to an existing internal node
    for (int u = cur.leaf_count; u < cur.node_count; ++u) {
        WeightedTopology t = cur;
        t.edges.push_back({next_leaf, u, 1});
        enumerate_rec(std::move(t), next_leaf + 1, n, emit);
    }
    // subdivide an edge with a fresh internal node and attach there
    for (size_t e = 0; e < cur.edges.size(); ++e) {
        WeightedTopology t = cur;
        int x = t.node_count++;
        int a = t.edges[e].a, b = t.edges[e].b;
        t.edges[e] = {a, x, 1};
        t.edges.push_back({x, b, 1});
        t.edges.push_back({next_leaf, x, 1});
        enumerate_rec(std::move(t), next_leaf + 1, n, emit);
    }
}

}  // namespace

void enumerate_topologies(int n, const std::function<void(const WeightedTopology&)>& emit) {
    if (n <= 0) throw input_error("topology needs at least one leaf");
    WeightedTopology base;
    base.leaf_count = n;
    if (n == 1) {
        base.node_count = 1;
        emit(base);
        return;
    }
    base.node_count = n;
    base.edges.push_back({0, 1, 1});
    enumerate_rec(std::move(base), 2, n, emit);
}

RootedTree topology_to_rooted(const WeightedTopology& t, int z) {
    // adjacency after expanding weights into unit chains
    struct Arc {
        int to;
        int w;
    };
    std::vector<std::vector<Arc>> adj(t.node_count);
    for (const auto& e : t.edges) {
        adj[e.a].push_back({e.b, e.w});
        adj[e.b].push_back({e.a, e.w});
    }
    if (adj[z].size() != 1) throw input_error("z is not a leaf of the topology");
    RootedTree out;
    if (t.node_count == 1) {
        out.add_node(-1, z);
        return out;
    }
    int first = adj[z][0].to;
    int wz = adj[z][0].w;
    bool first_is_leaf = first < t.leaf_count;
    if (first_is_leaf && wz == 1)
        throw input_error("no internal node adjacent to z at unit distance");

    // the rooted tree's root sits one unit step from z along its edge
    std::vector<int> node_of(t.node_count, -1);
    int root = out.add_node(-1);
    out.add_node(root, z);
    node_of[z] = -1;  // z handled
    // walk from the root position toward `first`: wz-1 more unit edges
    int attach = root;
    for (int i = 1; i < wz - 1; ++i) attach = out.add_node(attach);
    if (wz == 1)
        node_of[first] = root;
    else
        node_of[first] = out.add_node(attach, first < t.leaf_count ? first : -1);

    // BFS over the remaining topology from `first`
    std::vector<char> seen(t.node_count, 0);
    seen[z] = 1;
    seen[first] = 1;
    std::queue<int> q;
    q.push(first);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (const auto& arc : adj[u]) {
            if (seen[arc.to]) continue;
            seen[arc.to] = 1;
            int at = node_of[u];
            for (int i = 1; i < arc.w; ++i) at = out.add_node(at);
            node_of[arc.to] = out.add_node(at, arc.to < t.leaf_count ? arc.to : -1);
            q.push(arc.to);
        }
    }
    return out;
}

namespace {

// Backtracking search over edge weights with per-pair incremental pruning.
// Pair constraints: adjacent in g -> path sum <= k; non-adjacent -> sum > k.
struct WeightSearch {
    const Graph& g;
    int k;
    WeightedTopology& topo;
    std::vector<uint64_t> pair_mask;      // per pair, bitmask of edges on its path
    std::vector<std::pair<int, int>> pairs;
    std::vector<int> pair_sum;
    std::vector<int> pair_left;
    std::vector<std::vector<int>> edge_pairs;  // per edge, pair indices
    std::vector<int> order;                    // edge assignment order
    std::function<bool(const WeightedTopology&)> on_solution;  // return true to stop

    WeightSearch(const Graph& gr, int kk, WeightedTopology& t) : g(gr), k(kk), topo(t) {}

    bool prepare() {
        int m = static_cast<int>(topo.edges.size());
        if (m > 62) return false;
        // unit adjacency for path computation
        std::vector<std::vector<std::pair<int, int>>> adj(topo.node_count);
        for (int e = 0; e < m; ++e) {
            adj[topo.edges[e].a].push_back({topo.edges[e].b, e});
            adj[topo.edges[e].b].push_back({topo.edges[e].a, e});
        }
        int n = topo.leaf_count;
        for (int u = 0; u < n; ++u) {
            // BFS recording the edge used to reach each node
            std::vector<int> via(topo.node_count, -1), par(topo.node_count, -1);
            std::queue<int> q;
            q.push(u);
            std::vector<char> seen(topo.node_count, 0);
            seen[u] = 1;
            while (!q.empty()) {
                int x = q.front();
                q.pop();
                for (auto [y, e] : adj[x])
                    if (!seen[y]) {
                        seen[y] = 1;
                        via[y] = e;
                        par[y] = x;
                        q.push(y);
                    }
            }
            for (int v = u + 1; v < n; ++v) {
                uint64_t mask = 0;
                for (int x = v; x != u; x = par[x]) mask |= uint64_t(1) << via[x];
                pair_mask.push_back(mask);
                pairs.emplace_back(u, v);
            }
        }
        pair_sum.assign(pairs.size(), 0);
        pair_left.assign(pairs.size(), 0);
        edge_pairs.assign(m, {});
        for (size_t p = 0; p < pairs.size(); ++p)
            for (int e = 0; e < m; ++e)
                if (pair_mask[p] >> e & 1) {
                    ++pair_left[p];
                    edge_pairs[e].push_back(static_cast<int>(p));
                }
        // assign edges in BFS order from leaf 0 so paths complete early
        order.clear();
        std::vector<char> seen_e(m, 0), seen_n(topo.node_count, 0);
        std::queue<int> q;
        q.push(0);
        seen_n[0] = 1;
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (auto [y, e] : adj[x]) {
                if (!seen_e[e]) {
                    seen_e[e] = 1;
                    order.push_back(e);
                }
                if (!seen_n[y]) {
                    seen_n[y] = 1;
                    q.push(y);
                }
            }
        }
        return true;
    }

    bool run(size_t idx) {
        if (idx == order.size()) return on_solution(topo);
        int e = order[idx];
        for (int w = 1; w <= k + 1; ++w) {
            topo.edges[e].w = w;
            bool ok = true;
            for (int p : edge_pairs[e]) {
                pair_sum[p] += w;
                --pair_left[p];
            }
            for (int p : edge_pairs[e]) {
                bool edge_in_g = g.has_edge(pairs[p].first, pairs[p].second);
                if (pair_left[p] == 0) {
                    if (edge_in_g != (pair_sum[p] <= k)) ok = false;
                } else {
                    // remaining edges contribute at least 1 each
                    if (edge_in_g && pair_sum[p] + pair_left[p] > k) ok = false;
                    // ... and at most k+1 each
                    if (!edge_in_g && pair_sum[p] + pair_left[p] * (k + 1) <= k) ok = false;
                }
                if (!ok) break;
            }
            if (ok && run(idx + 1)) return true;
            for (int p : edge_pairs[e]) {
                pair_sum[p] -= w;
                ++pair_left[p];
            }
        }
        return false;
    }
};

bool search_all(const Graph& g, int k,
                const std::function<bool(const WeightedTopology&)>& on_solution) {
    bool stopped = false;
    enumerate_topologies(g.vertex_count(), [&](const WeightedTopology& shape) {
        if (stopped) return;
        WeightedTopology t = shape;
        WeightSearch s(g, k, t);
        if (!s.prepare()) throw resource_error("topology too large for the weight search");
        s.on_solution = on_solution;
        if (s.run(0)) stopped = true;
    });
    return stopped;
}

}  // namespace

OracleResult oracle_is_k_leaf_power(const Graph& g, int k, int limit) {
    if (k < 2) throw input_error("k must be at least 2");
    int n = g.vertex_count();
    if (n > limit) throw resource_error("oracle size limit exceeded");
    OracleResult res;
    if (n == 0) throw input_error("empty graph");
    if (n == 1) {
        RootedTree t;
        t.add_node(-1, 0);
        res.is_leaf_power = true;
        res.witness = std::move(t);
        return res;
    }
    if (n == 2) {
        RootedTree t;
        int root = t.add_node(-1);
        t.add_node(root, 0);
        int at = root;
        int chain = g.has_edge(0, 1) ? 1 : k;  // distance 2 <= k, or k+1 > k
        for (int i = 1; i < chain; ++i) at = t.add_node(at);
        t.add_node(at, 1);
        res.is_leaf_power = true;
        res.witness = std::move(t);
        return res;
    }
    search_all(g, k, [&](const WeightedTopology& t) {
        res.is_leaf_power = true;
        res.witness = topology_to_rooted(t, 0);
        return true;
    });
    return res;
}

std::vector<ValuedTree> oracle_enumerate_root_restrictions(const Graph& g, int z, int k,
                                                           int limit) {
    if (k < 2) throw input_error("k must be at least 2");
    int n = g.vertex_count();
    if (n > limit) throw resource_error("oracle size limit exceeded");
    if (!is_connected(g)) throw input_error("restriction enumeration needs a connected graph");
    if (z < 0 || z >= n) throw input_error("z out of range");
    std::map<std::string, ValuedTree> found;
    if (n == 1) {
        ValuedTree vt;
        vt.tree.add_node(-1, z);
        vt.sigma.assign(1, sigma_infinity);
        found[canonical_code(vt)] = std::move(vt);
    } else {
        VertexSet nz = neighbors_closed(g, {z});
        search_all(g, k, [&](const WeightedTopology& t) {
            // skip assignments where z hangs directly off the other leaf (n == 2,
            // weight 1): there is no internal parent to root at
            for (const auto& e : t.edges)
                if ((e.a == z || e.b == z) && e.w == 1 && e.a < t.leaf_count &&
                    e.b < t.leaf_count)
                    return false;
            RootedTree rooted = topology_to_rooted(t, z);
            ValuedRestriction vr = valued_restrict(rooted, nz);
            auto code = canonical_code(vr.vt);
            found.emplace(std::move(code), std::move(vr.vt));
            return false;  // keep searching
        });
    }
    std::vector<ValuedTree> out;
    out.reserve(found.size());
    for (auto& [code, vt] : found) out.push_back(std::move(vt));
    return out;
}

}  // namespace leafpower
