#include "leafpower/decomposition.hpp"

#include <algorithm>
#include <queue>

#include "leafpower/errors.hpp"

namespace leafpower {

namespace {

// Maximal cliques of a chordal graph from a perfect elimination ordering:
// C_v = {v} + later neighbors of v; drop sets contained in another.
std::vector<VertexSet> maximal_cliques(const Graph& g, const std::vector<int>& peo) {
    const int n = g.vertex_count();
    std::vector<int> pos(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) pos[static_cast<size_t>(peo[static_cast<size_t>(i)])] = i;

    std::vector<VertexSet> cand;
    cand.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        int v = peo[static_cast<size_t>(i)];
        VertexSet c{v};
        for (int u : g.neighbors(v))
            if (pos[static_cast<size_t>(u)] > i) c.push_back(u);
        std::sort(c.begin(), c.end());
        cand.push_back(std::move(c));
    }
    std::vector<VertexSet> out;
    for (size_t i = 0; i < cand.size(); ++i) {
        bool maximal = true;
        for (size_t j = 0; j < cand.size() && maximal; ++j)
            if (j != i && cand[j].size() >= cand[i].size() && set_is_subset(cand[i], cand[j]) &&
                !(cand[i] == cand[j] && i < j))
                maximal = false;
        if (maximal) out.push_back(cand[i]);
    }
    return out;
}

struct Builder {
    const Graph& g;
    NiceDecomposition d;

    int add(BagKind kind, VertexSet bag, int special, int left, int right) {
        DecompNode nd;
        nd.kind = kind;
        nd.bag = std::move(bag);
        nd.special = special;
        nd.left = left;
        nd.right = right;
        d.nodes.push_back(std::move(nd));
        return static_cast<int>(d.nodes.size()) - 1;
    }

    // Leaf node + introductions building up the full clique `target`.
    int build_from_scratch(const VertexSet& target) {
        VertexSet cur{target.front()};
        int node = add(BagKind::Leaf, cur, target.front(), -1, -1);
        for (size_t i = 1; i < target.size(); ++i) {
            cur = set_union(cur, VertexSet{target[i]});
            node = add(BagKind::Introduce, cur, target[i], node, -1);
        }
        return node;
    }

    // Forget bag \ keep one at a time, then introduce target \ keep, ending at
    // bag == target.  `from` must currently hold bag `bag`.
    int morph(int from, VertexSet bag, const VertexSet& target) {
        for (int v : set_difference(bag, target)) {
            bag = set_difference(bag, VertexSet{v});
            from = add(BagKind::Forget, bag, v, from, -1);
        }
        for (int v : set_difference(target, bag)) {
            bag = set_union(bag, VertexSet{v});
            from = add(BagKind::Introduce, bag, v, from, -1);
        }
        return from;
    }

    // Recursive niceification over the rooted clique tree.
    int build_clique(int c, const std::vector<VertexSet>& cliques,
                     const std::vector<std::vector<int>>& kids) {
        const VertexSet& bag = cliques[static_cast<size_t>(c)];
        std::vector<int> tops;
        for (int child : kids[static_cast<size_t>(c)]) {
            int sub = build_clique(child, cliques, kids);
            tops.push_back(morph(sub, cliques[static_cast<size_t>(child)], bag));
        }
        if (tops.empty()) return build_from_scratch(bag);
        int node = tops[0];
        for (size_t i = 1; i < tops.size(); ++i)
            node = add(BagKind::Join, bag, -1, node, tops[i]);
        return node;
    }
};

}  // namespace

NiceDecomposition build_nice_decomposition(const Graph& g, int z) {
    const int n = g.vertex_count();
    if (z < 0 || z >= n) throw input_error("decomposition root vertex out of range");
    if (!is_connected(g)) throw input_error("decomposition requires a connected graph");
    auto chord = is_chordal(g);
    if (!chord.chordal) throw input_error("decomposition requires a chordal graph");

    auto cliques = maximal_cliques(g, chord.peo);
    const int m = static_cast<int>(cliques.size());

    // Root clique: first maximal clique containing z.
    int root_clique = -1;
    for (int i = 0; i < m && root_clique < 0; ++i)
        if (set_contains(cliques[static_cast<size_t>(i)], z)) root_clique = i;

    // Maximum-weight spanning tree of the clique graph (weight = overlap size)
    // is a junction tree; Prim from the root clique.
    std::vector<int> parent(static_cast<size_t>(m), -1);
    std::vector<bool> in_tree(static_cast<size_t>(m), false);
    std::vector<int> best(static_cast<size_t>(m), -1), best_from(static_cast<size_t>(m), -1);
    in_tree[static_cast<size_t>(root_clique)] = true;
    for (int j = 0; j < m; ++j)
        if (j != root_clique) {
            best[static_cast<size_t>(j)] = static_cast<int>(
                set_intersection(cliques[static_cast<size_t>(root_clique)],
                                 cliques[static_cast<size_t>(j)])
                    .size());
            best_from[static_cast<size_t>(j)] = root_clique;
        }
    for (int step = 1; step < m; ++step) {
        int pick = -1;
        for (int j = 0; j < m; ++j)
            if (!in_tree[static_cast<size_t>(j)] &&
                (pick < 0 || best[static_cast<size_t>(j)] > best[static_cast<size_t>(pick)]))
                pick = j;
        in_tree[static_cast<size_t>(pick)] = true;
        parent[static_cast<size_t>(pick)] = best_from[static_cast<size_t>(pick)];
        for (int j = 0; j < m; ++j)
            if (!in_tree[static_cast<size_t>(j)]) {
                int w = static_cast<int>(set_intersection(cliques[static_cast<size_t>(pick)],
                                                          cliques[static_cast<size_t>(j)])
                                             .size());
                if (w > best[static_cast<size_t>(j)]) {
                    best[static_cast<size_t>(j)] = w;
                    best_from[static_cast<size_t>(j)] = pick;
                }
            }
    }
    std::vector<std::vector<int>> kids(static_cast<size_t>(m));
    for (int j = 0; j < m; ++j)
        if (parent[static_cast<size_t>(j)] >= 0)
            kids[static_cast<size_t>(parent[static_cast<size_t>(j)])].push_back(j);

    Builder b{g, {}};
    int top = b.build_clique(root_clique, cliques, kids);
    // Forget everything above the root clique except z.
    top = b.morph(top, cliques[static_cast<size_t>(root_clique)], VertexSet{z});
    b.d.root = top;

    // Subtree vertex sets, frontiers, width (children precede parents by
    // construction, so a single forward pass is a valid post-order).
    for (size_t i = 0; i < b.d.nodes.size(); ++i) {
        DecompNode& nd = b.d.nodes[i];
        nd.subtree_vertices = nd.bag;
        if (nd.left >= 0)
            nd.subtree_vertices = set_union(
                nd.subtree_vertices, b.d.nodes[static_cast<size_t>(nd.left)].subtree_vertices);
        if (nd.right >= 0)
            nd.subtree_vertices = set_union(
                nd.subtree_vertices, b.d.nodes[static_cast<size_t>(nd.right)].subtree_vertices);
        nd.frontier = set_intersection(neighbors_closed(g, nd.bag), nd.subtree_vertices);
        b.d.width = std::max(b.d.width, static_cast<int>(nd.bag.size()) - 1);
    }
    return b.d;
}

namespace {

bool is_clique(const Graph& g, const VertexSet& s) {
    for (size_t i = 0; i < s.size(); ++i)
        for (size_t j = i + 1; j < s.size(); ++j)
            if (!g.has_edge(s[i], s[j])) return false;
    return true;
}

}  // namespace

DecompositionCheck validate_decomposition(const Graph& g, const NiceDecomposition& d) {
    auto fail = [](std::string msg) { return DecompositionCheck{false, std::move(msg)}; };
    const int count = static_cast<int>(d.nodes.size());
    if (count == 0 || d.root < 0 || d.root >= count) return fail("missing root");

    std::vector<int> node_parent(static_cast<size_t>(count), -1);
    for (int i = 0; i < count; ++i) {
        const DecompNode& nd = d.at(i);
        if (nd.bag.empty()) return fail("empty bag");
        if (!std::is_sorted(nd.bag.begin(), nd.bag.end())) return fail("unsorted bag");
        if (!is_clique(g, nd.bag)) return fail("bag is not a clique");
        for (int c : {nd.left, nd.right}) {
            if (c < 0) continue;
            if (c >= count || node_parent[static_cast<size_t>(c)] != -1 || c == i)
                return fail("malformed tree links");
            node_parent[static_cast<size_t>(c)] = i;
        }
        switch (nd.kind) {
            case BagKind::Leaf:
                if (nd.left >= 0 || nd.right >= 0 || nd.bag.size() != 1)
                    return fail("bad leaf node");
                break;
            case BagKind::Introduce: {
                if (nd.left < 0 || nd.right >= 0) return fail("introduce arity");
                const auto& cb = d.at(nd.left).bag;
                if (set_contains(cb, nd.special) ||
                    nd.bag != set_union(cb, VertexSet{nd.special}))
                    return fail("introduce bag delta");
                break;
            }
            case BagKind::Forget: {
                if (nd.left < 0 || nd.right >= 0) return fail("forget arity");
                const auto& cb = d.at(nd.left).bag;
                if (!set_contains(cb, nd.special) ||
                    nd.bag != set_difference(cb, VertexSet{nd.special}))
                    return fail("forget bag delta");
                break;
            }
            case BagKind::Join:
                if (nd.left < 0 || nd.right < 0) return fail("join arity");
                if (d.at(nd.left).bag != nd.bag || d.at(nd.right).bag != nd.bag)
                    return fail("join bags differ");
                break;
        }
    }
    if (node_parent[static_cast<size_t>(d.root)] != -1) return fail("root has a parent");
    int linked = 0;
    for (int i = 0; i < count; ++i) {
        if (i != d.root && node_parent[static_cast<size_t>(i)] == -1)
            return fail("disconnected decomposition node");
        if (node_parent[static_cast<size_t>(i)] != -1) ++linked;
    }
    if (linked != count - 1) return fail("decomposition is not a tree");
    if (d.at(d.root).bag.size() != 1) return fail("root bag is not a singleton");

    // Edge coverage.
    for (auto [u, v] : g.edges()) {
        bool covered = false;
        for (int i = 0; i < count && !covered; ++i)
            covered = set_contains(d.at(i).bag, u) && set_contains(d.at(i).bag, v);
        if (!covered) return fail("edge not covered by any bag");
    }

    // Vertex traces are connected: the nodes holding v form one subtree.
    for (int v = 0; v < g.vertex_count(); ++v) {
        std::vector<int> holders;
        for (int i = 0; i < count; ++i)
            if (set_contains(d.at(i).bag, v)) holders.push_back(i);
        if (holders.empty()) return fail("vertex missing from all bags");
        std::vector<bool> in_set(static_cast<size_t>(count), false);
        for (int h : holders) in_set[static_cast<size_t>(h)] = true;
        std::vector<bool> seen(static_cast<size_t>(count), false);
        std::queue<int> q;
        q.push(holders[0]);
        seen[static_cast<size_t>(holders[0])] = true;
        size_t reached = 0;
        while (!q.empty()) {
            int i = q.front();
            q.pop();
            ++reached;
            auto push = [&](int j) {
                if (j >= 0 && in_set[static_cast<size_t>(j)] && !seen[static_cast<size_t>(j)]) {
                    seen[static_cast<size_t>(j)] = true;
                    q.push(j);
                }
            };
            push(d.at(i).left);
            push(d.at(i).right);
            push(node_parent[static_cast<size_t>(i)]);
        }
        if (reached != holders.size()) return fail("vertex trace is disconnected");
    }

    // Cached fields.
    for (int i = 0; i < count; ++i) {
        const DecompNode& nd = d.at(i);
        VertexSet expect = nd.bag;
        if (nd.left >= 0) expect = set_union(expect, d.at(nd.left).subtree_vertices);
        if (nd.right >= 0) expect = set_union(expect, d.at(nd.right).subtree_vertices);
        if (nd.subtree_vertices != expect) return fail("stale subtree vertex cache");
        if (nd.frontier != set_intersection(neighbors_closed(g, nd.bag), nd.subtree_vertices))
            return fail("stale frontier cache");
    }
    return {};
}

}  // namespace leafpower
