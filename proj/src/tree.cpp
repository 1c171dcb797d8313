#include "leafpower/tree.hpp"

#include <algorithm>
#include <map>

#include "leafpower/errors.hpp"

namespace leafpower {

int RootedTree::add_node(int parent, int leaf_label) {
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{parent, {}, leaf_label});
    if (parent >= 0)
        nodes_[parent].children.push_back(id);
    else if (root == -1)
        root = id;
    return id;
}

std::vector<int> RootedTree::leaves() const {
    std::vector<int> out;
    for (int i = 0; i < node_count(); ++i)
        if (is_leaf(i)) out.push_back(i);
    return out;
}

VertexSet RootedTree::leaf_labels() const {
    VertexSet out;
    for (int i = 0; i < node_count(); ++i)
        if (is_leaf(i)) out.push_back(nodes_[i].leaf);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> RootedTree::depths() const {
    std::vector<int> d(node_count(), 0);
    for (int v : preorder_helper()) {
        if (v != root) d[v] = d[nodes_[v].parent] + 1;
    }
    return d;
}

std::vector<int> RootedTree::preorder_helper() const {
    std::vector<int> order;
    if (root == -1) return order;
    order.reserve(node_count());
    std::vector<int> stack{root};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (auto it = nodes_[v].children.rbegin(); it != nodes_[v].children.rend(); ++it)
            stack.push_back(*it);
    }
    return order;
}

int RootedTree::height() const {
    if (root == -1) return 0;
    auto d = depths();
    int h = 0;
    for (int i = 0; i < node_count(); ++i)
        if (is_leaf(i)) h = std::max(h, d[i]);
    return 1 + h;
}

std::vector<int> RootedTree::postorder() const {
    auto order = preorder_helper();
    std::reverse(order.begin(), order.end());
    return order;
}

int RootedTree::graft(const RootedTree& other, int src, int parent) {
    int id = add_node(parent, other.leaf_label(src));
    for (int c : other.children(src)) graft(other, c, id);
    return id;
}

int tree_distance(const RootedTree& t, int a, int b) {
    auto d = t.depths();
    int dist = 0;
    while (a != b) {
        if (d[a] < d[b]) std::swap(a, b);
        a = t.parent(a);
        ++dist;
    }
    return dist;
}

std::vector<int> distances_from(const RootedTree& t, int src) {
    std::vector<int> dist(t.node_count(), -1);
    std::vector<int> queue{src};
    dist[src] = 0;
    for (size_t i = 0; i < queue.size(); ++i) {
        int v = queue[i];
        auto visit = [&](int w) {
            if (w >= 0 && dist[w] == -1) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        };
        visit(t.parent(v));
        for (int c : t.children(v)) visit(c);
    }
    return dist;
}

VerifyResult verify_k_leaf_root(const Graph& g, const RootedTree& t, int k) {
    VerifyResult res;
    std::vector<int> leaf_nodes = t.leaves();
    VertexSet labels = t.leaf_labels();
    VertexSet want(g.vertex_count());
    for (int i = 0; i < g.vertex_count(); ++i) want[i] = i;
    if (labels != want) {
        res.message = "leaf labels are not exactly the vertex set";
        return res;
    }
    for (int ln : leaf_nodes) {
        auto dist = distances_from(t, ln);
        int u = t.leaf_label(ln);
        for (int lm : leaf_nodes) {
            if (lm == ln) continue;
            int v = t.leaf_label(lm);
            bool close = dist[lm] <= k;
            if (close != g.has_edge(u, v)) {
                res.message = "pair (" + std::to_string(u) + "," + std::to_string(v) +
                              ") at distance " + std::to_string(dist[lm]) +
                              (close ? " has no edge" : " has an edge");
                return res;
            }
        }
    }
    res.ok = true;
    return res;
}

namespace {

// Marks the nodes of T|X: descendants of the LCA of the X-leaves that have an
// X-leaf below them.
struct RestrictionMarks {
    std::vector<char> keep;
    int sub_root = -1;
};

RestrictionMarks restriction_marks(const RootedTree& t, const VertexSet& x) {
    RestrictionMarks m;
    m.keep.assign(t.node_count(), 0);
    std::vector<int> marked_below(t.node_count(), 0);
    for (int v : t.postorder()) {
        if (t.is_leaf(v)) {
            if (set_contains(x, t.leaf_label(v))) marked_below[v] = 1;
        } else {
            for (int c : t.children(v)) marked_below[v] += marked_below[c];
        }
    }
    int total = marked_below[t.root];
    if (total == 0) return m;
    // LCA of the marked leaves: deepest node covering all of them.
    int lca = t.root;
    for (;;) {
        int next = -1;
        for (int c : t.children(lca))
            if (marked_below[c] == total) next = c;
        if (next == -1) break;
        lca = next;
    }
    m.sub_root = lca;
    std::vector<int> stack{lca};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (marked_below[v] == 0) continue;
        m.keep[v] = 1;
        for (int c : t.children(v)) stack.push_back(c);
    }
    return m;
}

}  // namespace

Restriction restrict_tree(const RootedTree& t, const VertexSet& x) {
    if (x.empty()) throw input_error("restriction to an empty leaf set");
    auto marks = restriction_marks(t, x);
    if (marks.sub_root == -1) throw input_error("no leaf of the tree is labeled by the set");
    Restriction out;
    std::vector<int> to_sub(t.node_count(), -1);
    // Preorder over kept nodes keeps parent links valid.
    std::vector<int> stack{marks.sub_root};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        int parent_sub = v == marks.sub_root ? -1 : to_sub[t.parent(v)];
        int id = out.tree.add_node(parent_sub, t.leaf_label(v));
        to_sub[v] = id;
        out.to_host.push_back(v);
        for (auto it = t.children(v).rbegin(); it != t.children(v).rend(); ++it)
            if (marks.keep[*it]) stack.push_back(*it);
    }
    return out;
}

ValuedRestriction valued_restrict(const RootedTree& t, const VertexSet& x) {
    auto marks = restriction_marks(t, x);
    if (marks.sub_root == -1) throw input_error("no leaf of the tree is labeled by the set");
    // min distance from each node down to a leaf of its own subtree
    std::vector<int> min_leaf(t.node_count(), sigma_infinity);
    for (int v : t.postorder()) {
        if (t.is_leaf(v))
            min_leaf[v] = 0;
        else
            for (int c : t.children(v)) min_leaf[v] = std::min(min_leaf[v], min_leaf[c] + 1);
    }
    Restriction base = restrict_tree(t, x);
    ValuedRestriction out;
    out.to_host = base.to_host;
    out.vt.tree = std::move(base.tree);
    out.vt.sigma.assign(out.vt.tree.node_count(), sigma_infinity);
    for (int i = 0; i < out.vt.tree.node_count(); ++i) {
        if (out.vt.tree.is_leaf(i)) continue;
        int host = out.to_host[i];
        int best = sigma_infinity;
        for (int c : t.children(host))
            if (!marks.keep[c]) best = std::min(best, min_leaf[c] + 1);
        out.vt.sigma[i] = best;
    }
    return out;
}

namespace {

std::string code_rec(const RootedTree& t, const std::vector<int>* sigma, int v,
                     const std::function<std::string(int)>& leaf_key) {
    if (t.is_leaf(v)) return "l" + leaf_key(t.leaf_label(v)) + ";";
    std::vector<std::string> kids;
    kids.reserve(t.children(v).size());
    for (int c : t.children(v)) kids.push_back(code_rec(t, sigma, c, leaf_key));
    std::sort(kids.begin(), kids.end());
    std::string out = "i";
    if (sigma) {
        int s = (*sigma)[v];
        out += sigma_is_finite(s) ? std::to_string(s) : "inf";
    }
    out += "(";
    for (auto& k : kids) out += k;
    out += ")";
    return out;
}

}  // namespace

std::string canonical_code(const ValuedTree& vt,
                           const std::function<std::string(int)>& leaf_key) {
    return code_rec(vt.tree, &vt.sigma, vt.tree.root, leaf_key);
}

std::string canonical_code(const ValuedTree& vt) {
    return canonical_code(vt, [](int label) { return std::to_string(label); });
}

std::string canonical_shape_code(const RootedTree& t) {
    return code_rec(t, nullptr, t.root, [](int label) { return std::to_string(label); });
}

namespace {

std::string shape_code(const RootedTree& t, int v) {
    return code_rec(t, nullptr, v, [](int label) { return std::to_string(label); });
}

// Matches children of a and b by shape code; codes of siblings are pairwise
// distinct because every subtree contains at least one (distinct) leaf label.
bool match_rec(const RootedTree& a, const RootedTree& b, int va, int vb,
               std::vector<int>& map) {
    map[va] = vb;
    if (a.is_leaf(va)) return b.is_leaf(vb) && a.leaf_label(va) == b.leaf_label(vb);
    if (a.children(va).size() != b.children(vb).size()) return false;
    std::map<std::string, int> b_by_code;
    for (int cb : b.children(vb)) {
        auto code = shape_code(b, cb);
        if (!b_by_code.emplace(std::move(code), cb).second) return false;
    }
    for (int ca : a.children(va)) {
        auto it = b_by_code.find(shape_code(a, ca));
        if (it == b_by_code.end()) return false;
        if (!match_rec(a, b, ca, it->second, map)) return false;
    }
    return true;
}

}  // namespace

std::optional<std::vector<int>> leaf_isomorphism(const RootedTree& a, const RootedTree& b) {
    if (a.node_count() != b.node_count()) return std::nullopt;
    if (a.root == -1 || b.root == -1) return std::nullopt;
    if (shape_code(a, a.root) != shape_code(b, b.root)) return std::nullopt;
    std::vector<int> map(a.node_count(), -1);
    if (!match_rec(a, b, a.root, b.root, map)) return std::nullopt;
    return map;
}

bool value_isomorphic(const ValuedTree& a, const ValuedTree& b) {
    auto iso = leaf_isomorphism(a.tree, b.tree);
    if (!iso) return false;
    for (int v = 0; v < a.tree.node_count(); ++v)
        if (!a.tree.is_leaf(v) && a.sigma[v] != b.sigma[(*iso)[v]]) return false;
    return true;
}

RootedTree reroot_at_parent_of(const RootedTree& t, int leaf_label) {
    int pivot = -1;
    for (int v : t.leaves())
        if (t.leaf_label(v) == leaf_label) pivot = v;
    if (pivot < 0) throw input_error("tree does not contain the requested leaf");
    if (t.node_count() < 2) throw input_error("single-node trees cannot be rerooted");
    int new_root = t.parent(pivot);

    RootedTree out;
    std::vector<int> to_new(static_cast<size_t>(t.node_count()), -1);
    // Preorder over the undirected edges starting from the new root.
    std::vector<std::pair<int, int>> stack{{new_root, -1}};
    while (!stack.empty()) {
        auto [v, from] = stack.back();
        stack.pop_back();
        to_new[static_cast<size_t>(v)] =
            out.add_node(from == -1 ? -1 : to_new[static_cast<size_t>(from)],
                         t.is_leaf(v) ? t.leaf_label(v) : -1);
        std::vector<int> around = t.children(v);
        if (t.parent(v) != -1) around.push_back(t.parent(v));
        for (auto it = around.rbegin(); it != around.rend(); ++it)
            if (*it != from) stack.emplace_back(*it, v);
    }
    return out;
}

}  // namespace leafpower
