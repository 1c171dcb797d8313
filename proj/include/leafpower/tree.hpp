#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "leafpower/graph.hpp"

namespace leafpower {

// Sentinel for "no hidden leaf": strictly greater than any finite sigma or
// distance, absorbing under the additions performed here (values stay far
// below INT_MAX).
constexpr int sigma_infinity = 1 << 28;

inline bool sigma_is_finite(int s) { return s < sigma_infinity; }

// Rooted tree with dense node ids. A leaf is a node with no children; leaves
// carry a graph vertex id in `leaf`, internal nodes have leaf == -1.
class RootedTree {
public:
    struct Node {
        int parent = -1;
        std::vector<int> children;
        int leaf = -1;
    };

    int root = -1;

    int add_node(int parent, int leaf_label = -1);
    int node_count() const { return static_cast<int>(nodes_.size()); }
    const Node& node(int i) const { return nodes_[i]; }
    bool is_leaf(int i) const { return nodes_[i].children.empty(); }
    int leaf_label(int i) const { return nodes_[i].leaf; }
    void set_leaf_label(int i, int label) { nodes_[i].leaf = label; }
    int parent(int i) const { return nodes_[i].parent; }
    const std::vector<int>& children(int i) const { return nodes_[i].children; }

    std::vector<int> leaves() const;           // node ids, ascending
    VertexSet leaf_labels() const;             // sorted vertex ids
    std::vector<int> depths() const;           // edge distance from root
    int height() const;                        // 1 + max root-to-leaf distance
    std::vector<int> postorder() const;

    // Copies the subtree of `other` rooted at `src` under `parent` here
    // (parent == -1 makes it the root). Returns the new subtree root id.
    int graft(const RootedTree& other, int src, int parent);

private:
    std::vector<Node> nodes_;
    std::vector<int> preorder_helper() const;
};

// Edge distance between two nodes.
int tree_distance(const RootedTree& t, int a, int b);

// Distances from one node to all nodes.
std::vector<int> distances_from(const RootedTree& t, int src);

// Rooted tree with sigma values on internal nodes (distance to the nearest
// leaf hidden by a restriction; sigma_infinity when none).
struct ValuedTree {
    RootedTree tree;
    std::vector<int> sigma;  // indexed by node id; meaningful for internal nodes

    int sigma_at(int node) const { return sigma[node]; }
};

// Outcome of checking a tree against a graph: the first violating pair if any.
struct VerifyResult {
    bool ok = false;
    std::string message;
};

// T is a k-leaf root of g iff its leaf labels are exactly V(g) and for all
// distinct leaves u, v: uv is an edge iff their tree distance is <= k.
VerifyResult verify_k_leaf_root(const Graph& g, const RootedTree& t, int k);

// T|X: the subtree induced by the leaves labeled by X together with every
// node on a path between two of them; rooted at the node nearest the root.
// to_host maps restriction node ids to node ids of t.
struct Restriction {
    RootedTree tree;
    std::vector<int> to_host;
};
Restriction restrict_tree(const RootedTree& t, const VertexSet& x);

// Valued restriction: the restriction plus sigma values. For an internal node
// v of T|X, sigma(v) is the minimum distance in T from v to a leaf below a
// child of v that the restriction removed (sigma_infinity when none).
struct ValuedRestriction {
    ValuedTree vt;
    std::vector<int> to_host;
};
ValuedRestriction valued_restrict(const RootedTree& t, const VertexSet& x);

// Leaf isomorphism: a bijection fixing every leaf label, mapping root to root
// and preserving edges. Unique when it exists. Returns, for each node of a,
// the corresponding node of b.
std::optional<std::vector<int>> leaf_isomorphism(const RootedTree& a, const RootedTree& b);

// Leaf isomorphism that also preserves sigma on internal nodes.
bool value_isomorphic(const ValuedTree& a, const ValuedTree& b);

// Canonical byte sequence: equal codes iff the trees are value-isomorphic
// after replacing each leaf label by leaf_key(label). Lexicographic order on
// codes is the canonical total order used for deduplication.
std::string canonical_code(const ValuedTree& vt,
                           const std::function<std::string(int)>& leaf_key);
std::string canonical_code(const ValuedTree& vt);  // leaf_key = decimal vertex id

// Same idea ignoring sigma: equal codes iff leaf-isomorphic.
std::string canonical_shape_code(const RootedTree& t);

// The same unrooted tree re-rooted at the parent of the leaf labeled
// `leaf_label` (node ids are renumbered). Rerooting changes no leaf-to-leaf
// distance, so it maps k-leaf roots to k-leaf roots. The tree must have at
// least two nodes and contain the requested leaf.
RootedTree reroot_at_parent_of(const RootedTree& t, int leaf_label);

}  // namespace leafpower
