#include "leafpower/generator.hpp"

#include <algorithm>

#include "leafpower/errors.hpp"

namespace leafpower {

std::uint64_t SplitMix64::next() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
    return bound == 0 ? 0 : next() % bound;
}

int SplitMix64::range(int lo, int hi) {
    if (hi < lo) throw input_error("empty random range");
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

Graph graph_from_leaf_root(const RootedTree& tree, int k) {
    std::vector<int> leaf_nodes = tree.leaves();
    const int n = static_cast<int>(leaf_nodes.size());
    VertexSet labels = tree.leaf_labels();
    for (int i = 0; i < n; ++i)
        if (labels[static_cast<size_t>(i)] != i)
            throw input_error("leaf labels must be exactly 0..n-1");
    Graph g(n);
    for (int a : leaf_nodes) {
        std::vector<int> dist = distances_from(tree, a);
        for (int b : leaf_nodes)
            if (tree.leaf_label(a) < tree.leaf_label(b) && dist[static_cast<size_t>(b)] <= k)
                g.add_edge(tree.leaf_label(a), tree.leaf_label(b));
    }
    return g;
}

namespace {

// Chain of `extra` unary nodes below `parent`; returns the bottom node.
int add_chain(RootedTree& t, int parent, int extra) {
    int cur = parent;
    for (int i = 0; i < extra; ++i) cur = t.add_node(cur);
    return cur;
}

void build_random_subtree(RootedTree& t, SplitMix64& rng, const GeneratorSpec& spec, int parent,
                          int count, int& next_label) {
    int anchor = add_chain(t, parent, rng.range(0, spec.max_unary_chain));
    if (count == 1) {
        t.add_node(anchor, next_label++);
        return;
    }
    int arity = rng.range(2, std::max(2, std::min(spec.max_arity, count)));
    arity = std::min(arity, count);
    std::vector<int> parts(static_cast<size_t>(arity), 1);
    for (int extra = count - arity; extra > 0; --extra)
        ++parts[static_cast<size_t>(rng.below(static_cast<std::uint64_t>(arity)))];
    int node = t.add_node(anchor);
    for (int part : parts) build_random_subtree(t, rng, spec, node, part, next_label);
}

}  // namespace

GeneratedInstance random_leaf_power(const GeneratorSpec& spec) {
    if (spec.leaf_count < 1) throw input_error("leaf count must be positive");
    if (spec.max_arity < 2) throw input_error("arity bound must be at least 2");
    if (spec.max_unary_chain < 0) throw input_error("chain bound must be nonnegative");
    if (spec.k < 1) throw input_error("k must be positive");
    SplitMix64 rng(spec.seed);
    RootedTree t;
    int next_label = 0;
    if (spec.leaf_count == 1) {
        t.add_node(-1, next_label++);
    } else {
        int root = t.add_node(-1);
        int arity = rng.range(2, std::max(2, std::min(spec.max_arity, spec.leaf_count)));
        arity = std::min(arity, spec.leaf_count);
        std::vector<int> parts(static_cast<size_t>(arity), 1);
        for (int extra = spec.leaf_count - arity; extra > 0; --extra)
            ++parts[static_cast<size_t>(rng.below(static_cast<std::uint64_t>(arity)))];
        for (int part : parts) build_random_subtree(t, rng, spec, root, part, next_label);
        for (int twin = 0; twin < spec.twin_leaves; ++twin) {
            std::vector<int> leaf_nodes = t.leaves();
            int pick = leaf_nodes[static_cast<size_t>(
                rng.below(static_cast<std::uint64_t>(leaf_nodes.size())))];
            t.add_node(t.parent(pick), next_label++);
        }
    }
    Graph g = graph_from_leaf_root(t, spec.k);
    return {std::move(g), std::move(t)};
}

PlantedInstance planted_similar_instance(int copies, const GeneratorSpec& copy_spec, int k) {
    if (k < 3) throw input_error("planted instances need k >= 3");
    if (copies < 2) throw input_error("planted instances need at least two copies");
    SplitMix64 rng(copy_spec.seed);

    // One branch profile, instantiated identically in every copy. Chain
    // lengths are edge counts below the copy's top node: short chains end in
    // group vertices at layer length+1 <= k-1 (so all of them see z), and
    // deep chains of k-1 edges end in leaves exactly beyond z's reach, which
    // turn into hanging components attached to the length-1 group vertices.
    int short_branches = rng.range(1, std::max(1, std::min(3, copy_spec.max_arity)));
    std::vector<int> lengths{1};
    for (int j = 1; j < short_branches; ++j) lengths.push_back(rng.range(1, std::max(1, k - 2)));
    int deep_branches = rng.range(0, 2);

    RootedTree t;
    int root = t.add_node(-1);
    int next_label = 0;
    t.add_node(root, next_label++);  // z
    const int z = 0;

    SimilarStructure st;
    st.z = z;
    for (int c = 0; c < copies; ++c) {
        int top = t.add_node(root);
        VertexSet c_set, y_set;
        Layering layer;
        layer[z] = 0;
        for (int length : lengths) {
            int bottom = add_chain(t, top, length - 1);
            int label = next_label++;
            t.add_node(bottom, label);
            c_set.push_back(label);
            layer[label] = length + 1;
        }
        for (int dj = 0; dj < deep_branches; ++dj) {
            int bottom = add_chain(t, top, k - 2);
            int label = next_label++;
            t.add_node(bottom, label);
            y_set.push_back(label);
        }
        std::sort(c_set.begin(), c_set.end());
        std::sort(y_set.begin(), y_set.end());
        st.c_sets.push_back(std::move(c_set));
        st.y_sets.push_back(std::move(y_set));
        st.layers.push_back(std::move(layer));
    }

    Graph g = graph_from_leaf_root(t, k);
    return {std::move(g), std::move(t), std::move(st)};
}

namespace {

Graph fixed_named_graph(const std::string& name) {
    if (name == "bull")
        return Graph::from_edges(5, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 4}});
    if (name == "dart")
        return Graph::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {0, 4}});
    if (name == "gem")
        return Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {0, 4}, {1, 4}, {2, 4}, {3, 4}});
    throw input_error("unknown graph name: " + name);
}

}  // namespace

Graph named_graph(const std::string& name) {
    auto dash = name.rfind('-');
    if (dash == std::string::npos) return fixed_named_graph(name);
    std::string family = name.substr(0, dash);
    int n = 0;
    try {
        n = std::stoi(name.substr(dash + 1));
    } catch (const std::exception&) {
        throw input_error("unknown graph name: " + name);
    }
    if (n < 1) throw input_error("graph family size must be positive: " + name);
    std::vector<std::pair<int, int>> edges;
    if (family == "path") {
        for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    } else if (family == "cycle") {
        if (n < 3) throw input_error("cycles need at least three vertices");
        for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
        edges.emplace_back(0, n - 1);
    } else if (family == "clique") {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    } else if (family == "star") {
        for (int i = 1; i < n; ++i) edges.emplace_back(0, i);
    } else {
        return fixed_named_graph(name);
    }
    return Graph::from_edges(n, edges);
}

}  // namespace leafpower
