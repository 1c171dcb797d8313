#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "leafpower/graph.hpp"
#include "leafpower/tree.hpp"

namespace leafpower {

// Unrooted tree whose leaves are exactly the graph vertices 0..leaf_count-1,
// every internal node has degree >= 3, and each edge carries a weight in
// 1..k+1 (a weight-w edge stands for a path of w unit edges; clamping longer
// paths at k+1 never changes which leaf pairs are within distance k).
struct WeightedTopology {
    struct Edge {
        int a = 0, b = 0;
        int w = 1;
    };
    int leaf_count = 0;
    int node_count = 0;  // leaves are 0..leaf_count-1, internal the rest
    std::vector<Edge> edges;
};

// Streams every unrooted topology shape (weights unset) for n labeled leaves.
// Each shape is produced exactly once: topologies are built by attaching leaf
// i either to an existing internal node or into a subdivided edge, the two
// inverses of deleting the highest-numbered leaf.
void enumerate_topologies(int n, const std::function<void(const WeightedTopology&)>& emit);

// Expands weighted edges into unit edges and roots the tree at the neighbor
// of leaf z. Requires that neighbor to be an internal node (true whenever
// n >= 3, or n == 2 with the z-edge weight >= 2).
RootedTree topology_to_rooted(const WeightedTopology& t, int z);

struct OracleResult {
    bool is_leaf_power = false;
    std::optional<RootedTree> witness;  // rooted at the neighbor of leaf 0
};

// Exhaustive decision: searches all topologies and weight assignments for a
// tree realizing g's adjacency at threshold k. Works for disconnected g too
// (far-apart leaves realize non-edges). |V(g)| <= limit or resource_error.
OracleResult oracle_is_k_leaf_power(const Graph& g, int k, int limit = 7);

// All valued restrictions to N[z] (closed neighborhood) of k-leaf roots of g
// rooted at the parent of z, up to value-isomorphism, sorted by canonical
// code. Requires connected g (sigma exactness under weight clamping needs
// it); |V(g)| <= limit or resource_error.
std::vector<ValuedTree> oracle_enumerate_root_restrictions(const Graph& g, int z, int k,
                                                           int limit = 7);

}  // namespace leafpower
