#pragma once

#include <string>
#include <vector>

#include "leafpower/graph.hpp"

namespace leafpower {

// Nice clique tree decomposition of a connected chordal graph, rooted at a
// singleton bag {z}.  Every bag is a nonempty clique.  Node kinds:
//   Leaf       no child,  |bag| == 1
//   Introduce  one child, bag == child.bag + {special}
//   Forget     one child, bag == child.bag - {special}
//   Join       two children, both with the same bag as this node
// Per node i the builder caches
//   subtree_vertices  V_i  = union of bags in the subtree rooted at i
//   frontier          N[B_i] ∩ V_i, the closed neighborhood of the bag inside
//                     the already-processed vertex set
// Construction is linear-ish: the node count is at most 4 * n * (width + 2).
enum class BagKind { Leaf, Introduce, Forget, Join };

struct DecompNode {
    BagKind kind = BagKind::Leaf;
    VertexSet bag;
    int special = -1;           // introduced / forgotten vertex
    int left = -1, right = -1;  // children; right >= 0 only for Join
    VertexSet subtree_vertices;
    VertexSet frontier;
};

struct NiceDecomposition {
    std::vector<DecompNode> nodes;
    int root = -1;
    int width = 0;  // max bag size - 1

    const DecompNode& at(int i) const { return nodes[static_cast<size_t>(i)]; }
};

// Requires: g connected, chordal, z a vertex of g.  Throws input_error
// otherwise.  Deterministic for a fixed input.
NiceDecomposition build_nice_decomposition(const Graph& g, int z);

struct DecompositionCheck {
    bool ok = true;
    std::string message;
};

// Independent structural check: kind arities and bag deltas, bags are
// nonempty cliques, every edge of g is covered by some bag, every vertex
// occurrence set is connected in the decomposition tree, the root bag is a
// singleton, and the cached subtree_vertices / frontier fields are faithful.
DecompositionCheck validate_decomposition(const Graph& g, const NiceDecomposition& d);

}  // namespace leafpower
