#pragma once

#include <cstdint>
#include <string>

#include "leafpower/graph.hpp"
#include "leafpower/similar.hpp"
#include "leafpower/tree.hpp"

namespace leafpower {

// Small deterministic generator (splitmix64) so corpora reproduce exactly
// across platforms and standard-library versions.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next();
    std::uint64_t below(std::uint64_t bound);  // uniform in [0, bound)
    int range(int lo, int hi);                 // uniform in [lo, hi]
};

struct GeneratorSpec {
    std::uint64_t seed = 1;
    int leaf_count = 8;       // number of graph vertices to produce
    int max_arity = 3;        // branching factor of internal nodes
    int max_unary_chain = 1;  // extra edges optionally inserted above each child
    int k = 3;                // distance threshold used to project the tree
    int twin_leaves = 0;      // extra leaves duplicated next to existing ones
};

struct GeneratedInstance {
    Graph graph;
    RootedTree tree;
};

// Projects a tree onto its leaves: vertices are leaf labels, edges join the
// pairs at tree distance at most k.
Graph graph_from_leaf_root(const RootedTree& tree, int k);

// Draws a random rooted tree with `leaf_count` labeled leaves and returns it
// together with its distance-k leaf projection. The projection may be
// disconnected. Twin requests are ignored on single-leaf trees.
GeneratedInstance random_leaf_power(const GeneratorSpec& spec);

struct PlantedInstance {
    Graph graph;
    RootedTree tree;
    SimilarStructure structure;
};

// Builds a graph that is a k-leaf power by construction and carries a valid
// homogeneous similar structure with `copies` isomorphic groups. One branch
// profile is drawn from the spec's seed and instantiated once per copy, which
// makes the groups interchangeable. Requires k >= 3 and copies >= 2.
PlantedInstance planted_similar_instance(int copies, const GeneratorSpec& copy_spec, int k);

// Fixed test graphs by name: "bull", "dart", "gem", and the families
// "path-N", "cycle-N", "clique-N", "star-N".
Graph named_graph(const std::string& name);

}  // namespace leafpower
