#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leafpower/dp.hpp"
#include "leafpower/graph.hpp"
#include "leafpower/signature.hpp"
#include "leafpower/tree.hpp"

namespace leafpower {

// A family of d >= 2 interchangeable vertex groups around an anchor z:
//   C_i   pairwise disjoint nonempty sets, all adjacent to z
//   Y_i   the components of G - (C_1 + ... + C_d) hanging off C_i alone
//   z     a vertex adjacent to every C vertex, in the one remaining
//         component that touches every C_i
//   layers[i]  a map C_i + {z} -> 0..k with layers[i][z] == 0
// When the groups accept the same set of root-restriction signatures, the
// first group can be removed without changing the k-leaf-power verdict, and
// a witness for the smaller graph extends to one for the whole graph.
struct SimilarStructure {
    std::vector<VertexSet> c_sets;
    std::vector<VertexSet> y_sets;
    int z = -1;
    std::vector<Layering> layers;
};

struct StructureCheck {
    bool ok = true;
    std::string message;  // names the violated property when !ok
};

// Checks every definitional property of the structure against g:
// disjointness, the component conditions on the Y sets and z, the layer
// ranges, equal outside-neighborhoods on equal layers, and the adjacency
// forced / forbidden by layer sums against k.
StructureCheck validate_similar_structure(const Graph& g, const SimilarStructure& s, int k);

// Given the C sets, computes the component split of g - (C_1 + ... + C_d),
// identifies the unique component meeting every C_i, picks the smallest
// vertex there adjacent to all C vertices as z, and assembles the Y sets.
// Returns nothing when those conditions cannot be met. Layers are left empty.
std::optional<SimilarStructure> derive_y_and_z(const Graph& g,
                                               const std::vector<VertexSet>& c_sets);

// Signatures (with respect to layers[i]) of the valued restrictions to
// C_i + {z} of the k-leaf roots of G[C_i + Y_i + {z}] rooted at the parent
// of z.  Empty iff that subgraph has no such root.
SignatureSet accept_set(const Graph& g, const SimilarStructure& s, size_t i, int k,
                        const DpOptions& opts = {});

// True iff all accept sets are equal and nonempty.
bool is_homogeneous(const Graph& g, const SimilarStructure& s, int k,
                    const DpOptions& opts = {});

struct PruneResult {
    Graph graph;               // g - (C_1 + Y_1)
    std::vector<int> to_host;  // pruned vertex id -> original vertex id
};
PruneResult prune(const Graph& g, const SimilarStructure& s);

// Grafts the first group's subtrees into a witness for the pruned graph.
//   pruned_root  k-leaf root of g - (C_1 + Y_1), rooted at the parent of z
//   t1_star      k-leaf root of G[C_1 + Y_1 + {z}], rooted at the parent of
//                z, whose restriction signature matches the accept signature
//                shared by two later groups
// All trees carry original vertex ids as leaf labels. Throws input_error
// when the signature matching the algorithm relies on cannot be established.
RootedTree insert_back(const Graph& g, const SimilarStructure& s, const RootedTree& pruned_root,
                       const RootedTree& t1_star, int k);

struct PruneParams {
    int group_count = 4;     // number of C sets to look for (>= 3)
    int c_max = 4;           // maximum size of a C set
    long budget = 200000;    // combination / layering attempts before giving up
    bool exhaustive = false; // enumerate all C-set combinations, not just
                             // component boundaries (exponential)
};

// Best-effort search for a homogeneous structure: anchors candidate groups at
// the component boundaries of g - N[z] for each z (or at every subset
// combination when exhaustive), derives Y and z, then searches layer
// assignments consistent with adjacency and checks homogeneity.
std::optional<SimilarStructure> find_homogeneous_structure(const Graph& g, int k,
                                                           const PruneParams& params = {},
                                                           const DpOptions& opts = {});

}  // namespace leafpower
