#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "leafpower/decomposition.hpp"
#include "leafpower/graph.hpp"
#include "leafpower/tree.hpp"

namespace leafpower {

// Budget for streaming candidate enumeration (see candidate_valued_trees).
struct CandidateBudget {
    int k = 3;
    int max_nodes = 64;
    int max_height = 9;  // nodes on a root-to-leaf path, counting both ends
};

// Streams every valued tree over the given leaf label set, up to
// value-isomorphism, that satisfies the structural envelope of dynamic
// programming table entries:
//   - the tree equals its own restriction to its leaf set (root is branching
//     or the tree is a single node), every unary chain has at most k internal
//     nodes between branchings,
//   - height <= max_height, node count <= max_nodes,
//   - every internal node carries sigma in {0..k} or infinity.
// Enumeration order is deterministic.  The callback returns false to stop.
void candidate_valued_trees(const VertexSet& leaves, const CandidateBudget& budget,
                            const std::function<bool(const ValuedTree&)>& emit);

struct DpOptions {
    int degree_ceiling = 8;        // recognize_bounded rejects denser graphs
    long candidate_cap = 4000000;  // derived candidates per decomposition node
    long entry_cap = 400000;       // surviving entries per decomposition node
};

struct RecognitionResult {
    bool is_leaf_power = false;
    std::optional<RootedTree> witness;  // present iff is_leaf_power
};

struct RootEnumeration {
    ValuedTree restriction;  // valued restriction of a k-leaf root to N[z]
    RootedTree witness;      // full k-leaf root realizing it, rooted at z's parent
};

// Dynamic program over a nice clique tree decomposition rooted at {z}.
// Table entries at decomposition node i are valued trees over leaf set
// N[B_i] ∩ V_i: the valued restrictions of k-leaf roots of G[V_i] that can be
// extended by the not-yet-introduced part of the graph.  Entries are stored
// up to value-isomorphism (keyed by canonical code) together with provenance
// for witness reconstruction.
class DpEngine {
  public:
    DpEngine(const Graph& g, int z, int k, const DpOptions& opts = {});

    // Runs the table computation bottom-up.  Idempotent.
    void run();

    // Canonical codes of the entries at the decomposition root (bag {z}).
    std::vector<std::string> root_keys();

    // The stored valued tree for a root entry.
    const ValuedTree& root_entry(const std::string& key);

    // Rebuilds a full k-leaf root of G realizing the given root entry by
    // replaying the provenance chain.  The result has leaf label set V(G).
    RootedTree reconstruct(const std::string& root_key);

    const NiceDecomposition& decomposition() const { return decomp_; }

  private:
    struct Entry {
        ValuedTree vt;
        BagKind kind = BagKind::Leaf;
        std::string child_a, child_b;  // provenance keys in the child tables
    };
    using Table = std::map<std::string, Entry>;

    Table compute(int node);
    Table dp_leaf(const DecompNode& nd);
    Table dp_introduce(const DecompNode& nd, const Table& sub);
    Table dp_forget(const DecompNode& nd, const Table& sub);
    Table dp_join(const DecompNode& nd, const Table& left, const Table& right);
    RootedTree rebuild(int node, const std::string& key);
    void insert_entry(Table& table, Entry entry);

    const Graph& g_;
    int k_;
    DpOptions opts_;
    NiceDecomposition decomp_;
    std::vector<Table> tables_;
    bool ran_ = false;
};

// All valued restrictions to N[z] of k-leaf roots of g whose root is the
// parent of leaf z, up to value-isomorphism, sorted by canonical code.
// Requires g connected and k >= 2; returns an empty list when g is not a
// k-leaf power (in particular when g is not chordal).
std::vector<ValuedTree> enumerate_root_restrictions(const Graph& g, int z, int k,
                                                    const DpOptions& opts = {});

// Same, each paired with a reconstructed witness realizing it.
std::vector<RootEnumeration> enumerate_root_restrictions_with_witnesses(
    const Graph& g, int z, int k, const DpOptions& opts = {});

// Decides whether connected g is a k-leaf power via the table computation and
// reconstructs a witness on success.  Throws resource_error when the maximum
// degree exceeds opts.degree_ceiling.  The witness, when present, is rooted
// at the parent of leaf 0 (of leaf z for recognize_bounded_at).
RecognitionResult recognize_bounded(const Graph& g, int k, const DpOptions& opts = {});
RecognitionResult recognize_bounded_at(const Graph& g, int z, int k,
                                       const DpOptions& opts = {});

}  // namespace leafpower
