#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <string>
#include <vector>

#include "leafpower/tree.hpp"

namespace leafpower {

// Layer assignment for the leaves a signature ranges over (vertex id -> 0..k).
using Layering = std::map<int, int>;

// Signature of a valued tree with respect to a layering. A leaf's signature is
// its layer; an internal signature is the multiset of child signatures with
// counts capped at 2 (absent children count 0, so the encoding is sparse)
// together with the root's sigma value.
struct Signature {
    bool leaf_form = false;
    int layer = -1;                                 // leaf form
    int sigma = sigma_infinity;                     // internal form
    std::vector<std::pair<int, Signature>> children;  // (count in {1,2}, child), sorted
    std::string code;                               // canonical encoding

    bool operator==(const Signature& o) const { return code == o.code; }
    bool operator<(const Signature& o) const { return code < o.code; }
};

// Computes the signature of vt's root. Every leaf label must be in the
// layering's domain with a value in 0..k; every finite sigma must be <= k.
Signature signature(const ValuedTree& vt, const Layering& layers, int k);

// The signature of every node's subtree, indexed by node id.
std::vector<Signature> node_signatures(const ValuedTree& vt, const Layering& layers, int k);

// Sorted, deduplicated set of signatures; equality is element-wise.
struct SignatureSet {
    std::vector<Signature> items;  // sorted by code, unique

    void insert(Signature s);
    bool operator==(const SignatureSet& o) const;
    bool empty() const { return items.empty(); }
    size_t size() const { return items.size(); }
};

// Upper bound on the number of distinct signatures of s-bounded valued trees
// of height <= h over layers 0..k: B(1) = k+1, B(h) = (s+2)*3^B(h-1) + B(h-1).
// Arbitrary precision; raises resource_error when an intermediate exponent is
// too large to materialize (the tower grows beyond any feasible memory).
boost::multiprecision::cpp_int signature_space_bound(int s, int h, int k,
                                                     long max_exponent = 3000000);

// Consequences of signature equality between two valued trees, used by tests:
//  p1: every root child whose subtree signature is unique among its siblings
//      has exactly one child with that signature on the other side (both ways);
//  p2: every duplicated child signature has at least two matches on the other
//      side (both ways);
//  p3: every node of one tree has, in the other, a node at the same depth with
//      the same subtree signature (both ways).
struct BasicSigProperties {
    bool p1 = false;
    bool p2 = false;
    bool p3 = false;
    bool all() const { return p1 && p2 && p3; }
};
BasicSigProperties check_basic_sig_properties(const ValuedTree& a, const ValuedTree& b,
                                              const Layering& la, const Layering& lb,
                                              int k);

}  // namespace leafpower
