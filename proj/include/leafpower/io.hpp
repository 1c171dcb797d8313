#pragma once

#include <string>
#include <vector>

#include "leafpower/decomposition.hpp"
#include "leafpower/graph.hpp"
#include "leafpower/signature.hpp"
#include "leafpower/similar.hpp"
#include "leafpower/tree.hpp"

namespace leafpower {

// Edge-list text format, one edge per line ("u v"), '#' starting a comment
// line, optional "n <count>" header fixing the vertex count. Vertex tokens
// are either all plain non-negative integers (used as ids directly) or all
// double-quoted names (mapped to dense ids in order of first appearance);
// the two styles cannot be mixed. Self-loops and repeated edges are
// rejected with the offending line number.
struct GraphDocument {
    Graph graph;
    std::vector<std::string> labels;  // empty for numeric documents
};

GraphDocument read_graph(const std::string& text);
std::string write_graph(const Graph& g, const std::vector<std::string>& labels = {});

// Rooted-tree JSON: {"format": "v1", "root": id, "nodes": [{"id": .., "parent": ..,
// "leaf": ..}]}. Internal nodes carry leaf == -1. Node ids are arbitrary
// distinct integers; the reader renumbers them densely.
std::string write_tree_json(const RootedTree& t);
RootedTree read_tree_json(const std::string& text);

// DOT renderings for human inspection (write-only). Leaves show their vertex
// label, internal nodes their sigma value when one is present ("inf" for
// sigma_infinity).
std::string write_tree_dot(const RootedTree& t);
std::string write_tree_dot(const ValuedTree& vt);
std::string write_decomposition_dot(const NiceDecomposition& d);

// Signature JSON mirrors the recursive structure: leaves as {"leaf": layer},
// internal nodes as {"sigma": int|"inf", "children": [{"count": c, "node":
// ...}]}. Sets serialize as sorted arrays.
std::string write_signature_json(const Signature& s);
std::string write_signature_set_json(const SignatureSet& set);

// Similar-structure JSON: {"format": "v1", "z": .., "groups": [{"c": [..],
// "y": [..], "layers": [[vertex, layer], ..]}]}.
std::string write_structure_json(const SimilarStructure& s);
SimilarStructure read_structure_json(const std::string& text);

}  // namespace leafpower
