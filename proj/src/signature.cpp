#include "leafpower/signature.hpp"

#include <algorithm>

#include "leafpower/errors.hpp"

namespace leafpower {

namespace {

Signature make_leaf_signature(int layer) {
    Signature s;
    s.leaf_form = true;
    s.layer = layer;
    s.code = "f" + std::to_string(layer) + ";";
    return s;
}

Signature make_internal_signature(std::vector<std::pair<int, Signature>> kids, int sigma) {
    Signature s;
    s.sigma = sigma;
    std::sort(kids.begin(), kids.end(), [](const auto& a, const auto& b) {
        return a.second.code < b.second.code;
    });
    s.code = "(";
    for (const auto& [count, child] : kids) {
        s.code += std::to_string(count);
        s.code += "@";
        s.code += child.code;
    }
    s.code += "|";
    s.code += sigma_is_finite(sigma) ? std::to_string(sigma) : "inf";
    s.code += ")";
    s.children = std::move(kids);
    return s;
}

}  // namespace

std::vector<Signature> node_signatures(const ValuedTree& vt, const Layering& layers, int k) {
    const RootedTree& t = vt.tree;
    if (t.root == -1) throw input_error("signature of an empty tree");
    std::vector<Signature> sig(t.node_count());
    for (int v : t.postorder()) {
        if (t.is_leaf(v)) {
            auto it = layers.find(t.leaf_label(v));
            if (it == layers.end())
                throw input_error("leaf " + std::to_string(t.leaf_label(v)) +
                                  " missing from the layering");
            if (it->second < 0 || it->second > k)
                throw input_error("layer value out of range 0..k");
            sig[v] = make_leaf_signature(it->second);
        } else {
            int s = vt.sigma[v];
            if (sigma_is_finite(s) && s > k)
                throw input_error("finite sigma exceeds k");
            // group child signatures, cap multiplicities at 2
            std::map<std::string, std::pair<int, const Signature*>> groups;
            for (int c : t.children(v)) {
                auto& slot = groups[sig[c].code];
                slot.first = std::min(2, slot.first + 1);
                slot.second = &sig[c];
            }
            std::vector<std::pair<int, Signature>> kids;
            kids.reserve(groups.size());
            for (auto& [code, slot] : groups) kids.emplace_back(slot.first, *slot.second);
            sig[v] = make_internal_signature(std::move(kids), s);
        }
    }
    return sig;
}

Signature signature(const ValuedTree& vt, const Layering& layers, int k) {
    return node_signatures(vt, layers, k)[vt.tree.root];
}

void SignatureSet::insert(Signature s) {
    auto it = std::lower_bound(items.begin(), items.end(), s);
    if (it == items.end() || !(*it == s)) items.insert(it, std::move(s));
}

bool SignatureSet::operator==(const SignatureSet& o) const {
    if (items.size() != o.items.size()) return false;
    for (size_t i = 0; i < items.size(); ++i)
        if (!(items[i] == o.items[i])) return false;
    return true;
}

boost::multiprecision::cpp_int signature_space_bound(int s, int h, int k, long max_exponent) {
    using boost::multiprecision::cpp_int;
    if (h <= 0) throw input_error("height must be positive");
    if (s < 0 || k < 0) throw input_error("s and k must be non-negative");
    cpp_int bound = k + 1;
    for (int level = 2; level <= h; ++level) {
        if (bound > max_exponent)
            throw resource_error("signature space bound tower exceeds materializable size");
        unsigned long exp = bound.convert_to<unsigned long>();
        cpp_int power = boost::multiprecision::pow(cpp_int(3), exp);
        bound = cpp_int(s + 2) * power + bound;
    }
    return bound;
}

namespace {

struct NodeSigs {
    std::vector<Signature> sig;   // per node, subtree signature
    std::vector<int> depth;
};

NodeSigs all_node_signatures(const ValuedTree& vt, const Layering& layers, int k) {
    return {node_signatures(vt, layers, k), vt.tree.depths()};
}

// Multiset of child-signature codes at the root.
std::map<std::string, int> root_child_counts(const ValuedTree& vt, const NodeSigs& ns) {
    std::map<std::string, int> counts;
    for (int c : vt.tree.children(vt.tree.root)) ++counts[ns.sig[c].code];
    return counts;
}

bool unique_children_match(const std::map<std::string, int>& mine,
                           const std::map<std::string, int>& theirs) {
    for (const auto& [code, count] : mine)
        if (count == 1) {
            auto it = theirs.find(code);
            if (it == theirs.end() || it->second != 1) return false;
        }
    return true;
}

bool duplicated_children_match(const std::map<std::string, int>& mine,
                               const std::map<std::string, int>& theirs) {
    for (const auto& [code, count] : mine)
        if (count >= 2) {
            auto it = theirs.find(code);
            if (it == theirs.end() || it->second < 2) return false;
        }
    return true;
}

bool depth_signature_cover(const NodeSigs& a, const NodeSigs& b) {
    std::map<std::pair<int, std::string>, int> available;
    for (size_t v = 0; v < b.sig.size(); ++v)
        ++available[{b.depth[v], b.sig[v].code}];
    for (size_t v = 0; v < a.sig.size(); ++v)
        if (!available.count({a.depth[v], a.sig[v].code})) return false;
    return true;
}

}  // namespace

BasicSigProperties check_basic_sig_properties(const ValuedTree& a, const ValuedTree& b,
                                              const Layering& la, const Layering& lb,
                                              int k) {
    NodeSigs na = all_node_signatures(a, la, k);
    NodeSigs nb = all_node_signatures(b, lb, k);
    auto ca = root_child_counts(a, na);
    auto cb = root_child_counts(b, nb);
    BasicSigProperties res;
    res.p1 = unique_children_match(ca, cb) && unique_children_match(cb, ca);
    res.p2 = duplicated_children_match(ca, cb) && duplicated_children_match(cb, ca);
    res.p3 = depth_signature_cover(na, nb) && depth_signature_cover(nb, na);
    return res;
}

}  // namespace leafpower
