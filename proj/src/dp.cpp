#include "leafpower/dp.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>
#include <utility>

#include "leafpower/errors.hpp"

namespace leafpower {

namespace {

// Keeps sigma in lockstep with node ids.
int vt_add_node(ValuedTree& vt, int parent, int leaf_label, int sigma) {
    int id = vt.tree.add_node(parent, leaf_label);
    vt.sigma.push_back(sigma);
    return id;
}

int graft_valued(ValuedTree& dst, int parent, const ValuedTree& src, int src_node) {
    int id = vt_add_node(dst, parent, src.tree.leaf_label(src_node), src.sigma[src_node]);
    for (int c : src.tree.children(src_node)) graft_valued(dst, id, src, c);
    return id;
}

// Sorted label set of the leaves below each node.
std::vector<VertexSet> labels_below(const RootedTree& t) {
    std::vector<VertexSet> out(static_cast<size_t>(t.node_count()));
    for (int v : t.postorder()) {
        if (t.is_leaf(v)) {
            out[static_cast<size_t>(v)] = {t.leaf_label(v)};
        } else {
            for (int c : t.children(v))
                out[static_cast<size_t>(v)] =
                    set_union(out[static_cast<size_t>(v)], out[static_cast<size_t>(c)]);
        }
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Streaming candidate enumeration (reference enumerator; used by tests).
// ---------------------------------------------------------------------------

namespace {

struct CandidateStream {
    const CandidateBudget& budget;
    const std::function<bool(const ValuedTree&)>& emit;
    bool stopped = false;

    void offer(const ValuedTree& vt) {
        if (stopped) return;
        if (!emit(vt)) stopped = true;
    }

    // All contracted shapes (every internal node has >= 2 children) over the
    // given leaf set, one per leaf-isomorphism class.
    std::vector<RootedTree> shapes(const VertexSet& leaves) {
        if (leaves.size() == 1) {
            RootedTree t;
            t.add_node(-1, leaves[0]);
            return {t};
        }
        std::vector<RootedTree> out;
        // Partitions of `leaves` into >= 2 blocks; the block holding
        // leaves[0] is canonical, so each unordered partition appears once.
        std::vector<VertexSet> blocks;
        partition_rec(leaves, 0, blocks, out);
        return out;
    }

    void partition_rec(const VertexSet& leaves, size_t idx, std::vector<VertexSet>& blocks,
                       std::vector<RootedTree>& out) {
        if (idx == leaves.size()) {
            if (blocks.size() < 2) return;
            compose_blocks(blocks, out);
            return;
        }
        for (auto& b : blocks) {
            b.push_back(leaves[idx]);
            partition_rec(leaves, idx + 1, blocks, out);
            b.pop_back();
        }
        blocks.push_back({leaves[idx]});
        partition_rec(leaves, idx + 1, blocks, out);
        blocks.pop_back();
    }

    void compose_blocks(const std::vector<VertexSet>& blocks, std::vector<RootedTree>& out) {
        std::vector<std::vector<RootedTree>> options;
        for (const auto& b : blocks) options.push_back(shapes(b));
        std::vector<const RootedTree*> picked;
        compose_rec(options, 0, picked, out);
    }

    void compose_rec(const std::vector<std::vector<RootedTree>>& options, size_t idx,
                     std::vector<const RootedTree*>& picked, std::vector<RootedTree>& out) {
        if (idx == options.size()) {
            RootedTree t;
            int root = t.add_node(-1);
            for (const RootedTree* sub : picked) t.graft(*sub, sub->root, root);
            out.push_back(std::move(t));
            return;
        }
        for (const auto& sub : options[idx]) {
            picked.push_back(&sub);
            compose_rec(options, idx + 1, picked, out);
            picked.pop_back();
        }
    }

    // Insert 0..k unary nodes on each edge of the contracted shape, then
    // assign sigma values; prune against the budget as the tree grows.
    void expand(const RootedTree& shape) {
        std::vector<int> extras(static_cast<size_t>(shape.node_count()), 0);
        extras_rec(shape, 1, extras);
    }

    void extras_rec(const RootedTree& shape, int edge_to, std::vector<int>& extras) {
        if (stopped) return;
        if (edge_to == shape.node_count()) {
            build_expanded(shape, extras);
            return;
        }
        for (int e = 0; e <= budget.k; ++e) {
            extras[static_cast<size_t>(edge_to)] = e;
            extras_rec(shape, edge_to + 1, extras);
            if (stopped) return;
        }
        extras[static_cast<size_t>(edge_to)] = 0;
    }

    void build_expanded(const RootedTree& shape, const std::vector<int>& extras) {
        ValuedTree vt;
        int total = shape.node_count();
        for (int i = 1; i < total; ++i) total += extras[static_cast<size_t>(i)];
        if (total > budget.max_nodes) return;
        std::vector<int> image(static_cast<size_t>(shape.node_count()), -1);
        // Nodes of `shape` in preorder: parents precede children, and node 0
        // is the root by construction of shapes().
        image[0] = vt_add_node(vt, -1, shape.leaf_label(0), sigma_infinity);
        for (int v = 1; v < shape.node_count(); ++v) {
            int at = image[static_cast<size_t>(shape.parent(v))];
            for (int e = 0; e < extras[static_cast<size_t>(v)]; ++e)
                at = vt_add_node(vt, at, -1, sigma_infinity);
            image[static_cast<size_t>(v)] = vt_add_node(vt, at, shape.leaf_label(v), sigma_infinity);
        }
        if (vt.tree.height() > budget.max_height) return;
        std::vector<int> internals;
        for (int v = 0; v < vt.tree.node_count(); ++v)
            if (!vt.tree.is_leaf(v)) internals.push_back(v);
        sigma_rec(vt, internals, 0);
    }

    void sigma_rec(ValuedTree& vt, const std::vector<int>& internals, size_t idx) {
        if (stopped) return;
        if (idx == internals.size()) {
            offer(vt);
            return;
        }
        int node = internals[idx];
        vt.sigma[static_cast<size_t>(node)] = sigma_infinity;
        sigma_rec(vt, internals, idx + 1);
        for (int s = 0; s <= budget.k && !stopped; ++s) {
            vt.sigma[static_cast<size_t>(node)] = s;
            sigma_rec(vt, internals, idx + 1);
        }
        vt.sigma[static_cast<size_t>(node)] = sigma_infinity;
    }
};

}  // namespace

void candidate_valued_trees(const VertexSet& leaves, const CandidateBudget& budget,
                            const std::function<bool(const ValuedTree&)>& emit) {
    if (leaves.empty()) throw input_error("candidate enumeration needs at least one leaf");
    CandidateStream stream{budget, emit};
    if (leaves.size() == 1) {
        ValuedTree vt;
        vt_add_node(vt, -1, leaves[0], sigma_infinity);
        stream.offer(vt);
        return;
    }
    for (const RootedTree& shape : stream.shapes(leaves)) {
        stream.expand(shape);
        if (stream.stopped) return;
    }
}

// ---------------------------------------------------------------------------
// Join amalgams: every tree whose restrictions to the two leaf sets
// reproduce the two given entries, enumerated by structural merging.
// ---------------------------------------------------------------------------

namespace {

struct MergeNode;
using MergePtr = std::shared_ptr<const MergeNode>;

struct MergeNode {
    int leaf = -1;
    bool in_a = false, in_b = false;
    int sig_a = sigma_infinity, sig_b = sigma_infinity;
    std::vector<MergePtr> kids;
};

class Merger {
  public:
    Merger(const ValuedTree& a, const ValuedTree& b, long cap) : a_(a), b_(b), cap_(cap) {
        shared_ = set_intersection(a.tree.leaf_labels(), b.tree.leaf_labels());
        below_a_ = shared_below(a.tree);
        below_b_ = shared_below(b.tree);
        pure_a_.resize(static_cast<size_t>(a.tree.node_count()));
        pure_b_.resize(static_cast<size_t>(b.tree.node_count()));
    }

    std::vector<MergePtr> all_amalgams() {
        std::vector<MergePtr> out = merge(a_.tree.root, b_.tree.root);
        for (int na = 0; na < a_.tree.node_count(); ++na) {
            if (na == a_.tree.root || below_a_[static_cast<size_t>(na)] != shared_) continue;
            for (const MergePtr& fr : merge(na, b_.tree.root))
                out.push_back(replace_in_a(a_.tree.root, na, fr));
        }
        for (int nb = 0; nb < b_.tree.node_count(); ++nb) {
            if (nb == b_.tree.root || below_b_[static_cast<size_t>(nb)] != shared_) continue;
            for (const MergePtr& fr : merge(a_.tree.root, nb))
                out.push_back(replace_in_b(b_.tree.root, nb, fr));
        }
        return out;
    }

  private:
    std::vector<VertexSet> shared_below(const RootedTree& t) {
        auto below = labels_below(t);
        for (auto& s : below) s = set_intersection(s, shared_);
        return below;
    }

    MergePtr pure(const ValuedTree& src, int node, std::vector<MergePtr>& memo, bool side_a) {
        MergePtr& slot = memo[static_cast<size_t>(node)];
        if (slot) return slot;
        auto nd = std::make_shared<MergeNode>();
        nd->leaf = src.tree.leaf_label(node);
        (side_a ? nd->in_a : nd->in_b) = true;
        (side_a ? nd->sig_a : nd->sig_b) = src.sigma[static_cast<size_t>(node)];
        for (int c : src.tree.children(node))
            nd->kids.push_back(pure(src, c, memo, side_a));
        slot = std::move(nd);
        return slot;
    }

    MergePtr pure_a(int node) { return pure(a_, node, pure_a_, true); }
    MergePtr pure_b(int node) { return pure(b_, node, pure_b_, false); }

    MergePtr replace_in_a(int cur, int target, const MergePtr& fr) {
        if (cur == target) return fr;
        auto nd = std::make_shared<MergeNode>();
        nd->leaf = a_.tree.leaf_label(cur);
        nd->in_a = true;
        nd->sig_a = a_.sigma[static_cast<size_t>(cur)];
        for (int c : a_.tree.children(cur)) nd->kids.push_back(replace_in_a(c, target, fr));
        return nd;
    }

    MergePtr replace_in_b(int cur, int target, const MergePtr& fr) {
        if (cur == target) return fr;
        auto nd = std::make_shared<MergeNode>();
        nd->leaf = b_.tree.leaf_label(cur);
        nd->in_b = true;
        nd->sig_b = b_.sigma[static_cast<size_t>(cur)];
        for (int c : b_.tree.children(cur)) nd->kids.push_back(replace_in_b(c, target, fr));
        return nd;
    }

    // Trees whose restriction to each side's leaves equals that side's
    // subtree, with both subtree roots mapped to the produced root.
    std::vector<MergePtr> merge(int na, int nb) {
        auto key = std::make_pair(na, nb);
        auto hit = memo_.find(key);
        if (hit != memo_.end()) return hit->second;
        std::vector<MergePtr> out;
        bool la = a_.tree.is_leaf(na), lb = b_.tree.is_leaf(nb);
        if (la || lb) {
            if (la && lb && a_.tree.leaf_label(na) == b_.tree.leaf_label(nb)) {
                auto nd = std::make_shared<MergeNode>();
                nd->leaf = a_.tree.leaf_label(na);
                nd->in_a = nd->in_b = true;
                out.push_back(std::move(nd));
            }
            memo_.emplace(key, out);
            return out;
        }
        const auto& ca = a_.tree.children(na);
        const auto& cb = b_.tree.children(nb);
        std::vector<bool> used(cb.size(), false);
        std::vector<std::vector<MergePtr>> options;
        match_rec(na, nb, ca, cb, 0, used, options, out);
        memo_.emplace(key, out);
        return out;
    }

    // Injective partial matching between child branches: an unmatched branch
    // is copied verbatim (legal only when it holds no shared leaf), a matched
    // pair must carry identical shared leaf sets and merges recursively.
    void match_rec(int na, int nb, const std::vector<int>& ca, const std::vector<int>& cb,
                   size_t i, std::vector<bool>& used, std::vector<std::vector<MergePtr>>& options,
                   std::vector<MergePtr>& out) {
        if (i == ca.size()) {
            size_t base = options.size();
            for (size_t j = 0; j < cb.size(); ++j) {
                if (used[j]) continue;
                if (!below_b_[static_cast<size_t>(cb[j])].empty()) {
                    options.resize(base);
                    return;
                }
                options.push_back({pure_b(cb[j])});
            }
            compose(na, nb, options, out);
            options.resize(base);
            return;
        }
        int x = ca[i];
        if (below_a_[static_cast<size_t>(x)].empty()) {
            options.push_back({pure_a(x)});
            match_rec(na, nb, ca, cb, i + 1, used, options, out);
            options.pop_back();
        }
        for (size_t j = 0; j < cb.size(); ++j) {
            if (used[j] || below_a_[static_cast<size_t>(x)] != below_b_[static_cast<size_t>(cb[j])])
                continue;
            auto joined = merge(x, cb[j]);
            if (joined.empty()) continue;
            used[j] = true;
            options.push_back(std::move(joined));
            match_rec(na, nb, ca, cb, i + 1, used, options, out);
            options.pop_back();
            used[j] = false;
        }
    }

    void compose(int na, int nb, const std::vector<std::vector<MergePtr>>& options,
                 std::vector<MergePtr>& out) {
        std::vector<MergePtr> picked(options.size());
        compose_rec(na, nb, options, 0, picked, out);
    }

    void compose_rec(int na, int nb, const std::vector<std::vector<MergePtr>>& options, size_t idx,
                     std::vector<MergePtr>& picked, std::vector<MergePtr>& out) {
        if (idx == options.size()) {
            if (++produced_ > cap_)
                throw resource_error("join amalgam enumeration exceeded the candidate cap");
            auto nd = std::make_shared<MergeNode>();
            nd->in_a = nd->in_b = true;
            nd->sig_a = a_.sigma[static_cast<size_t>(na)];
            nd->sig_b = b_.sigma[static_cast<size_t>(nb)];
            nd->kids = picked;
            out.push_back(std::move(nd));
            return;
        }
        for (const MergePtr& opt : options[idx]) {
            picked[idx] = opt;
            compose_rec(na, nb, options, idx + 1, picked, out);
        }
        picked[idx].reset();
    }

    const ValuedTree& a_;
    const ValuedTree& b_;
    long cap_;
    long produced_ = 0;
    VertexSet shared_;
    std::vector<VertexSet> below_a_, below_b_;
    std::vector<MergePtr> pure_a_, pure_b_;
    std::map<std::pair<int, int>, std::vector<MergePtr>> memo_;
};

struct JoinCandidate {
    ValuedTree vt;
    std::vector<char> in_left, in_right;
    std::vector<int> sig_left, sig_right;
};

int realize_fragment(JoinCandidate& out, const MergePtr& fr, int parent) {
    int sigma = sigma_infinity;
    if (fr->in_a) sigma = std::min(sigma, fr->sig_a);
    if (fr->in_b) sigma = std::min(sigma, fr->sig_b);
    int id = vt_add_node(out.vt, parent, fr->leaf, sigma);
    out.in_left.push_back(fr->in_a ? 1 : 0);
    out.in_right.push_back(fr->in_b ? 1 : 0);
    out.sig_left.push_back(fr->sig_a);
    out.sig_right.push_back(fr->sig_b);
    for (const MergePtr& c : fr->kids) realize_fragment(out, c, id);
    return id;
}

}  // namespace

// ---------------------------------------------------------------------------
// DpEngine
// ---------------------------------------------------------------------------

DpEngine::DpEngine(const Graph& g, int z, int k, const DpOptions& opts)
    : g_(g), k_(k), opts_(opts), decomp_(build_nice_decomposition(g, z)) {
    if (k < 2) throw input_error("leaf power parameter k must be at least 2");
    tables_.resize(decomp_.nodes.size());
}

void DpEngine::run() {
    if (ran_) return;
    // Children precede parents in the builder's node order.
    for (size_t i = 0; i < decomp_.nodes.size(); ++i)
        tables_[i] = compute(static_cast<int>(i));
    ran_ = true;
}

DpEngine::Table DpEngine::compute(int node) {
    const DecompNode& nd = decomp_.at(node);
    switch (nd.kind) {
        case BagKind::Leaf:
            return dp_leaf(nd);
        case BagKind::Introduce:
            return dp_introduce(nd, tables_[static_cast<size_t>(nd.left)]);
        case BagKind::Forget:
            return dp_forget(nd, tables_[static_cast<size_t>(nd.left)]);
        case BagKind::Join:
            return dp_join(nd, tables_[static_cast<size_t>(nd.left)],
                           tables_[static_cast<size_t>(nd.right)]);
    }
    throw std::logic_error("unreachable decomposition node kind");
}

void DpEngine::insert_entry(Table& table, Entry entry) {
    if (static_cast<long>(table.size()) >= opts_.entry_cap)
        throw resource_error("table entry cap exceeded");
    std::string key = canonical_code(entry.vt);
    table.emplace(std::move(key), std::move(entry));
}

DpEngine::Table DpEngine::dp_leaf(const DecompNode& nd) {
    Table out;
    Entry e;
    e.kind = BagKind::Leaf;
    vt_add_node(e.vt, -1, nd.bag[0], sigma_infinity);
    insert_entry(out, std::move(e));
    return out;
}

namespace {

// Adjacency of the new leaf against every visible leaf, and clearance of
// every hidden leaf recorded in sigma.
bool introduce_ok(const Graph& g, const ValuedTree& cand, int vleaf, int vlabel, int k) {
    auto dist = distances_from(cand.tree, vleaf);
    for (int u = 0; u < cand.tree.node_count(); ++u) {
        if (u == vleaf) continue;
        if (cand.tree.is_leaf(u)) {
            if ((dist[static_cast<size_t>(u)] <= k) !=
                g.has_edge(vlabel, cand.tree.leaf_label(u)))
                return false;
        } else if (sigma_is_finite(cand.sigma[static_cast<size_t>(u)]) &&
                   dist[static_cast<size_t>(u)] + cand.sigma[static_cast<size_t>(u)] <= k) {
            return false;
        }
    }
    return true;
}

}  // namespace

DpEngine::Table DpEngine::dp_introduce(const DecompNode& nd, const Table& sub) {
    const int v = nd.special;
    const DecompNode& child = decomp_.at(nd.left);
    if (nd.frontier != set_union(child.frontier, VertexSet{v}))
        throw std::logic_error("introduce frontier identity violated");

    const int max_height = 3 * k_;
    const int max_nodes = 2 * static_cast<int>(nd.frontier.size()) * (3 * k_ + 2);
    long candidates = 0;
    Table out;

    for (const auto& [key, entry] : sub) {
        const ValuedTree& tj = entry.vt;
        auto consider = [&](ValuedTree&& cand, int vleaf) {
            if (++candidates > opts_.candidate_cap)
                throw resource_error("introduce candidate cap exceeded");
            if (cand.tree.node_count() > max_nodes || cand.tree.height() > max_height) return;
            if (!introduce_ok(g_, cand, vleaf, v, k_)) return;
            Entry e;
            e.vt = std::move(cand);
            e.kind = BagKind::Introduce;
            e.child_a = key;
            insert_entry(out, std::move(e));
        };
        // New leaf on a fresh chain under an existing internal node.
        for (int anchor = 0; anchor < tj.tree.node_count(); ++anchor) {
            if (tj.tree.is_leaf(anchor)) continue;
            for (int m = 0; m <= k_; ++m) {
                ValuedTree cand = tj;
                int at = anchor;
                for (int i = 0; i < m; ++i) at = vt_add_node(cand, at, -1, sigma_infinity);
                int vleaf = vt_add_node(cand, at, v, sigma_infinity);
                consider(std::move(cand), vleaf);
            }
        }
        // New root above the old tree, with the new leaf on its own branch.
        for (int a = 1; a <= k_ + 1; ++a) {
            for (int m = 0; m <= k_; ++m) {
                ValuedTree cand;
                int root = vt_add_node(cand, -1, -1, sigma_infinity);
                int at = root;
                for (int i = 1; i < a; ++i) at = vt_add_node(cand, at, -1, sigma_infinity);
                graft_valued(cand, at, tj, tj.tree.root);
                at = root;
                for (int i = 0; i < m; ++i) at = vt_add_node(cand, at, -1, sigma_infinity);
                int vleaf = vt_add_node(cand, at, v, sigma_infinity);
                consider(std::move(cand), vleaf);
            }
        }
    }
    return out;
}

DpEngine::Table DpEngine::dp_forget(const DecompNode& nd, const Table& sub) {
    const VertexSet& x = nd.frontier;
    const DecompNode& child = decomp_.at(nd.left);
    if (!set_is_subset(x, child.frontier))
        throw std::logic_error("forget frontier identity violated");

    Table out;
    for (const auto& [key, entry] : sub) {
        const ValuedTree& tj = entry.vt;
        // The surviving root must keep at least two branches with visible
        // leaves; otherwise the tree cannot stay a self-restriction.
        auto below = labels_below(tj.tree);
        int live_branches = 0;
        for (int c : tj.tree.children(tj.tree.root))
            if (!set_intersection(below[static_cast<size_t>(c)], x).empty()) ++live_branches;
        if (tj.tree.node_count() > 1 && live_branches < 2) continue;

        Restriction r = restrict_tree(tj.tree, x);
        std::vector<bool> kept(static_cast<size_t>(tj.tree.node_count()), false);
        for (int h : r.to_host) kept[static_cast<size_t>(h)] = true;

        ValuedTree vt;
        vt.tree = r.tree;
        vt.sigma.assign(static_cast<size_t>(r.tree.node_count()), sigma_infinity);
        bool sigma_ok = true;
        for (int w = 0; w < r.tree.node_count() && sigma_ok; ++w) {
            if (r.tree.is_leaf(w)) continue;
            int host = r.to_host[static_cast<size_t>(w)];
            int best = tj.sigma[static_cast<size_t>(host)];
            for (int c : tj.tree.children(host)) {
                if (kept[static_cast<size_t>(c)]) continue;
                // Walk the pruned subtree tracking the distance from `host`.
                std::vector<std::pair<int, int>> stack{{c, 1}};
                while (!stack.empty()) {
                    auto [node, depth] = stack.back();
                    stack.pop_back();
                    if (tj.tree.is_leaf(node)) {
                        best = std::min(best, depth);
                    } else if (sigma_is_finite(tj.sigma[static_cast<size_t>(node)])) {
                        best = std::min(best, tj.sigma[static_cast<size_t>(node)] + depth);
                    }
                    for (int cc : tj.tree.children(node)) stack.emplace_back(cc, depth + 1);
                }
            }
            if (sigma_is_finite(best) && best > k_) sigma_ok = false;
            vt.sigma[static_cast<size_t>(w)] = best;
        }
        if (!sigma_ok) continue;

        Entry e;
        e.vt = std::move(vt);
        e.kind = BagKind::Forget;
        e.child_a = key;
        insert_entry(out, std::move(e));
    }
    return out;
}

namespace {

// The three cross conditions a join candidate must satisfy.
bool join_ok(const Graph& g, const JoinCandidate& c, int k, const VertexSet& only_left,
             const VertexSet& only_right) {
    const RootedTree& t = c.vt.tree;
    const int n = t.node_count();
    for (int u = 0; u < n; ++u) {
        if (!t.is_leaf(u)) continue;
        int ulabel = t.leaf_label(u);
        auto dist = distances_from(t, u);
        for (int w = 0; w < n; ++w) {
            if (w == u) continue;
            if (t.is_leaf(w)) {
                if (w < u) continue;
                if ((dist[static_cast<size_t>(w)] <= k) != g.has_edge(ulabel, t.leaf_label(w)))
                    return false;
            } else {
                // Visible leaves hidden from one side must clear the other
                // side's hidden leaves.
                if (set_contains(only_left, ulabel) && c.in_right[static_cast<size_t>(w)] &&
                    sigma_is_finite(c.sig_right[static_cast<size_t>(w)]) &&
                    dist[static_cast<size_t>(w)] + c.sig_right[static_cast<size_t>(w)] <= k)
                    return false;
                if (set_contains(only_right, ulabel) && c.in_left[static_cast<size_t>(w)] &&
                    sigma_is_finite(c.sig_left[static_cast<size_t>(w)]) &&
                    dist[static_cast<size_t>(w)] + c.sig_left[static_cast<size_t>(w)] <= k)
                    return false;
            }
        }
    }
    // Hidden leaves of the two sides must clear each other.
    for (int wl = 0; wl < n; ++wl) {
        if (t.is_leaf(wl) || !c.in_left[static_cast<size_t>(wl)] ||
            !sigma_is_finite(c.sig_left[static_cast<size_t>(wl)]))
            continue;
        auto dist = distances_from(t, wl);
        for (int wr = 0; wr < n; ++wr) {
            if (t.is_leaf(wr) || !c.in_right[static_cast<size_t>(wr)] ||
                !sigma_is_finite(c.sig_right[static_cast<size_t>(wr)]))
                continue;
            if (c.sig_left[static_cast<size_t>(wl)] + dist[static_cast<size_t>(wr)] +
                    c.sig_right[static_cast<size_t>(wr)] <=
                k)
                return false;
        }
    }
    return true;
}

}  // namespace

DpEngine::Table DpEngine::dp_join(const DecompNode& nd, const Table& left, const Table& right) {
    const DecompNode& l = decomp_.at(nd.left);
    const DecompNode& r = decomp_.at(nd.right);
    if (nd.frontier != set_union(l.frontier, r.frontier))
        throw std::logic_error("join frontier identity violated");

    const VertexSet shared = set_intersection(l.frontier, r.frontier);
    const VertexSet only_left = set_difference(l.frontier, nd.bag);
    const VertexSet only_right = set_difference(r.frontier, nd.bag);
    const int max_height = 3 * k_;
    const int max_nodes = 2 * static_cast<int>(nd.frontier.size()) * (3 * k_ + 2);

    // Restriction of each entry to the shared leaves: a necessary match.
    auto shared_keys = [&](const Table& table) {
        std::map<std::string, std::vector<const Entry*>> groups;
        for (const auto& [key, entry] : table) {
            Restriction res = restrict_tree(entry.vt.tree, shared);
            groups[canonical_shape_code(res.tree)].push_back(&entry);
        }
        return groups;
    };
    auto lgroups = shared_keys(left);
    auto rgroups = shared_keys(right);

    long candidates = 0;
    Table out;
    for (const auto& [code, lentries] : lgroups) {
        auto hit = rgroups.find(code);
        if (hit == rgroups.end()) continue;
        for (const Entry* le : lentries) {
            for (const Entry* re : hit->second) {
                Merger merger(le->vt, re->vt, opts_.candidate_cap);
                for (const MergePtr& fr : merger.all_amalgams()) {
                    if (++candidates > opts_.candidate_cap)
                        throw resource_error("join candidate cap exceeded");
                    JoinCandidate cand;
                    realize_fragment(cand, fr, -1);
                    if (cand.vt.tree.node_count() > max_nodes ||
                        cand.vt.tree.height() > max_height)
                        continue;
                    if (!join_ok(g_, cand, k_, only_left, only_right)) continue;
                    Entry e;
                    e.vt = std::move(cand.vt);
                    e.kind = BagKind::Join;
                    e.child_a = canonical_code(le->vt);
                    e.child_b = canonical_code(re->vt);
                    insert_entry(out, std::move(e));
                }
            }
        }
    }
    return out;
}

std::vector<std::string> DpEngine::root_keys() {
    run();
    std::vector<std::string> out;
    for (const auto& [key, entry] : tables_[static_cast<size_t>(decomp_.root)]) out.push_back(key);
    return out;
}

const ValuedTree& DpEngine::root_entry(const std::string& key) {
    run();
    return tables_[static_cast<size_t>(decomp_.root)].at(key).vt;
}

RootedTree DpEngine::reconstruct(const std::string& root_key) {
    run();
    return rebuild(decomp_.root, root_key);
}

// Replays the provenance chain, grafting back the subtrees each restriction
// hid. Invariant: the result is a k-leaf root of G[V_i] whose valued
// restriction to the frontier is value-isomorphic to the stored entry.
RootedTree DpEngine::rebuild(int node, const std::string& key) {
    const DecompNode& nd = decomp_.at(node);
    const Entry& e = tables_[static_cast<size_t>(node)].at(key);

    auto graft_hidden = [](RootedTree& t, const Restriction& r, const RootedTree& witness,
                           const ValuedRestriction& vr, const std::vector<int>& iso) {
        for (int rn = 0; rn < r.tree.node_count(); ++rn) {
            int host_t = r.to_host[static_cast<size_t>(rn)];
            int w_node = vr.to_host[static_cast<size_t>(iso[static_cast<size_t>(rn)])];
            std::vector<int> kept;
            for (int c : vr.vt.tree.children(iso[static_cast<size_t>(rn)]))
                kept.push_back(vr.to_host[static_cast<size_t>(c)]);
            std::sort(kept.begin(), kept.end());
            for (int u : witness.children(w_node))
                if (!std::binary_search(kept.begin(), kept.end(), u))
                    t.graft(witness, u, host_t);
        }
    };

    switch (nd.kind) {
        case BagKind::Leaf:
            return e.vt.tree;
        case BagKind::Introduce: {
            RootedTree wj = rebuild(nd.left, e.child_a);
            const VertexSet& nj = decomp_.at(nd.left).frontier;
            Restriction r = restrict_tree(e.vt.tree, nj);
            ValuedRestriction vr = valued_restrict(wj, nj);
            auto iso = leaf_isomorphism(r.tree, vr.vt.tree);
            if (!iso) throw std::logic_error("introduce witness restriction mismatch");
            RootedTree t = e.vt.tree;
            graft_hidden(t, r, wj, vr, *iso);
            return t;
        }
        case BagKind::Forget: {
            RootedTree wj = rebuild(nd.left, e.child_a);
            const VertexSet& nj = decomp_.at(nd.left).frontier;
            ValuedRestriction vrj = valued_restrict(wj, nj);
            Restriction r2 = restrict_tree(vrj.vt.tree, nd.frontier);
            auto iso = leaf_isomorphism(e.vt.tree, r2.tree);
            if (!iso) throw std::logic_error("forget witness restriction mismatch");
            RootedTree t = e.vt.tree;
            for (int w = 0; w < e.vt.tree.node_count(); ++w) {
                int r2n = (*iso)[static_cast<size_t>(w)];
                int tjn = r2.to_host[static_cast<size_t>(r2n)];
                int wjn = vrj.to_host[static_cast<size_t>(tjn)];
                std::vector<int> kept_r2;
                for (int c : r2.tree.children(r2n))
                    kept_r2.push_back(r2.to_host[static_cast<size_t>(c)]);
                std::sort(kept_r2.begin(), kept_r2.end());
                std::vector<int> kept_w;
                for (int c : vrj.vt.tree.children(tjn)) {
                    kept_w.push_back(vrj.to_host[static_cast<size_t>(c)]);
                    if (!std::binary_search(kept_r2.begin(), kept_r2.end(), c))
                        t.graft(wj, vrj.to_host[static_cast<size_t>(c)], w);
                }
                std::sort(kept_w.begin(), kept_w.end());
                for (int u : wj.children(wjn))
                    if (!std::binary_search(kept_w.begin(), kept_w.end(), u)) t.graft(wj, u, w);
            }
            return t;
        }
        case BagKind::Join: {
            RootedTree wl = rebuild(nd.left, e.child_a);
            RootedTree wr = rebuild(nd.right, e.child_b);
            RootedTree t = e.vt.tree;
            for (int side = 0; side < 2; ++side) {
                const RootedTree& w = side == 0 ? wl : wr;
                const VertexSet& nf =
                    side == 0 ? decomp_.at(nd.left).frontier : decomp_.at(nd.right).frontier;
                Restriction r = restrict_tree(e.vt.tree, nf);
                ValuedRestriction vr = valued_restrict(w, nf);
                auto iso = leaf_isomorphism(r.tree, vr.vt.tree);
                if (!iso) throw std::logic_error("join witness restriction mismatch");
                graft_hidden(t, r, w, vr, *iso);
            }
            return t;
        }
    }
    throw std::logic_error("unreachable decomposition node kind");
}

// ---------------------------------------------------------------------------
// Public entry points
// ---------------------------------------------------------------------------

namespace {

bool entry_root_is_parent_of(const ValuedTree& vt, int z) {
    for (int c : vt.tree.children(vt.tree.root))
        if (vt.tree.is_leaf(c) && vt.tree.leaf_label(c) == z) return true;
    return false;
}

}  // namespace

std::vector<ValuedTree> enumerate_root_restrictions(const Graph& g, int z, int k,
                                                    const DpOptions& opts) {
    std::vector<ValuedTree> out;
    for (auto& re : enumerate_root_restrictions_with_witnesses(g, z, k, opts))
        out.push_back(std::move(re.restriction));
    return out;
}

std::vector<RootEnumeration> enumerate_root_restrictions_with_witnesses(const Graph& g, int z,
                                                                        int k,
                                                                        const DpOptions& opts) {
    if (k < 2) throw input_error("leaf power parameter k must be at least 2");
    if (z < 0 || z >= g.vertex_count()) throw input_error("root vertex out of range");
    if (!is_connected(g)) throw input_error("root enumeration requires a connected graph");
    std::vector<RootEnumeration> out;
    if (!is_chordal(g).chordal) return out;

    DpEngine engine(g, z, k, opts);
    engine.run();
    for (const std::string& key : engine.root_keys()) {
        const ValuedTree& vt = engine.root_entry(key);
        if (g.vertex_count() > 1 && !entry_root_is_parent_of(vt, z)) continue;
        out.push_back({vt, engine.reconstruct(key)});
    }
    return out;
}

RecognitionResult recognize_bounded_at(const Graph& g, int z, int k, const DpOptions& opts) {
    if (k < 2) throw input_error("leaf power parameter k must be at least 2");
    if (!is_connected(g)) throw input_error("bounded recognition requires a connected graph");
    if (g.max_degree() > opts.degree_ceiling)
        throw resource_error("maximum degree exceeds the configured ceiling");
    if (!is_chordal(g).chordal) return {};

    DpEngine engine(g, z, k, opts);
    engine.run();
    auto keys = engine.root_keys();
    if (keys.empty()) return {};
    // Prefer an entry whose witness is rooted at the parent of z.
    for (const std::string& key : keys)
        if (entry_root_is_parent_of(engine.root_entry(key), z))
            return {true, engine.reconstruct(key)};
    return {true, engine.reconstruct(keys.front())};
}

RecognitionResult recognize_bounded(const Graph& g, int k, const DpOptions& opts) {
    return recognize_bounded_at(g, 0, k, opts);
}

}  // namespace leafpower
