#include "leafpower/similar.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "leafpower/errors.hpp"

namespace leafpower {

namespace {

VertexSet union_all(const std::vector<VertexSet>& sets) {
    VertexSet out;
    for (const auto& s : sets) out = set_union(out, s);
    return out;
}

VertexSet component_neighborhood(const Graph& g, const VertexSet& comp) {
    return set_difference(neighbors_open(g, comp), comp);
}

}  // namespace

StructureCheck validate_similar_structure(const Graph& g, const SimilarStructure& s, int k) {
    auto fail = [](std::string msg) { return StructureCheck{false, std::move(msg)}; };
    const size_t d = s.c_sets.size();
    if (d < 2) return fail("group-count: need at least two C sets");
    if (s.y_sets.size() != d || s.layers.size() != d)
        return fail("group-count: Y sets and layers must match the C sets");
    if (s.z < 0 || s.z >= g.vertex_count()) return fail("anchor-component: z out of range");

    for (size_t i = 0; i < d; ++i) {
        if (s.c_sets[i].empty()) return fail("c-disjoint: empty C set");
        if (set_contains(s.c_sets[i], s.z) || set_contains(s.y_sets[i], s.z))
            return fail("z-outside: z inside a group");
        for (size_t j = i + 1; j < d; ++j) {
            if (!set_intersection(s.c_sets[i], s.c_sets[j]).empty())
                return fail("c-disjoint: C sets overlap");
            if (!set_intersection(s.y_sets[i], s.y_sets[j]).empty())
                return fail("y-disjoint: Y sets overlap");
        }
        for (size_t j = 0; j < d; ++j)
            if (!set_intersection(s.c_sets[i], s.y_sets[j]).empty())
                return fail("cy-disjoint: a C set overlaps a Y set");
    }

    for (size_t i = 0; i < d; ++i) {
        VertexSet domain;
        for (const auto& [v, l] : s.layers[i]) domain.push_back(v);
        std::sort(domain.begin(), domain.end());
        if (domain != set_union(s.c_sets[i], VertexSet{s.z}))
            return fail("layer-domain: layering must cover exactly C_i and z");
        for (const auto& [v, l] : s.layers[i]) {
            if (v == s.z) {
                if (l != 0) return fail("layer-range: z must sit on layer 0");
            } else if (l < 1 || l > k) {
                return fail("layer-range: C layers must lie in 1..k");
            }
        }
    }

    // Component conditions.
    const VertexSet c_all = union_all(s.c_sets);
    VertexSet rest;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!set_contains(c_all, v)) rest.push_back(v);
    auto sub = induced_subgraph(g, rest);
    int anchor_comp = -1;
    std::vector<VertexSet> comps;
    for (const auto& comp_sub : connected_components(sub.graph)) {
        VertexSet comp;
        for (int v : comp_sub) comp.push_back(sub.to_host[static_cast<size_t>(v)]);
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    std::vector<VertexSet> expected_y(d);
    for (const auto& comp : comps) {
        VertexSet nb = component_neighborhood(g, comp);
        bool meets_all = true;
        for (size_t i = 0; i < d; ++i)
            if (set_intersection(nb, s.c_sets[i]).empty()) meets_all = false;
        if (meets_all) {
            if (anchor_comp != -1) return fail("anchor-component: two components meet every C set");
            anchor_comp = static_cast<int>(&comp - comps.data());
            continue;
        }
        bool placed = false;
        for (size_t i = 0; i < d; ++i)
            if (!nb.empty() && set_is_subset(nb, s.c_sets[i])) {
                expected_y[i] = set_union(expected_y[i], comp);
                placed = true;
                break;
            }
        if (!placed) return fail("stray-component: a component hangs off several groups");
    }
    if (anchor_comp < 0) return fail("anchor-component: no component meets every C set");
    if (!set_contains(comps[static_cast<size_t>(anchor_comp)], s.z))
        return fail("anchor-component: z outside the anchor component");
    if (!set_is_subset(c_all, VertexSet(g.neighbors(s.z))))
        return fail("anchor-component: z misses a C vertex");
    for (size_t i = 0; i < d; ++i)
        if (expected_y[i] != s.y_sets[i])
            return fail("y-composition: Y_" + std::to_string(i + 1) +
                        " differs from the hanging components");

    // Layer-driven adjacency properties.
    for (size_t i = 0; i < d; ++i) {
        for (size_t j = i; j < d; ++j) {
            for (const auto& [x, lx] : s.layers[i]) {
                for (const auto& [y, ly] : s.layers[j]) {
                    if (x == y) continue;
                    if (lx + ly <= k && !g.has_edge(x, y))
                        return fail("layer-sum-adjacency: close layers without an edge");
                    if (i != j && lx + ly > k && g.has_edge(x, y))
                        return fail("layer-sum-separation: distant layers with an edge");
                    if (lx == ly) {
                        VertexSet excl = set_union(set_union(s.c_sets[i], s.y_sets[i]),
                                                   set_union(s.c_sets[j], s.y_sets[j]));
                        VertexSet nx = set_difference(VertexSet(g.neighbors(x)), excl);
                        VertexSet ny = set_difference(VertexSet(g.neighbors(y)), excl);
                        if (nx != ny)
                            return fail("equal-layer-neighborhoods: equal layers with "
                                        "different outside neighborhoods");
                    }
                }
            }
        }
    }
    return {};
}

std::optional<SimilarStructure> derive_y_and_z(const Graph& g,
                                               const std::vector<VertexSet>& c_sets) {
    const size_t d = c_sets.size();
    if (d < 2) return std::nullopt;
    for (size_t i = 0; i < d; ++i) {
        if (c_sets[i].empty()) return std::nullopt;
        for (size_t j = i + 1; j < d; ++j)
            if (!set_intersection(c_sets[i], c_sets[j]).empty()) return std::nullopt;
    }
    const VertexSet c_all = union_all(c_sets);
    VertexSet rest;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!set_contains(c_all, v)) rest.push_back(v);
    auto sub = induced_subgraph(g, rest);

    SimilarStructure out;
    out.c_sets = c_sets;
    out.y_sets.assign(d, {});
    out.layers.assign(d, {});
    int anchors = 0;
    VertexSet anchor_comp;
    for (const auto& comp_sub : connected_components(sub.graph)) {
        VertexSet comp;
        for (int v : comp_sub) comp.push_back(sub.to_host[static_cast<size_t>(v)]);
        std::sort(comp.begin(), comp.end());
        VertexSet nb = component_neighborhood(g, comp);
        bool meets_all = true;
        for (size_t i = 0; i < d; ++i)
            if (set_intersection(nb, c_sets[i]).empty()) meets_all = false;
        if (meets_all) {
            ++anchors;
            anchor_comp = comp;
            continue;
        }
        bool placed = false;
        for (size_t i = 0; i < d && !placed; ++i)
            if (!nb.empty() && set_is_subset(nb, c_sets[i])) {
                out.y_sets[i] = set_union(out.y_sets[i], comp);
                placed = true;
            }
        if (!placed) return std::nullopt;
    }
    if (anchors != 1) return std::nullopt;
    out.z = -1;
    for (int v : anchor_comp)
        if (set_is_subset(c_all, VertexSet(g.neighbors(v)))) {
            out.z = v;
            break;
        }
    if (out.z < 0) return std::nullopt;
    return out;
}

SignatureSet accept_set(const Graph& g, const SimilarStructure& s, size_t i, int k,
                        const DpOptions& opts) {
    if (i >= s.c_sets.size()) throw input_error("group index out of range");
    VertexSet x = set_union(set_union(s.c_sets[i], s.y_sets[i]), VertexSet{s.z});
    auto sub = induced_subgraph(g, x);
    if (sub.graph.max_degree() > opts.degree_ceiling)
        throw resource_error("group subgraph exceeds the configured degree ceiling");
    Layering sub_layers;
    for (const auto& [v, l] : s.layers[i]) sub_layers[sub.to_sub[static_cast<size_t>(v)]] = l;
    SignatureSet out;
    for (const ValuedTree& vt :
         enumerate_root_restrictions(sub.graph, sub.to_sub[static_cast<size_t>(s.z)], k, opts))
        out.insert(signature(vt, sub_layers, k));
    return out;
}

bool is_homogeneous(const Graph& g, const SimilarStructure& s, int k, const DpOptions& opts) {
    SignatureSet first = accept_set(g, s, 0, k, opts);
    if (first.empty()) return false;
    for (size_t i = 1; i < s.c_sets.size(); ++i)
        if (!(accept_set(g, s, i, k, opts) == first)) return false;
    return true;
}

PruneResult prune(const Graph& g, const SimilarStructure& s) {
    // Homogeneity is the caller's obligation (checking it here would redo the
    // accept-set enumeration); structural validity is cheap, so insist on it.
    if (s.c_sets.size() < 2) throw input_error("pruning needs at least two groups");
    VertexSet removed = set_union(s.c_sets[0], s.y_sets[0]);
    VertexSet keep;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!set_contains(removed, v)) keep.push_back(v);
    auto sub = induced_subgraph(g, keep);
    return {sub.graph, sub.to_host};
}

namespace {

// Everything needed to navigate one group's restriction: the restriction of
// the carrier tree to C_i + {z}, per-node subtree signature codes, a map from
// restriction nodes to carrier nodes, and its partial inverse.
struct GroupView {
    ValuedTree vt;                  // restriction of the carrier to C_i + {z}
    std::vector<int> to_carrier;    // restriction node -> carrier node
    std::vector<int> from_carrier;  // carrier node -> restriction node or -1
    std::vector<std::string> code;  // restriction node -> subtree signature code
};

GroupView make_group_view(const RootedTree& carrier, const VertexSet& visible,
                          const Layering& layers, int k) {
    GroupView view;
    ValuedRestriction vr = valued_restrict(carrier, visible);
    view.vt = vr.vt;
    view.to_carrier = vr.to_host;
    view.from_carrier.assign(static_cast<size_t>(carrier.node_count()), -1);
    for (int i = 0; i < view.vt.tree.node_count(); ++i)
        view.from_carrier[static_cast<size_t>(view.to_carrier[static_cast<size_t>(i)])] = i;
    auto sigs = node_signatures(view.vt, layers, k);
    view.code.reserve(sigs.size());
    for (auto& sig : sigs) view.code.push_back(std::move(sig.code));
    return view;
}

}  // namespace

RootedTree insert_back(const Graph& g, const SimilarStructure& s, const RootedTree& pruned_root,
                       const RootedTree& t1_star, int k) {
    const size_t d = s.c_sets.size();
    if (d < 3) throw input_error("reinsertion needs at least three groups");
    VertexSet removed = set_union(s.c_sets[0], s.y_sets[0]);
    VertexSet expected_carrier;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!set_contains(removed, v)) expected_carrier.push_back(v);
    if (pruned_root.leaf_labels() != expected_carrier)
        throw input_error("carrier tree must cover exactly the pruned graph");
    if (t1_star.leaf_labels() != set_union(removed, VertexSet{s.z}))
        throw input_error("first-group witness must cover its group plus z");

    // Restrictions of the carrier for groups 2..d; find two with equal
    // root signatures.
    std::vector<GroupView> views(d);
    for (size_t i = 1; i < d; ++i) {
        VertexSet full = set_union(set_union(s.c_sets[i], s.y_sets[i]), VertexSet{s.z});
        Restriction star = restrict_tree(pruned_root, full);
        GroupView inner = make_group_view(star.tree, set_union(s.c_sets[i], VertexSet{s.z}),
                                          s.layers[i], k);
        // Rebase the view onto the carrier tree itself.
        for (int& node : inner.to_carrier) node = star.to_host[static_cast<size_t>(node)];
        inner.from_carrier.assign(static_cast<size_t>(pruned_root.node_count()), -1);
        for (int j = 0; j < inner.vt.tree.node_count(); ++j)
            inner.from_carrier[static_cast<size_t>(inner.to_carrier[static_cast<size_t>(j)])] = j;
        views[i] = std::move(inner);
    }
    size_t pick2 = 0, pick3 = 0;
    for (size_t i = 1; i < d && pick2 == 0; ++i)
        for (size_t j = i + 1; j < d && pick2 == 0; ++j)
            if (views[i].code[static_cast<size_t>(views[i].vt.tree.root)] ==
                views[j].code[static_cast<size_t>(views[j].vt.tree.root)]) {
                pick2 = i;
                pick3 = j;
            }
    if (pick2 == 0)
        throw input_error("no two groups accept the same restriction signature");

    GroupView view1 = make_group_view(t1_star, set_union(s.c_sets[0], VertexSet{s.z}),
                                      s.layers[0], k);
    const GroupView& view2 = views[pick2];
    const GroupView& view3 = views[pick3];
    if (view1.code[static_cast<size_t>(view1.vt.tree.root)] !=
        view2.code[static_cast<size_t>(view2.vt.tree.root)])
        throw input_error("first group's witness does not match the accepted signature");

    RootedTree out = pruned_root;

    // Walk the matched restrictions in lockstep; (t, r) are corresponding
    // nodes of t1_star and the carrier with equal subtree signatures.
    std::function<void(int, int)> weave = [&](int t, int r) {
        int p1 = view1.from_carrier[static_cast<size_t>(t)];
        int r2 = view2.from_carrier[static_cast<size_t>(r)];
        int r3 = view3.from_carrier[static_cast<size_t>(r)];
        if (p1 < 0 || r2 < 0 || r3 < 0)
            throw input_error("reinsertion walked outside the matched restrictions");

        std::vector<int> kept;
        for (int c : view1.vt.tree.children(p1))
            kept.push_back(view1.to_carrier[static_cast<size_t>(c)]);
        std::sort(kept.begin(), kept.end());
        for (int u : t1_star.children(t))
            if (!std::binary_search(kept.begin(), kept.end(), u)) out.graft(t1_star, u, r);

        for (int c : view1.vt.tree.children(p1)) {
            const std::string& code = view1.code[static_cast<size_t>(c)];
            int duplicates = 0;
            for (int c2 : view1.vt.tree.children(p1))
                if (view1.code[static_cast<size_t>(c2)] == code) ++duplicates;
            if (duplicates >= 2) {
                out.graft(t1_star, view1.to_carrier[static_cast<size_t>(c)], r);
                continue;
            }
            auto unique_child = [&](const GroupView& view, int parent) {
                int found = -1;
                for (int u : view.vt.tree.children(parent))
                    if (view.code[static_cast<size_t>(u)] == code) {
                        if (found >= 0) return -1;
                        found = u;
                    }
                return found;
            };
            int u2 = unique_child(view2, r2);
            int u3 = unique_child(view3, r3);
            if (u2 < 0 || u3 < 0)
                throw input_error("matched signature lost during reinsertion");
            int u2c = view2.to_carrier[static_cast<size_t>(u2)];
            int u3c = view3.to_carrier[static_cast<size_t>(u3)];
            if (u2c != u3c) {
                out.graft(t1_star, view1.to_carrier[static_cast<size_t>(c)], r);
            } else if (pruned_root.is_leaf(u2c) && pruned_root.leaf_label(u2c) == s.z) {
                // z is already present in the carrier.
            } else {
                weave(view1.to_carrier[static_cast<size_t>(c)], u2c);
            }
        }
    };
    weave(t1_star.root, pruned_root.root);
    return out;
}

namespace {

struct LayerSearch {
    const Graph& g;
    const SimilarStructure& base;
    int k;
    long& budget;
    std::vector<std::pair<size_t, int>> slots;  // (group, vertex)
    std::map<std::pair<size_t, int>, int> value;

    bool compatible(size_t gi, int x, int lx) {
        for (const auto& [slot, ly] : value) {
            auto [gj, y] = slot;
            bool edge = g.has_edge(x, y);
            if (gi == gj) {
                if (!edge && lx + ly <= k) return false;
            } else {
                if (edge != (lx + ly <= k)) return false;
            }
            if (lx == ly) {
                VertexSet excl = set_union(
                    set_union(base.c_sets[gi], base.y_sets[gi]),
                    set_union(base.c_sets[gj], base.y_sets[gj]));
                VertexSet nx = set_difference(VertexSet(g.neighbors(x)), excl);
                VertexSet ny = set_difference(VertexSet(g.neighbors(y)), excl);
                if (nx != ny) return false;
            }
        }
        return true;
    }

    // Enumerates adjacency-consistent layer assignments; `accept` decides
    // whether a complete one wins (homogeneity is not determined by the
    // adjacency constraints, so rejected assignments keep the search going).
    bool assign(size_t idx, const std::function<bool(std::vector<Layering>&)>& accept) {
        if (budget-- <= 0) return false;
        if (idx == slots.size()) {
            std::vector<Layering> layers(base.c_sets.size());
            for (size_t i = 0; i < base.c_sets.size(); ++i) layers[i][base.z] = 0;
            for (const auto& [slot, l] : value) layers[slot.first][slot.second] = l;
            return accept(layers);
        }
        auto [gi, x] = slots[idx];
        for (int l = 1; l <= k; ++l) {
            if (!compatible(gi, x, l)) continue;
            value[slots[idx]] = l;
            if (assign(idx + 1, accept)) return true;
            value.erase(slots[idx]);
            if (budget <= 0) return false;
        }
        return false;
    }
};

bool try_structure(const Graph& g, SimilarStructure& st, int k, long& budget,
                   const DpOptions& opts) {
    LayerSearch search{g, st, k, budget, {}, {}};
    for (size_t i = 0; i < st.c_sets.size(); ++i)
        for (int x : st.c_sets[i]) search.slots.emplace_back(i, x);
    return search.assign(0, [&](std::vector<Layering>& layers) {
        st.layers = layers;
        if (!validate_similar_structure(g, st, k).ok) return false;
        return is_homogeneous(g, st, k, opts);
    });
}

void candidate_combinations(const std::vector<VertexSet>& candidates, size_t start,
                            std::vector<VertexSet>& chosen, size_t want, long& budget,
                            const std::function<bool(const std::vector<VertexSet>&)>& attempt,
                            bool& done) {
    if (done || budget <= 0) return;
    if (chosen.size() == want) {
        --budget;
        done = attempt(chosen);
        return;
    }
    for (size_t i = start; i < candidates.size() && !done; ++i) {
        bool disjoint = true;
        for (const auto& c : chosen)
            if (!set_intersection(c, candidates[i]).empty()) disjoint = false;
        if (!disjoint) continue;
        chosen.push_back(candidates[i]);
        candidate_combinations(candidates, i + 1, chosen, want, budget, attempt, done);
        chosen.pop_back();
    }
}

void subsets_up_to(const std::vector<int>& pool, size_t start, VertexSet& cur, int c_max,
                   std::vector<VertexSet>& out) {
    if (!cur.empty()) out.push_back(cur);
    if (static_cast<int>(cur.size()) >= c_max) return;
    for (size_t i = start; i < pool.size(); ++i) {
        cur.push_back(pool[i]);
        subsets_up_to(pool, i + 1, cur, c_max, out);
        cur.pop_back();
    }
}

}  // namespace

namespace {

std::optional<SimilarStructure> search_with_group_count(const Graph& g, int k, int group_count,
                                                        const PruneParams& params, long& budget,
                                                        const DpOptions& opts) {
    for (int z = 0; z < g.vertex_count() && budget > 0; ++z) {
        if (g.degree(z) == 0) continue;
        VertexSet beyond;
        VertexSet nz_closed = set_union(VertexSet(g.neighbors(z)), VertexSet{z});
        for (int v = 0; v < g.vertex_count(); ++v)
            if (!set_contains(nz_closed, v)) beyond.push_back(v);

        std::vector<VertexSet> candidates;
        if (params.exhaustive) {
            VertexSet cur;
            std::vector<int> pool = g.neighbors(z);
            subsets_up_to(pool, 0, cur, params.c_max, candidates);
        } else {
            auto sub = induced_subgraph(g, beyond);
            std::vector<VertexSet> seen;
            for (const auto& comp_sub : connected_components(sub.graph)) {
                VertexSet comp;
                for (int v : comp_sub) comp.push_back(sub.to_host[static_cast<size_t>(v)]);
                std::sort(comp.begin(), comp.end());
                VertexSet boundary = component_neighborhood(g, comp);
                if (boundary.empty() || static_cast<int>(boundary.size()) > params.c_max)
                    continue;
                if (std::find(seen.begin(), seen.end(), boundary) == seen.end())
                    seen.push_back(boundary);
            }
            candidates = std::move(seen);
        }
        std::sort(candidates.begin(), candidates.end());
        if (static_cast<int>(candidates.size()) < group_count) continue;

        std::optional<SimilarStructure> found;
        auto attempt = [&](const std::vector<VertexSet>& chosen) {
            auto st = derive_y_and_z(g, chosen);
            if (!st) return false;
            if (!try_structure(g, *st, k, budget, opts)) return false;
            found = std::move(st);
            return true;
        };
        std::vector<VertexSet> chosen;
        bool done = false;
        candidate_combinations(candidates, 0, chosen, static_cast<size_t>(group_count), budget,
                               attempt, done);
        if (found) return found;
    }
    return std::nullopt;
}

}  // namespace

std::optional<SimilarStructure> find_homogeneous_structure(const Graph& g, int k,
                                                           const PruneParams& params,
                                                           const DpOptions& opts) {
    if (params.group_count < 3)
        throw input_error("structure search needs at least three groups");
    long budget = params.budget;
    // Witness re-extension needs three groups; prefer the configured count
    // and fall back to smaller families when none of that size exists.
    for (int want = params.group_count; want >= 3 && budget > 0; --want) {
        auto found = search_with_group_count(g, k, want, params, budget, opts);
        if (found) return found;
    }
    return std::nullopt;
}

}  // namespace leafpower
