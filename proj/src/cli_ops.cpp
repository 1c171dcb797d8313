#include "leafpower/cli_ops.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "leafpower/decomposition.hpp"
#include "leafpower/dp.hpp"
#include "leafpower/errors.hpp"
#include "leafpower/generator.hpp"
#include "leafpower/io.hpp"
#include "leafpower/oracle.hpp"

namespace leafpower {

namespace {

void log_line(const RunConfig& cfg, int level, const std::string& msg) {
    if (cfg.log_level >= level) std::cerr << "[leafpower] " << msg << "\n";
}

DpOptions dp_options(const RunConfig& cfg) {
    DpOptions opts;
    opts.degree_ceiling = cfg.degree_ceiling;
    return opts;
}

PruneParams prune_params(const RunConfig& cfg) {
    PruneParams params;
    params.group_count = cfg.prune_l;
    params.c_max = cfg.prune_cmax;
    params.budget = cfg.prune_budget;
    params.exhaustive = cfg.exhaustive_structure_search;
    return params;
}

RootedTree relabel_leaves(const RootedTree& t, const std::vector<int>& to_host) {
    RootedTree out;
    out.graft(t, t.root, -1);
    for (int v : out.leaves())
        out.set_leaf_label(v, to_host[static_cast<size_t>(out.leaf_label(v))]);
    return out;
}

struct ComponentOutcome {
    bool yes = false;
    std::optional<RootedTree> witness;
    std::string engine;
    int prunes = 0;
    std::vector<std::string> notes;
};

ComponentOutcome recognize_component(const Graph& g, const RunConfig& cfg, int depth);

// The pruning branch: find a homogeneous structure, remove its first group,
// recognize the rest, and extend the witness back over the removed part.
std::optional<ComponentOutcome> try_prune(const Graph& g, const RunConfig& cfg, int depth) {
    auto st = find_homogeneous_structure(g, cfg.k, prune_params(cfg), dp_options(cfg));
    if (!st) return std::nullopt;
    log_line(cfg, 1, "pruning a homogeneous structure with " +
                         std::to_string(st->c_sets.size()) + " groups around z=" +
                         std::to_string(st->z));
    PruneResult pruned = prune(g, *st);
    ComponentOutcome inner = recognize_component(pruned.graph, cfg, depth + 1);
    ComponentOutcome out;
    out.engine = "prune+" + inner.engine;
    out.prunes = inner.prunes + 1;
    out.notes = inner.notes;
    if (!inner.yes) return out;  // verdict transfers: the structure is homogeneous

    VertexSet x1 = set_union(set_union(st->c_sets[0], st->y_sets[0]), VertexSet{st->z});
    auto sub1 = induced_subgraph(g, x1);
    auto candidates = enumerate_root_restrictions_with_witnesses(
        sub1.graph, sub1.to_sub[static_cast<size_t>(st->z)], cfg.k, dp_options(cfg));
    auto try_carrier = [&](const RootedTree& carrier) {
        for (const RootEnumeration& cand : candidates) {
            RootedTree t1_star = relabel_leaves(cand.witness, sub1.to_host);
            RootedTree extended;
            try {
                extended = insert_back(g, *st, carrier, t1_star, cfg.k);
            } catch (const input_error&) {
                continue;  // this candidate's signature does not match; try the next
            }
            VerifyResult check = verify_k_leaf_root(g, extended, cfg.k);
            if (!check.ok)
                throw resource_error("pruned witness failed re-verification: " +
                                     check.message);
            out.yes = true;
            out.witness = std::move(extended);
            return true;
        }
        return false;
    };

    if (try_carrier(reroot_at_parent_of(relabel_leaves(*inner.witness, pruned.to_host),
                                        st->z)))
        return out;

    // The recognizer's one witness may realize the remaining groups with
    // distinct accepted signatures even though some other valid root realizes
    // two alike, which is what the reinsertion needs. Retry with every
    // accepted root shape of the pruned graph before giving up.
    if (pruned.graph.max_degree() <= cfg.degree_ceiling) {
        log_line(cfg, 1, "first carrier rejected every first-group witness; "
                         "retrying over all accepted carriers");
        int z_pruned = -1;
        for (size_t i = 0; i < pruned.to_host.size(); ++i)
            if (pruned.to_host[i] == st->z) z_pruned = static_cast<int>(i);
        try {
            auto carriers = enumerate_root_restrictions_with_witnesses(
                pruned.graph, z_pruned, cfg.k, dp_options(cfg));
            for (const RootEnumeration& ce : carriers) {
                if (try_carrier(reroot_at_parent_of(
                        relabel_leaves(ce.witness, pruned.to_host), st->z)))
                    return out;
            }
        } catch (const resource_error&) {
            // enumeration blew a cap; report the carrier failure below instead
        }
    }
    throw resource_error("no first-group witness matched the accepted signatures");
}

ComponentOutcome recognize_component(const Graph& g, const RunConfig& cfg, int depth) {
    if (depth > g.vertex_count() + 1)
        throw resource_error("prune recursion exceeded the vertex count");
    ComponentOutcome out;
    if (g.vertex_count() == 1) {
        RootedTree t;
        t.add_node(-1, 0);
        out.yes = true;
        out.witness = std::move(t);
        out.engine = "trivial";
        return out;
    }
    if (!is_chordal(g).chordal) {
        out.engine = "chordal-gate";
        out.notes.push_back("component is not chordal");
        return out;
    }

    const bool dp_fits = g.max_degree() <= cfg.degree_ceiling;
    const bool oracle_fits = g.vertex_count() <= cfg.oracle_limit;

    auto run_dp = [&]() {
        log_line(cfg, 1, "running the table computation on " +
                             std::to_string(g.vertex_count()) + " vertices");
        RecognitionResult r = recognize_bounded_at(g, 0, cfg.k, dp_options(cfg));
        out.yes = r.is_leaf_power;
        out.witness = std::move(r.witness);
        out.engine = "dp";
        return out;
    };
    auto run_oracle = [&]() {
        log_line(cfg, 1, "running the exhaustive oracle on " +
                             std::to_string(g.vertex_count()) + " vertices");
        OracleResult r = oracle_is_k_leaf_power(g, cfg.k, cfg.oracle_limit);
        out.yes = r.is_leaf_power;
        out.witness = std::move(r.witness);
        out.engine = "oracle";
        return out;
    };

    if (cfg.engine == "dp") {
        if (!dp_fits)
            throw resource_error("maximum degree exceeds the ceiling and engine is dp");
        return run_dp();
    }
    if (cfg.engine == "oracle") {
        return run_oracle();  // enforces its own size limit
    }
    if (cfg.engine == "prune+dp") {
        if (dp_fits) return run_dp();
        auto pruned = try_prune(g, cfg, depth);
        if (pruned) return *pruned;
        throw resource_error("no homogeneous structure found above the degree ceiling");
    }
    if (cfg.engine != "auto") throw input_error("unknown engine: " + cfg.engine);

    if (dp_fits) {
        try {
            return run_dp();
        } catch (const resource_error& e) {
            out = ComponentOutcome{};
            out.notes.push_back(std::string("table computation gave up: ") + e.what());
            log_line(cfg, 1, out.notes.back());
        }
    }
    try {
        auto pruned = try_prune(g, cfg, depth);
        if (pruned) {
            pruned->notes.insert(pruned->notes.begin(), out.notes.begin(), out.notes.end());
            return *pruned;
        }
    } catch (const resource_error& e) {
        out.notes.push_back(std::string("pruning gave up: ") + e.what());
        log_line(cfg, 1, out.notes.back());
    }
    if (oracle_fits) {
        auto notes = out.notes;
        out = run_oracle();
        out.notes.insert(out.notes.begin(), notes.begin(), notes.end());
        return out;
    }
    throw resource_error("no engine applies: degree " + std::to_string(g.max_degree()) +
                         " over ceiling, no homogeneous structure, " +
                         std::to_string(g.vertex_count()) + " vertices over the oracle limit");
}

}  // namespace

RecognitionReport recognize_graph(const Graph& g, const RunConfig& cfg) {
    if (cfg.k < 2) throw input_error("k must be at least 2");
    if (g.vertex_count() == 0) throw input_error("graph has no vertices");

    RecognitionReport report;
    std::vector<VertexSet> comps = connected_components(g);
    std::vector<RootedTree> witnesses;
    for (const VertexSet& comp : comps) {
        ComponentOutcome outcome;
        if (comps.size() == 1) {
            outcome = recognize_component(g, cfg, 0);
            if (outcome.witness) witnesses.push_back(std::move(*outcome.witness));
        } else {
            auto sub = induced_subgraph(g, comp);
            outcome = recognize_component(sub.graph, cfg, 0);
            if (outcome.witness)
                witnesses.push_back(relabel_leaves(*outcome.witness, sub.to_host));
        }
        report.engines.push_back(outcome.engine);
        report.prune_count += outcome.prunes;
        report.notes.insert(report.notes.end(), outcome.notes.begin(), outcome.notes.end());
        if (!outcome.yes) {
            report.is_leaf_power = false;
            return report;
        }
    }
    report.is_leaf_power = true;
    if (witnesses.size() == 1) {
        report.witness = std::move(witnesses.front());
    } else {
        // A fresh root with every component witness hanging at depth
        // ceil((k+1)/2): within-component distances are untouched and
        // cross-component leaf distances are at least 2*ceil((k+1)/2) > k.
        RootedTree joined;
        int root = joined.add_node(-1);
        int drop = (cfg.k + 2) / 2;
        for (const RootedTree& w : witnesses) {
            int anchor = root;
            for (int i = 1; i < drop; ++i) anchor = joined.add_node(anchor);
            joined.graft(w, w.root, anchor);
        }
        report.witness = std::move(joined);
    }
    return report;
}

std::string write_report_json(const Graph& g, const RunConfig& cfg,
                              const RecognitionReport& report) {
    nlohmann::json doc;
    doc["format"] = "v1";
    doc["k"] = cfg.k;
    doc["vertices"] = g.vertex_count();
    doc["edges"] = g.edge_count();
    doc["engine"] = cfg.engine;
    doc["verdict"] = report.is_leaf_power ? "yes" : "no";
    doc["engines"] = report.engines;
    doc["prune_count"] = report.prune_count;
    doc["notes"] = report.notes;
    doc["witness_included"] = report.witness.has_value();
    return doc.dump(2) + "\n";
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot write " + path);
    out << content;
}

bool has_suffix(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(),
                                                  suffix) == 0;
}

void write_tree_file(const std::string& path, const RootedTree& t) {
    write_file(path, has_suffix(path, ".dot") ? write_tree_dot(t) : write_tree_json(t));
}

int log_level_from_env() {
    const char* env = std::getenv("LEAFPOWER_LOG");
    if (!env) return 0;
    std::string v(env);
    if (v == "debug" || v == "2") return 2;
    if (v == "info" || v == "1") return 1;
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"k-leaf power recognition toolkit"};
    app.require_subcommand(1);

    RunConfig cfg;
    cfg.log_level = log_level_from_env();
    std::string graph_path, witness_path, json_path, tree_path, structure_path, out_path;
    int group_index = 0;
    int decompose_z = 0;
    int planted_copies = 0;
    GeneratorSpec gen_spec;

    auto add_k = [&](CLI::App* cmd) {
        cmd->add_option("-k,--k", cfg.k, "distance threshold (>= 2)");
    };

    CLI::App* rec = app.add_subcommand("recognize", "decide whether a graph is a k-leaf power");
    rec->add_option("graph", graph_path, "edge-list file")->required();
    add_k(rec);
    rec->add_option("--engine", cfg.engine, "dp | oracle | auto | prune+dp")
        ->check(CLI::IsMember({"dp", "oracle", "auto", "prune+dp"}));
    rec->add_option("--degree-ceiling", cfg.degree_ceiling, "largest degree the table engine accepts");
    rec->add_option("--oracle-limit", cfg.oracle_limit, "largest vertex count the oracle accepts");
    rec->add_option("--prune-l", cfg.prune_l, "groups the structure search looks for");
    rec->add_option("--prune-cmax", cfg.prune_cmax, "largest C set considered");
    rec->add_option("--prune-budget", cfg.prune_budget, "structure search attempt budget");
    rec->add_flag("--exhaustive-structure-search", cfg.exhaustive_structure_search,
                  "enumerate all C-set combinations (exponential)");
    rec->add_option("--witness", witness_path, "write the witness tree here (.dot or JSON)");
    rec->add_option("--json", json_path, "write a machine-readable report here");
    rec->add_option("--seed", cfg.seed, "reserved for randomized strategies");

    CLI::App* orc = app.add_subcommand("oracle", "exhaustive small-graph decision");
    orc->add_option("graph", graph_path, "edge-list file")->required();
    add_k(orc);
    orc->add_option("--oracle-limit", cfg.oracle_limit, "largest vertex count accepted");
    orc->add_option("--witness", witness_path, "write the witness tree here (.dot or JSON)");

    CLI::App* gen = app.add_subcommand("gen", "generate leaf-power instances");
    gen->add_option("--seed", gen_spec.seed, "generator seed");
    gen->add_option("--leaves", gen_spec.leaf_count, "graph vertices to produce");
    gen->add_option("--arity", gen_spec.max_arity, "branching bound");
    gen->add_option("--chain", gen_spec.max_unary_chain, "unary chain bound");
    gen->add_option("--twins", gen_spec.twin_leaves, "twin leaves to add");
    gen->add_option("-k,--k", gen_spec.k, "distance threshold");
    gen->add_option("--planted", planted_copies,
                    "emit a planted similar-structure instance with this many copies");
    gen->add_option("--out", out_path, "write the edge list here (default stdout)");
    gen->add_option("--tree", tree_path, "write the generating tree here (.dot or JSON)");
    gen->add_option("--structure", structure_path, "write the planted structure here (JSON)");

    CLI::App* acc = app.add_subcommand("accept-set", "signatures accepted by one structure group");
    acc->add_option("graph", graph_path, "edge-list file")->required();
    acc->add_option("--structure", structure_path, "similar-structure JSON")->required();
    acc->add_option("--group", group_index, "group index (0-based)");
    add_k(acc);
    acc->add_option("--degree-ceiling", cfg.degree_ceiling, "largest degree accepted");
    acc->add_option("--json", json_path, "write the signature set here (default stdout)");

    CLI::App* dec = app.add_subcommand("decompose", "emit the nice clique-tree decomposition");
    dec->add_option("graph", graph_path, "edge-list file")->required();
    dec->add_option("-z,--z", decompose_z, "vertex whose bag becomes the root");
    dec->add_option("--out", out_path, "write DOT here (default stdout)");

    CLI::App* ver = app.add_subcommand("verify", "check a claimed witness tree against a graph");
    ver->add_option("graph", graph_path, "edge-list file")->required();
    ver->add_option("--tree", tree_path, "witness tree JSON")->required();
    add_k(ver);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(rec)) {
            GraphDocument doc = read_graph(read_file(graph_path));
            RecognitionReport report = recognize_graph(doc.graph, cfg);
            std::cout << (report.is_leaf_power ? "yes" : "no") << "\n";
            if (report.witness && !witness_path.empty())
                write_tree_file(witness_path, *report.witness);
            if (!json_path.empty())
                write_file(json_path, write_report_json(doc.graph, cfg, report));
            return report.is_leaf_power ? 0 : 1;
        }
        if (app.got_subcommand(orc)) {
            GraphDocument doc = read_graph(read_file(graph_path));
            if (cfg.k < 2) throw input_error("k must be at least 2");
            OracleResult r = oracle_is_k_leaf_power(doc.graph, cfg.k, cfg.oracle_limit);
            std::cout << (r.is_leaf_power ? "yes" : "no") << "\n";
            if (r.witness && !witness_path.empty()) write_tree_file(witness_path, *r.witness);
            return r.is_leaf_power ? 0 : 1;
        }
        if (app.got_subcommand(gen)) {
            Graph graph;
            RootedTree tree;
            if (planted_copies > 0) {
                PlantedInstance inst =
                    planted_similar_instance(planted_copies, gen_spec, gen_spec.k);
                graph = std::move(inst.graph);
                tree = std::move(inst.tree);
                if (!structure_path.empty())
                    write_file(structure_path, write_structure_json(inst.structure));
            } else {
                GeneratedInstance inst = random_leaf_power(gen_spec);
                graph = std::move(inst.graph);
                tree = std::move(inst.tree);
            }
            std::string text = write_graph(graph);
            if (out_path.empty())
                std::cout << text;
            else
                write_file(out_path, text);
            if (!tree_path.empty()) write_tree_file(tree_path, tree);
            return 0;
        }
        if (app.got_subcommand(acc)) {
            GraphDocument doc = read_graph(read_file(graph_path));
            SimilarStructure st = read_structure_json(read_file(structure_path));
            StructureCheck check = validate_similar_structure(doc.graph, st, cfg.k);
            if (!check.ok) throw input_error("invalid structure: " + check.message);
            SignatureSet set = accept_set(doc.graph, st, static_cast<size_t>(group_index),
                                          cfg.k, dp_options(cfg));
            std::string text = write_signature_set_json(set);
            if (json_path.empty())
                std::cout << text;
            else
                write_file(json_path, text);
            return 0;
        }
        if (app.got_subcommand(dec)) {
            GraphDocument doc = read_graph(read_file(graph_path));
            NiceDecomposition d = build_nice_decomposition(doc.graph, decompose_z);
            DecompositionCheck check = validate_decomposition(doc.graph, d);
            if (!check.ok)
                throw resource_error("decomposition self-check failed: " + check.message);
            std::string text = write_decomposition_dot(d);
            if (out_path.empty())
                std::cout << text;
            else
                write_file(out_path, text);
            return 0;
        }
        if (app.got_subcommand(ver)) {
            GraphDocument doc = read_graph(read_file(graph_path));
            RootedTree tree = read_tree_json(read_file(tree_path));
            VerifyResult r = verify_k_leaf_root(doc.graph, tree, cfg.k);
            std::cout << (r.ok ? "ok" : r.message) << "\n";
            return r.ok ? 0 : 1;
        }
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const resource_error& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace leafpower
