#include "leafpower/io.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <json.hpp>

#include "leafpower/errors.hpp"

namespace leafpower {

namespace {

using nlohmann::json;

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

struct Token {
    std::string text;
    bool quoted = false;
};

// Splits one edge line into vertex tokens, honoring double quotes.
std::vector<Token> tokenize(const std::string& line, int line_no) {
    std::vector<Token> tokens;
    size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        if (line[i] == '"') {
            size_t end = line.find('"', i + 1);
            if (end == std::string::npos)
                throw parse_error("unterminated quoted name", line_no);
            tokens.push_back({line.substr(i + 1, end - i - 1), true});
            i = end + 1;
        } else {
            size_t end = i;
            while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end])))
                ++end;
            if (line[end - 1] == '"' || line.substr(i, end - i).find('"') != std::string::npos)
                throw parse_error("stray quote inside a token", line_no);
            tokens.push_back({line.substr(i, end - i), false});
            i = end;
        }
    }
    return tokens;
}

int parse_vertex_count(const std::string& token, int line_no) {
    try {
        size_t used = 0;
        int value = std::stoi(token, &used);
        if (used != token.size() || value < 0)
            throw parse_error("malformed vertex count", line_no);
        return value;
    } catch (const parse_error&) {
        throw;
    } catch (const std::exception&) {
        throw parse_error("malformed vertex count", line_no);
    }
}

}  // namespace

GraphDocument read_graph(const std::string& text) {
    std::vector<std::string> lines = split_lines(text);
    int header_n = -1;
    bool any_quoted = false;
    bool any_numeric = false;
    std::map<std::string, int> name_ids;
    std::vector<std::string> names;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> edge_lines;
    int max_id = -1;

    for (size_t li = 0; li < lines.size(); ++li) {
        const int line_no = static_cast<int>(li) + 1;
        const std::string& line = lines[li];
        size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;

        std::vector<Token> tokens = tokenize(line, line_no);
        if (tokens.size() == 2 && tokens[0].text == "n" && !tokens[0].quoted &&
            !tokens[1].quoted) {
            if (header_n >= 0) throw parse_error("repeated vertex-count header", line_no);
            if (!edges.empty()) throw parse_error("header must precede the edges", line_no);
            header_n = parse_vertex_count(tokens[1].text, line_no);
            continue;
        }
        if (tokens.size() != 2) throw parse_error("expected two vertex tokens", line_no);

        int ids[2];
        for (int t = 0; t < 2; ++t) {
            const std::string& tok = tokens[t].text;
            if (tokens[t].quoted) {
                any_quoted = true;
                auto [it, fresh] = name_ids.emplace(tok, static_cast<int>(names.size()));
                if (fresh) names.push_back(tok);
                ids[t] = it->second;
            } else {
                any_numeric = true;
                ids[t] = parse_vertex_count(tok, line_no);
            }
            max_id = std::max(max_id, ids[t]);
        }
        if (any_quoted && any_numeric)
            throw parse_error("numeric and quoted vertex tokens cannot be mixed", line_no);
        if (ids[0] == ids[1]) throw parse_error("self-loop", line_no);
        edges.emplace_back(std::min(ids[0], ids[1]), std::max(ids[0], ids[1]));
        edge_lines.push_back(line_no);
    }

    int n = std::max(header_n, max_id + 1);
    if (n < 0) n = 0;
    if (header_n >= 0 && max_id >= header_n)
        throw parse_error("edge uses a vertex beyond the declared count",
                          edge_lines[static_cast<size_t>(
                              std::find_if(edges.begin(), edges.end(),
                                           [&](const auto& e) { return e.second == max_id; }) -
                              edges.begin())]);
    GraphDocument doc;
    doc.graph = Graph(n);
    for (size_t i = 0; i < edges.size(); ++i) {
        if (doc.graph.has_edge(edges[i].first, edges[i].second))
            throw parse_error("repeated edge", edge_lines[i]);
        doc.graph.add_edge(edges[i].first, edges[i].second);
    }
    doc.labels = std::move(names);
    return doc;
}

std::string write_graph(const Graph& g, const std::vector<std::string>& labels) {
    if (!labels.empty() && static_cast<int>(labels.size()) != g.vertex_count())
        throw input_error("label table size must match the vertex count");
    std::ostringstream out;
    out << "# format: v1\n";
    out << "n " << g.vertex_count() << "\n";
    for (auto [u, v] : g.edges()) {
        if (labels.empty())
            out << u << " " << v << "\n";
        else
            out << '"' << labels[static_cast<size_t>(u)] << "\" \""
                << labels[static_cast<size_t>(v)] << "\"\n";
    }
    return out.str();
}

std::string write_tree_json(const RootedTree& t) {
    json nodes = json::array();
    for (int i = 0; i < t.node_count(); ++i) {
        json node;
        node["id"] = i;
        node["parent"] = t.parent(i);
        node["leaf"] = t.is_leaf(i) ? t.leaf_label(i) : -1;
        nodes.push_back(std::move(node));
    }
    json doc;
    doc["format"] = "v1";
    doc["root"] = t.root;
    doc["nodes"] = std::move(nodes);
    return doc.dump(2) + "\n";
}

RootedTree read_tree_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what(), 0);
    }
    try {
        if (doc.at("format").get<std::string>() != "v1")
            throw parse_error("unsupported tree format", 0);
        const json& nodes = doc.at("nodes");
        std::map<long long, std::pair<long long, int>> by_id;  // id -> (parent, leaf)
        for (const json& node : nodes) {
            long long id = node.at("id").get<long long>();
            long long parent = node.at("parent").get<long long>();
            int leaf = node.value("leaf", -1);
            if (!by_id.emplace(id, std::make_pair(parent, leaf)).second)
                throw parse_error("repeated node id", 0);
        }
        long long root = doc.at("root").get<long long>();
        if (!by_id.count(root)) throw parse_error("root id missing from nodes", 0);

        std::map<long long, std::vector<long long>> children;
        for (const auto& [id, pl] : by_id) {
            if (id == root) continue;
            if (!by_id.count(pl.first)) throw parse_error("parent id missing from nodes", 0);
            children[pl.first].push_back(id);
        }
        RootedTree t;
        std::map<long long, int> dense;
        std::vector<long long> stack{root};
        while (!stack.empty()) {
            long long id = stack.back();
            stack.pop_back();
            int parent = id == root ? -1 : dense.at(by_id.at(id).first);
            dense[id] = t.add_node(parent, by_id.at(id).second);
            auto it = children.find(id);
            if (it != children.end())
                for (auto cit = it->second.rbegin(); cit != it->second.rend(); ++cit)
                    stack.push_back(*cit);
        }
        if (static_cast<size_t>(t.node_count()) != by_id.size())
            throw parse_error("nodes disconnected from the root", 0);
        for (int i = 0; i < t.node_count(); ++i)
            if (t.is_leaf(i) && t.leaf_label(i) < 0 && t.node_count() > 1)
                throw parse_error("childless node without a leaf label", 0);
        return t;
    } catch (const json::exception& e) {
        throw parse_error(std::string("invalid tree document: ") + e.what(), 0);
    }
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

std::string tree_dot(const RootedTree& t, const std::vector<int>* sigma) {
    std::ostringstream out;
    out << "// format: v1\n";
    out << "digraph tree {\n  node [shape=circle];\n";
    for (int i = 0; i < t.node_count(); ++i) {
        std::string label;
        if (t.is_leaf(i)) {
            label = std::to_string(t.leaf_label(i));
            out << "  n" << i << " [shape=box, label=\"" << dot_escape(label) << "\"];\n";
        } else {
            if (sigma) {
                int s = (*sigma)[static_cast<size_t>(i)];
                label = sigma_is_finite(s) ? std::to_string(s) : std::string("inf");
            }
            out << "  n" << i << " [label=\"" << dot_escape(label) << "\"];\n";
        }
    }
    for (int i = 0; i < t.node_count(); ++i)
        for (int c : t.children(i)) out << "  n" << i << " -> n" << c << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace

std::string write_tree_dot(const RootedTree& t) { return tree_dot(t, nullptr); }

std::string write_tree_dot(const ValuedTree& vt) { return tree_dot(vt.tree, &vt.sigma); }

std::string write_decomposition_dot(const NiceDecomposition& d) {
    std::ostringstream out;
    out << "// format: v1\n";
    out << "digraph decomposition {\n  node [shape=box];\n";
    for (size_t i = 0; i < d.nodes.size(); ++i) {
        const DecompNode& nd = d.nodes[i];
        const char* kind = "";
        switch (nd.kind) {
            case BagKind::Leaf: kind = "leaf"; break;
            case BagKind::Introduce: kind = "introduce"; break;
            case BagKind::Forget: kind = "forget"; break;
            case BagKind::Join: kind = "join"; break;
        }
        out << "  n" << i << " [label=\"" << kind;
        if (nd.kind == BagKind::Introduce || nd.kind == BagKind::Forget)
            out << " " << nd.special;
        out << "\\n{";
        for (size_t j = 0; j < nd.bag.size(); ++j) out << (j ? "," : "") << nd.bag[j];
        out << "}\"];\n";
    }
    for (size_t i = 0; i < d.nodes.size(); ++i) {
        if (d.nodes[i].left >= 0) out << "  n" << i << " -> n" << d.nodes[i].left << ";\n";
        if (d.nodes[i].right >= 0) out << "  n" << i << " -> n" << d.nodes[i].right << ";\n";
    }
    out << "}\n";
    return out.str();
}

namespace {

json signature_to_json(const Signature& s) {
    json node;
    if (s.leaf_form) {
        node["leaf"] = s.layer;
        return node;
    }
    if (sigma_is_finite(s.sigma))
        node["sigma"] = s.sigma;
    else
        node["sigma"] = "inf";
    json children = json::array();
    for (const auto& [count, child] : s.children) {
        json entry;
        entry["count"] = count;
        entry["node"] = signature_to_json(child);
        children.push_back(std::move(entry));
    }
    node["children"] = std::move(children);
    return node;
}

}  // namespace

std::string write_signature_json(const Signature& s) {
    json doc;
    doc["format"] = "v1";
    doc["signature"] = signature_to_json(s);
    return doc.dump(2) + "\n";
}

std::string write_signature_set_json(const SignatureSet& set) {
    json arr = json::array();
    for (const Signature& s : set.items) arr.push_back(signature_to_json(s));
    json doc;
    doc["format"] = "v1";
    doc["signatures"] = std::move(arr);
    return doc.dump(2) + "\n";
}

std::string write_structure_json(const SimilarStructure& s) {
    json groups = json::array();
    for (size_t i = 0; i < s.c_sets.size(); ++i) {
        json group;
        group["c"] = s.c_sets[i];
        group["y"] = s.y_sets[i];
        json layers = json::array();
        for (const auto& [v, l] : s.layers[i]) layers.push_back(json::array({v, l}));
        group["layers"] = std::move(layers);
        groups.push_back(std::move(group));
    }
    json doc;
    doc["format"] = "v1";
    doc["z"] = s.z;
    doc["groups"] = std::move(groups);
    return doc.dump(2) + "\n";
}

SimilarStructure read_structure_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what(), 0);
    }
    try {
        if (doc.at("format").get<std::string>() != "v1")
            throw parse_error("unsupported structure format", 0);
        SimilarStructure s;
        s.z = doc.at("z").get<int>();
        for (const json& group : doc.at("groups")) {
            VertexSet c = group.at("c").get<VertexSet>();
            VertexSet y = group.at("y").get<VertexSet>();
            std::sort(c.begin(), c.end());
            std::sort(y.begin(), y.end());
            Layering layers;
            for (const json& pair : group.at("layers")) {
                if (!pair.is_array() || pair.size() != 2)
                    throw parse_error("layer entries must be [vertex, layer] pairs", 0);
                layers[pair[0].get<int>()] = pair[1].get<int>();
            }
            s.c_sets.push_back(std::move(c));
            s.y_sets.push_back(std::move(y));
            s.layers.push_back(std::move(layers));
        }
        return s;
    } catch (const json::exception& e) {
        throw parse_error(std::string("invalid structure document: ") + e.what(), 0);
    }
}

}  // namespace leafpower
