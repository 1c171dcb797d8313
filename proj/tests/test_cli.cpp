#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "leafpower/cli_ops.hpp"
#include "leafpower/errors.hpp"
#include "leafpower/generator.hpp"
#include "leafpower/io.hpp"

using namespace leafpower;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int status;
    std::string out;
};

// Drives the full command-line surface in-process, capturing stdout.
CliRun run(std::vector<std::string> args) {
    std::vector<const char*> argv;
    argv.push_back("leafpower");
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream captured;
    std::streambuf* old = std::cout.rdbuf(captured.rdbuf());
    int status = 2;
    try {
        status = run_cli(static_cast<int>(argv.size()), argv.data());
    } catch (...) {
        std::cout.rdbuf(old);
        throw;
    }
    std::cout.rdbuf(old);
    return {status, captured.str()};
}

fs::path temp_dir() {
    fs::path dir = fs::temp_directory_path() / "leafpower-cli-tests";
    fs::create_directories(dir);
    return dir;
}

fs::path write_file(const std::string& name, const std::string& content) {
    fs::path p = temp_dir() / name;
    std::ofstream(p) << content;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("recognize answers yes and no with matching exit codes") {
    fs::path triangle = write_file("triangle.el", "0 1\n1 2\n0 2\n");
    CliRun yes = run({"recognize", triangle.string(), "-k", "2"});
    CHECK(yes.status == 0);
    CHECK(yes.out == "yes\n");

    fs::path path3 = write_file("p3.el", "0 1\n1 2\n");
    CliRun no = run({"recognize", path3.string(), "-k", "2"});
    CHECK(no.status == 1);
    CHECK(no.out == "no\n");
}

TEST_CASE("bad inputs exit with status 2") {
    CliRun missing = run({"recognize", (temp_dir() / "nope.el").string(), "-k", "2"});
    CHECK(missing.status == 2);

    fs::path loop = write_file("loop.el", "0 0\n");
    CHECK(run({"recognize", loop.string(), "-k", "2"}).status == 2);
    fs::path k2 = write_file("k2.el", "0 1\n");
    CHECK(run({"recognize", k2.string(), "-k", "1"}).status == 2);
    CHECK(run({"recognize", k2.string(), "--engine", "simulated-annealing"}).status == 2);
}

TEST_CASE("witnesses written by recognize satisfy verify") {
    fs::path graph = write_file("star5.el", "0 1\n0 2\n0 3\n0 4\n");
    fs::path tree = temp_dir() / "star5.tree.json";
    CliRun rec = run({"recognize", graph.string(), "-k", "3", "--witness", tree.string()});
    REQUIRE(rec.status == 0);

    CliRun ok = run({"verify", graph.string(), "-k", "3", "--tree", tree.string()});
    CHECK(ok.status == 0);
    CHECK(ok.out == "ok\n");

    // The same tree is not a 2-leaf root of the star.
    CliRun bad = run({"verify", graph.string(), "-k", "2", "--tree", tree.string()});
    CHECK(bad.status == 1);
    CHECK(bad.out != "ok\n");

    // Corrupted documents are reported as errors, not verification failures.
    fs::path broken = write_file("broken.tree.json", "{\"format\":\"v1\"");
    CHECK(run({"verify", graph.string(), "-k", "3", "--tree", broken.string()}).status == 2);
}

TEST_CASE("JSON reports carry the engine trail") {
    fs::path graph = write_file("clique4.el", "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    fs::path report = temp_dir() / "clique4.report.json";
    CliRun rep = run({"recognize", graph.string(), "-k", "2", "--json", report.string()});
    REQUIRE(rep.status == 0);
    std::string body = slurp(report);
    CHECK(body.find("\"verdict\": \"yes\"") != std::string::npos);
    CHECK(body.find("\"engines\"") != std::string::npos);
    CHECK(body.find("\"dp\"") != std::string::npos);
}

TEST_CASE("generated instances round-trip through the command surface") {
    fs::path graph = temp_dir() / "gen.el";
    fs::path tree = temp_dir() / "gen.tree.json";
    CliRun gen = run({"gen", "--seed", "9", "--leaves", "10", "-k", "3",
                      "--out", graph.string(), "--tree", tree.string()});
    REQUIRE(gen.status == 0);

    CHECK(run({"verify", graph.string(), "-k", "3", "--tree", tree.string()}).status == 0);

    // Generation is deterministic: the same seed writes the same bytes.
    fs::path graph2 = temp_dir() / "gen2.el";
    CliRun gen2 = run({"gen", "--seed", "9", "--leaves", "10", "-k", "3",
                       "--out", graph2.string()});
    REQUIRE(gen2.status == 0);
    CHECK(slurp(graph) == slurp(graph2));
}

TEST_CASE("oracle subcommand cross-checks tiny graphs") {
    fs::path p3 = write_file("p3b.el", "0 1\n1 2\n");
    CHECK(run({"oracle", p3.string(), "-k", "2"}).status == 1);
    CHECK(run({"oracle", p3.string(), "-k", "3"}).status == 0);
    fs::path big = write_file("big.el", "0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n6 7\n");
    CHECK(run({"oracle", big.string(), "-k", "3"}).status == 2);  // beyond the size limit
}

TEST_CASE("planted structures feed the accept-set command") {
    GeneratorSpec spec;
    spec.seed = 12;
    spec.max_arity = 2;
    PlantedInstance p = planted_similar_instance(3, spec, 3);
    fs::path graph = write_file("planted.el", write_graph(p.graph));
    fs::path structure = write_file("planted.structure.json", write_structure_json(p.structure));

    CliRun stdout_run = run({"accept-set", graph.string(), "--structure", structure.string(),
                             "-k", "3", "--degree-ceiling", "64"});
    CHECK(stdout_run.status == 0);
    CHECK(stdout_run.out.find("children") != std::string::npos);

    fs::path sig = temp_dir() / "accept.json";
    CliRun file_run = run({"accept-set", graph.string(), "--structure", structure.string(),
                           "-k", "3", "--degree-ceiling", "64", "--group", "1",
                           "--json", sig.string()});
    CHECK(file_run.status == 0);
    CHECK(slurp(sig) == stdout_run.out);  // groups are homogeneous by construction

    // An inconsistent structure is rejected before any signatures are built.
    SimilarStructure broken = p.structure;
    broken.c_sets[1] = broken.c_sets[0];
    fs::path bad = write_file("planted.broken.json", write_structure_json(broken));
    CHECK(run({"accept-set", graph.string(), "--structure", bad.string(),
               "-k", "3", "--degree-ceiling", "64"}).status == 2);
}

TEST_CASE("decompose validates and optionally renders") {
    fs::path graph = write_file("chordal.el", "0 1\n1 2\n0 2\n2 3\n");
    fs::path dot = temp_dir() / "dec.dot";
    CliRun dec = run({"decompose", graph.string(), "-z", "0", "--out", dot.string()});
    CHECK(dec.status == 0);
    CHECK(slurp(dot).find("digraph") != std::string::npos);

    fs::path c4 = write_file("c4.el", "0 1\n1 2\n2 3\n0 3\n");
    CHECK(run({"decompose", c4.string(), "-z", "0"}).status == 2);  // not chordal
}

TEST_CASE("pruning engine handles a planted instance end to end") {
    // Find a planted instance too dense for the default table ceiling, so the
    // prune+dp engine actually has to prune.
    GeneratorSpec spec;
    spec.max_arity = 3;
    PlantedInstance p = planted_similar_instance(4, spec, 3);
    for (std::uint64_t seed = 1; p.graph.max_degree() <= 8; ++seed) {
        REQUIRE(seed <= 40);
        spec.seed = seed;
        p = planted_similar_instance(4, spec, 3);
    }
    fs::path graph = write_file("planted2.el", write_graph(p.graph));
    fs::path tree = temp_dir() / "planted2.tree.json";
    fs::path report = temp_dir() / "planted2.report.json";

    CliRun rec = run({"recognize", graph.string(), "-k", "3", "--engine", "prune+dp",
                      "--witness", tree.string(), "--json", report.string()});
    REQUIRE(rec.status == 0);
    std::string body = slurp(report);
    CHECK(body.find("\"verdict\": \"yes\"") != std::string::npos);
    CHECK(body.find("prune+") != std::string::npos);
    CHECK(run({"verify", graph.string(), "-k", "3", "--tree", tree.string()}).status == 0);
}

TEST_CASE("pruning engine retries carriers until one accepts the first group") {
    // On this pinned instance the recognizer's first witness for the pruned
    // graph realizes the two remaining groups with distinct accepted
    // signatures, so re-extension fails until another accepted carrier is
    // tried. The run must still end in a verified yes.
    GeneratorSpec spec;
    spec.seed = 31;
    spec.max_arity = 3;
    PlantedInstance p = planted_similar_instance(3, spec, 4);
    REQUIRE(p.graph.max_degree() >= 4);
    fs::path graph = write_file("planted3.el", write_graph(p.graph));
    fs::path tree = temp_dir() / "planted3.tree.json";
    fs::path report = temp_dir() / "planted3.report.json";

    CliRun rec = run({"recognize", graph.string(), "-k", "4", "--engine", "prune+dp",
                      "--degree-ceiling", std::to_string(p.graph.max_degree() - 1),
                      "--witness", tree.string(), "--json", report.string()});
    REQUIRE(rec.status == 0);
    std::string body = slurp(report);
    CHECK(body.find("\"verdict\": \"yes\"") != std::string::npos);
    CHECK(body.find("prune+") != std::string::npos);
    CHECK(run({"verify", graph.string(), "-k", "4", "--tree", tree.string()}).status == 0);
}

TEST_CASE("disconnected graphs assemble a joint witness") {
    // Two triangles, no edges between them.
    fs::path graph = write_file("twotri.el", "0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n");
    fs::path tree = temp_dir() / "twotri.tree.json";
    CliRun rec = run({"recognize", graph.string(), "-k", "2", "--witness", tree.string()});
    REQUIRE(rec.status == 0);
    CHECK(run({"verify", graph.string(), "-k", "2", "--tree", tree.string()}).status == 0);

    RootedTree t = read_tree_json(slurp(tree));
    CHECK(t.leaf_labels() == VertexSet{0, 1, 2, 3, 4, 5});
}

TEST_CASE("recognize_graph joins components at any k") {
    RunConfig cfg;
    for (int k = 2; k <= 5; ++k) {
        cfg.k = k;
        Graph g(7);  // triangle + edge + two isolated vertices
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(0, 2);
        g.add_edge(3, 4);
        RecognitionReport rep = recognize_graph(g, cfg);
        REQUIRE(rep.is_leaf_power);
        REQUIRE(rep.witness.has_value());
        INFO("k=", k);
        CHECK(verify_k_leaf_root(g, *rep.witness, k).ok);
        CHECK(rep.engines.size() == 4);
    }
}
