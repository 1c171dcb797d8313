#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "leafpower/graph.hpp"
#include "leafpower/similar.hpp"
#include "leafpower/tree.hpp"

namespace leafpower {

// One run's configuration, assembled from command-line flags.
struct RunConfig {
    int k = 3;
    std::string engine = "auto";  // dp | oracle | auto | prune+dp
    int degree_ceiling = 8;
    int oracle_limit = 7;
    int prune_l = 4;    // groups the structure search looks for
    int prune_cmax = 4; // largest C set considered
    long prune_budget = 200000;
    bool exhaustive_structure_search = false;
    std::uint64_t seed = 1;
    int log_level = 0;  // 0 quiet, 1 info, 2 debug (env LEAFPOWER_LOG)
};

struct RecognitionReport {
    bool is_leaf_power = false;
    std::optional<RootedTree> witness;  // present exactly on yes
    std::vector<std::string> engines;   // engine used per component, in order
    int prune_count = 0;                // similar-structure prunes performed
    std::vector<std::string> notes;
};

// Decides whether g is a k-leaf power, orchestrating the engines per
// connected component:
//   - a component within the degree ceiling runs the table computation;
//   - otherwise, when the engine allows pruning, a homogeneous similar
//     structure is searched, one group pruned, the rest recursed on, and the
//     witness re-extended;
//   - otherwise, small components fall back to the exhaustive oracle.
// Component witnesses are joined below a fresh root at depth ceil((k+1)/2),
// which keeps cross-component leaf distances above k. Throws resource_error
// when no engine applies within its limits.
RecognitionReport recognize_graph(const Graph& g, const RunConfig& cfg);

// Machine-readable report of a finished run.
std::string write_report_json(const Graph& g, const RunConfig& cfg,
                              const RecognitionReport& report);

// Entire command-line surface (recognize, oracle, gen, accept-set, decompose,
// verify). Returns the process exit status: 0 yes/ok, 1 no/fail, 2 error.
int run_cli(int argc, const char* const* argv);

}  // namespace leafpower
