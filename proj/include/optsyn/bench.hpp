#pragma once

#include "optsyn/optimal.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace optsyn {

struct BenchRow {
    std::string instance;
    std::string mode;
    std::string engine;
    std::string value;  ///< "-" unless solved
    std::size_t states = 0;  ///< strategy transducer states
    std::size_t dd_nodes_peak = 0;
    std::size_t fixpoint_steps = 0;
    std::size_t preimage_count = 0;
    double wall_ms = 0;
    std::string status;  ///< solved, timeout, limit or error
};

std::string csv_header();
std::string csv_row(const BenchRow& row);

struct BenchOptions {
    std::vector<Mode> modes{Mode::guarantee, Mode::observe, Mode::incremental_extended, Mode::incremental_improved};
    SynthesisOptions synthesis;
    double timeout_seconds = 300;
};

/// A bench instance: a .spec file, or a formula file whose sibling with
/// extension .part holds the partition.
struct BenchInstance {
    std::string name;
    std::filesystem::path spec;
    std::filesystem::path partition;  ///< empty for .spec files
};

/// Instances of a directory, sorted by name. Formula files are .ltlf.
std::vector<BenchInstance> list_instances(const std::filesystem::path& dir);

ProblemSpec load_instance(const BenchInstance& inst);

/// One row per (instance, mode); each run gets its own wall-clock budget.
BenchRow run_one(const BenchInstance& inst, Mode mode, const BenchOptions& opts);
std::vector<BenchRow> run_bench(const std::filesystem::path& dir, const BenchOptions& opts,
                                std::ostream* progress = nullptr);

}  // namespace optsyn
