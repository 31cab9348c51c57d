#pragma once

#include "optsyn/problem.hpp"
#include "optsyn/strategy.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace optsyn {

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

/// Spec format, one item per line, '#' starts a comment:
///   INPUTS: a b
///   OUTPUTS: c
///   NORMALIZE                       (optional: scale weights so the maximum is 1)
///   GOAL name [G=1/2] [V=0.25]: formula
/// Weights default to 1. Throws ParseError (with line and column) or Error.
ProblemSpec parse_spec(std::string_view text);
ProblemSpec load_spec(const std::filesystem::path& path);

struct Partition {
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
};

/// Lines `.inputs a b` and `.outputs c` (a colon after the keyword is allowed).
Partition parse_partition(std::string_view text);

/// Splits the top-level conjunction into unit-weight objectives g1, g2, ...
/// A formula that is not a conjunction becomes one objective and a warning.
ProblemSpec parse_syntcomp(std::string_view formula, const Partition& partition,
                           std::vector<std::string>* warnings = nullptr);
ProblemSpec load_syntcomp(const std::filesystem::path& formula, const std::filesystem::path& partition,
                          std::vector<std::string>* warnings = nullptr);

/// Line-oriented strategy document; see README for the grammar.
std::string write_strategy(const StrategyTransducer& t);
StrategyTransducer parse_strategy(std::string_view text);
StrategyTransducer load_strategy(const std::filesystem::path& path);

std::string to_dot(const StrategyTransducer& t, const std::string& name = "strategy");

}  // namespace optsyn
