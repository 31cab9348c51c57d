#pragma once

#include "optsyn/dfa.hpp"
#include "optsyn/ltlf.hpp"
#include "optsyn/rational.hpp"

#include <string>
#include <vector>

namespace optsyn {

struct Objective {
    std::string name;
    ltlf::Formula formula;
    Rational guarantee{1};  ///< G weight
    Rational observe{1};    ///< V weight
};

/// Objectives over a partition of the atoms into inputs X (environment) and
/// outputs Y (agent).
struct ProblemSpec {
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::vector<Objective> objectives;

    Alphabet alphabet() const { return Alphabet(inputs, outputs); }
    std::vector<std::string> names() const;
    std::vector<Rational> guarantee_weights() const;
    std::vector<Rational> observe_weights() const;

    /// Throws Error on overlapping X/Y, atoms outside X ∪ Y, duplicate names
    /// or weights outside (0,1].
    void validate() const;
};

/// Scales G and V weights so that the largest of each is 1.
void normalize_weights(ProblemSpec& spec);

/// A spec with every objective compiled to its sticky minimal DFA.
struct CompiledProblem {
    ProblemSpec spec;
    Alphabet alphabet;
    std::vector<Dfa> components;
};

CompiledProblem compile(const ProblemSpec& spec, const BuildOptions& opts = {});

/// Sub-problem keeping only the listed objectives (in the given order).
CompiledProblem restrict(const CompiledProblem& p, const std::vector<std::size_t>& keep);

/// Resolves objective names to indices; throws Error on unknown names.
std::vector<std::size_t> objective_indices(const ProblemSpec& spec, const std::vector<std::string>& names);

}  // namespace optsyn
