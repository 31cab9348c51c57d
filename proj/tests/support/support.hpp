#pragma once

#include "optsyn/arena.hpp"
#include "optsyn/dd.hpp"
#include "optsyn/dfa.hpp"
#include "optsyn/game.hpp"
#include "optsyn/ltlf.hpp"
#include "optsyn/problem.hpp"

#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace optsyn::test {

std::filesystem::path fixture(const std::string& name);
std::filesystem::path robot_spec();

/// Random formula with exactly `size` syntax-tree nodes, every operator kind allowed.
ltlf::Formula random_formula_exact(std::mt19937& rng, const std::vector<std::string>& atoms, std::size_t size);
/// Size drawn uniformly from 1..max_size.
ltlf::Formula random_formula(std::mt19937& rng, const std::vector<std::string>& atoms, std::size_t max_size);

FiniteTrace random_trace(std::mt19937& rng, std::size_t num_letters, std::size_t length);
/// Every trace of length 1..max_length.
std::vector<FiniteTrace> all_traces(std::size_t num_letters, std::size_t max_length);
/// Every input sequence of exactly `length` letters.
std::vector<FiniteTrace> all_sequences(std::size_t num_letters, std::size_t length);

struct InstanceShape {
    std::size_t max_objectives = 3;
    std::size_t min_formula_size = 1;
    std::size_t max_formula_size = 6;
    std::size_t max_inputs = 2;
    std::size_t max_outputs = 2;
    std::size_t max_product_states = 2000;
    bool random_weights = true;
};

struct Instance {
    ProblemSpec spec;
    CompiledProblem problem;
    ProductDfa product;
};

/// Draws specs until the explicit product fits the shape.
Instance random_instance(std::mt19937& rng, const InstanceShape& shape = {});

/// The same instance stream for every caller passing the same seed and count.
std::vector<Instance> instance_corpus(std::uint32_t seed, std::size_t count, const InstanceShape& shape = {});

Instance load_instance_file(const std::filesystem::path& spec);

/// Product states whose component tuple satisfies f (Z-only functions).
StateSet decode(SymbolicArena& arena, const dd::Func& f, const ProductDfa& p);

/// Subset disjunction: ⋁ over Ψ with keep(Ψ) of ⋀_{i∈Ψ} g^i (and ⋀_{i∉Ψ} ¬g^i when exact).
dd::Func subset_disjunction(SymbolicArena& arena, std::size_t n, const std::function<bool(const std::vector<std::size_t>&)>& keep,
                            bool exact);

/// All subsets of {0..n-1}, each sorted.
std::vector<std::vector<std::size_t>> all_subsets(std::size_t n);

/// Reachability winning region by naive iteration over (state, Y, X) triples.
StateSet brute_winning(const Dfa& arena, const StateSet& target);

}  // namespace optsyn::test
