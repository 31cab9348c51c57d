#pragma once

#include "optsyn/dfa.hpp"
#include "optsyn/problem.hpp"
#include "optsyn/rational.hpp"
#include "optsyn/strategy.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace optsyn {

/// Value of a product state's latched bits.
using Payoff = std::function<Rational(Bits)>;

Payoff additive_payoff(std::vector<Rational> weights);
/// Σ weights when every objective of Γ is latched, else 0.
Payoff restricted_payoff(std::vector<Rational> weights, std::vector<std::size_t> gamma);

/// Minimax values V(q) = max_Y min_X ... of the payoff eventually latched:
/// V_0 = payoff, V_{h+1}(q) = max_Y min_X V_h(δ(q, X ∪ Y)), for at most as many
/// rounds as there are states. Throws ResourceLimitError beyond `max_states`.
std::vector<Rational> oracle_values(const ProductDfa& arena, const Payoff& payoff, std::size_t max_states = 2000);
Rational oracle_value(const ProductDfa& arena, std::span<const Rational> weights, State from,
                      std::size_t max_states = 2000);

struct CoreResult {
    std::vector<std::size_t> core;  ///< empty when no objective is realisable
    Rational value = 0;
};

/// Realisability of every subset, keeping the G-heaviest (lexicographic ties).
CoreResult exhaustive_core(const CompiledProblem& problem, std::size_t max_objectives = 10,
                           std::size_t max_states = 2000);

/// Min over all input sequences of length `horizon` of the observed value
/// (under `weights` for the product's objectives) after following t.
Rational model_check_strategy(const StrategyTransducer& t, const ProductDfa& arena,
                              std::span<const Rational> weights, std::size_t horizon);

struct OracleReport {
    std::string instance;
    Rational oracle_value = 0;
    std::vector<std::pair<std::string, Rational>> engine_values;
    bool agreement = true;
    std::size_t states_checked = 0;
    /// First input history (X letters) reaching a state where the strategy
    /// falls short of the optimum.
    std::optional<FiniteTrace> counterexample;
    Rational counterexample_strategy = 0;
    Rational counterexample_optimum = 0;

    std::string text(const Alphabet& ap) const;
    static std::string csv_header();
    std::string csv_row() const;
};

/// For every reachable (strategy state, product state) pair: the value the
/// strategy guarantees from there equals the oracle optimum from the product state.
OracleReport check_incremental_optimality(const StrategyTransducer& t, const ProductDfa& arena,
                                          std::span<const Rational> weights);

}  // namespace optsyn
