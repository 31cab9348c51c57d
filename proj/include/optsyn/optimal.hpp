#pragma once

#include "optsyn/arena.hpp"
#include "optsyn/game.hpp"
#include "optsyn/problem.hpp"
#include "optsyn/strategy.hpp"

#include <functional>
#include <optional>
#include <queue>
#include <vector>

namespace optsyn {

enum class Search { linear, binary };

struct SynthesisOptions {
    Engine engine = Engine::symbolic;
    Search search = Search::linear;
    /// Incremental modes: value every level instead of stopping at the initial one.
    bool full = false;
    /// Combined mode: fixed guarantee set, or search over all of them.
    std::vector<std::size_t> guarantee_set;
    bool search_all = false;
    VarOrder order = VarOrder::interleaved;
    std::size_t max_objectives = 24;
    const Budget* budget = nullptr;
};

struct Statistics {
    std::size_t games = 0;
    std::size_t steps = 0;
    std::size_t preimages = 0;
    std::size_t peak_nodes = 0;
    std::vector<std::size_t> level_steps;      ///< incremental modes, per ladder level
    std::vector<std::size_t> level_preimages;

    void add(std::size_t game_steps, std::size_t game_preimages, std::size_t peak);
};

struct SynthesisOutcome {
    Mode mode = Mode::observe;
    Engine engine = Engine::symbolic;
    /// v*; in combined mode the total score G(Γ) + v*_Γ. Zero when nothing is achievable.
    Rational value = 0;
    /// Combined mode: v*_Γ.
    Rational observed = 0;
    /// Realisable core (guarantee) or guarantee set (combined).
    std::vector<std::size_t> core;
    std::optional<StrategyTransducer> strategy;
    /// Values of the ladder levels that were solved (incremental modes).
    std::vector<Rational> levels;
    Statistics stats;
};

SynthesisOutcome synthesize(const CompiledProblem& problem, Mode mode, const SynthesisOptions& opts = {});

SynthesisOutcome max_guarantee(const CompiledProblem& problem, const SynthesisOptions& opts = {});
SynthesisOutcome max_observation(const CompiledProblem& problem, const SynthesisOptions& opts = {});
SynthesisOutcome incremental_extended(const CompiledProblem& problem, const SynthesisOptions& opts = {});
SynthesisOutcome incremental_improved(const CompiledProblem& problem, const SynthesisOptions& opts = {});
SynthesisOutcome combined(const CompiledProblem& problem, const SynthesisOptions& opts = {});

/// Lazily lists subsets of `candidates` by non-increasing weight sum; equal sums
/// come in lexicographic order of their sorted index lists. Ends with ∅.
class SubsetEnumerator {
public:
    SubsetEnumerator(std::span<const Rational> weights, std::vector<std::size_t> candidates);
    std::optional<std::vector<std::size_t>> next();

private:
    struct Node {
        Rational removed;
        std::vector<std::size_t> positions;  ///< into sorted_, ascending
    };
    struct Later {
        bool operator()(const Node& a, const Node& b) const { return a.removed > b.removed; }
    };
    std::vector<std::size_t> kept(const Node& n) const;

    std::vector<Rational> weight_;      ///< weight of sorted_[i]
    std::vector<std::size_t> sorted_;   ///< candidates by ascending weight
    std::priority_queue<Node, std::vector<Node>, Later> queue_;
    std::vector<std::vector<std::size_t>> group_;
    std::size_t group_pos_ = 0;
};

// Symbolic building blocks, exposed for cross-checking engines on one arena.

struct ObservationResult {
    std::optional<std::size_t> level;  ///< first winnable ladder index
    GameResult game;                   ///< game at that level
    std::vector<std::size_t> probed;   ///< ladder indices solved, in order
    Statistics stats;
};

/// Searches the ladder for the first level whose target (built by `target`)
/// is won from I. Winnability must be monotone along the ladder.
ObservationResult search_levels(SymbolicArena& arena, const ValueLadder& ladder,
                                const std::function<dd::Func(const Rational&)>& target, Search search,
                                const Budget* budget = nullptr);

struct IncrementalResult {
    std::vector<Rational> values;  ///< v_k of each solved level
    std::vector<dd::Func> w;       ///< w_k
    std::vector<dd::Func> t;       ///< t_k
    dd::Func relation;             ///< t_1 ∨ ⋁ (t_k ∧ ¬w_{k-1})
    std::optional<std::size_t> initial_level;
    EnsuredValueMap ensured;
    Statistics stats;
};

IncrementalResult incremental_symbolic(SymbolicArena& arena, std::span<const Rational> weights,
                                       const ValueLadder& ladder, bool improved, bool full,
                                       const Budget* budget = nullptr);

// Explicit counterparts over the full product.

StateSet target_at_least(const ProductDfa& p, std::span<const Rational> weights, const Rational& v);
StateSet target_combined(const ProductDfa& p, std::span<const Rational> weights, const Rational& v,
                         const std::vector<std::size_t>& gamma);

struct ExplicitIncrementalResult {
    std::vector<Rational> values;
    std::vector<StateSet> w;
    std::vector<std::optional<Letter>> moves;  ///< combined per-state move
    std::vector<Rational> ensured;             ///< per product state
    std::optional<std::size_t> initial_level;
    Statistics stats;
};

ExplicitIncrementalResult incremental_explicit(const ProductDfa& p, std::span<const Rational> weights,
                                               const ValueLadder& ladder, bool improved, bool full,
                                               const Budget* budget = nullptr);

}  // namespace optsyn
