#pragma once

#include "optsyn/arena.hpp"
#include "optsyn/dfa.hpp"
#include "optsyn/error.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace optsyn {

using StateSet = std::vector<bool>;

inline constexpr std::uint32_t unreached = UINT32_MAX;

/// Output letters (over Y) in tie-break order: lexicographic on the Y bit
/// vector with the first output atom most significant, all-false first.
std::vector<Letter> outputs_in_preference_order(const Alphabet& ap);

struct ExplicitGameResult {
    StateSet winning;
    std::vector<std::uint32_t> rank;    ///< attractor rank, `unreached` outside the winning set
    std::vector<std::optional<Letter>> move;  ///< Y letter; all-false at target states
    std::size_t steps = 0;              ///< rounds that enlarged the winning set
    std::size_t preimages = 0;          ///< controllable-preimage computations
};

/// {q | ∃Y ∀X. δ(q, X ∪ Y) ∈ s}
StateSet prec(const Dfa& arena, const StateSet& s);

ExplicitGameResult solve_explicit(const Dfa& arena, const StateSet& target, const Budget* budget = nullptr);

enum class Fixpoint {
    early_exit,  ///< stop as soon as the initial state is winning
    full,        ///< iterate until w is stable
};

struct GameResult {
    dd::Func w;  ///< over Z
    dd::Func t;  ///< over Z ∪ Y
    std::size_t steps = 0;
    std::size_t preimages = 0;
    std::size_t peak_nodes = 0;  ///< largest dag size of w or t seen
    std::vector<dd::Func> w_trace;  ///< w_0, w_1, ... when recorded
    std::vector<dd::Func> t_trace;
};

GameResult solve_symbolic(SymbolicArena& arena, const dd::Func& g, Fixpoint mode, const Budget* budget = nullptr,
                          bool record = false);

/// Output functions over Z (one per entry of y) such that t(Z, f(Z)) holds
/// wherever ∃Y.t does; each variable prefers false.
std::vector<dd::Func> synthesize_outputs(dd::Manager& m, const dd::Func& t, std::span<const dd::Var> y);

}  // namespace optsyn
