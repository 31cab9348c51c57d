#pragma once

#include "optsyn/arena.hpp"
#include "optsyn/dfa.hpp"
#include "optsyn/rational.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace optsyn {

enum class Mode { guarantee, observe, incremental_extended, incremental_improved, combined };
enum class Engine { explicit_, symbolic };

std::string to_string(Mode m);
std::string to_string(Engine e);
/// Accepts the command-line names: guarantee, observe, incremental-ext,
/// incremental-imp, combined / explicit, symbolic.
Mode parse_mode(std::string_view s);
Engine parse_engine(std::string_view s);

/// Descending (value, region) pairs; regions grow as values descend.
struct EnsuredValueMap {
    std::vector<std::pair<Rational, dd::Func>> levels;

    /// Largest level value whose region contains the tuple's code, else 0.
    Rational lookup(const SymbolicArena& arena, std::span<const State> tuple) const;
};

struct TransducerState {
    Bits bits = 0;          ///< sticky acceptance of the tracked objectives
    Rational ensured = 0;   ///< value promised from this state
    Letter output = 0;      ///< Y letter emitted in this state
    std::vector<State> next;  ///< successor per X letter

    bool operator==(const TransducerState&) const = default;
};

/// Moore-style strategy: each round the agent emits the current state's
/// output, then reads the input letter and moves.
struct StrategyTransducer {
    Mode mode = Mode::observe;
    Engine engine = Engine::symbolic;
    Rational value = 0;
    std::vector<std::string> core;
    Alphabet alphabet;
    /// Objectives whose acceptance the state bits record, with their V weights.
    std::vector<std::string> objectives;
    std::vector<Rational> weights;
    State initial = 0;
    std::vector<TransducerState> states;

    std::size_t num_states() const { return states.size(); }
    bool operator==(const StrategyTransducer&) const = default;
};

/// BFS over codes reachable from I under η with the given output functions.
/// Throws Error when a reachable code lies outside `domain`.
StrategyTransducer concretize(SymbolicArena& arena, const std::vector<dd::Func>& outputs, const dd::Func& domain,
                              const EnsuredValueMap& ensured);

/// Same construction over an explicit product with per-state moves and values.
StrategyTransducer concretize(const ProductDfa& arena, const std::vector<std::optional<Letter>>& moves,
                              const std::vector<Rational>& ensured);

struct RunState {
    State current = 0;
    FiniteTrace history;
    Bits satisfied = 0;
    Rational observed = 0;
    Rational ensured = 0;
    /// Prefix length at which each tracked objective first held.
    std::vector<std::optional<std::size_t>> satisfied_at;
};

RunState start(const StrategyTransducer& t);
/// Plays one round with input letter x (over X).
void step(const StrategyTransducer& t, RunState& s, Letter x);
RunState run(const StrategyTransducer& t, std::span<const Letter> inputs);

/// Interactive loop: prints the round's promise and output, reads one line of
/// space-separated true inputs, `quit` (or end of input) stops.
void play(const StrategyTransducer& t, std::istream& in, std::ostream& out);

}  // namespace optsyn
