#pragma once

#include "optsyn/error.hpp"
#include "optsyn/ltlf.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace optsyn {

using State = std::uint32_t;

/// Complete DFA over 2^AP. Acceptance of a non-empty trace is the acceptance of
/// the state reached after its last letter; constructed DFAs never accept at
/// their initial state, so the empty trace is rejected.
struct Dfa {
    Alphabet alphabet;
    State initial = 0;
    std::vector<State> delta;  ///< delta[q * num_letters() + letter]
    std::vector<bool> accepting;

    std::size_t num_states() const { return accepting.size(); }
    std::size_t num_letters() const { return alphabet.num_letters(); }
    State next(State q, Letter l) const { return delta[q * num_letters() + l]; }
};

/// Per-objective acceptance bits of a product state; bit i is objective i.
using Bits = std::uint64_t;

struct ProductDfa {
    /// Accepting states are those with every bit set.
    Dfa dfa;
    std::vector<Bits> bits;
    /// Component state tuple of every product state.
    std::vector<std::vector<State>> components;

    std::size_t num_objectives() const { return num_components; }
    std::size_t num_states() const { return dfa.num_states(); }
    std::size_t num_components = 0;
};

struct BuildOptions {
    std::size_t max_states = 1'000'000;
    const Budget* budget = nullptr;
};

/// Language of non-empty traces satisfying f, built by formula progression on
/// the desugared negation normal form. Not minimized.
Dfa translate(const ltlf::Formula& f, const Alphabet& ap, const BuildOptions& opts = {});

/// Moore partition refinement; result is reachable-only and numbered in BFS
/// order from the initial state (letters in increasing order).
Dfa minimize(const Dfa& d);

/// Accepts the traces having some prefix accepted by d. Minimized.
Dfa stickify(const Dfa& d);

/// Reachable synchronous product with per-component acceptance bits.
ProductDfa product(std::span<const Dfa> components, const BuildOptions& opts = {});

/// State reached after reading `trace` from the initial state.
State run(const Dfa& d, std::span<const Letter> trace);
bool accepts(const Dfa& d, std::span<const Letter> trace);

/// Convenience: minimize(translate(f)) then stickify.
Dfa compile_objective(const ltlf::Formula& f, const Alphabet& ap, const BuildOptions& opts = {});

std::string to_dot(const Dfa& d, const std::string& name = "dfa");
std::string to_dot(const ProductDfa& p, const std::vector<std::string>& objective_names,
                   const std::string& name = "product");

}  // namespace optsyn
