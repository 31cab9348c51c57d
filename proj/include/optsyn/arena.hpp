#pragma once

#include "optsyn/dd.hpp"
#include "optsyn/dfa.hpp"
#include "optsyn/rational.hpp"

#include <memory>
#include <span>
#include <vector>

namespace optsyn {

/// Binary state encoding of one component DFA. State q (BFS index) has code q,
/// bit j on z[j]; codes >= num_states self-loop and reject.
struct SymbolicDfa {
    std::vector<dd::Var> z;
    std::size_t num_states = 0;
    dd::Func init;
    std::vector<dd::Func> eta;  ///< next value of z[j], over Z ∪ X ∪ Y
    dd::Func accepting;
};

enum class VarOrder {
    interleaved,  ///< Z of each component in turn, then X, then Y
    declaration,  ///< X, then Y, then Z
};

/// Number of state bits for a DFA with n states.
std::size_t state_bits(std::size_t n);

/// Boolean function over `vars` (bit i of the table index = vars[i]); vars
/// must be in ascending order.
dd::Func from_truth_table(dd::Manager& m, std::span<const dd::Var> vars, const std::vector<bool>& table);

/// `x` and `y` list the manager variables of the alphabet's atoms in letter-bit order.
SymbolicDfa encode(const Dfa& d, dd::Manager& m, std::span<const dd::Var> z, std::span<const dd::Var> x,
                   std::span<const dd::Var> y);

/// Synchronous product of encoded components sharing one manager.
class SymbolicArena {
public:
    SymbolicArena(std::span<const Dfa> components, VarOrder order = VarOrder::interleaved);
    SymbolicArena(SymbolicArena&&) noexcept = default;
    SymbolicArena& operator=(SymbolicArena&&) noexcept = default;

    dd::Manager& manager() { return *mgr_; }
    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t num_components() const { return comps_.size(); }
    const SymbolicDfa& component(std::size_t i) const { return comps_.at(i); }

    std::span<const dd::Var> x() const { return x_; }
    std::span<const dd::Var> y() const { return y_; }
    std::span<const dd::Var> z() const { return z_; }

    const dd::Func& init() const { return init_; }
    /// Z variable index -> next-state function.
    const dd::Substitution& eta() const { return eta_; }
    const dd::Func& accepting(std::size_t i) const { return comps_.at(i).accepting; }

    /// ∀X. region(η): pairs (Z, Y) all of whose successors lie in `region`.
    dd::Func controllable_pre(const dd::Func& region);

    /// Minterm over Z for a tuple of component states.
    dd::Func code(std::span<const State> tuple);
    /// Full assignment (indexed by variable) for a tuple and a joint letter.
    std::vector<bool> assignment(std::span<const State> tuple, Letter letter = 0) const;
    bool holds(const dd::Func& f, std::span<const State> tuple, Letter letter = 0) const;
    /// Component codes after reading `letter`, computed through η.
    std::vector<State> successor(std::span<const State> tuple, Letter letter) const;
    std::vector<State> initial_tuple() const { return std::vector<State>(comps_.size(), 0); }

    /// Number of Z codes (2^|Z|).
    std::size_t code_space() const;

private:
    std::unique_ptr<dd::Manager> mgr_;
    Alphabet alphabet_;
    std::vector<SymbolicDfa> comps_;
    std::vector<dd::Var> x_, y_, z_;
    dd::Func init_;
    dd::Substitution eta_;
};

/// Distinct non-empty subset sums of the weights, strictly descending.
struct ValueLadder {
    std::vector<Rational> values;
    std::size_t size() const { return values.size(); }
    const Rational& operator[](std::size_t k) const { return values.at(k); }
    /// Index of v, throws Error if absent.
    std::size_t index(const Rational& v) const;
};

ValueLadder build_ladder(std::span<const Rational> weights, std::size_t max_objectives = 24);

/// Ladder of totals Σ_Γ w + s for every subset sum s of the weights outside Γ;
/// for Γ = ∅ it is build_ladder(weights).
ValueLadder build_ladder(std::span<const Rational> weights, const std::vector<std::size_t>& gamma,
                         std::size_t max_objectives = 24);

/// g_Ψ: every objective of Ψ accepted. Ψ must be non-empty.
dd::Func target_guarantee(SymbolicArena& a, const std::vector<std::size_t>& psi);

/// g_v: satisfied weight at least v, by threshold compilation.
dd::Func target_at_least(SymbolicArena& a, std::span<const Rational> weights, const Rational& v);

/// g^=_{v_k} = g_{v_k} ∧ ¬g_{v_{k-1}} (k is 0-based here: level k holds ladder[k]).
dd::Func target_exact_level(SymbolicArena& a, std::span<const Rational> weights, const ValueLadder& ladder,
                            std::size_t k);

/// g_{v,Γ}: every objective of Γ accepted and satisfied weight at least v.
dd::Func target_combined(SymbolicArena& a, std::span<const Rational> weights, const Rational& v,
                         const std::vector<std::size_t>& gamma);

/// Σ of weights whose bit is set.
Rational weight_of(Bits bits, std::span<const Rational> weights);

}  // namespace optsyn
