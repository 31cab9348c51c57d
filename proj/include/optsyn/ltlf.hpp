#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace optsyn {

/// A valuation of the atoms of an Alphabet, one bit per atom.
using Letter = std::uint32_t;

/// Ordered atom set AP = X ∪ Y. Inputs occupy the low bits, outputs follow;
/// each group is sorted alphabetically.
class Alphabet {
public:
    Alphabet() = default;
    Alphabet(std::vector<std::string> inputs, std::vector<std::string> outputs);

    std::size_t size() const { return atoms_.size(); }
    std::size_t num_inputs() const { return num_inputs_; }
    std::size_t num_outputs() const { return atoms_.size() - num_inputs_; }
    std::size_t num_letters() const { return std::size_t{1} << atoms_.size(); }
    std::size_t num_input_letters() const { return std::size_t{1} << num_inputs_; }
    std::size_t num_output_letters() const { return std::size_t{1} << num_outputs(); }

    const std::vector<std::string>& atoms() const { return atoms_; }
    const std::string& atom(std::size_t i) const { return atoms_.at(i); }
    std::optional<std::size_t> index(std::string_view name) const;
    bool is_input(std::string_view name) const;
    bool is_output(std::string_view name) const;

    /// Combines an input valuation (bits over X) and output valuation (bits over Y).
    Letter join(Letter inputs, Letter outputs) const {
        return inputs | (outputs << num_inputs_);
    }
    Letter input_part(Letter l) const { return l & ((Letter{1} << num_inputs_) - 1); }
    Letter output_part(Letter l) const { return l >> num_inputs_; }

    Letter letter(const std::set<std::string>& true_atoms) const;
    std::set<std::string> names(Letter l) const;

    bool operator==(const Alphabet&) const = default;

private:
    std::vector<std::string> atoms_;
    std::size_t num_inputs_ = 0;
};

using FiniteTrace = std::vector<Letter>;

namespace ltlf {

enum class Kind {
    atom, tt, ff,
    negation, conjunction, disjunction, implication,
    next, weak_next, until, release, eventually, always,
};

std::size_t arity(Kind k);

/// Immutable LTL_f syntax tree. Copies share structure.
class Formula {
public:
    static Formula atom(std::string name);
    static Formula tt();
    static Formula ff();
    static Formula unary(Kind kind, Formula operand);
    static Formula binary(Kind kind, Formula lhs, Formula rhs);

    Kind kind() const { return node_->kind; }
    const std::string& name() const { return node_->name; }
    std::size_t arity() const { return node_->children.size(); }
    const Formula& child(std::size_t i) const { return node_->children.at(i); }
    const Formula& lhs() const { return child(0); }
    const Formula& rhs() const { return child(1); }

    /// Structural equality.
    bool operator==(const Formula& other) const;

    /// Identity of the shared node; stable for the lifetime of any copy.
    const void* id() const { return node_.get(); }

private:
    struct Node {
        Kind kind;
        std::string name;
        std::vector<Formula> children;
    };
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

Formula operator!(const Formula& f);
Formula operator&(const Formula& a, const Formula& b);
Formula operator|(const Formula& a, const Formula& b);
Formula next(const Formula& f);
Formula weak_next(const Formula& f);
Formula until(const Formula& a, const Formula& b);
Formula release(const Formula& a, const Formula& b);
Formula eventually(const Formula& f);
Formula always(const Formula& f);
Formula implies(const Formula& a, const Formula& b);

/// Grammar: atoms, true/false, ! X N F G (prefix), U R (right-assoc),
/// & | -> <-> with precedence  -> / <->  <  |  <  &  <  U R  <  unary.
/// `X[!]` is accepted as strong next and `&&`, `||`, `1`, `0` as synonyms.
/// Throws ParseError with position, or Error for atoms outside `alphabet`.
Formula parse(std::string_view text, const std::set<std::string>& alphabet);
Formula parse(std::string_view text);

/// Parseable rendering; parse(to_string(f)) == f.
std::string to_string(const Formula& f);

/// Rewrites into {atom, tt, ff, !, &, X, U}.
Formula desugar(const Formula& f);

/// Number of syntax-tree nodes (occurrences, not distinct subformulas).
std::size_t size(const Formula& f);

std::set<std::string> atoms(const Formula& f);

/// pi, i |= f. Requires a non-empty trace and i <= lst(pi).
bool evaluate(const Formula& f, const Alphabet& ap, std::span<const Letter> trace, std::size_t i = 0);

}  // namespace ltlf
}  // namespace optsyn
