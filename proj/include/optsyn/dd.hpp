#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace optsyn::dd {

/// A decision variable; its index is also its level in the global order.
struct Var {
    std::uint32_t index = 0;
    auto operator<=>(const Var&) const = default;
};

class Manager;

/// Handle to a reduced ordered BDD root. Two Funcs of one manager denote the
/// same Boolean function iff they compare equal.
class Func {
public:
    Func() = default;

    Manager* manager() const { return mgr_; }
    std::uint32_t node() const { return id_; }
    bool valid() const { return mgr_ != nullptr; }
    bool is_true() const { return id_ == 1; }
    bool is_false() const { return id_ == 0; }

    bool operator==(const Func&) const = default;

    Func operator&(const Func& g) const;
    Func operator|(const Func& g) const;
    Func operator^(const Func& g) const;
    Func operator!() const;
    Func& operator&=(const Func& g) { return *this = *this & g; }
    Func& operator|=(const Func& g) { return *this = *this | g; }

private:
    friend class Manager;
    Func(Manager* m, std::uint32_t id) : mgr_(m), id_(id) {}
    Manager* mgr_ = nullptr;
    std::uint32_t id_ = 0;
};

enum class Op : std::uint8_t { conj, disj, exor };

/// Maps each substituted variable to its replacement function.
using Substitution = std::unordered_map<std::uint32_t, Func>;

/// Unique table, operation cache and variable order. No complement edges and
/// no garbage collection; nodes live as long as the manager.
/// Not thread-safe: confine a manager and its Funcs to one thread.
class Manager {
public:
    Manager();
    Manager(const Manager&) = delete;
    Manager& operator=(const Manager&) = delete;

    /// Appends a variable at the bottom of the order.
    Var add_var(std::string name);
    std::optional<Var> find_var(std::string_view name) const;
    const std::string& var_name(Var v) const { return names_.at(v.index); }
    std::size_t num_vars() const { return names_.size(); }

    Func var(Var v);
    Func var(std::string_view name);
    Func const_true() { return Func(this, 1); }
    Func const_false() { return Func(this, 0); }
    Func literal(Var v, bool positive) { return positive ? var(v) : negate(var(v)); }
    /// Conjunction of positive literals.
    Func cube(std::span<const Var> vars);
    /// Conjunction fixing vars[i] to bit i of `bits`.
    Func minterm(std::span<const Var> vars, std::uint64_t bits);

    Func apply(Op op, const Func& f, const Func& g);
    Func negate(const Func& f);
    Func ite(const Func& c, const Func& t, const Func& e);
    Func exists(std::span<const Var> vars, const Func& f);
    Func forall(std::span<const Var> vars, const Func& f);
    /// Simultaneous substitution. Every support variable of f must be mapped.
    Func vector_compose(const Func& f, const Substitution& sub);
    Func cofactor(const Func& f, Var v, bool value);

    std::vector<Var> support(const Func& f) const;
    /// assignment[i] is the value of variable i; must cover f's support.
    bool eval(const Func& f, const std::vector<bool>& assignment) const;
    bool is_implied(const Func& f, const Func& g);

    /// Nodes reachable from f, terminals included.
    std::size_t dag_size(const Func& f) const;
    /// Nodes allocated so far (monotone; there is no GC).
    std::size_t num_nodes() const { return nodes_.size(); }

    /// Nested if-then-else rendering, e.g. "ite(x, ite(y, 1, 0), 0)".
    std::string dump(const Func& f) const;

    // Raw node access for encoders and tests.
    std::uint32_t node_var(std::uint32_t id) const { return nodes_[id].var; }
    std::uint32_t node_low(std::uint32_t id) const { return nodes_[id].lo; }
    std::uint32_t node_high(std::uint32_t id) const { return nodes_[id].hi; }
    static constexpr std::uint32_t terminal_level = UINT32_MAX;

private:
    struct Node {
        std::uint32_t var;
        std::uint32_t lo;
        std::uint32_t hi;
    };
    struct Key {
        std::uint32_t a, b, c, d;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept;
    };
    enum CacheOp : std::uint32_t {
        c_and, c_or, c_xor, c_not, c_ite, c_exists, c_forall, c_cof0, c_cof1,
    };

    Func wrap(std::uint32_t id) { return Func(this, id); }
    void check(const Func& f) const;
    std::uint32_t level(std::uint32_t id) const { return nodes_[id].var; }
    std::uint32_t mk(std::uint32_t var, std::uint32_t lo, std::uint32_t hi);

    std::uint32_t apply_rec(Op op, std::uint32_t f, std::uint32_t g);
    std::uint32_t not_rec(std::uint32_t f);
    std::uint32_t ite_rec(std::uint32_t c, std::uint32_t t, std::uint32_t e);
    std::uint32_t quant_rec(bool exist, std::uint32_t f, std::uint32_t cube);
    std::uint32_t cofactor_rec(std::uint32_t f, std::uint32_t var, bool value);

    std::vector<Node> nodes_;
    std::unordered_map<Key, std::uint32_t, KeyHash> unique_;
    std::unordered_map<Key, std::uint32_t, KeyHash> cache_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::uint32_t> by_name_;
};

inline Func Func::operator&(const Func& g) const { return mgr_->apply(Op::conj, *this, g); }
inline Func Func::operator|(const Func& g) const { return mgr_->apply(Op::disj, *this, g); }
inline Func Func::operator^(const Func& g) const { return mgr_->apply(Op::exor, *this, g); }
inline Func Func::operator!() const { return mgr_->negate(*this); }

inline Func exists(std::span<const Var> vars, const Func& f) { return f.manager()->exists(vars, f); }
inline Func forall(std::span<const Var> vars, const Func& f) { return f.manager()->forall(vars, f); }
inline Func ite(const Func& c, const Func& t, const Func& e) { return c.manager()->ite(c, t, e); }
inline bool implies(const Func& f, const Func& g) { return f.manager()->is_implied(f, g); }

}  // namespace optsyn::dd
