#include "optsyn/arena.hpp"

#include "optsyn/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace optsyn {

std::size_t state_bits(std::size_t n) {
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < n) ++bits;
    return bits;
}

dd::Func from_truth_table(dd::Manager& m, std::span<const dd::Var> vars, const std::vector<bool>& table) {
    if (table.size() != (std::size_t{1} << vars.size())) throw Error("truth table size mismatch");
    std::function<dd::Func(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t base) -> dd::Func {
        if (i == vars.size()) return table[base] ? m.const_true() : m.const_false();
        dd::Func lo = rec(i + 1, base);
        dd::Func hi = rec(i + 1, base | (std::size_t{1} << i));
        if (lo == hi) return lo;
        return m.ite(m.var(vars[i]), hi, lo);
    };
    return rec(0, 0);
}

SymbolicDfa encode(const Dfa& d, dd::Manager& m, std::span<const dd::Var> z, std::span<const dd::Var> x,
                   std::span<const dd::Var> y) {
    const std::size_t n = d.num_states();
    if (z.size() != state_bits(n)) throw Error("wrong number of state variables for encoding");
    if (x.size() + y.size() != d.alphabet.size()) throw Error("atom variables do not match the alphabet");
    SymbolicDfa s;
    s.z.assign(z.begin(), z.end());
    s.num_states = n;
    s.init = m.minterm(z, d.initial);

    std::vector<dd::Var> atoms(x.begin(), x.end());
    atoms.insert(atoms.end(), y.begin(), y.end());
    const std::size_t letters = d.num_letters();

    std::vector<dd::Func> codes;
    dd::Func used = m.const_false();
    for (State q = 0; q < n; ++q) {
        codes.push_back(m.minterm(z, q));
        used |= codes.back();
    }
    s.accepting = m.const_false();
    for (State q = 0; q < n; ++q)
        if (d.accepting[q]) s.accepting |= codes[q];

    for (std::size_t j = 0; j < z.size(); ++j) {
        dd::Func eta = !used & m.var(z[j]);
        for (State q = 0; q < n; ++q) {
            std::vector<bool> table(letters);
            for (Letter l = 0; l < letters; ++l) table[l] = (d.next(q, l) >> j) & 1U;
            eta |= codes[q] & from_truth_table(m, atoms, table);
        }
        s.eta.push_back(eta);
    }
    return s;
}

SymbolicArena::SymbolicArena(std::span<const Dfa> components, VarOrder order)
    : mgr_(std::make_unique<dd::Manager>()) {
    if (components.empty()) throw Error("arena needs at least one component");
    alphabet_ = components.front().alphabet;
    for (const Dfa& c : components)
        if (!(c.alphabet == alphabet_)) throw Error("arena components must share one alphabet");

    std::vector<std::vector<dd::Var>> zs(components.size());
    auto add_z = [&] {
        for (std::size_t i = 0; i < components.size(); ++i)
            for (std::size_t j = 0; j < state_bits(components[i].num_states()); ++j)
                zs[i].push_back(mgr_->add_var("z" + std::to_string(i) + "_" + std::to_string(j)));
    };
    auto add_atoms = [&] {
        for (std::size_t i = 0; i < alphabet_.size(); ++i) {
            dd::Var v = mgr_->add_var(alphabet_.atom(i));
            (i < alphabet_.num_inputs() ? x_ : y_).push_back(v);
        }
    };
    if (order == VarOrder::interleaved) {
        add_z();
        add_atoms();
    } else {
        add_atoms();
        add_z();
    }

    init_ = mgr_->const_true();
    for (std::size_t i = 0; i < components.size(); ++i) {
        comps_.push_back(encode(components[i], *mgr_, zs[i], x_, y_));
        init_ &= comps_.back().init;
        for (std::size_t j = 0; j < zs[i].size(); ++j) {
            z_.push_back(zs[i][j]);
            eta_.emplace(zs[i][j].index, comps_.back().eta[j]);
        }
    }
}

dd::Func SymbolicArena::controllable_pre(const dd::Func& region) {
    return mgr_->forall(x_, mgr_->vector_compose(region, eta_));
}

dd::Func SymbolicArena::code(std::span<const State> tuple) {
    if (tuple.size() != comps_.size()) throw Error("state tuple has the wrong arity");
    dd::Func f = mgr_->const_true();
    for (std::size_t i = 0; i < comps_.size(); ++i) f &= mgr_->minterm(comps_[i].z, tuple[i]);
    return f;
}

std::vector<bool> SymbolicArena::assignment(std::span<const State> tuple, Letter letter) const {
    if (tuple.size() != comps_.size()) throw Error("state tuple has the wrong arity");
    std::vector<bool> a(mgr_->num_vars(), false);
    for (std::size_t i = 0; i < comps_.size(); ++i)
        for (std::size_t j = 0; j < comps_[i].z.size(); ++j) a[comps_[i].z[j].index] = (tuple[i] >> j) & 1U;
    for (std::size_t i = 0; i < x_.size(); ++i) a[x_[i].index] = (letter >> i) & 1U;
    for (std::size_t i = 0; i < y_.size(); ++i) a[y_[i].index] = (letter >> (x_.size() + i)) & 1U;
    return a;
}

bool SymbolicArena::holds(const dd::Func& f, std::span<const State> tuple, Letter letter) const {
    return mgr_->eval(f, assignment(tuple, letter));
}

std::vector<State> SymbolicArena::successor(std::span<const State> tuple, Letter letter) const {
    const std::vector<bool> a = assignment(tuple, letter);
    std::vector<State> out(comps_.size(), 0);
    for (std::size_t i = 0; i < comps_.size(); ++i)
        for (std::size_t j = 0; j < comps_[i].z.size(); ++j)
            if (mgr_->eval(comps_[i].eta[j], a)) out[i] |= State{1} << j;
    return out;
}

std::size_t SymbolicArena::code_space() const {
    if (z_.size() >= 8 * sizeof(std::size_t) - 1) return SIZE_MAX;
    return std::size_t{1} << z_.size();
}

std::size_t ValueLadder::index(const Rational& v) const {
    auto it = std::find(values.begin(), values.end(), v);
    if (it == values.end()) throw Error("value " + to_string(v) + " is not on the ladder");
    return static_cast<std::size_t>(it - values.begin());
}

ValueLadder build_ladder(std::span<const Rational> weights, std::size_t max_objectives) {
    return build_ladder(weights, {}, max_objectives);
}

ValueLadder build_ladder(std::span<const Rational> weights, const std::vector<std::size_t>& gamma,
                         std::size_t max_objectives) {
    if (weights.size() > max_objectives)
        throw ResourceLimitError("value ladder supports at most " + std::to_string(max_objectives) + " objectives");
    std::vector<bool> in_gamma(weights.size(), false);
    Rational base = 0;
    for (std::size_t i : gamma) {
        if (i >= weights.size()) throw Error("guarantee set index out of range");
        if (!in_gamma[i]) base += weights[i];
        in_gamma[i] = true;
    }
    std::set<Rational> sums{Rational(0)};
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (in_gamma[i]) continue;
        std::set<Rational> next = sums;
        for (const Rational& s : sums) next.insert(s + weights[i]);
        sums.swap(next);
    }
    ValueLadder ladder;
    for (auto it = sums.rbegin(); it != sums.rend(); ++it) {
        const Rational v = base + *it;
        if (v > 0) ladder.values.push_back(v);
    }
    return ladder;
}

Rational weight_of(Bits bits, std::span<const Rational> weights) {
    Rational sum = 0;
    for (std::size_t i = 0; i < weights.size(); ++i)
        if ((bits >> i) & 1U) sum += weights[i];
    return sum;
}

dd::Func target_guarantee(SymbolicArena& a, const std::vector<std::size_t>& psi) {
    if (psi.empty()) throw Error("guarantee target needs a non-empty objective set");
    dd::Func g = a.manager().const_true();
    for (std::size_t i : psi) g &= a.accepting(i);
    return g;
}

namespace {

// Threshold over the listed objectives: Σ_{accepted} w >= need.
dd::Func threshold(SymbolicArena& a, std::span<const Rational> weights, const std::vector<std::size_t>& items,
                   const Rational& need) {
    std::vector<Rational> suffix(items.size() + 1, Rational(0));
    for (std::size_t i = items.size(); i-- > 0;) suffix[i] = suffix[i + 1] + weights[items[i]];
    std::map<std::pair<std::size_t, Rational>, dd::Func> memo;
    dd::Manager& m = a.manager();
    std::function<dd::Func(std::size_t, const Rational&)> rec = [&](std::size_t i, const Rational& r) -> dd::Func {
        if (r <= 0) return m.const_true();
        if (r > suffix[i]) return m.const_false();
        auto key = std::make_pair(i, r);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        dd::Func f = m.ite(a.accepting(items[i]), rec(i + 1, r - weights[items[i]]), rec(i + 1, r));
        memo.emplace(key, f);
        return f;
    };
    return rec(0, need);
}

}  // namespace

dd::Func target_at_least(SymbolicArena& a, std::span<const Rational> weights, const Rational& v) {
    if (weights.size() != a.num_components()) throw Error("one weight per component expected");
    std::vector<std::size_t> items(weights.size());
    std::iota(items.begin(), items.end(), 0);
    return threshold(a, weights, items, v);
}

dd::Func target_exact_level(SymbolicArena& a, std::span<const Rational> weights, const ValueLadder& ladder,
                            std::size_t k) {
    if (k >= ladder.size()) throw Error("ladder level out of range");
    dd::Func at_least = target_at_least(a, weights, ladder[k]);
    if (k == 0) return at_least;
    return at_least & !target_at_least(a, weights, ladder[k - 1]);
}

dd::Func target_combined(SymbolicArena& a, std::span<const Rational> weights, const Rational& v,
                         const std::vector<std::size_t>& gamma) {
    if (weights.size() != a.num_components()) throw Error("one weight per component expected");
    std::vector<bool> in_gamma(weights.size(), false);
    Rational base = 0;
    dd::Func g = a.manager().const_true();
    for (std::size_t i : gamma) {
        if (i >= weights.size()) throw Error("guarantee set index out of range");
        if (in_gamma[i]) continue;
        in_gamma[i] = true;
        base += weights[i];
        g &= a.accepting(i);
    }
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < weights.size(); ++i)
        if (!in_gamma[i]) rest.push_back(i);
    return g & threshold(a, weights, rest, v - base);
}

}  // namespace optsyn
