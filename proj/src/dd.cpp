#include "optsyn/dd.hpp"

#include "optsyn/error.hpp"

#include <algorithm>
#include <functional>

namespace optsyn::dd {

std::size_t Manager::KeyHash::operator()(const Key& k) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::uint32_t x : {k.a, k.b, k.c, k.d}) {
        h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 0xff51afd7ed558ccdULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
}

Manager::Manager() {
    nodes_.push_back({terminal_level, 0, 0});  // false
    nodes_.push_back({terminal_level, 1, 1});  // true
}

Var Manager::add_var(std::string name) {
    if (by_name_.count(name)) throw Error("variable '" + name + "' already registered");
    auto idx = static_cast<std::uint32_t>(names_.size());
    by_name_.emplace(name, idx);
    names_.push_back(std::move(name));
    return Var{idx};
}

std::optional<Var> Manager::find_var(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return Var{it->second};
}

void Manager::check(const Func& f) const {
    if (f.manager() != this) throw Error("function belongs to a different decision-diagram manager");
}

std::uint32_t Manager::mk(std::uint32_t var, std::uint32_t lo, std::uint32_t hi) {
    if (lo == hi) return lo;
    Key key{var, lo, hi, 0};
    if (auto it = unique_.find(key); it != unique_.end()) return it->second;
    auto id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back({var, lo, hi});
    unique_.emplace(key, id);
    return id;
}

Func Manager::var(Var v) {
    if (v.index >= names_.size()) throw Error("unknown variable index " + std::to_string(v.index));
    return wrap(mk(v.index, 0, 1));
}

Func Manager::var(std::string_view name) {
    auto v = find_var(name);
    if (!v) throw Error("unknown variable '" + std::string(name) + "'");
    return var(*v);
}

Func Manager::cube(std::span<const Var> vars) {
    Func f = const_true();
    for (Var v : vars) f = apply(Op::conj, f, var(v));
    return f;
}

Func Manager::minterm(std::span<const Var> vars, std::uint64_t bits) {
    Func f = const_true();
    for (std::size_t i = 0; i < vars.size(); ++i) f = apply(Op::conj, f, literal(vars[i], bits >> i & 1U));
    return f;
}

std::uint32_t Manager::apply_rec(Op op, std::uint32_t f, std::uint32_t g) {
    switch (op) {
    case Op::conj:
        if (f == 0 || g == 0) return 0;
        if (f == 1) return g;
        if (g == 1 || f == g) return f;
        break;
    case Op::disj:
        if (f == 1 || g == 1) return 1;
        if (f == 0) return g;
        if (g == 0 || f == g) return f;
        break;
    case Op::exor:
        if (f == g) return 0;
        if (f == 0) return g;
        if (g == 0) return f;
        if (f == 1) return not_rec(g);
        if (g == 1) return not_rec(f);
        break;
    }
    if (f > g) std::swap(f, g);
    const std::uint32_t tag = op == Op::conj ? c_and : op == Op::disj ? c_or : c_xor;
    Key key{tag, f, g, 0};
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;

    const std::uint32_t top = std::min(level(f), level(g));
    const std::uint32_t f0 = level(f) == top ? nodes_[f].lo : f;
    const std::uint32_t f1 = level(f) == top ? nodes_[f].hi : f;
    const std::uint32_t g0 = level(g) == top ? nodes_[g].lo : g;
    const std::uint32_t g1 = level(g) == top ? nodes_[g].hi : g;
    const std::uint32_t lo = apply_rec(op, f0, g0);
    const std::uint32_t hi = apply_rec(op, f1, g1);
    const std::uint32_t r = mk(top, lo, hi);
    cache_.emplace(key, r);
    return r;
}

Func Manager::apply(Op op, const Func& f, const Func& g) {
    check(f);
    check(g);
    return wrap(apply_rec(op, f.node(), g.node()));
}

std::uint32_t Manager::not_rec(std::uint32_t f) {
    if (f <= 1) return 1 - f;
    Key key{c_not, f, 0, 0};
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    const Node n = nodes_[f];
    const std::uint32_t lo = not_rec(n.lo);
    const std::uint32_t hi = not_rec(n.hi);
    const std::uint32_t r = mk(n.var, lo, hi);
    cache_.emplace(key, r);
    return r;
}

Func Manager::negate(const Func& f) {
    check(f);
    return wrap(not_rec(f.node()));
}

std::uint32_t Manager::ite_rec(std::uint32_t c, std::uint32_t t, std::uint32_t e) {
    if (c == 1) return t;
    if (c == 0) return e;
    if (t == e) return t;
    if (t == 1 && e == 0) return c;
    if (t == 0 && e == 1) return not_rec(c);
    Key key{c_ite, c, t, e};
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    const std::uint32_t top = std::min({level(c), level(t), level(e)});
    auto low = [&](std::uint32_t x) { return level(x) == top ? nodes_[x].lo : x; };
    auto high = [&](std::uint32_t x) { return level(x) == top ? nodes_[x].hi : x; };
    const std::uint32_t lo = ite_rec(low(c), low(t), low(e));
    const std::uint32_t hi = ite_rec(high(c), high(t), high(e));
    const std::uint32_t r = mk(top, lo, hi);
    cache_.emplace(key, r);
    return r;
}

Func Manager::ite(const Func& c, const Func& t, const Func& e) {
    check(c);
    check(t);
    check(e);
    return wrap(ite_rec(c.node(), t.node(), e.node()));
}

std::uint32_t Manager::quant_rec(bool exist, std::uint32_t f, std::uint32_t cube) {
    if (f <= 1) return f;
    while (cube > 1 && level(cube) < level(f)) cube = nodes_[cube].hi;
    if (cube <= 1) return f;
    Key key{exist ? c_exists : c_forall, f, cube, 0};
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    const Node n = nodes_[f];
    std::uint32_t r;
    if (n.var == level(cube)) {
        const std::uint32_t rest = nodes_[cube].hi;
        const std::uint32_t lo = quant_rec(exist, n.lo, rest);
        // Short-circuit on the absorbing element.
        if (exist && lo == 1) r = 1;
        else if (!exist && lo == 0) r = 0;
        else r = apply_rec(exist ? Op::disj : Op::conj, lo, quant_rec(exist, n.hi, rest));
    } else {
        const std::uint32_t lo = quant_rec(exist, n.lo, cube);
        const std::uint32_t hi = quant_rec(exist, n.hi, cube);
        r = mk(n.var, lo, hi);
    }
    cache_.emplace(key, r);
    return r;
}

Func Manager::exists(std::span<const Var> vars, const Func& f) {
    check(f);
    return wrap(quant_rec(true, f.node(), cube(vars).node()));
}

Func Manager::forall(std::span<const Var> vars, const Func& f) {
    check(f);
    return wrap(quant_rec(false, f.node(), cube(vars).node()));
}

Func Manager::vector_compose(const Func& f, const Substitution& sub) {
    check(f);
    for (const auto& [v, g] : sub) {
        if (v >= names_.size()) throw Error("substitution names unknown variable index " + std::to_string(v));
        check(g);
    }
    std::unordered_map<std::uint32_t, std::uint32_t> memo;
    std::function<std::uint32_t(std::uint32_t)> rec = [&](std::uint32_t u) -> std::uint32_t {
        if (u <= 1) return u;
        if (auto it = memo.find(u); it != memo.end()) return it->second;
        const Node n = nodes_[u];
        auto s = sub.find(n.var);
        if (s == sub.end())
            throw Error("no substitution for support variable '" + names_[n.var] + "'");
        const std::uint32_t lo = rec(n.lo);
        const std::uint32_t hi = rec(n.hi);
        const std::uint32_t r = ite_rec(s->second.node(), hi, lo);
        memo.emplace(u, r);
        return r;
    };
    return wrap(rec(f.node()));
}

std::uint32_t Manager::cofactor_rec(std::uint32_t f, std::uint32_t var, bool value) {
    if (level(f) > var) return f;
    const Node n = nodes_[f];
    if (n.var == var) return value ? n.hi : n.lo;
    Key key{value ? c_cof1 : c_cof0, f, var, 0};
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    const std::uint32_t lo = cofactor_rec(n.lo, var, value);
    const std::uint32_t hi = cofactor_rec(n.hi, var, value);
    const std::uint32_t r = mk(n.var, lo, hi);
    cache_.emplace(key, r);
    return r;
}

Func Manager::cofactor(const Func& f, Var v, bool value) {
    check(f);
    if (v.index >= names_.size()) throw Error("unknown variable index " + std::to_string(v.index));
    return wrap(cofactor_rec(f.node(), v.index, value));
}

std::vector<Var> Manager::support(const Func& f) const {
    check(f);
    std::vector<char> seen(nodes_.size(), 0);
    std::vector<char> used(names_.size(), 0);
    std::vector<std::uint32_t> stack{f.node()};
    while (!stack.empty()) {
        std::uint32_t u = stack.back();
        stack.pop_back();
        if (u <= 1 || seen[u]) continue;
        seen[u] = 1;
        used[nodes_[u].var] = 1;
        stack.push_back(nodes_[u].lo);
        stack.push_back(nodes_[u].hi);
    }
    std::vector<Var> out;
    for (std::uint32_t i = 0; i < used.size(); ++i)
        if (used[i]) out.push_back(Var{i});
    return out;
}

bool Manager::eval(const Func& f, const std::vector<bool>& assignment) const {
    check(f);
    std::uint32_t u = f.node();
    while (u > 1) {
        const Node& n = nodes_[u];
        if (n.var >= assignment.size())
            throw Error("assignment does not cover variable '" + names_[n.var] + "'");
        u = assignment[n.var] ? n.hi : n.lo;
    }
    return u == 1;
}

bool Manager::is_implied(const Func& f, const Func& g) {
    check(f);
    check(g);
    return apply_rec(Op::conj, f.node(), not_rec(g.node())) == 0;
}

std::size_t Manager::dag_size(const Func& f) const {
    check(f);
    std::vector<char> seen(nodes_.size(), 0);
    std::vector<std::uint32_t> stack{f.node()};
    std::size_t count = 0;
    while (!stack.empty()) {
        std::uint32_t u = stack.back();
        stack.pop_back();
        if (seen[u]) continue;
        seen[u] = 1;
        ++count;
        if (u > 1) {
            stack.push_back(nodes_[u].lo);
            stack.push_back(nodes_[u].hi);
        }
    }
    return count;
}

std::string Manager::dump(const Func& f) const {
    check(f);
    std::function<std::string(std::uint32_t)> rec = [&](std::uint32_t u) -> std::string {
        if (u <= 1) return u ? "1" : "0";
        const Node& n = nodes_[u];
        return "ite(" + names_[n.var] + ", " + rec(n.hi) + ", " + rec(n.lo) + ")";
    };
    return rec(f.node());
}

}  // namespace optsyn::dd
