#include "optsyn/game.hpp"

#include <algorithm>

namespace optsyn {

std::vector<Letter> outputs_in_preference_order(const Alphabet& ap) {
    const std::size_t m = ap.num_outputs();
    std::vector<Letter> out;
    for (Letter c = 0; c < (Letter{1} << m); ++c) {
        Letter y = 0;
        for (std::size_t j = 0; j < m; ++j)
            if ((c >> (m - 1 - j)) & 1U) y |= Letter{1} << j;
        out.push_back(y);
    }
    return out;
}

namespace {

std::optional<Letter> controllable_move(const Dfa& arena, State q, const StateSet& s,
                                        const std::vector<Letter>& ys) {
    const Alphabet& ap = arena.alphabet;
    for (Letter y : ys) {
        bool all = true;
        for (Letter x = 0; x < ap.num_input_letters() && all; ++x) all = s[arena.next(q, ap.join(x, y))];
        if (all) return y;
    }
    return std::nullopt;
}

}  // namespace

StateSet prec(const Dfa& arena, const StateSet& s) {
    const auto ys = outputs_in_preference_order(arena.alphabet);
    StateSet out(arena.num_states(), false);
    for (State q = 0; q < arena.num_states(); ++q) out[q] = controllable_move(arena, q, s, ys).has_value();
    return out;
}

ExplicitGameResult solve_explicit(const Dfa& arena, const StateSet& target, const Budget* budget) {
    const std::size_t n = arena.num_states();
    if (target.size() != n) throw Error("target set size does not match the arena");
    const auto ys = outputs_in_preference_order(arena.alphabet);
    ExplicitGameResult r;
    r.winning = target;
    r.rank.assign(n, unreached);
    r.move.assign(n, std::nullopt);
    for (State q = 0; q < n; ++q)
        if (target[q]) {
            r.rank[q] = 0;
            r.move[q] = Letter{0};
        }
    for (std::uint32_t round = 1;; ++round) {
        poll(budget);
        ++r.preimages;
        std::vector<std::pair<State, Letter>> added;
        for (State q = 0; q < n; ++q) {
            if (r.winning[q]) continue;
            if (auto y = controllable_move(arena, q, r.winning, ys)) added.emplace_back(q, *y);
        }
        if (added.empty()) break;
        ++r.steps;
        for (auto [q, y] : added) {
            r.winning[q] = true;
            r.rank[q] = round;
            r.move[q] = y;
        }
    }
    return r;
}

GameResult solve_symbolic(SymbolicArena& arena, const dd::Func& g, Fixpoint mode, const Budget* budget,
                          bool record) {
    dd::Manager& m = arena.manager();
    GameResult r;
    r.w = g;
    r.t = g;
    r.peak_nodes = m.dag_size(g);
    if (record) {
        r.w_trace.push_back(r.w);
        r.t_trace.push_back(r.t);
    }
    while (true) {
        poll(budget);
        if (mode == Fixpoint::early_exit && m.is_implied(arena.init(), r.w)) break;
        const dd::Func pre = arena.controllable_pre(r.w);
        ++r.preimages;
        const dd::Func t_next = r.t | (!r.w & pre);
        const dd::Func w_next = m.exists(arena.y(), t_next);
        if (w_next == r.w) break;
        ++r.steps;
        r.w = w_next;
        r.t = t_next;
        r.peak_nodes = std::max({r.peak_nodes, m.dag_size(r.w), m.dag_size(r.t)});
        if (record) {
            r.w_trace.push_back(r.w);
            r.t_trace.push_back(r.t);
        }
    }
    return r;
}

std::vector<dd::Func> synthesize_outputs(dd::Manager& m, const dd::Func& t, std::span<const dd::Var> y) {
    std::vector<dd::Func> out;
    dd::Func rest = t;
    for (std::size_t j = 0; j < y.size(); ++j) {
        const std::span<const dd::Var> later = y.subspan(j + 1);
        const dd::Func lo = m.cofactor(rest, y[j], false);
        const dd::Func hi = m.cofactor(rest, y[j], true);
        const dd::Func f = !m.exists(later, lo);
        out.push_back(f);
        rest = m.ite(f, hi, lo);
    }
    return out;
}

}  // namespace optsyn
