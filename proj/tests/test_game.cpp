#include "support.hpp"

#include "optsyn/game.hpp"
#include "optsyn/optimal.hpp"

#include <doctest.h>

using namespace optsyn;

namespace {

// States 0, 1, 2 over X = {x}, Y = {y}. From 0, output y reaches 2 whatever x is;
// without y the environment can divert to the trap 1.
Dfa toy() {
    Dfa d;
    d.alphabet = Alphabet({"x"}, {"y"});
    d.initial = 0;
    d.accepting = {false, false, true};
    d.delta.assign(3 * 4, 0);
    for (Letter l = 0; l < 4; ++l) {
        const bool x = l & 1, y = l & 2;
        d.delta[0 * 4 + l] = y ? 2 : (x ? 1 : 2);
        d.delta[1 * 4 + l] = 1;
        d.delta[2 * 4 + l] = 2;
    }
    return d;
}

StateSet set_of(std::size_t n, std::initializer_list<State> s) {
    StateSet out(n, false);
    for (State q : s) out[q] = true;
    return out;
}

// Every input sequence from q under the positional moves reaches the target within `bound` steps.
bool forces(const Dfa& d, const StateSet& target, const std::function<Letter(State)>& move, State q,
            std::size_t bound) {
    if (target[q]) return true;
    if (bound == 0) return false;
    const Letter y = move(q);
    for (Letter x = 0; x < d.alphabet.num_input_letters(); ++x)
        if (!forces(d, target, move, d.next(q, d.alphabet.join(x, y)), bound - 1)) return false;
    return true;
}

}  // namespace

TEST_CASE("preference order puts the first output atom first") {
    CHECK(outputs_in_preference_order(Alphabet({"x"}, {"a", "b"})) == std::vector<Letter>{0, 2, 1, 3});
    CHECK(outputs_in_preference_order(Alphabet({"x"}, {})) == std::vector<Letter>{0});
}

TEST_CASE("controllable preimage on the toy arena") {
    const Dfa d = toy();
    CHECK(prec(d, set_of(3, {})) == set_of(3, {}));
    CHECK(prec(d, set_of(3, {0, 1, 2})) == set_of(3, {0, 1, 2}));
    CHECK(prec(d, set_of(3, {2})) == set_of(3, {0, 2}));
    CHECK(prec(d, set_of(3, {1})) == set_of(3, {1}));
}

TEST_CASE("explicit solver examples") {
    const Dfa d = toy();
    const auto all = solve_explicit(d, set_of(3, {0, 1, 2}));
    CHECK(all.winning == set_of(3, {0, 1, 2}));
    CHECK(all.rank == std::vector<std::uint32_t>{0, 0, 0});
    CHECK(all.steps == 0);
    const auto none = solve_explicit(d, set_of(3, {}));
    CHECK(none.winning == set_of(3, {}));
    const auto two = solve_explicit(d, set_of(3, {2}));
    CHECK(two.winning == set_of(3, {0, 2}));
    CHECK(two.rank[0] == 1);
    CHECK(two.rank[1] == unreached);
    CHECK(two.move[0] == Letter{1});
    CHECK_FALSE(two.move[1].has_value());
    CHECK(two.steps == 1);
}

TEST_CASE("robot arena: two rooms are forced, three are not") {
    const test::Instance robot = test::load_instance_file(test::robot_spec());
    const auto w = robot.spec.observe_weights();
    const auto& p = robot.product;
    CHECK(solve_explicit(p.dfa, target_at_least(p, w, 2)).winning[p.dfa.initial]);
    CHECK_FALSE(solve_explicit(p.dfa, target_at_least(p, w, 3)).winning[p.dfa.initial]);
}

TEST_CASE("symbolic solver on constant targets") {
    const test::Instance robot = test::load_instance_file(test::robot_spec());
    SymbolicArena arena(robot.problem.components);
    dd::Manager& m = arena.manager();
    const GameResult f = solve_symbolic(arena, m.const_false(), Fixpoint::full);
    CHECK(f.w == m.const_false());
    CHECK(f.t == m.const_false());
    const GameResult t = solve_symbolic(arena, m.const_true(), Fixpoint::full);
    CHECK(t.w == m.const_true());
    CHECK(t.steps == 0);
}

TEST_CASE("synthesize_outputs examples") {
    dd::Manager m;
    const dd::Var z = m.add_var("z"), y = m.add_var("y");
    const std::vector<dd::Var> ys{y};
    const dd::Func p = m.var(z);
    const auto forced = synthesize_outputs(m, m.var(y) & p, ys);
    CHECK(dd::implies(p, forced[0]));
    const auto free = synthesize_outputs(m, (m.var(y) | !m.var(y)) & p, ys);
    CHECK(dd::implies(p, !free[0]));
}

TEST_CASE("property: symbolic fixpoint equals the explicit winning region") {
    std::mt19937 rng(501);
    test::InstanceShape shape;
    shape.max_product_states = 600;
    for (int n = 0; n < 80; ++n) {
        const test::Instance inst = test::random_instance(rng, shape);
        const ProductDfa& p = inst.product;
        SymbolicArena arena(inst.problem.components);
        dd::Manager& m = arena.manager();
        const auto w = inst.spec.observe_weights();
        const ValueLadder ladder = build_ladder(w);
        for (std::size_t k = 0; k < ladder.size(); ++k) {
            const dd::Func g = target_at_least(arena, w, ladder[k]);
            const StateSet target = test::decode(arena, g, p);
            REQUIRE(target == target_at_least(p, w, ladder[k]));
            const StateSet oracle = test::brute_winning(p.dfa, target);
            const ExplicitGameResult ex = solve_explicit(p.dfa, target);
            REQUIRE(ex.winning == oracle);
            REQUIRE(prec(p.dfa, ex.winning) == ex.winning);

            const GameResult full = solve_symbolic(arena, g, Fixpoint::full, nullptr, true);
            REQUIRE(test::decode(arena, full.w, p) == oracle);
            REQUIRE(m.exists(arena.y(), full.t) == full.w);
            for (std::size_t i = 0; i + 1 < full.w_trace.size(); ++i) {
                REQUIRE(dd::implies(full.w_trace[i], full.w_trace[i + 1]));
                REQUIRE(dd::implies(full.t_trace[i], full.t_trace[i + 1]));
            }
            // every (state, output) pair of t keeps all successors winning
            for (State q = 0; q < p.num_states(); ++q) {
                if (target[q]) continue;
                for (Letter y = 0; y < p.dfa.alphabet.num_output_letters(); ++y) {
                    if (!arena.holds(full.t, p.components[q], p.dfa.alphabet.join(0, y))) continue;
                    for (Letter x = 0; x < p.dfa.alphabet.num_input_letters(); ++x)
                        REQUIRE(oracle[p.dfa.next(q, p.dfa.alphabet.join(x, y))]);
                }
            }
            const GameResult early = solve_symbolic(arena, g, Fixpoint::early_exit);
            REQUIRE(m.is_implied(arena.init(), early.w) == oracle[p.dfa.initial]);
            REQUIRE(early.preimages <= full.preimages);
            REQUIRE(dd::implies(early.w, full.w));

            // extracted moves force the target, explicitly and symbolically, with identical choices
            const auto outs = synthesize_outputs(m, full.t, arena.y());
            const auto ys = outputs_in_preference_order(p.dfa.alphabet);
            for (State q = 0; q < p.num_states(); ++q) {
                if (!oracle[q]) continue;
                Letter sym = 0;
                for (std::size_t j = 0; j < outs.size(); ++j)
                    if (arena.holds(outs[j], p.components[q])) sym |= Letter{1} << j;
                REQUIRE(arena.holds(full.t, p.components[q], p.dfa.alphabet.join(0, sym)));
                if (target[q]) continue;
                REQUIRE(ex.move[q] == sym);
                // smallest output in preference order that reaches a lower rank
                for (Letter y : ys) {
                    bool lower = true;
                    for (Letter x = 0; x < p.dfa.alphabet.num_input_letters() && lower; ++x)
                        lower = ex.rank[p.dfa.next(q, p.dfa.alphabet.join(x, y))] < ex.rank[q];
                    if (lower) {
                        REQUIRE(*ex.move[q] == y);
                        break;
                    }
                }
                REQUIRE(forces(p.dfa, target, [&](State s) { return *ex.move[s]; }, q,
                               std::min<std::size_t>(p.num_states(), 12)) == (ex.rank[q] <= 12));
            }
        }
    }
}

TEST_CASE("property: synthesize_outputs witnesses the relation") {
    std::mt19937 rng(502);
    for (int round = 0; round < 200; ++round) {
        dd::Manager m;
        const std::size_t nz = 1 + rng() % 5, ny = 1 + rng() % 5;
        std::vector<dd::Var> z, y, all;
        for (std::size_t i = 0; i < nz; ++i) z.push_back(m.add_var("z" + std::to_string(i)));
        for (std::size_t i = 0; i < ny; ++i) y.push_back(m.add_var("y" + std::to_string(i)));
        all = z;
        all.insert(all.end(), y.begin(), y.end());
        std::vector<bool> table(std::size_t{1} << all.size());
        for (std::size_t r = 0; r < table.size(); ++r) table[r] = rng() % 4 == 0;
        const dd::Func t = from_truth_table(m, all, table);
        const auto f = synthesize_outputs(m, t, y);
        REQUIRE(f.size() == ny);
        for (std::size_t code = 0; code < (std::size_t{1} << nz); ++code) {
            std::vector<bool> a(all.size(), false);
            for (std::size_t i = 0; i < nz; ++i) a[i] = code >> i & 1;
            std::size_t first = SIZE_MAX;  // lexicographically least witness, y0 most significant
            for (std::size_t c = 0; c < (std::size_t{1} << ny) && first == SIZE_MAX; ++c) {
                std::size_t row = code;
                for (std::size_t j = 0; j < ny; ++j)
                    if (c >> (ny - 1 - j) & 1) row |= std::size_t{1} << (nz + j);
                if (table[row]) first = row;
            }
            std::size_t chosen = code;
            for (std::size_t j = 0; j < ny; ++j)
                if (m.eval(f[j], a)) chosen |= std::size_t{1} << (nz + j);
            if (first == SIZE_MAX) continue;
            REQUIRE(table[chosen]);
            REQUIRE(chosen == first);
        }
        // substituting the outputs back yields exactly ∃Y.t
        dd::Substitution sub;
        for (dd::Var v : z) sub.emplace(v.index, m.var(v));
        for (std::size_t j = 0; j < ny; ++j) sub.emplace(y[j].index, f[j]);
        REQUIRE(m.vector_compose(t, sub) == m.exists(y, t));
    }
}
