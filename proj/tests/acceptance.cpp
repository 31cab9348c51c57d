// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "support.hpp"
#include "tables.hpp"

#include "optsyn/bench.hpp"
#include "optsyn/io.hpp"
#include "optsyn/optimal.hpp"
#include "optsyn/oracle.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

using namespace optsyn;
using Clock = std::chrono::steady_clock;

namespace {

// Pinned limits.
constexpr double robot_seconds = 1.0;
constexpr std::size_t corpus_size = 200;
constexpr double corpus_seconds = 300.0;
constexpr std::size_t translation_pairs = 10000;
constexpr std::size_t translation_formula_size = 8;
constexpr std::size_t translation_trace_length = 5;
constexpr std::size_t dd_max_vars = 12;
constexpr std::size_t canonicity_pairs = 1000;
constexpr std::size_t bench_instances = 20;
constexpr double bench_timeout = 60.0;

struct Verdict {
    bool pass = true;
    std::ostringstream detail;
    // Records the first problem only; later checks still run.
    void expect(bool ok, const std::string& what) {
        if (!ok && pass) detail << what << "; ";
        pass = pass && ok;
    }
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

SynthesisOptions with(Engine e, Search s = Search::linear) {
    SynthesisOptions o;
    o.engine = e;
    o.search = s;
    return o;
}

// n <= 3 objectives, formula size 3..6, |X|, |Y| <= 2, products of at most 2000 states.
const std::vector<test::Instance>& corpus() {
    static const auto c = test::instance_corpus(2024, corpus_size, {.min_formula_size = 3});
    return c;
}

void criterion1(Verdict& v) {
    const auto t0 = Clock::now();
    const CompiledProblem r = compile(load_spec(test::robot_spec()));
    const ProductDfa p = product(r.components);
    const auto w = r.spec.observe_weights();
    v.expect(oracle_value(p, w, p.dfa.initial) == Rational(2), "oracle value of the fixture is not 2");
    const auto g = max_guarantee(r);
    v.expect(g.value == Rational(1) && g.core.size() == 1, "max-guarantee is not 1 with a singleton core");
    v.expect(max_observation(r).value == Rational(2), "max-observation is not 2");
    const Alphabet& ap = r.alphabet;
    const FiniteTrace after_room2{ap.letter({"up"}), ap.letter({"door"})};
    for (bool improved : {false, true}) {
        const auto o = improved ? incremental_improved(r) : incremental_extended(r);
        v.expect(o.value == Rational(2) && o.strategy, "incremental value is not 2");
        if (o.strategy) v.expect(run(*o.strategy, after_room2).ensured == Rational(3), "ensured value after Room 2 is not 3");
    }
    const auto o = incremental_improved(r);
    std::istringstream in("up\ndoor\nquit\n");
    std::ostringstream out;
    if (o.strategy) play(*o.strategy, in, out);
    v.expect(out.str().find("round 0: ensured 2") != std::string::npos &&
                 out.str().find("round 2: ensured 3") != std::string::npos,
             "play does not show the 2 -> 3 promise");
    const double s = seconds_since(t0);
    v.expect(s < robot_seconds, "runtime over 1 s");
    v.detail << "guarantee " << to_string(g.value) << ", observe 2, ensured 2 -> 3, " << s << " s < " << robot_seconds
             << " s";
}

void criterion2(Verdict& v) {
    const auto t0 = Clock::now();
    corpus();  // generation counts toward the budget
    std::size_t mismatches = 0, states = 0, largest = 0;
    for (const auto& inst : corpus()) {
        states += inst.product.num_states();
        largest = std::max(largest, inst.product.num_states());
        const Rational oracle = oracle_value(inst.product, inst.spec.observe_weights(), inst.product.dfa.initial);
        const Rational sym = max_observation(inst.problem, with(Engine::symbolic)).value;
        const Rational ex = max_observation(inst.problem, with(Engine::explicit_)).value;
        mismatches += sym != oracle || ex != oracle;
    }
    const double s = seconds_since(t0);
    v.expect(mismatches == 0, std::to_string(mismatches) + " value mismatches");
    v.expect(s < corpus_seconds, "runtime over 300 s");
    v.detail << corpus().size() << " instances (" << states << " product states, largest " << largest << "), "
             << mismatches << " mismatches, " << s << " s < " << corpus_seconds << " s";
}

void criterion3(Verdict& v) {
    std::size_t regions = 0, states = 0;
    for (const auto& inst : corpus()) {
        const auto w = inst.spec.observe_weights();
        const ValueLadder ladder = build_ladder(w);
        SymbolicArena arena(inst.problem.components);
        const IncrementalResult ext = incremental_symbolic(arena, w, ladder, false, true);
        const IncrementalResult imp = incremental_symbolic(arena, w, ladder, true, true);
        v.expect(ext.w == imp.w, "w_k handles differ");
        regions += imp.w.size();
        for (const auto& c : inst.product.components) {
            v.expect(ext.ensured.lookup(arena, c) == imp.ensured.lookup(arena, c), "ensured values differ");
            ++states;
        }
        for (Engine e : {Engine::symbolic, Engine::explicit_})
            v.expect(max_observation(inst.problem, with(e)).value ==
                         max_observation(inst.problem, with(e, Search::binary)).value,
                     "linear and binary search disagree");
    }
    v.detail << regions << " regions and " << states << " state values identical, linear = binary search";
}

void criterion4(Verdict& v) {
    std::size_t strict = 0;
    for (const auto& inst : corpus()) {
        ProblemSpec s = inst.spec;
        for (auto& o : s.objectives) o.guarantee = o.observe;
        const CompiledProblem p = compile(s);
        const Rational g = max_guarantee(p).value, o = max_observation(p).value;
        v.expect(g <= o, "guarantee exceeds observation");
        strict += g < o;
    }
    v.expect(strict > 0, "no strict case");
    v.detail << "guarantee <= observe on all " << corpus().size() << ", strict on " << strict;
}

void criterion5(Verdict& v) {
    std::mt19937 rng(2025);
    const Alphabet ap({"a", "b"}, {"c"});
    std::size_t pairs = 0, mismatches = 0;
    while (pairs < translation_pairs) {
        const auto f = test::random_formula(rng, ap.atoms(), translation_formula_size);
        const Dfa d = minimize(translate(f, ap));
        for (int k = 0; k < 10 && pairs < translation_pairs; ++k, ++pairs) {
            const std::size_t len = 1 + rng() % translation_trace_length;
            const FiniteTrace pi = test::random_trace(rng, ap.num_letters(), len);
            mismatches += accepts(d, pi) != ltlf::evaluate(f, ap, pi);
        }
    }
    v.expect(mismatches == 0, std::to_string(mismatches) + " mismatches");
    v.detail << pairs << " pairs, " << mismatches << " mismatches";
}

void criterion6(Verdict& v) {
    using test::Table;
    std::mt19937 rng(2026);
    std::size_t checks = 0;
    for (std::size_t n = 1; n <= dd_max_vars; ++n) {
        test::Env e(n);
        for (int round = 0; round < 12; ++round) {
            const auto a = test::random_func(e, rng, 6), b = test::random_func(e, rng, 6), c = test::random_func(e, rng, 4);
            v.expect(e.table(a.f) == a.t, "table mismatch");
            v.expect(e.table(a.f & b.f) == test::zip(a.t, b.t, [](bool x, bool y) { return x && y; }), "and");
            v.expect(e.table(a.f | b.f) == test::zip(a.t, b.t, [](bool x, bool y) { return x || y; }), "or");
            v.expect(e.table(a.f ^ b.f) == test::zip(a.t, b.t, [](bool x, bool y) { return x != y; }), "xor");
            Table neg = a.t, it(a.t.size());
            neg.flip();
            v.expect(e.table(!a.f) == neg, "not");
            for (std::size_t r = 0; r < it.size(); ++r) it[r] = a.t[r] ? b.t[r] : c.t[r];
            v.expect(e.table(dd::ite(a.f, b.f, c.f)) == it, "ite");
            std::vector<dd::Var> qs;
            Table ex = a.t, fa = a.t;
            for (std::size_t i = 0; i < n; ++i)
                if (rng() % 3 == 0) {
                    qs.push_back(e.vars[i]);
                    ex = test::quantify(ex, i, true);
                    fa = test::quantify(fa, i, false);
                }
            v.expect(e.table(e.m.exists(qs, a.f)) == ex, "exists");
            v.expect(e.table(e.m.forall(qs, a.f)) == fa, "forall");
            const std::size_t var = rng() % n;
            Table cof(a.t.size());
            for (std::size_t r = 0; r < cof.size(); ++r) cof[r] = a.t[r | (std::size_t{1} << var)];
            v.expect(e.table(e.m.cofactor(a.f, e.vars[var], true)) == cof, "cofactor");
            bool implied = true;
            for (std::size_t r = 0; r < a.t.size(); ++r) implied = implied && (!a.t[r] || b.t[r]);
            v.expect(e.m.is_implied(a.f, b.f) == implied, "is_implied");
            dd::Substitution sub;
            std::vector<Table> images(n);
            for (std::size_t i = 0; i < n; ++i) {
                const auto g = test::random_func(e, rng, 2);
                sub.emplace(e.vars[i].index, g.f);
                images[i] = g.t;
            }
            Table composed(e.rows());
            for (std::size_t r = 0; r < e.rows(); ++r) {
                std::size_t row = 0;
                for (std::size_t i = 0; i < n; ++i) row |= std::size_t{images[i][r]} << i;
                composed[r] = a.t[row];
            }
            v.expect(e.table(e.m.vector_compose(a.f, sub)) == composed, "vector_compose");
            checks += 10;
        }
    }
    test::Env e(dd_max_vars);
    std::size_t equal = 0;
    for (std::size_t round = 0; round < canonicity_pairs; ++round) {
        const auto a = test::random_func(e, rng, 5);
        test::Pair b;
        if (round % 2 == 0) {
            b = test::random_func(e, rng, 5);
        } else {
            Table t = a.t;
            if (round % 4 == 1) t[rng() % t.size()].flip();
            b = {test::from_table(e, t), t};
        }
        v.expect((a.f == b.f) == (a.t == b.t), "canonicity violated");
        equal += a.t == b.t;
    }
    v.detail << checks << " table checks over 1.." << dd_max_vars << " variables, " << canonicity_pairs
             << " canonicity pairs (" << equal << " equal)";
}

void criterion7(Verdict& v) {
    std::size_t strategies = 0, incremental = 0;
    for (const auto& inst : corpus()) {
        if (inst.spec.inputs.size() > 2) continue;
        const auto w = inst.spec.observe_weights();
        const std::size_t horizon = inst.product.num_states();
        for (Mode m : {Mode::guarantee, Mode::observe, Mode::incremental_extended, Mode::incremental_improved}) {
            const auto o = synthesize(inst.problem, m);
            if (!o.strategy) continue;
            ++strategies;
            const Rational min = model_check_strategy(*o.strategy, inst.product, w, horizon);
            if (m == Mode::guarantee) {
                Rational core = 0;
                for (std::size_t i : o.core) core += w[i];
                v.expect(min >= core, "guarantee strategy observes less than its core");
            } else {
                v.expect(min == o.value, "min observed value differs from v*");
            }
            if (m == Mode::incremental_extended || m == Mode::incremental_improved) {
                const OracleReport rep = check_incremental_optimality(*o.strategy, inst.product, w);
                v.expect(rep.agreement && !rep.counterexample, "incremental counterexample found");
                ++incremental;
            }
        }
    }
    v.detail << strategies << " strategies model checked, " << incremental
             << " incremental strategies with 0 counterexamples";
}

void criterion8(Verdict& v) {
    std::size_t ext_total = 0, imp_total = 0, levels = 0;
    for (const auto& inst : corpus()) {
        const auto w = inst.spec.observe_weights();
        const ValueLadder ladder = build_ladder(w);
        SymbolicArena arena(inst.problem.components);
        const IncrementalResult ext = incremental_symbolic(arena, w, ladder, false, true);
        const IncrementalResult imp = incremental_symbolic(arena, w, ladder, true, true);
        v.expect(imp.stats.preimages <= ext.stats.preimages, "improved needs more preimages");
        for (std::size_t k = 0; k < ladder.size(); ++k, ++levels)
            v.expect(imp.stats.level_steps[k] <= ext.stats.level_steps[k], "improved needs more steps at a level");
        ext_total += ext.stats.preimages;
        imp_total += imp.stats.preimages;
    }
    v.expect(imp_total <= ext_total, "improved total exceeds extended total");
    v.detail << "preimages " << imp_total << " <= " << ext_total << ", step counts <= on " << levels << " levels";
}

void criterion9(Verdict& v) {
    const auto inst = list_instances(OPTSYN_BENCH_DIR);
    v.expect(inst.size() == bench_instances, std::to_string(inst.size()) + " instances instead of 20");
    std::size_t max_objectives = 0;
    for (const auto& i : inst) max_objectives = std::max(max_objectives, load_instance(i).objectives.size());
    v.expect(max_objectives <= 12, "an instance has more than 12 objectives");
    BenchOptions opts;
    opts.timeout_seconds = bench_timeout;
    const auto rows = run_bench(OPTSYN_BENCH_DIR, opts);
    std::ofstream csv("acceptance_bench.csv");
    csv << csv_header() << "\n";
    const std::regex row(R"(^[^,]+,[a-z-]+,(symbolic|explicit),(-|\d+(/\d+)?),\d+,\d+,\d+,\d+,\d+\.\d{3},(solved|timeout|limit|error)$)");
    std::size_t timeouts = 0, solved = 0, malformed = 0;
    double slowest = 0;
    for (const auto& r : rows) {
        const std::string line = csv_row(r);
        csv << line << "\n";
        malformed += !std::regex_match(line, row);
        timeouts += r.status == "timeout";
        solved += r.status == "solved";
        slowest = std::max(slowest, r.wall_ms);
    }
    v.expect(rows.size() == inst.size() * opts.modes.size(), "missing rows");
    v.expect(timeouts == 0, std::to_string(timeouts) + " timeouts");
    v.expect(malformed == 0, std::to_string(malformed) + " malformed rows");
    v.expect(solved == rows.size(), "some runs did not solve");
    v.detail << inst.size() << " instances, " << rows.size() << " runs, " << timeouts << " timeouts at " << bench_timeout
             << " s, slowest " << slowest / 1000 << " s, CSV well formed";
}

}  // namespace

int main() {
    const std::vector<void (*)(Verdict&)> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                   criterion6, criterion7, criterion8, criterion9};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            criteria[i](v);
        } catch (const std::exception& e) {
            v.expect(false, std::string("exception: ") + e.what());
        }
        std::cout << "criterion " << i + 1 << ": " << (v.pass ? "PASS" : "FAIL") << " (" << v.detail.str() << ")"
                  << std::endl;
        failed += !v.pass;
    }
    std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria met" << std::endl;
    return failed == 0 ? 0 : 1;
}
