#include "optsyn/oracle.hpp"

#include "optsyn/arena.hpp"
#include "optsyn/game.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace optsyn {

Payoff additive_payoff(std::vector<Rational> weights) {
    return [w = std::move(weights)](Bits b) { return weight_of(b, w); };
}

Payoff restricted_payoff(std::vector<Rational> weights, std::vector<std::size_t> gamma) {
    Bits mask = 0;
    for (std::size_t i : gamma) mask |= Bits{1} << i;
    return [w = std::move(weights), mask](Bits b) { return (b & mask) == mask ? weight_of(b, w) : Rational(0); };
}

std::vector<Rational> oracle_values(const ProductDfa& arena, const Payoff& payoff, std::size_t max_states) {
    const std::size_t n = arena.num_states();
    if (n > max_states) throw ResourceLimitError("oracle limited to " + std::to_string(max_states) + " states");
    const Alphabet& ap = arena.dfa.alphabet;
    std::vector<Rational> value(n);
    for (State q = 0; q < n; ++q) value[q] = payoff(arena.bits[q]);
    for (std::size_t h = 0; h < n; ++h) {
        std::vector<Rational> next(n);
        for (State q = 0; q < n; ++q) {
            std::optional<Rational> best;
            for (Letter y = 0; y < ap.num_output_letters(); ++y) {
                std::optional<Rational> worst;
                for (Letter x = 0; x < ap.num_input_letters(); ++x) {
                    const Rational& v = value[arena.dfa.next(q, ap.join(x, y))];
                    if (!worst || v < *worst) worst = v;
                }
                if (!best || *worst > *best) best = worst;
            }
            next[q] = *best;
        }
        if (next == value) break;
        value.swap(next);
    }
    return value;
}

Rational oracle_value(const ProductDfa& arena, std::span<const Rational> weights, State from,
                      std::size_t max_states) {
    return oracle_values(arena, additive_payoff({weights.begin(), weights.end()}), max_states).at(from);
}

CoreResult exhaustive_core(const CompiledProblem& problem, std::size_t max_objectives, std::size_t max_states) {
    const std::size_t n = problem.spec.objectives.size();
    if (n > max_objectives)
        throw ResourceLimitError("exhaustive core search limited to " + std::to_string(max_objectives) +
                                 " objectives");
    const std::vector<Rational> g = problem.spec.guarantee_weights();
    CoreResult best;
    bool found = false;
    for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
        std::vector<std::size_t> subset;
        Rational sum = 0;
        for (std::size_t i = 0; i < n; ++i)
            if ((mask >> i) & 1U) {
                subset.push_back(i);
                sum += g[i];
            }
        if (found && (sum < best.value || (sum == best.value && !(subset < best.core)))) continue;
        const CompiledProblem sub = restrict(problem, subset);
        BuildOptions b;
        b.max_states = max_states;
        const ProductDfa p = product(sub.components, b);
        StateSet target(p.num_states());
        for (State q = 0; q < p.num_states(); ++q) target[q] = p.dfa.accepting[q];
        if (!solve_explicit(p.dfa, target).winning[p.dfa.initial]) continue;
        best = {subset, sum};
        found = true;
    }
    return best;
}

namespace {

struct JointSpace {
    std::vector<std::pair<State, State>> pairs;  ///< (strategy state, product state)
    std::vector<std::vector<std::uint32_t>> next;  ///< per input letter
    std::vector<std::int64_t> parent;
    std::vector<Letter> via;
};

JointSpace explore(const StrategyTransducer& t, const ProductDfa& arena) {
    if (!(t.alphabet == arena.dfa.alphabet)) throw Error("strategy and arena alphabets differ");
    const Alphabet& ap = t.alphabet;
    JointSpace js;
    std::map<std::pair<State, State>, std::uint32_t> index;
    js.pairs.emplace_back(t.initial, arena.dfa.initial);
    js.parent.push_back(-1);
    js.via.push_back(0);
    index.emplace(js.pairs[0], 0);
    for (std::size_t i = 0; i < js.pairs.size(); ++i) {
        const auto [s, q] = js.pairs[i];
        const TransducerState& st = t.states.at(s);
        std::vector<std::uint32_t> succ;
        for (Letter x = 0; x < ap.num_input_letters(); ++x) {
            const std::pair<State, State> nx{st.next.at(x), arena.dfa.next(q, ap.join(x, st.output))};
            auto [it, inserted] = index.emplace(nx, static_cast<std::uint32_t>(js.pairs.size()));
            if (inserted) {
                js.pairs.push_back(nx);
                js.parent.push_back(static_cast<std::int64_t>(i));
                js.via.push_back(x);
            }
            succ.push_back(it->second);
        }
        js.next.push_back(std::move(succ));
    }
    return js;
}

// values[i] = min over input sequences of length h of the payoff at the end.
std::vector<Rational> strategy_values(const JointSpace& js, const ProductDfa& arena,
                                      std::span<const Rational> weights, std::size_t horizon) {
    std::vector<Rational> value(js.pairs.size());
    for (std::size_t i = 0; i < js.pairs.size(); ++i) value[i] = weight_of(arena.bits[js.pairs[i].second], weights);
    for (std::size_t h = 0; h < horizon; ++h) {
        std::vector<Rational> next(value.size());
        for (std::size_t i = 0; i < js.pairs.size(); ++i) {
            Rational worst = value[js.next[i][0]];
            for (std::uint32_t j : js.next[i]) worst = std::min(worst, value[j]);
            next[i] = worst;
        }
        if (next == value) break;
        value.swap(next);
    }
    return value;
}

}  // namespace

Rational model_check_strategy(const StrategyTransducer& t, const ProductDfa& arena,
                              std::span<const Rational> weights, std::size_t horizon) {
    const JointSpace js = explore(t, arena);
    return strategy_values(js, arena, weights, horizon).at(0);
}

OracleReport check_incremental_optimality(const StrategyTransducer& t, const ProductDfa& arena,
                                          std::span<const Rational> weights) {
    const JointSpace js = explore(t, arena);
    const std::vector<Rational> achieved = strategy_values(js, arena, weights, js.pairs.size());
    const std::vector<Rational> optimum =
        oracle_values(arena, additive_payoff({weights.begin(), weights.end()}), SIZE_MAX);
    OracleReport r;
    r.oracle_value = optimum[arena.dfa.initial];
    r.engine_values.emplace_back("strategy", achieved[0]);
    r.states_checked = js.pairs.size();
    for (std::size_t i = 0; i < js.pairs.size(); ++i) {
        const Rational best = optimum[js.pairs[i].second];
        if (achieved[i] == best) continue;
        r.agreement = false;
        FiniteTrace history;
        for (std::int64_t k = static_cast<std::int64_t>(i); js.parent[k] >= 0; k = js.parent[k])
            history.push_back(js.via[k]);
        std::reverse(history.begin(), history.end());
        r.counterexample = history;
        r.counterexample_strategy = achieved[i];
        r.counterexample_optimum = best;
        break;
    }
    return r;
}

std::string OracleReport::text(const Alphabet& ap) const {
    std::ostringstream out;
    if (!instance.empty()) out << "instance " << instance << "\n";
    out << "oracle value " << to_string(oracle_value) << "\n";
    for (const auto& [name, v] : engine_values) out << name << " value " << to_string(v) << "\n";
    out << "states checked " << states_checked << "\n";
    if (agreement) {
        out << "incremental optimality: ok\n";
    } else {
        out << "incremental optimality: violated after inputs";
        if (counterexample && counterexample->empty()) out << " <empty>";
        if (counterexample)
            for (Letter x : *counterexample) {
                out << " {";
                bool first = true;
                for (const auto& a : ap.names(ap.join(x, 0))) {
                    out << (first ? "" : ",") << a;
                    first = false;
                }
                out << "}";
            }
        out << " (strategy ensures " << to_string(counterexample_strategy) << ", optimum "
            << to_string(counterexample_optimum) << ")\n";
    }
    return out.str();
}

std::string OracleReport::csv_header() { return "instance,oracle-value,engine,engine-value,agreement,states"; }

std::string OracleReport::csv_row() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < std::max<std::size_t>(engine_values.size(), 1); ++i) {
        if (i) out << "\n";
        out << instance << ',' << to_string(oracle_value) << ',';
        if (i < engine_values.size()) out << engine_values[i].first << ',' << to_string(engine_values[i].second);
        else out << ',';
        out << ',' << (agreement ? "yes" : "no") << ',' << states_checked;
    }
    return out.str();
}

}  // namespace optsyn
