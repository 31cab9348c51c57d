#include "optsyn/strategy.hpp"

#include "optsyn/error.hpp"

#include <deque>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace optsyn {

std::string to_string(Mode m) {
    switch (m) {
    case Mode::guarantee: return "guarantee";
    case Mode::observe: return "observe";
    case Mode::incremental_extended: return "incremental-ext";
    case Mode::incremental_improved: return "incremental-imp";
    case Mode::combined: return "combined";
    }
    return "?";
}

std::string to_string(Engine e) { return e == Engine::explicit_ ? "explicit" : "symbolic"; }

Mode parse_mode(std::string_view s) {
    for (Mode m : {Mode::guarantee, Mode::observe, Mode::incremental_extended, Mode::incremental_improved,
                   Mode::combined})
        if (s == to_string(m)) return m;
    throw Error("unknown mode '" + std::string(s) + "'");
}

Engine parse_engine(std::string_view s) {
    if (s == "explicit") return Engine::explicit_;
    if (s == "symbolic") return Engine::symbolic;
    throw Error("unknown engine '" + std::string(s) + "'");
}

Rational EnsuredValueMap::lookup(const SymbolicArena& arena, std::span<const State> tuple) const {
    for (const auto& [v, w] : levels)
        if (arena.holds(w, tuple)) return v;
    return 0;
}

StrategyTransducer concretize(SymbolicArena& arena, const std::vector<dd::Func>& outputs, const dd::Func& domain,
                              const EnsuredValueMap& ensured) {
    const Alphabet& ap = arena.alphabet();
    if (outputs.size() != ap.num_outputs()) throw Error("one output function per output atom expected");
    StrategyTransducer t;
    t.alphabet = ap;
    std::map<std::vector<State>, State> index;
    std::vector<std::vector<State>> tuples{arena.initial_tuple()};
    index.emplace(tuples[0], 0);
    for (std::size_t s = 0; s < tuples.size(); ++s) {
        const std::vector<State> tuple = tuples[s];
        if (!arena.holds(domain, tuple)) throw Error("strategy reaches a state outside its winning region");
        TransducerState st;
        for (std::size_t i = 0; i < arena.num_components(); ++i)
            if (arena.holds(arena.accepting(i), tuple)) st.bits |= Bits{1} << i;
        st.ensured = ensured.lookup(arena, tuple);
        for (std::size_t j = 0; j < outputs.size(); ++j)
            if (arena.holds(outputs[j], tuple)) st.output |= Letter{1} << j;
        for (Letter x = 0; x < ap.num_input_letters(); ++x) {
            auto succ = arena.successor(tuple, ap.join(x, st.output));
            auto [it, inserted] = index.emplace(succ, static_cast<State>(tuples.size()));
            if (inserted) tuples.push_back(succ);
            st.next.push_back(it->second);
        }
        t.states.push_back(std::move(st));
    }
    return t;
}

StrategyTransducer concretize(const ProductDfa& arena, const std::vector<std::optional<Letter>>& moves,
                              const std::vector<Rational>& ensured) {
    const Alphabet& ap = arena.dfa.alphabet;
    StrategyTransducer t;
    t.alphabet = ap;
    std::vector<std::int64_t> index(arena.num_states(), -1);
    std::vector<State> order{arena.dfa.initial};
    index[arena.dfa.initial] = 0;
    for (std::size_t s = 0; s < order.size(); ++s) {
        const State q = order[s];
        if (!moves.at(q)) throw Error("strategy reaches a state outside its winning region");
        TransducerState st;
        st.bits = arena.bits[q];
        st.ensured = ensured.at(q);
        st.output = *moves[q];
        for (Letter x = 0; x < ap.num_input_letters(); ++x) {
            const State succ = arena.dfa.next(q, ap.join(x, st.output));
            if (index[succ] < 0) {
                index[succ] = static_cast<std::int64_t>(order.size());
                order.push_back(succ);
            }
            st.next.push_back(static_cast<State>(index[succ]));
        }
        t.states.push_back(std::move(st));
    }
    return t;
}

RunState start(const StrategyTransducer& t) {
    RunState s;
    s.current = t.initial;
    const TransducerState& st = t.states.at(t.initial);
    s.satisfied = st.bits;
    s.observed = weight_of(st.bits, t.weights);
    s.ensured = st.ensured;
    s.satisfied_at.assign(t.objectives.size(), std::nullopt);
    return s;
}

void step(const StrategyTransducer& t, RunState& s, Letter x) {
    if (x >= t.alphabet.num_input_letters()) throw Error("input letter outside 2^X");
    const TransducerState& st = t.states.at(s.current);
    s.history.push_back(t.alphabet.join(x, st.output));
    s.current = st.next.at(x);
    const TransducerState& nx = t.states.at(s.current);
    for (std::size_t i = 0; i < s.satisfied_at.size(); ++i)
        if (((nx.bits >> i) & 1U) && !s.satisfied_at[i]) s.satisfied_at[i] = s.history.size();
    s.satisfied = nx.bits;
    s.observed = weight_of(nx.bits, t.weights);
    s.ensured = nx.ensured;
}

RunState run(const StrategyTransducer& t, std::span<const Letter> inputs) {
    RunState s = start(t);
    for (Letter x : inputs) step(t, s, x);
    return s;
}

namespace {

std::string atom_set(const Alphabet& ap, Letter l) {
    std::string out = "{";
    bool first = true;
    for (const auto& a : ap.names(l)) {
        out += (first ? "" : ", ") + a;
        first = false;
    }
    return out + "}";
}

std::string satisfied_names(const StrategyTransducer& t, Bits bits) {
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < t.objectives.size(); ++i)
        if ((bits >> i) & 1U) {
            out += (first ? "" : ", ") + t.objectives[i];
            first = false;
        }
    return out + "}";
}

}  // namespace

void play(const StrategyTransducer& t, std::istream& in, std::ostream& out) {
    const Alphabet& ap = t.alphabet;
    RunState s = start(t);
    std::string line;
    while (true) {
        const TransducerState& st = t.states.at(s.current);
        out << "round " << s.history.size() << ": ensured " << to_string(s.ensured) << ", observed "
            << to_string(s.observed) << ", satisfied " << satisfied_names(t, s.satisfied) << ", agent outputs "
            << atom_set(ap, ap.join(0, st.output)) << "\n";
        out << "inputs> " << std::flush;
        if (!std::getline(in, line)) break;
        std::istringstream words(line);
        std::string w;
        Letter x = 0;
        bool quit = false;
        std::string bad;
        while (words >> w) {
            if (w == "quit") {
                quit = true;
                break;
            }
            if (!ap.is_input(w)) {
                bad = w;
                break;
            }
            x |= Letter{1} << *ap.index(w);
        }
        if (quit) break;
        if (!bad.empty()) {
            out << "'" << bad << "' is not an input atom; inputs are:";
            for (std::size_t i = 0; i < ap.num_inputs(); ++i) out << ' ' << ap.atom(i);
            out << "\n";
            continue;
        }
        step(t, s, x);
    }
    out << "final observed value " << to_string(s.observed) << "\n";
    for (std::size_t i = 0; i < t.objectives.size(); ++i) {
        out << "  " << t.objectives[i] << ": ";
        if (s.satisfied_at[i]) {
            out << "satisfied by prefix";
            for (std::size_t k = 0; k < *s.satisfied_at[i]; ++k) out << ' ' << atom_set(ap, s.history[k]);
            out << "\n";
        } else {
            out << "not satisfied\n";
        }
    }
}

}  // namespace optsyn
