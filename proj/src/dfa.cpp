#include "optsyn/dfa.hpp"

#include "optsyn/dd.hpp"

#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>

namespace optsyn {

namespace {

// Hash-consed negation normal form used during progression.
enum class NK : std::uint8_t { tt, ff, lit, nlit, conj, disj, next, wnext, until, release };

struct NNode {
    NK kind;
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    bool operator<(const NNode& o) const {
        return std::tie(kind, a, b) < std::tie(o.kind, o.a, o.b);
    }
};

class Progression {
public:
    Progression(const Alphabet& ap) : ap_(ap) {}

    std::uint32_t nnf(const ltlf::Formula& f, bool positive) {
        using ltlf::Kind;
        switch (f.kind()) {
        case Kind::atom: {
            auto idx = ap_.index(f.name());
            if (!idx) throw Error("atom '" + f.name() + "' is not in the alphabet");
            return node({positive ? NK::lit : NK::nlit, static_cast<std::uint32_t>(*idx), 0});
        }
        case Kind::tt: return node({positive ? NK::tt : NK::ff});
        case Kind::ff: return node({positive ? NK::ff : NK::tt});
        case Kind::negation: return nnf(f.child(0), !positive);
        case Kind::conjunction:
            return node({positive ? NK::conj : NK::disj, nnf(f.lhs(), positive), nnf(f.rhs(), positive)});
        case Kind::next:
            return node({positive ? NK::next : NK::wnext, nnf(f.child(0), positive)});
        case Kind::until:
            return node({positive ? NK::until : NK::release, nnf(f.lhs(), positive), nnf(f.rhs(), positive)});
        default:
            throw Error("progression expects desugared formulas");
        }
    }

    dd::Func initial(std::uint32_t root) { return mgr_.var(term(true, root)); }

    /// Successor of a state (a Boolean function over obligation variables).
    dd::Func successor(const dd::Func& state, Letter letter) {
        dd::Substitution sub;
        for (dd::Var v : mgr_.support(state)) {
            const Term t = terms_[v.index];
            sub.emplace(v.index, prog(t.node, letter));
        }
        return mgr_.vector_compose(state, sub);
    }

    /// Acceptance on the empty remainder: strong obligations fail, weak ones hold.
    bool final(const dd::Func& state) {
        std::vector<bool> assignment(terms_.size());
        for (std::size_t i = 0; i < terms_.size(); ++i) assignment[i] = !terms_[i].strong;
        return mgr_.eval(state, assignment);
    }

private:
    struct Term {
        bool strong;
        std::uint32_t node;
    };

    std::uint32_t node(NNode n) {
        auto [it, inserted] = ids_.emplace(n, static_cast<std::uint32_t>(nodes_.size()));
        if (inserted) nodes_.push_back(n);
        return it->second;
    }

    dd::Var term(bool strong, std::uint32_t n) {
        auto key = std::make_pair(strong, n);
        if (auto it = term_vars_.find(key); it != term_vars_.end()) return it->second;
        dd::Var v = mgr_.add_var((strong ? "S" : "W") + std::to_string(n));
        terms_.push_back({strong, n});
        term_vars_.emplace(key, v);
        return v;
    }

    dd::Func prog(std::uint32_t n, Letter letter) {
        auto key = std::make_pair(n, letter);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        const NNode nd = nodes_[n];
        dd::Func r;
        switch (nd.kind) {
        case NK::tt: r = mgr_.const_true(); break;
        case NK::ff: r = mgr_.const_false(); break;
        case NK::lit: r = (letter >> nd.a & 1U) ? mgr_.const_true() : mgr_.const_false(); break;
        case NK::nlit: r = (letter >> nd.a & 1U) ? mgr_.const_false() : mgr_.const_true(); break;
        case NK::conj: r = prog(nd.a, letter) & prog(nd.b, letter); break;
        case NK::disj: r = prog(nd.a, letter) | prog(nd.b, letter); break;
        case NK::next: r = mgr_.var(term(true, nd.a)); break;
        case NK::wnext: r = mgr_.var(term(false, nd.a)); break;
        case NK::until: r = prog(nd.b, letter) | (prog(nd.a, letter) & mgr_.var(term(true, n))); break;
        case NK::release: r = prog(nd.b, letter) & (prog(nd.a, letter) | mgr_.var(term(false, n))); break;
        }
        memo_.emplace(key, r);
        return r;
    }

    const Alphabet& ap_;
    dd::Manager mgr_;
    std::vector<NNode> nodes_;
    std::map<NNode, std::uint32_t> ids_;
    std::vector<Term> terms_;
    std::map<std::pair<bool, std::uint32_t>, dd::Var> term_vars_;
    std::map<std::pair<std::uint32_t, Letter>, dd::Func> memo_;
};

// Renumbers reachable states in BFS order, dropping the rest.
Dfa canonical(const Dfa& d) {
    const std::size_t letters = d.num_letters();
    std::vector<State> order;
    std::vector<std::int64_t> index(d.num_states(), -1);
    std::deque<State> queue{d.initial};
    index[d.initial] = 0;
    order.push_back(d.initial);
    while (!queue.empty()) {
        State q = queue.front();
        queue.pop_front();
        for (Letter l = 0; l < letters; ++l) {
            State s = d.next(q, l);
            if (index[s] < 0) {
                index[s] = static_cast<std::int64_t>(order.size());
                order.push_back(s);
                queue.push_back(s);
            }
        }
    }
    Dfa out;
    out.alphabet = d.alphabet;
    out.initial = 0;
    out.accepting.resize(order.size());
    out.delta.resize(order.size() * letters);
    for (std::size_t i = 0; i < order.size(); ++i) {
        out.accepting[i] = d.accepting[order[i]];
        for (Letter l = 0; l < letters; ++l)
            out.delta[i * letters + l] = static_cast<State>(index[d.next(order[i], l)]);
    }
    return out;
}

}  // namespace

Dfa translate(const ltlf::Formula& f, const Alphabet& ap, const BuildOptions& opts) {
    if (ap.size() > 20) throw ResourceLimitError("explicit translation supports at most 20 atoms");
    Progression progression(ap);
    const std::uint32_t root = progression.nnf(ltlf::desugar(f), true);

    Dfa d;
    d.alphabet = ap;
    const std::size_t letters = ap.num_letters();
    std::vector<dd::Func> states{progression.initial(root)};
    std::unordered_map<std::uint32_t, State> index{{states[0].node(), 0}};
    for (std::size_t q = 0; q < states.size(); ++q) {
        poll(opts.budget);
        d.accepting.push_back(q != 0 && progression.final(states[q]));
        for (Letter l = 0; l < letters; ++l) {
            dd::Func s = progression.successor(states[q], l);
            auto [it, inserted] = index.emplace(s.node(), static_cast<State>(states.size()));
            if (inserted) {
                if (states.size() >= opts.max_states)
                    throw ResourceLimitError("DFA translation exceeded " + std::to_string(opts.max_states) +
                                             " states");
                states.push_back(s);
            }
            d.delta.push_back(it->second);
        }
    }
    return d;
}

Dfa minimize(const Dfa& d) {
    const std::size_t n = d.num_states();
    const std::size_t letters = d.num_letters();
    std::vector<std::uint32_t> cls(n);
    for (std::size_t q = 0; q < n; ++q) cls[q] = d.accepting[q] ? 1 : 0;
    std::size_t classes = 0;
    while (true) {
        std::map<std::vector<std::uint32_t>, std::uint32_t> sig_ids;
        std::vector<std::uint32_t> next_cls(n);
        std::vector<std::uint32_t> sig(letters + 1);
        for (std::size_t q = 0; q < n; ++q) {
            sig[0] = cls[q];
            for (Letter l = 0; l < letters; ++l) sig[l + 1] = cls[d.next(static_cast<State>(q), l)];
            auto [it, _] = sig_ids.emplace(sig, static_cast<std::uint32_t>(sig_ids.size()));
            next_cls[q] = it->second;
        }
        cls.swap(next_cls);
        if (sig_ids.size() == classes) break;
        classes = sig_ids.size();
    }
    Dfa quotient;
    quotient.alphabet = d.alphabet;
    quotient.initial = cls[d.initial];
    quotient.accepting.assign(classes, false);
    quotient.delta.assign(classes * letters, 0);
    for (std::size_t q = 0; q < n; ++q) {
        quotient.accepting[cls[q]] = d.accepting[q];
        for (Letter l = 0; l < letters; ++l)
            quotient.delta[cls[q] * letters + l] = cls[d.next(static_cast<State>(q), l)];
    }
    return canonical(quotient);
}

Dfa stickify(const Dfa& d) {
    const std::size_t letters = d.num_letters();
    // State (q, latched) is numbered 2q + latched.
    Dfa s;
    s.alphabet = d.alphabet;
    s.initial = 2 * d.initial;
    s.accepting.resize(2 * d.num_states());
    s.delta.resize(2 * d.num_states() * letters);
    for (State q = 0; q < d.num_states(); ++q) {
        for (State latched = 0; latched < 2; ++latched) {
            const State id = 2 * q + latched;
            s.accepting[id] = latched == 1;
            for (Letter l = 0; l < letters; ++l) {
                const State succ = d.next(q, l);
                s.delta[id * letters + l] = 2 * succ + ((latched == 1 || d.accepting[succ]) ? 1 : 0);
            }
        }
    }
    return minimize(s);
}

Dfa compile_objective(const ltlf::Formula& f, const Alphabet& ap, const BuildOptions& opts) {
    return stickify(minimize(translate(f, ap, opts)));
}

ProductDfa product(std::span<const Dfa> components, const BuildOptions& opts) {
    if (components.empty()) throw Error("product of zero automata");
    if (components.size() > 64) throw ResourceLimitError("product supports at most 64 components");
    const Alphabet& ap = components.front().alphabet;
    for (const Dfa& c : components)
        if (!(c.alphabet == ap)) throw Error("product components must share one alphabet");
    const std::size_t letters = ap.num_letters();

    ProductDfa p;
    p.num_components = components.size();
    p.dfa.alphabet = ap;
    p.dfa.initial = 0;
    std::map<std::vector<State>, State> index;
    std::vector<State> init;
    for (const Dfa& c : components) init.push_back(c.initial);
    index.emplace(init, 0);
    p.components.push_back(init);
    for (std::size_t q = 0; q < p.components.size(); ++q) {
        poll(opts.budget);
        const std::vector<State> tuple = p.components[q];
        Bits bits = 0;
        for (std::size_t i = 0; i < components.size(); ++i)
            if (components[i].accepting[tuple[i]]) bits |= Bits{1} << i;
        p.bits.push_back(bits);
        const Bits all = components.size() == 64 ? ~Bits{0} : (Bits{1} << components.size()) - 1;
        p.dfa.accepting.push_back(bits == all);
        std::vector<State> succ(components.size());
        for (Letter l = 0; l < letters; ++l) {
            for (std::size_t i = 0; i < components.size(); ++i) succ[i] = components[i].next(tuple[i], l);
            auto [it, inserted] = index.emplace(succ, static_cast<State>(p.components.size()));
            if (inserted) {
                if (p.components.size() >= opts.max_states)
                    throw ResourceLimitError("product exceeded " + std::to_string(opts.max_states) + " states");
                p.components.push_back(succ);
            }
            p.dfa.delta.push_back(it->second);
        }
    }
    return p;
}

State run(const Dfa& d, std::span<const Letter> trace) {
    State q = d.initial;
    for (Letter l : trace) {
        if (l >= d.num_letters()) throw Error("letter outside the alphabet");
        q = d.next(q, l);
    }
    return q;
}

bool accepts(const Dfa& d, std::span<const Letter> trace) {
    const State q = run(d, trace);
    return !trace.empty() && d.accepting[q];
}

namespace {

std::string letter_label(const Alphabet& ap, Letter l) {
    std::string s;
    for (std::size_t i = 0; i < ap.size(); ++i) s += (l >> i & 1U) ? '1' : '0';
    return s;
}

void emit_edges(std::ostringstream& out, const Dfa& d) {
    for (State q = 0; q < d.num_states(); ++q) {
        std::map<State, std::vector<Letter>> by_target;
        for (Letter l = 0; l < d.num_letters(); ++l) by_target[d.next(q, l)].push_back(l);
        for (const auto& [t, ls] : by_target) {
            out << "  s" << q << " -> s" << t << " [label=\"";
            if (ls.size() == d.num_letters()) {
                out << "*";
            } else {
                for (std::size_t i = 0; i < ls.size(); ++i)
                    out << (i ? "," : "") << letter_label(d.alphabet, ls[i]);
            }
            out << "\"];\n";
        }
    }
}

}  // namespace

std::string to_dot(const Dfa& d, const std::string& name) {
    std::ostringstream out;
    out << "digraph \"" << name << "\" {\n  rankdir=LR;\n";
    out << "  // letter bits in atom order:";
    for (const auto& a : d.alphabet.atoms()) out << ' ' << a;
    out << "\n  init [shape=point];\n  init -> s" << d.initial << ";\n";
    for (State q = 0; q < d.num_states(); ++q)
        out << "  s" << q << " [shape=" << (d.accepting[q] ? "doublecircle" : "circle") << ", label=\"" << q
            << "\"];\n";
    emit_edges(out, d);
    out << "}\n";
    return out.str();
}

std::string to_dot(const ProductDfa& p, const std::vector<std::string>& objective_names, const std::string& name) {
    std::ostringstream out;
    out << "digraph \"" << name << "\" {\n  rankdir=LR;\n";
    out << "  // letter bits in atom order:";
    for (const auto& a : p.dfa.alphabet.atoms()) out << ' ' << a;
    out << "\n  // acceptance bits in objective order:";
    for (const auto& n : objective_names) out << ' ' << n;
    out << "\n  init [shape=point];\n  init -> s" << p.dfa.initial << ";\n";
    for (State q = 0; q < p.num_states(); ++q) {
        std::string bits;
        for (std::size_t i = 0; i < p.num_objectives(); ++i) bits += (p.bits[q] >> i & 1U) ? '1' : '0';
        out << "  s" << q << " [shape=" << (p.dfa.accepting[q] ? "doublecircle" : "circle") << ", label=\"" << q
            << "\\n" << bits << "\"];\n";
    }
    emit_edges(out, p.dfa);
    out << "}\n";
    return out.str();
}

}  // namespace optsyn
