#include "optsyn/io.hpp"

#include "optsyn/error.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace optsyn {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << content;
}

namespace {

std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

std::vector<std::string> words(std::string_view s) {
    std::istringstream in{std::string(s)};
    std::vector<std::string> out;
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

std::size_t first_non_space(std::string_view s, std::size_t from = 0) {
    while (from < s.size() && std::isspace(static_cast<unsigned char>(s[from]))) ++from;
    return from;
}

bool starts_with_keyword(std::string_view line, std::size_t at, std::string_view kw) {
    if (line.substr(at, kw.size()) != kw) return false;
    const std::size_t end = at + kw.size();
    return end == line.size() || line[end] == ':' || std::isspace(static_cast<unsigned char>(line[end]));
}

// Atom list after "KEYWORD" with an optional colon.
std::vector<std::string> atom_list(std::string_view line, std::size_t after) {
    std::size_t p = first_non_space(line, after);
    if (p < line.size() && line[p] == ':') ++p;
    return words(line.substr(p));
}

}  // namespace

ProblemSpec parse_spec(std::string_view text) {
    ProblemSpec spec;
    bool normalize = false;
    bool have_inputs = false, have_outputs = false;
    const auto lines = split_lines(text);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        std::string line = lines[ln];
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::size_t start = first_non_space(line);
        if (start == line.size()) continue;
        const std::size_t lineno = ln + 1;
        if (starts_with_keyword(line, start, "INPUTS")) {
            if (have_inputs) throw ParseError("INPUTS declared twice", lineno, start + 1);
            spec.inputs = atom_list(line, start + 6);
            have_inputs = true;
        } else if (starts_with_keyword(line, start, "OUTPUTS")) {
            if (have_outputs) throw ParseError("OUTPUTS declared twice", lineno, start + 1);
            spec.outputs = atom_list(line, start + 7);
            have_outputs = true;
        } else if (starts_with_keyword(line, start, "NORMALIZE")) {
            normalize = true;
        } else if (starts_with_keyword(line, start, "GOAL")) {
            const std::size_t colon = line.find(':', start);
            if (colon == std::string::npos) throw ParseError("GOAL line needs ':' before the formula", lineno, line.size() + 1);
            const auto header = words(std::string_view(line).substr(start + 4, colon - start - 4));
            if (header.empty()) throw ParseError("GOAL without a name", lineno, start + 5);
            Objective o{header[0], ltlf::Formula::tt()};
            for (std::size_t i = 1; i < header.size(); ++i) {
                const std::string& h = header[i];
                const std::size_t col = line.find(h, start) + 1;
                if (h.size() < 5 || h.front() != '[' || h.back() != ']' || h[2] != '=' || (h[1] != 'G' && h[1] != 'V'))
                    throw ParseError("expected [G=r] or [V=r], found '" + h + "'", lineno, col);
                Rational w;
                try {
                    w = parse_rational(h.substr(3, h.size() - 4));
                } catch (const Error& e) {
                    throw ParseError(e.what(), lineno, col);
                }
                (h[1] == 'G' ? o.guarantee : o.observe) = w;
            }
            std::set<std::string> ap(spec.inputs.begin(), spec.inputs.end());
            ap.insert(spec.outputs.begin(), spec.outputs.end());
            try {
                o.formula = ltlf::parse(std::string_view(line).substr(colon + 1), ap);
            } catch (const ParseError& e) {
                throw ParseError(e.message, lineno, colon + 1 + e.column);
            } catch (const Error& e) {
                throw Error("line " + std::to_string(lineno) + ": " + e.what());
            }
            spec.objectives.push_back(std::move(o));
        } else {
            throw ParseError("expected INPUTS, OUTPUTS, NORMALIZE or GOAL", lineno, start + 1);
        }
    }
    if (normalize) normalize_weights(spec);
    spec.validate();
    return spec;
}

ProblemSpec load_spec(const std::filesystem::path& path) { return parse_spec(read_file(path)); }

Partition parse_partition(std::string_view text) {
    Partition p;
    const auto lines = split_lines(text);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        auto w = words(lines[ln]);
        if (w.empty() || w[0].front() == '#') continue;
        std::string kw = w[0];
        if (kw.back() == ':') kw.pop_back();
        std::vector<std::string>* dst = kw == ".inputs" ? &p.inputs : kw == ".outputs" ? &p.outputs : nullptr;
        if (!dst) throw ParseError("expected .inputs or .outputs", ln + 1, first_non_space(lines[ln]) + 1);
        dst->insert(dst->end(), w.begin() + 1, w.end());
    }
    return p;
}

ProblemSpec parse_syntcomp(std::string_view formula, const Partition& partition, std::vector<std::string>* warnings) {
    ProblemSpec spec;
    spec.inputs = partition.inputs;
    spec.outputs = partition.outputs;
    std::set<std::string> ap(spec.inputs.begin(), spec.inputs.end());
    for (const auto& y : spec.outputs)
        if (!ap.insert(y).second) throw Error("atom '" + y + "' is both input and output");
    std::string text;
    for (const auto& line : split_lines(formula)) {
        std::string l = line;
        if (auto hash = l.find('#'); hash != std::string::npos) l.erase(hash);
        text += l + " ";
    }
    const ltlf::Formula f = ltlf::parse(text, ap);
    std::vector<ltlf::Formula> parts;
    std::vector<ltlf::Formula> stack{f};
    while (!stack.empty()) {
        ltlf::Formula g = stack.back();
        stack.pop_back();
        if (g.kind() == ltlf::Kind::conjunction) {
            stack.push_back(g.rhs());
            stack.push_back(g.lhs());
        } else {
            parts.push_back(g);
        }
    }
    if (parts.size() == 1 && warnings)
        warnings->push_back("top-level formula is not a conjunction; treated as a single objective");
    for (std::size_t i = 0; i < parts.size(); ++i)
        spec.objectives.push_back({"g" + std::to_string(i + 1), parts[i]});
    spec.validate();
    return spec;
}

ProblemSpec load_syntcomp(const std::filesystem::path& formula, const std::filesystem::path& partition,
                          std::vector<std::string>* warnings) {
    return parse_syntcomp(read_file(formula), parse_partition(read_file(partition)), warnings);
}

namespace {

std::string pattern(std::uint64_t bits, std::size_t width) {
    if (width == 0) return "-";
    std::string s;
    for (std::size_t i = 0; i < width; ++i) s += ((bits >> i) & 1U) ? '1' : '0';
    return s;
}

std::uint64_t parse_pattern(const std::string& s, std::size_t width, std::size_t line) {
    if (width == 0) {
        if (s != "-") throw ParseError("expected '-' for an empty bit pattern", line, 1);
        return 0;
    }
    if (s.size() != width) throw ParseError("bit pattern '" + s + "' should have " + std::to_string(width) + " bits", line, 1);
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < width; ++i) {
        if (s[i] == '1') v |= std::uint64_t{1} << i;
        else if (s[i] != '0') throw ParseError("malformed bit pattern '" + s + "'", line, 1);
    }
    return v;
}

}  // namespace

std::string write_strategy(const StrategyTransducer& t) {
    const Alphabet& ap = t.alphabet;
    std::ostringstream out;
    out << "optsyn-strategy 1\n";
    out << "mode " << to_string(t.mode) << "\n";
    out << "engine " << to_string(t.engine) << "\n";
    out << "value " << to_string(t.value) << "\n";
    out << "core";
    for (const auto& c : t.core) out << ' ' << c;
    out << "\ninputs";
    for (std::size_t i = 0; i < ap.num_inputs(); ++i) out << ' ' << ap.atom(i);
    out << "\noutputs";
    for (std::size_t i = ap.num_inputs(); i < ap.size(); ++i) out << ' ' << ap.atom(i);
    out << "\nobjectives";
    for (std::size_t i = 0; i < t.objectives.size(); ++i) out << ' ' << t.objectives[i] << ':' << to_string(t.weights[i]);
    out << "\nprotocol agent-first\n";
    out << "states " << t.states.size() << "\n";
    out << "initial " << t.initial << "\n";
    for (std::size_t s = 0; s < t.states.size(); ++s) {
        const auto& st = t.states[s];
        out << "state " << s << " bits " << pattern(st.bits, t.objectives.size()) << " ensured "
            << to_string(st.ensured) << " output " << pattern(st.output, ap.num_outputs()) << "\n";
    }
    for (std::size_t s = 0; s < t.states.size(); ++s)
        for (Letter x = 0; x < t.states[s].next.size(); ++x)
            out << "move " << s << ' ' << pattern(x, ap.num_inputs()) << ' ' << pattern(t.states[s].output, ap.num_outputs())
                << ' ' << t.states[s].next[x] << "\n";
    out << "end\n";
    return out.str();
}

StrategyTransducer parse_strategy(std::string_view text) {
    StrategyTransducer t;
    const auto lines = split_lines(text);
    std::vector<std::string> inputs, outputs;
    std::optional<std::size_t> declared;
    bool header = false, ended = false, have_alphabet = false;
    std::vector<std::vector<std::optional<State>>> moves;
    auto alphabet = [&] {
        if (!have_alphabet) {
            t.alphabet = Alphabet(inputs, outputs);
            for (std::size_t i = 0; i < inputs.size(); ++i)
                if (t.alphabet.atom(i) != inputs[i]) throw Error("strategy inputs must be listed in sorted order");
            for (std::size_t i = 0; i < outputs.size(); ++i)
                if (t.alphabet.atom(inputs.size() + i) != outputs[i])
                    throw Error("strategy outputs must be listed in sorted order");
            have_alphabet = true;
        }
    };
    auto to_number = [](const std::string& s, std::size_t line) -> std::size_t {
        try {
            std::size_t pos = 0;
            const unsigned long long v = std::stoull(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
            throw ParseError("expected a number, found '" + s + "'", line, 1);
        }
    };
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        const std::size_t lineno = ln + 1;
        const auto w = words(lines[ln]);
        if (w.empty() || w[0].front() == '#') continue;
        if (ended) throw ParseError("content after 'end'", lineno, 1);
        const std::string& kw = w[0];
        if (!header) {
            if (w.size() != 2 || kw != "optsyn-strategy" || w[1] != "1")
                throw ParseError("expected header 'optsyn-strategy 1'", lineno, 1);
            header = true;
        } else if (kw == "mode" && w.size() == 2) {
            t.mode = parse_mode(w[1]);
        } else if (kw == "engine" && w.size() == 2) {
            t.engine = parse_engine(w[1]);
        } else if (kw == "value" && w.size() == 2) {
            t.value = parse_rational(w[1]);
        } else if (kw == "core") {
            t.core.assign(w.begin() + 1, w.end());
        } else if (kw == "inputs") {
            inputs.assign(w.begin() + 1, w.end());
        } else if (kw == "outputs") {
            outputs.assign(w.begin() + 1, w.end());
        } else if (kw == "objectives") {
            for (std::size_t i = 1; i < w.size(); ++i) {
                const auto colon = w[i].find(':');
                if (colon == std::string::npos) throw ParseError("expected name:weight", lineno, 1);
                t.objectives.push_back(w[i].substr(0, colon));
                t.weights.push_back(parse_rational(w[i].substr(colon + 1)));
            }
        } else if (kw == "protocol") {
            if (w.size() != 2 || w[1] != "agent-first") throw ParseError("unsupported round protocol", lineno, 1);
        } else if (kw == "states" && w.size() == 2) {
            alphabet();
            declared = to_number(w[1], lineno);
            t.states.assign(*declared, TransducerState{});
            moves.assign(*declared, std::vector<std::optional<State>>(t.alphabet.num_input_letters()));
        } else if (kw == "initial" && w.size() == 2) {
            t.initial = static_cast<State>(to_number(w[1], lineno));
        } else if (kw == "state" && w.size() == 8 && w[2] == "bits" && w[4] == "ensured" && w[6] == "output") {
            if (!declared) throw ParseError("'state' before 'states'", lineno, 1);
            const std::size_t s = to_number(w[1], lineno);
            if (s >= *declared) throw ParseError("state index out of range", lineno, 1);
            t.states[s].bits = parse_pattern(w[3], t.objectives.size(), lineno);
            t.states[s].ensured = parse_rational(w[5]);
            t.states[s].output = static_cast<Letter>(parse_pattern(w[7], t.alphabet.num_outputs(), lineno));
        } else if (kw == "move" && w.size() == 5) {
            if (!declared) throw ParseError("'move' before 'states'", lineno, 1);
            const std::size_t s = to_number(w[1], lineno);
            if (s >= *declared) throw ParseError("state index out of range", lineno, 1);
            const auto x = static_cast<Letter>(parse_pattern(w[2], t.alphabet.num_inputs(), lineno));
            const auto y = static_cast<Letter>(parse_pattern(w[3], t.alphabet.num_outputs(), lineno));
            if (y != t.states[s].output) throw ParseError("move output differs from the state's output", lineno, 1);
            const std::size_t nx = to_number(w[4], lineno);
            if (nx >= *declared) throw ParseError("successor index out of range", lineno, 1);
            if (moves[s][x]) throw ParseError("duplicate move", lineno, 1);
            moves[s][x] = static_cast<State>(nx);
        } else if (kw == "end" && w.size() == 1) {
            ended = true;
        } else {
            throw ParseError("unexpected line '" + lines[ln] + "'", lineno, 1);
        }
    }
    if (!header) throw Error("empty strategy document");
    if (!ended) throw Error("strategy document lacks 'end'");
    if (!declared || *declared == 0) throw Error("strategy has no states");
    if (t.initial >= *declared) throw Error("initial state out of range");
    for (std::size_t s = 0; s < *declared; ++s)
        for (std::size_t x = 0; x < moves[s].size(); ++x) {
            if (!moves[s][x]) throw Error("state " + std::to_string(s) + " lacks a move for an input letter");
            t.states[s].next.push_back(*moves[s][x]);
        }
    return t;
}

StrategyTransducer load_strategy(const std::filesystem::path& path) { return parse_strategy(read_file(path)); }

std::string to_dot(const StrategyTransducer& t, const std::string& name) {
    const Alphabet& ap = t.alphabet;
    std::ostringstream out;
    out << "digraph \"" << name << "\" {\n  rankdir=LR;\n  init [shape=point];\n  init -> s" << t.initial << ";\n";
    for (std::size_t s = 0; s < t.states.size(); ++s) {
        const auto& st = t.states[s];
        out << "  s" << s << " [shape=box, label=\"" << s << "\\nbits " << pattern(st.bits, t.objectives.size())
            << "\\nensured " << to_string(st.ensured) << "\\nout " << pattern(st.output, ap.num_outputs())
            << "\"];\n";
    }
    for (std::size_t s = 0; s < t.states.size(); ++s) {
        std::map<State, std::vector<Letter>> by_target;
        for (Letter x = 0; x < t.states[s].next.size(); ++x) by_target[t.states[s].next[x]].push_back(x);
        for (const auto& [nx, xs] : by_target) {
            out << "  s" << s << " -> s" << nx << " [label=\"";
            if (xs.size() == t.states[s].next.size()) {
                out << "*";
            } else {
                for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? "," : "") << pattern(xs[i], ap.num_inputs());
            }
            out << "\"];\n";
        }
    }
    out << "}\n";
    return out.str();
}

}  // namespace optsyn
