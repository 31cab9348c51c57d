#include "optsyn/ltlf.hpp"

#include "optsyn/error.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace optsyn {

Alphabet::Alphabet(std::vector<std::string> inputs, std::vector<std::string> outputs) {
    std::sort(inputs.begin(), inputs.end());
    std::sort(outputs.begin(), outputs.end());
    num_inputs_ = inputs.size();
    atoms_ = std::move(inputs);
    atoms_.insert(atoms_.end(), outputs.begin(), outputs.end());
    std::vector<std::string> sorted = atoms_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw Error("alphabet atoms must be distinct");
    if (atoms_.size() > 30) throw ResourceLimitError("alphabet larger than 30 atoms");
}

std::optional<std::size_t> Alphabet::index(std::string_view name) const {
    for (std::size_t i = 0; i < atoms_.size(); ++i)
        if (atoms_[i] == name) return i;
    return std::nullopt;
}

bool Alphabet::is_input(std::string_view name) const {
    auto i = index(name);
    return i && *i < num_inputs_;
}

bool Alphabet::is_output(std::string_view name) const {
    auto i = index(name);
    return i && *i >= num_inputs_;
}

Letter Alphabet::letter(const std::set<std::string>& true_atoms) const {
    Letter l = 0;
    for (const auto& a : true_atoms) {
        auto i = index(a);
        if (!i) throw Error("atom '" + a + "' is not in the alphabet");
        l |= Letter{1} << *i;
    }
    return l;
}

std::set<std::string> Alphabet::names(Letter l) const {
    std::set<std::string> out;
    for (std::size_t i = 0; i < atoms_.size(); ++i)
        if (l >> i & 1U) out.insert(atoms_[i]);
    return out;
}

namespace ltlf {

std::size_t arity(Kind k) {
    switch (k) {
    case Kind::atom: case Kind::tt: case Kind::ff: return 0;
    case Kind::negation: case Kind::next: case Kind::weak_next:
    case Kind::eventually: case Kind::always: return 1;
    default: return 2;
    }
}

Formula Formula::atom(std::string name) {
    if (name.empty()) throw Error("atom name must be non-empty");
    return Formula(std::make_shared<const Node>(Node{Kind::atom, std::move(name), {}}));
}

Formula Formula::tt() {
    static const Formula t(std::make_shared<const Node>(Node{Kind::tt, {}, {}}));
    return t;
}

Formula Formula::ff() {
    static const Formula f(std::make_shared<const Node>(Node{Kind::ff, {}, {}}));
    return f;
}

Formula Formula::unary(Kind kind, Formula operand) {
    if (ltlf::arity(kind) != 1) throw Error("operator is not unary");
    return Formula(std::make_shared<const Node>(Node{kind, {}, {std::move(operand)}}));
}

Formula Formula::binary(Kind kind, Formula lhs, Formula rhs) {
    if (ltlf::arity(kind) != 2) throw Error("operator is not binary");
    return Formula(std::make_shared<const Node>(Node{kind, {}, {std::move(lhs), std::move(rhs)}}));
}

bool Formula::operator==(const Formula& other) const {
    if (node_ == other.node_) return true;
    if (kind() != other.kind() || name() != other.name() || arity() != other.arity()) return false;
    for (std::size_t i = 0; i < arity(); ++i)
        if (!(child(i) == other.child(i))) return false;
    return true;
}

Formula operator!(const Formula& f) { return Formula::unary(Kind::negation, f); }
Formula operator&(const Formula& a, const Formula& b) { return Formula::binary(Kind::conjunction, a, b); }
Formula operator|(const Formula& a, const Formula& b) { return Formula::binary(Kind::disjunction, a, b); }
Formula next(const Formula& f) { return Formula::unary(Kind::next, f); }
Formula weak_next(const Formula& f) { return Formula::unary(Kind::weak_next, f); }
Formula until(const Formula& a, const Formula& b) { return Formula::binary(Kind::until, a, b); }
Formula release(const Formula& a, const Formula& b) { return Formula::binary(Kind::release, a, b); }
Formula eventually(const Formula& f) { return Formula::unary(Kind::eventually, f); }
Formula always(const Formula& f) { return Formula::unary(Kind::always, f); }
Formula implies(const Formula& a, const Formula& b) { return Formula::binary(Kind::implication, a, b); }

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { ident, lparen, rparen, bang, amp, bar, arrow, equiv, end };

struct Token {
    Tok type;
    std::string text;
    std::size_t line;
    std::size_t column;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space();
            Token t{Tok::end, {}, line_, col_};
            if (pos_ >= src_.size()) {
                out.push_back(t);
                return out;
            }
            char c = src_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t start = pos_;
                while (pos_ < src_.size() &&
                       (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                    advance();
                t.type = Tok::ident;
                t.text = std::string(src_.substr(start, pos_ - start));
                // X[!] is strong next in the SyntCOMP dialect.
                if (t.text == "X" && src_.substr(pos_, 3) == "[!]") {
                    advance(); advance(); advance();
                }
            } else if (c == '(') { t.type = Tok::lparen; advance(); }
            else if (c == ')') { t.type = Tok::rparen; advance(); }
            else if (c == '!' || c == '~') { t.type = Tok::bang; advance(); }
            else if (c == '&') { t.type = Tok::amp; advance(); if (peek('&')) advance(); }
            else if (c == '|') { t.type = Tok::bar; advance(); if (peek('|')) advance(); }
            else if (c == '-' && src_.substr(pos_, 2) == "->") { t.type = Tok::arrow; advance(); advance(); }
            else if (c == '<' && src_.substr(pos_, 3) == "<->") { t.type = Tok::equiv; advance(); advance(); advance(); }
            else throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
            t.text = t.text.empty() ? std::string(1, c) : t.text;
            out.push_back(std::move(t));
        }
    }

private:
    bool peek(char c) const { return pos_ < src_.size() && src_[pos_] == c; }
    void advance() {
        if (src_[pos_] == '\n') { ++line_; col_ = 1; } else { ++col_; }
        ++pos_;
    }
    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

class Parser {
public:
    Parser(std::vector<Token> toks, const std::set<std::string>* alphabet)
        : toks_(std::move(toks)), alphabet_(alphabet) {}

    Formula run() {
        Formula f = parse_implication();
        if (cur().type != Tok::end) fail("unexpected '" + cur().text + "'");
        return f;
    }

private:
    const Token& cur() const { return toks_[pos_]; }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, cur().line, cur().column);
    }
    bool at_ident(const char* word) const {
        return cur().type == Tok::ident && cur().text == word;
    }

    Formula parse_implication() {
        Formula lhs = parse_disjunction();
        if (cur().type == Tok::arrow) {
            ++pos_;
            return implies(lhs, parse_implication());
        }
        if (cur().type == Tok::equiv) {
            ++pos_;
            Formula rhs = parse_implication();
            return implies(lhs, rhs) & implies(rhs, lhs);
        }
        return lhs;
    }

    Formula parse_disjunction() {
        Formula f = parse_conjunction();
        while (cur().type == Tok::bar) {
            ++pos_;
            f = f | parse_conjunction();
        }
        return f;
    }

    Formula parse_conjunction() {
        Formula f = parse_temporal();
        while (cur().type == Tok::amp) {
            ++pos_;
            f = f & parse_temporal();
        }
        return f;
    }

    Formula parse_temporal() {
        Formula lhs = parse_unary();
        if (at_ident("U")) {
            ++pos_;
            return until(lhs, parse_temporal());
        }
        if (at_ident("R")) {
            ++pos_;
            return release(lhs, parse_temporal());
        }
        return lhs;
    }

    Formula parse_unary() {
        const Token& t = cur();
        if (t.type == Tok::bang) { ++pos_; return !parse_unary(); }
        if (t.type == Tok::ident) {
            if (t.text == "X") { ++pos_; return next(parse_unary()); }
            if (t.text == "N") { ++pos_; return weak_next(parse_unary()); }
            if (t.text == "F") { ++pos_; return eventually(parse_unary()); }
            if (t.text == "G") { ++pos_; return always(parse_unary()); }
        }
        return parse_primary();
    }

    Formula parse_primary() {
        const Token& t = cur();
        if (t.type == Tok::lparen) {
            ++pos_;
            Formula f = parse_implication();
            if (cur().type != Tok::rparen) fail("expected ')'");
            ++pos_;
            return f;
        }
        if (t.type == Tok::ident && t.text != "U" && t.text != "R") {
            ++pos_;
            if (t.text == "true" || t.text == "1") return Formula::tt();
            if (t.text == "false" || t.text == "0") return Formula::ff();
            if (std::isdigit(static_cast<unsigned char>(t.text.front())))
                throw ParseError("malformed atom '" + t.text + "'", t.line, t.column);
            if (alphabet_ && !alphabet_->count(t.text))
                throw Error("undeclared atom '" + t.text + "' at " + std::to_string(t.line) + ":" +
                            std::to_string(t.column));
            return Formula::atom(t.text);
        }
        if (t.type == Tok::end) fail("unexpected end of formula");
        fail("unexpected '" + t.text + "'");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const std::set<std::string>* alphabet_;
};

}  // namespace

Formula parse(std::string_view text, const std::set<std::string>& alphabet) {
    return Parser(Lexer(text).run(), &alphabet).run();
}

Formula parse(std::string_view text) {
    return Parser(Lexer(text).run(), nullptr).run();
}

std::string to_string(const Formula& f) {
    switch (f.kind()) {
    case Kind::atom: return f.name();
    case Kind::tt: return "true";
    case Kind::ff: return "false";
    default: break;
    }
    auto operand = [](const Formula& c) {
        std::string s = to_string(c);
        return arity(c.kind()) == 2 ? s : " " + s;
    };
    switch (f.kind()) {
    case Kind::negation: {
        std::string s = to_string(f.child(0));
        return "!" + s;
    }
    case Kind::next: return "X" + operand(f.child(0));
    case Kind::weak_next: return "N" + operand(f.child(0));
    case Kind::eventually: return "F" + operand(f.child(0));
    case Kind::always: return "G" + operand(f.child(0));
    case Kind::conjunction: return "(" + to_string(f.lhs()) + " & " + to_string(f.rhs()) + ")";
    case Kind::disjunction: return "(" + to_string(f.lhs()) + " | " + to_string(f.rhs()) + ")";
    case Kind::implication: return "(" + to_string(f.lhs()) + " -> " + to_string(f.rhs()) + ")";
    case Kind::until: return "(" + to_string(f.lhs()) + " U " + to_string(f.rhs()) + ")";
    case Kind::release: return "(" + to_string(f.lhs()) + " R " + to_string(f.rhs()) + ")";
    default: break;
    }
    throw Error("unreachable formula kind");
}

Formula desugar(const Formula& f) {
    switch (f.kind()) {
    case Kind::atom: case Kind::tt: case Kind::ff: return f;
    case Kind::negation: return !desugar(f.child(0));
    case Kind::next: return next(desugar(f.child(0)));
    case Kind::conjunction: return desugar(f.lhs()) & desugar(f.rhs());
    case Kind::until: return until(desugar(f.lhs()), desugar(f.rhs()));
    case Kind::disjunction: return !(!desugar(f.lhs()) & !desugar(f.rhs()));
    case Kind::implication: return !(desugar(f.lhs()) & !desugar(f.rhs()));
    case Kind::weak_next: return !next(!desugar(f.child(0)));
    case Kind::eventually: return until(Formula::tt(), desugar(f.child(0)));
    case Kind::always: return !until(Formula::tt(), !desugar(f.child(0)));
    case Kind::release: return !until(!desugar(f.lhs()), !desugar(f.rhs()));
    }
    throw Error("unreachable formula kind");
}

std::size_t size(const Formula& f) {
    std::size_t n = 1;
    for (std::size_t i = 0; i < f.arity(); ++i) n += size(f.child(i));
    return n;
}

std::set<std::string> atoms(const Formula& f) {
    std::set<std::string> out;
    std::function<void(const Formula&)> walk = [&](const Formula& g) {
        if (g.kind() == Kind::atom) out.insert(g.name());
        for (std::size_t i = 0; i < g.arity(); ++i) walk(g.child(i));
    };
    walk(f);
    return out;
}

namespace {

// Truth of f at every position of the trace, computed bottom-up.
std::vector<char> truth(const Formula& f, const Alphabet& ap, std::span<const Letter> trace) {
    const std::size_t n = trace.size();
    std::vector<char> out(n, 0);
    switch (f.kind()) {
    case Kind::atom: {
        auto idx = ap.index(f.name());
        if (!idx) throw Error("atom '" + f.name() + "' is not in the alphabet");
        for (std::size_t i = 0; i < n; ++i) out[i] = (trace[i] >> *idx) & 1U;
        return out;
    }
    case Kind::tt: std::fill(out.begin(), out.end(), 1); return out;
    case Kind::ff: return out;
    default: break;
    }
    std::vector<char> a = truth(f.child(0), ap, trace);
    std::vector<char> b = f.arity() == 2 ? truth(f.child(1), ap, trace) : std::vector<char>{};
    switch (f.kind()) {
    case Kind::negation: for (std::size_t i = 0; i < n; ++i) out[i] = !a[i]; break;
    case Kind::conjunction: for (std::size_t i = 0; i < n; ++i) out[i] = a[i] && b[i]; break;
    case Kind::disjunction: for (std::size_t i = 0; i < n; ++i) out[i] = a[i] || b[i]; break;
    case Kind::implication: for (std::size_t i = 0; i < n; ++i) out[i] = !a[i] || b[i]; break;
    case Kind::next: for (std::size_t i = 0; i + 1 < n; ++i) out[i] = a[i + 1]; break;
    case Kind::weak_next:
        for (std::size_t i = 0; i < n; ++i) out[i] = i + 1 == n ? 1 : a[i + 1];
        break;
    case Kind::until:
        for (std::size_t i = n; i-- > 0;)
            out[i] = b[i] || (a[i] && i + 1 < n && out[i + 1]);
        break;
    case Kind::release:
        for (std::size_t i = n; i-- > 0;)
            out[i] = b[i] && (a[i] || i + 1 == n || out[i + 1]);
        break;
    case Kind::eventually:
        for (std::size_t i = n; i-- > 0;) out[i] = a[i] || (i + 1 < n && out[i + 1]);
        break;
    case Kind::always:
        for (std::size_t i = n; i-- > 0;) out[i] = a[i] && (i + 1 == n || out[i + 1]);
        break;
    default: break;
    }
    return out;
}

}  // namespace

bool evaluate(const Formula& f, const Alphabet& ap, std::span<const Letter> trace, std::size_t i) {
    if (trace.empty()) throw Error("formulas are evaluated on non-empty traces only");
    if (i >= trace.size()) throw Error("position " + std::to_string(i) + " beyond the last instant");
    return truth(f, ap, trace)[i];
}

}  // namespace ltlf
}  // namespace optsyn
