#include "support.hpp"

#include "optsyn/error.hpp"
#include "optsyn/ltlf.hpp"

#include <doctest.h>

using namespace optsyn;
using namespace optsyn::ltlf;

namespace {

const std::set<std::string> abc{"a", "b", "c"};

// Direct transcription of the finite-trace semantics, quantifiers as loops.
bool holds(const Formula& f, const Alphabet& ap, const FiniteTrace& pi, std::size_t i) {
    const std::size_t last = pi.size() - 1;
    switch (f.kind()) {
    case Kind::atom: return pi[i] >> *ap.index(f.name()) & 1;
    case Kind::tt: return true;
    case Kind::ff: return false;
    case Kind::negation: return !holds(f.child(0), ap, pi, i);
    case Kind::conjunction: return holds(f.lhs(), ap, pi, i) && holds(f.rhs(), ap, pi, i);
    case Kind::disjunction: return holds(f.lhs(), ap, pi, i) || holds(f.rhs(), ap, pi, i);
    case Kind::implication: return !holds(f.lhs(), ap, pi, i) || holds(f.rhs(), ap, pi, i);
    case Kind::next: return i < last && holds(f.child(0), ap, pi, i + 1);
    case Kind::weak_next: return i == last || holds(f.child(0), ap, pi, i + 1);
    case Kind::until:
        for (std::size_t j = i; j <= last; ++j) {
            if (!holds(f.rhs(), ap, pi, j)) continue;
            bool ok = true;
            for (std::size_t k = i; k < j && ok; ++k) ok = holds(f.lhs(), ap, pi, k);
            if (ok) return true;
        }
        return false;
    case Kind::release:
        for (std::size_t j = i; j <= last; ++j) {
            if (holds(f.rhs(), ap, pi, j)) continue;
            bool ok = false;
            for (std::size_t k = i; k < j && !ok; ++k) ok = holds(f.lhs(), ap, pi, k);
            if (!ok) return false;
        }
        return true;
    case Kind::eventually:
        for (std::size_t j = i; j <= last; ++j)
            if (holds(f.child(0), ap, pi, j)) return true;
        return false;
    case Kind::always:
        for (std::size_t j = i; j <= last; ++j)
            if (!holds(f.child(0), ap, pi, j)) return false;
        return true;
    }
    return false;
}

bool core_only(const Formula& f) {
    switch (f.kind()) {
    case Kind::atom:
    case Kind::tt:
    case Kind::ff: return true;
    case Kind::negation:
    case Kind::next: return core_only(f.child(0));
    case Kind::conjunction:
    case Kind::until: return core_only(f.lhs()) && core_only(f.rhs());
    default: return false;
    }
}

Letter L(const Alphabet& ap, std::set<std::string> s) { return ap.letter(s); }

}  // namespace

TEST_CASE("parse produces the expected trees") {
    CHECK(parse("F(a)", abc) == eventually(Formula::atom("a")));
    CHECK(parse("a U (b & X c)", abc) ==
          until(Formula::atom("a"), Formula::atom("b") & next(Formula::atom("c"))));
    CHECK(parse("a U b U c", abc) == until(Formula::atom("a"), until(Formula::atom("b"), Formula::atom("c"))));
    CHECK(parse("!a & b | c", abc) == ((!Formula::atom("a") & Formula::atom("b")) | Formula::atom("c")));
    CHECK(parse("G a", abc).kind() == Kind::always);
    CHECK(parse("N a", abc).kind() == Kind::weak_next);
    CHECK(parse("a R b", abc).kind() == Kind::release);
    CHECK(parse("a -> b", abc).kind() == Kind::implication);
    CHECK(parse("X[!] a", abc) == next(Formula::atom("a")));
    CHECK(parse("true", abc) == Formula::tt());
    CHECK(parse("0", abc) == Formula::ff());
}

TEST_CASE("parse reports errors") {
    CHECK_THROWS_AS(parse("F a &", abc), ParseError);
    try {
        parse("F a &", abc);
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
        CHECK(e.column == 6);
    }
    CHECK_THROWS_AS(parse("(a", abc), ParseError);
    CHECK_THROWS_AS(parse("a $ b", abc), ParseError);
    try {
        parse("a & zz", abc);
        FAIL("undeclared atom accepted");
    } catch (const ParseError&) {
        FAIL("undeclared atom reported as syntax error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("zz") != std::string::npos);
    }
}

TEST_CASE("desugar examples") {
    const Formula a = Formula::atom("a");
    CHECK(desugar(weak_next(a)) == !next(!a));
    CHECK(desugar(eventually(a)) == until(Formula::tt(), a));
    CHECK(desugar(a) == a);
}

TEST_CASE("evaluate examples") {
    const Alphabet ap({"a", "b"}, {});
    CHECK_FALSE(evaluate(next(Formula::tt()), ap, FiniteTrace{L(ap, {"a"})}));
    CHECK(evaluate(parse("a U b"), ap, FiniteTrace{L(ap, {"a"}), L(ap, {"a"}), L(ap, {"b"})}));
    CHECK_FALSE(evaluate(parse("G a"), ap, FiniteTrace{L(ap, {"a"}), L(ap, {})}));
    CHECK(evaluate(parse("N a"), ap, FiniteTrace{L(ap, {})}));
    CHECK_THROWS_AS(evaluate(parse("a"), ap, FiniteTrace{}), Error);
    CHECK_THROWS_AS(evaluate(parse("a"), ap, FiniteTrace{0}, 1), Error);
}

TEST_CASE("size counts occurrences") {
    CHECK(size(parse("a")) == 1);
    CHECK(size(parse("a U b")) == 3);
    CHECK(size(parse("a & a")) == 3);
    CHECK(size(parse("F G !a")) == 4);
}

TEST_CASE("property: evaluate agrees with the direct semantics") {
    std::mt19937 rng(101);
    const Alphabet ap({"a", "b"}, {"c"});
    const auto traces = test::all_traces(ap.num_letters(), 4);
    for (int n = 0; n < 150; ++n) {
        const Formula f = test::random_formula(rng, ap.atoms(), 7);
        for (const auto& pi : traces)
            for (std::size_t i = 0; i < pi.size(); ++i)
                REQUIRE_MESSAGE(evaluate(f, ap, pi, i) == holds(f, ap, pi, i), to_string(f));
    }
}

TEST_CASE("property: desugar preserves semantics and reaches core syntax") {
    std::mt19937 rng(102);
    const Alphabet ap({"a", "b"}, {"c"});
    const auto traces = test::all_traces(ap.num_letters(), 4);
    for (int n = 0; n < 150; ++n) {
        const Formula f = test::random_formula(rng, ap.atoms(), 8);
        const Formula d = desugar(f);
        REQUIRE(core_only(d));
        for (const auto& pi : traces) REQUIRE_MESSAGE(evaluate(d, ap, pi) == evaluate(f, ap, pi), to_string(f));
    }
    // |π| ≤ 6 over a single atom, exhaustively
    const Alphabet one({"a"}, {});
    const auto long_traces = test::all_traces(one.num_letters(), 6);
    for (int n = 0; n < 60; ++n) {
        const Formula f = test::random_formula(rng, one.atoms(), 6);
        const Formula d = desugar(f);
        for (const auto& pi : long_traces) REQUIRE(evaluate(d, one, pi) == evaluate(f, one, pi));
    }
}

TEST_CASE("property: parse inverts to_string") {
    std::mt19937 rng(103);
    const std::vector<std::string> atoms{"a", "b", "c"};
    for (int n = 0; n < 500; ++n) {
        const Formula f = test::random_formula(rng, atoms, 10);
        const std::string s = to_string(f);
        REQUIRE_MESSAGE(parse(s, abc) == f, s);
    }
}

TEST_CASE("alphabet letters") {
    const Alphabet ap({"up", "door"}, {"left", "down"});
    CHECK(ap.atoms() == std::vector<std::string>{"door", "up", "down", "left"});
    CHECK(ap.letter({"up", "left"}) == (0b10 | 0b1000));
    CHECK(ap.join(0b01, 0b10) == 0b1001);
    CHECK(ap.input_part(0b1001) == 0b01);
    CHECK(ap.output_part(0b1001) == 0b10);
    CHECK(ap.names(0b0101) == std::set<std::string>{"door", "down"});
    CHECK_THROWS_AS(Alphabet({"a"}, {"a"}), Error);
}
