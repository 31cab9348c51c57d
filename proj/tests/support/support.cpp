#include "support.hpp"

#include "optsyn/io.hpp"

namespace optsyn::test {

using ltlf::Formula;
using ltlf::Kind;

std::filesystem::path fixture(const std::string& name) {
    return std::filesystem::path(OPTSYN_FIXTURE_DIR) / name;
}

std::filesystem::path robot_spec() { return fixture("robot.spec"); }

namespace {

constexpr Kind unary_kinds[] = {Kind::negation, Kind::next, Kind::weak_next, Kind::eventually, Kind::always};
constexpr Kind binary_kinds[] = {Kind::conjunction, Kind::disjunction, Kind::implication, Kind::until,
                                 Kind::release};

std::size_t pick(std::mt19937& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace

Formula random_formula_exact(std::mt19937& rng, const std::vector<std::string>& atoms, std::size_t size) {
    if (size <= 1) {
        const std::size_t r = pick(rng, 10);
        if (r == 0) return Formula::tt();
        if (r == 1) return Formula::ff();
        return Formula::atom(atoms[pick(rng, atoms.size())]);
    }
    if (size == 2 || pick(rng, 3) == 0) {
        return Formula::unary(unary_kinds[pick(rng, std::size(unary_kinds))],
                              random_formula_exact(rng, atoms, size - 1));
    }
    const std::size_t left = 1 + pick(rng, size - 2);
    return Formula::binary(binary_kinds[pick(rng, std::size(binary_kinds))], random_formula_exact(rng, atoms, left),
                           random_formula_exact(rng, atoms, size - 1 - left));
}

Formula random_formula(std::mt19937& rng, const std::vector<std::string>& atoms, std::size_t max_size) {
    return random_formula_exact(rng, atoms, 1 + pick(rng, max_size));
}

FiniteTrace random_trace(std::mt19937& rng, std::size_t num_letters, std::size_t length) {
    FiniteTrace t(length);
    for (auto& l : t) l = static_cast<Letter>(pick(rng, num_letters));
    return t;
}

std::vector<FiniteTrace> all_sequences(std::size_t num_letters, std::size_t length) {
    std::vector<FiniteTrace> out{{}};
    for (std::size_t i = 0; i < length; ++i) {
        std::vector<FiniteTrace> next;
        for (const auto& t : out)
            for (Letter l = 0; l < num_letters; ++l) {
                next.push_back(t);
                next.back().push_back(l);
            }
        out = std::move(next);
    }
    return out;
}

std::vector<FiniteTrace> all_traces(std::size_t num_letters, std::size_t max_length) {
    std::vector<FiniteTrace> out;
    for (std::size_t len = 1; len <= max_length; ++len) {
        auto s = all_sequences(num_letters, len);
        out.insert(out.end(), s.begin(), s.end());
    }
    return out;
}

Instance random_instance(std::mt19937& rng, const InstanceShape& shape) {
    static const Rational weights[] = {Rational(1), Rational(1, 2), Rational(1, 3), Rational(2, 3), Rational(1, 4),
                                       Rational(3, 4)};
    for (;;) {
        ProblemSpec spec;
        const std::size_t nx = 1 + pick(rng, shape.max_inputs);
        const std::size_t ny = 1 + pick(rng, shape.max_outputs);
        for (std::size_t i = 0; i < nx; ++i) spec.inputs.push_back("x" + std::to_string(i));
        for (std::size_t i = 0; i < ny; ++i) spec.outputs.push_back("y" + std::to_string(i));
        std::vector<std::string> atoms = spec.inputs;
        atoms.insert(atoms.end(), spec.outputs.begin(), spec.outputs.end());
        const std::size_t n = 1 + pick(rng, shape.max_objectives);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t size = shape.min_formula_size + pick(rng, shape.max_formula_size - shape.min_formula_size + 1);
            Objective o{"g" + std::to_string(i + 1), random_formula_exact(rng, atoms, size)};
            if (shape.random_weights) {
                o.guarantee = weights[pick(rng, std::size(weights))];
                o.observe = weights[pick(rng, std::size(weights))];
            }
            spec.objectives.push_back(std::move(o));
        }
        CompiledProblem problem = compile(spec);
        BuildOptions bo;
        bo.max_states = shape.max_product_states;
        try {
            ProductDfa prod = product(problem.components, bo);
            return Instance{std::move(spec), std::move(problem), std::move(prod)};
        } catch (const ResourceLimitError&) {
        }
    }
}

std::vector<Instance> instance_corpus(std::uint32_t seed, std::size_t count, const InstanceShape& shape) {
    std::mt19937 rng(seed);
    std::vector<Instance> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(random_instance(rng, shape));
    return out;
}

Instance load_instance_file(const std::filesystem::path& path) {
    ProblemSpec spec = load_spec(path);
    CompiledProblem problem = compile(spec);
    ProductDfa prod = product(problem.components);
    return Instance{std::move(spec), std::move(problem), std::move(prod)};
}

StateSet decode(SymbolicArena& arena, const dd::Func& f, const ProductDfa& p) {
    StateSet out(p.num_states(), false);
    for (State q = 0; q < p.num_states(); ++q) out[q] = arena.holds(f, p.components[q]);
    return out;
}

std::vector<std::vector<std::size_t>> all_subsets(std::size_t n) {
    std::vector<std::vector<std::size_t>> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) s.push_back(i);
        out.push_back(std::move(s));
    }
    return out;
}

dd::Func subset_disjunction(SymbolicArena& arena, std::size_t n,
                            const std::function<bool(const std::vector<std::size_t>&)>& keep, bool exact) {
    dd::Manager& m = arena.manager();
    dd::Func out = m.const_false();
    for (const auto& psi : all_subsets(n)) {
        if (!keep(psi)) continue;
        dd::Func term = m.const_true();
        std::vector<bool> in(n, false);
        for (std::size_t i : psi) in[i] = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (in[i]) term &= arena.accepting(i);
            else if (exact) term &= !arena.accepting(i);
        }
        out |= term;
    }
    return out;
}

StateSet brute_winning(const Dfa& arena, const StateSet& target) {
    const Alphabet& ap = arena.alphabet;
    StateSet win = target;
    for (bool changed = true; changed;) {
        changed = false;
        StateSet next = win;
        for (State q = 0; q < arena.num_states(); ++q) {
            if (win[q]) continue;
            for (Letter y = 0; y < ap.num_output_letters() && !next[q]; ++y) {
                bool all = true;
                for (Letter x = 0; x < ap.num_input_letters() && all; ++x) all = win[arena.next(q, ap.join(x, y))];
                if (all) next[q] = true;
            }
            changed = changed || next[q];
        }
        win = std::move(next);
    }
    return win;
}

}  // namespace optsyn::test
