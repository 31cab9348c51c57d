#include "optsyn/optimal.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace optsyn {

void Statistics::add(std::size_t game_steps, std::size_t game_preimages, std::size_t peak) {
    ++games;
    steps += game_steps;
    preimages += game_preimages;
    peak_nodes = std::max(peak_nodes, peak);
}

SubsetEnumerator::SubsetEnumerator(std::span<const Rational> weights, std::vector<std::size_t> candidates)
    : sorted_(std::move(candidates)) {
    std::sort(sorted_.begin(), sorted_.end(), [&](std::size_t a, std::size_t b) {
        return weights[a] != weights[b] ? weights[a] < weights[b] : a < b;
    });
    for (std::size_t i : sorted_) weight_.push_back(weights[i]);
    queue_.push(Node{Rational(0), {}});
}

std::vector<std::size_t> SubsetEnumerator::kept(const Node& n) const {
    std::vector<bool> removed(sorted_.size(), false);
    for (std::size_t p : n.positions) removed[p] = true;
    std::vector<std::size_t> out;
    for (std::size_t p = 0; p < sorted_.size(); ++p)
        if (!removed[p]) out.push_back(sorted_[p]);
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::vector<std::size_t>> SubsetEnumerator::next() {
    if (group_pos_ < group_.size()) return group_[group_pos_++];
    if (queue_.empty()) return std::nullopt;
    group_.clear();
    group_pos_ = 0;
    const Rational level = queue_.top().removed;
    while (!queue_.empty() && queue_.top().removed == level) {
        Node n = queue_.top();
        queue_.pop();
        const std::size_t nxt = n.positions.empty() ? 0 : n.positions.back() + 1;
        if (nxt < sorted_.size()) {
            Node grow = n;
            grow.positions.push_back(nxt);
            grow.removed += weight_[nxt];
            queue_.push(grow);
            if (!n.positions.empty()) {
                Node shift = n;
                shift.removed += weight_[nxt] - weight_[n.positions.back()];
                shift.positions.back() = nxt;
                queue_.push(shift);
            }
        }
        group_.push_back(kept(n));
    }
    std::sort(group_.begin(), group_.end());
    return group_[group_pos_++];
}

namespace {

std::optional<std::size_t> search_first(std::size_t count, Search search,
                                        const std::function<bool(std::size_t)>& winnable) {
    if (count == 0) return std::nullopt;
    if (search == Search::linear) {
        for (std::size_t k = 0; k < count; ++k)
            if (winnable(k)) return k;
        return std::nullopt;
    }
    if (!winnable(count - 1)) return std::nullopt;
    std::size_t lo = 0, hi = count - 1;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (winnable(mid)) hi = mid;
        else lo = mid + 1;
    }
    return lo;
}

std::vector<std::size_t> all_indices(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

Rational sum_of(std::span<const Rational> weights, const std::vector<std::size_t>& subset) {
    Rational s = 0;
    for (std::size_t i : subset) s += weights[i];
    return s;
}

void check_size(const CompiledProblem& p, const SynthesisOptions& opts) {
    if (p.spec.objectives.size() > opts.max_objectives)
        throw ResourceLimitError("at most " + std::to_string(opts.max_objectives) + " objectives supported");
    if (p.spec.objectives.size() > 64) throw ResourceLimitError("at most 64 objectives supported");
}

void label(StrategyTransducer& t, const CompiledProblem& p, const SynthesisOutcome& o) {
    t.mode = o.mode;
    t.engine = o.engine;
    t.value = o.value;
    t.core.clear();
    for (std::size_t i : o.core) t.core.push_back(p.spec.objectives[i].name);
    t.objectives = p.spec.names();
    t.weights = p.spec.observe_weights();
}

BuildOptions build_options(const SynthesisOptions& opts) {
    BuildOptions b;
    b.budget = opts.budget;
    return b;
}

}  // namespace

ObservationResult search_levels(SymbolicArena& arena, const ValueLadder& ladder,
                                const std::function<dd::Func(const Rational&)>& target, Search search,
                                const Budget* budget) {
    ObservationResult r;
    std::map<std::size_t, GameResult> games;
    auto winnable = [&](std::size_t k) {
        auto it = games.find(k);
        if (it == games.end()) {
            GameResult g = solve_symbolic(arena, target(ladder[k]), Fixpoint::full, budget);
            r.stats.add(g.steps, g.preimages, g.peak_nodes);
            r.probed.push_back(k);
            it = games.emplace(k, std::move(g)).first;
        }
        return arena.manager().is_implied(arena.init(), it->second.w);
    };
    r.level = search_first(ladder.size(), search, winnable);
    if (r.level) r.game = games.at(*r.level);
    return r;
}

IncrementalResult incremental_symbolic(SymbolicArena& arena, std::span<const Rational> weights,
                                       const ValueLadder& ladder, bool improved, bool full, const Budget* budget) {
    dd::Manager& m = arena.manager();
    IncrementalResult r;
    r.relation = m.const_false();
    dd::Func previous = m.const_false();
    for (std::size_t k = 0; k < ladder.size(); ++k) {
        const dd::Func g = improved ? (previous | target_exact_level(arena, weights, ladder, k))
                                    : target_at_least(arena, weights, ladder[k]);
        GameResult game = solve_symbolic(arena, g, Fixpoint::full, budget);
        r.stats.add(game.steps, game.preimages, game.peak_nodes);
        r.stats.level_steps.push_back(game.steps);
        r.stats.level_preimages.push_back(game.preimages);
        r.relation |= k == 0 ? game.t : (game.t & !previous);
        r.values.push_back(ladder[k]);
        r.w.push_back(game.w);
        r.t.push_back(game.t);
        r.ensured.levels.emplace_back(ladder[k], game.w);
        previous = game.w;
        if (!r.initial_level && m.is_implied(arena.init(), game.w)) {
            r.initial_level = k;
            if (!full) break;
        }
    }
    return r;
}

StateSet target_at_least(const ProductDfa& p, std::span<const Rational> weights, const Rational& v) {
    StateSet s(p.num_states());
    for (State q = 0; q < p.num_states(); ++q) s[q] = weight_of(p.bits[q], weights) >= v;
    return s;
}

StateSet target_combined(const ProductDfa& p, std::span<const Rational> weights, const Rational& v,
                         const std::vector<std::size_t>& gamma) {
    Bits mask = 0;
    for (std::size_t i : gamma) mask |= Bits{1} << i;
    StateSet s(p.num_states());
    for (State q = 0; q < p.num_states(); ++q)
        s[q] = (p.bits[q] & mask) == mask && weight_of(p.bits[q], weights) >= v;
    return s;
}

ExplicitIncrementalResult incremental_explicit(const ProductDfa& p, std::span<const Rational> weights,
                                               const ValueLadder& ladder, bool improved, bool full,
                                               const Budget* budget) {
    const std::size_t n = p.num_states();
    ExplicitIncrementalResult r;
    r.moves.assign(n, std::nullopt);
    r.ensured.assign(n, Rational(0));
    StateSet previous(n, false);
    for (std::size_t k = 0; k < ladder.size(); ++k) {
        StateSet target = target_at_least(p, weights, ladder[k]);
        if (improved) {
            const StateSet above = k == 0 ? StateSet(n, false) : target_at_least(p, weights, ladder[k - 1]);
            for (State q = 0; q < n; ++q) target[q] = previous[q] || (target[q] && !above[q]);
        }
        ExplicitGameResult game = solve_explicit(p.dfa, target, budget);
        r.stats.add(game.steps, game.preimages, 0);
        r.stats.level_steps.push_back(game.steps);
        r.stats.level_preimages.push_back(game.preimages);
        for (State q = 0; q < n; ++q)
            if (game.winning[q] && !previous[q]) {
                r.moves[q] = game.move[q];
                r.ensured[q] = ladder[k];
            }
        r.values.push_back(ladder[k]);
        r.w.push_back(game.winning);
        previous = game.winning;
        if (!r.initial_level && game.winning[p.dfa.initial]) {
            r.initial_level = k;
            if (!full) break;
        }
    }
    return r;
}

namespace {

struct Probe {
    bool realisable = false;
    std::optional<StrategyTransducer> strategy;
};

Probe probe_guarantee(const CompiledProblem& p, const std::vector<std::size_t>& psi, const SynthesisOptions& opts,
                      Statistics& stats) {
    const CompiledProblem sub = restrict(p, psi);
    const std::vector<Rational> v = sub.spec.observe_weights();
    const Rational promise = std::accumulate(v.begin(), v.end(), Rational(0));
    Probe out;
    if (opts.engine == Engine::symbolic) {
        SymbolicArena arena(sub.components, opts.order);
        const dd::Func g = target_guarantee(arena, all_indices(psi.size()));
        GameResult game = solve_symbolic(arena, g, Fixpoint::early_exit, opts.budget);
        stats.add(game.steps, game.preimages, game.peak_nodes);
        if (!arena.manager().is_implied(arena.init(), game.w)) return out;
        out.realisable = true;
        EnsuredValueMap ensured{{{promise, game.w}}};
        out.strategy = concretize(arena, synthesize_outputs(arena.manager(), game.t, arena.y()), game.w, ensured);
    } else {
        const ProductDfa prod = product(sub.components, build_options(opts));
        StateSet target(prod.num_states());
        for (State q = 0; q < prod.num_states(); ++q) target[q] = prod.dfa.accepting[q];
        ExplicitGameResult game = solve_explicit(prod.dfa, target, opts.budget);
        stats.add(game.steps, game.preimages, 0);
        if (!game.winning[prod.dfa.initial]) return out;
        out.realisable = true;
        std::vector<Rational> ensured(prod.num_states(), Rational(0));
        for (State q = 0; q < prod.num_states(); ++q)
            if (game.winning[q]) ensured[q] = promise;
        out.strategy = concretize(prod, game.move, ensured);
    }
    return out;
}

}  // namespace

SynthesisOutcome max_guarantee(const CompiledProblem& problem, const SynthesisOptions& opts) {
    check_size(problem, opts);
    SynthesisOutcome o;
    o.mode = Mode::guarantee;
    o.engine = opts.engine;
    const std::size_t n = problem.spec.objectives.size();
    const std::vector<Rational> g = problem.spec.guarantee_weights();

    // A set containing an unrealisable objective is unrealisable.
    std::map<std::vector<std::size_t>, Probe> probes;
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < n; ++i) {
        Probe p = probe_guarantee(problem, {i}, opts, o.stats);
        if (p.realisable) candidates.push_back(i);
        probes.emplace(std::vector<std::size_t>{i}, std::move(p));
    }
    SubsetEnumerator subsets(g, candidates);
    while (auto psi = subsets.next()) {
        if (psi->empty()) break;
        auto it = probes.find(*psi);
        if (it == probes.end()) it = probes.emplace(*psi, probe_guarantee(problem, *psi, opts, o.stats)).first;
        if (!it->second.realisable) continue;
        o.core = *psi;
        o.value = sum_of(g, *psi);
        o.strategy = std::move(it->second.strategy);
        const CompiledProblem sub = restrict(problem, *psi);
        label(*o.strategy, sub, o);
        o.strategy->core = sub.spec.names();
        break;
    }
    return o;
}

namespace {

// Observation search over a (possibly Γ-restricted) ladder on the full problem.
SynthesisOutcome observe_with(const CompiledProblem& problem, const SynthesisOptions& opts,
                              const std::vector<std::size_t>& gamma, Mode mode, SymbolicArena* arena,
                              const ProductDfa* prod) {
    SynthesisOutcome o;
    o.mode = mode;
    o.engine = opts.engine;
    const std::vector<Rational> v = problem.spec.observe_weights();
    const ValueLadder ladder = build_ladder(v, gamma, opts.max_objectives);
    if (opts.engine == Engine::symbolic) {
        auto target = [&](const Rational& value) {
            return gamma.empty() ? target_at_least(*arena, v, value) : target_combined(*arena, v, value, gamma);
        };
        ObservationResult r = search_levels(*arena, ladder, target, opts.search, opts.budget);
        o.stats = r.stats;
        if (!r.level) return o;
        o.value = ladder[*r.level];
        EnsuredValueMap ensured{{{o.value, r.game.w}}};
        o.strategy = concretize(*arena, synthesize_outputs(arena->manager(), r.game.t, arena->y()), r.game.w,
                                ensured);
        o.levels = {o.value};
    } else {
        std::map<std::size_t, ExplicitGameResult> games;
        auto winnable = [&](std::size_t k) {
            auto it = games.find(k);
            if (it == games.end()) {
                StateSet target = gamma.empty() ? target_at_least(*prod, v, ladder[k])
                                                : target_combined(*prod, v, ladder[k], gamma);
                ExplicitGameResult g = solve_explicit(prod->dfa, target, opts.budget);
                o.stats.add(g.steps, g.preimages, 0);
                it = games.emplace(k, std::move(g)).first;
            }
            return static_cast<bool>(it->second.winning[prod->dfa.initial]);
        };
        auto level = search_first(ladder.size(), opts.search, winnable);
        if (!level) return o;
        o.value = ladder[*level];
        const ExplicitGameResult& game = games.at(*level);
        std::vector<Rational> ensured(prod->num_states(), Rational(0));
        for (State q = 0; q < prod->num_states(); ++q)
            if (game.winning[q]) ensured[q] = o.value;
        o.strategy = concretize(*prod, game.move, ensured);
        o.levels = {o.value};
    }
    return o;
}

}  // namespace

SynthesisOutcome max_observation(const CompiledProblem& problem, const SynthesisOptions& opts) {
    check_size(problem, opts);
    SynthesisOutcome o;
    if (opts.engine == Engine::symbolic) {
        SymbolicArena arena(problem.components, opts.order);
        o = observe_with(problem, opts, {}, Mode::observe, &arena, nullptr);
    } else {
        const ProductDfa prod = product(problem.components, build_options(opts));
        o = observe_with(problem, opts, {}, Mode::observe, nullptr, &prod);
    }
    if (o.strategy) label(*o.strategy, problem, o);
    return o;
}

namespace {

SynthesisOutcome incremental(const CompiledProblem& problem, const SynthesisOptions& opts, bool improved) {
    check_size(problem, opts);
    SynthesisOutcome o;
    o.mode = improved ? Mode::incremental_improved : Mode::incremental_extended;
    o.engine = opts.engine;
    const std::vector<Rational> v = problem.spec.observe_weights();
    const ValueLadder ladder = build_ladder(v, opts.max_objectives);
    if (opts.engine == Engine::symbolic) {
        SymbolicArena arena(problem.components, opts.order);
        IncrementalResult r = incremental_symbolic(arena, v, ladder, improved, opts.full, opts.budget);
        o.stats = r.stats;
        o.levels = r.values;
        if (!r.initial_level) return o;
        o.value = ladder[*r.initial_level];
        o.strategy = concretize(arena, synthesize_outputs(arena.manager(), r.relation, arena.y()), r.w.back(),
                                r.ensured);
    } else {
        const ProductDfa prod = product(problem.components, build_options(opts));
        ExplicitIncrementalResult r = incremental_explicit(prod, v, ladder, improved, opts.full, opts.budget);
        o.stats = r.stats;
        o.levels = r.values;
        if (!r.initial_level) return o;
        o.value = ladder[*r.initial_level];
        o.strategy = concretize(prod, r.moves, r.ensured);
    }
    label(*o.strategy, problem, o);
    return o;
}

}  // namespace

SynthesisOutcome incremental_extended(const CompiledProblem& problem, const SynthesisOptions& opts) {
    return incremental(problem, opts, false);
}

SynthesisOutcome incremental_improved(const CompiledProblem& problem, const SynthesisOptions& opts) {
    return incremental(problem, opts, true);
}

SynthesisOutcome combined(const CompiledProblem& problem, const SynthesisOptions& opts) {
    check_size(problem, opts);
    const std::size_t n = problem.spec.objectives.size();
    const std::vector<Rational> g = problem.spec.guarantee_weights();
    const std::vector<Rational> v = problem.spec.observe_weights();
    for (std::size_t i : opts.guarantee_set)
        if (i >= n) throw Error("guarantee set index out of range");

    std::optional<SymbolicArena> arena;
    std::optional<ProductDfa> prod;
    if (opts.engine == Engine::symbolic) arena.emplace(problem.components, opts.order);
    else prod = product(problem.components, build_options(opts));

    Statistics stats;
    auto evaluate = [&](const std::vector<std::size_t>& gamma) {
        SynthesisOutcome o = observe_with(problem, opts, gamma, Mode::combined, arena ? &*arena : nullptr,
                                          prod ? &*prod : nullptr);
        stats.games += o.stats.games;
        stats.steps += o.stats.steps;
        stats.preimages += o.stats.preimages;
        stats.peak_nodes = std::max(stats.peak_nodes, o.stats.peak_nodes);
        o.core = gamma;
        o.observed = o.value;
        o.value = o.observed > 0 ? o.observed + sum_of(g, gamma) : Rational(0);
        if (o.observed == Rational(0)) o.strategy.reset();
        return o;
    };

    SynthesisOutcome best;
    if (!opts.search_all) {
        std::vector<std::size_t> gamma = opts.guarantee_set;
        std::sort(gamma.begin(), gamma.end());
        gamma.erase(std::unique(gamma.begin(), gamma.end()), gamma.end());
        best = evaluate(gamma);
    } else {
        const Rational total_v = std::accumulate(v.begin(), v.end(), Rational(0));
        bool found = false;
        SubsetEnumerator subsets(g, all_indices(n));
        while (auto gamma = subsets.next()) {
            if (found && sum_of(g, *gamma) + total_v <= best.value) break;
            SynthesisOutcome o = evaluate(*gamma);
            if (!found || o.value > best.value) {
                best = std::move(o);
                found = true;
            }
        }
    }
    best.stats = stats;
    best.mode = Mode::combined;
    best.engine = opts.engine;
    if (best.strategy) label(*best.strategy, problem, best);
    return best;
}

SynthesisOutcome synthesize(const CompiledProblem& problem, Mode mode, const SynthesisOptions& opts) {
    if (opts.search == Search::binary && mode != Mode::observe && mode != Mode::combined)
        throw Error("binary search applies to observe and combined modes only");
    switch (mode) {
    case Mode::guarantee: return max_guarantee(problem, opts);
    case Mode::observe: return max_observation(problem, opts);
    case Mode::incremental_extended: return incremental_extended(problem, opts);
    case Mode::incremental_improved: return incremental_improved(problem, opts);
    case Mode::combined: return combined(problem, opts);
    }
    throw Error("unknown mode");
}

}  // namespace optsyn
