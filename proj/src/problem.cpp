#include "optsyn/problem.hpp"

#include "optsyn/error.hpp"

#include <algorithm>
#include <set>

namespace optsyn {

std::vector<std::string> ProblemSpec::names() const {
    std::vector<std::string> out;
    for (const auto& o : objectives) out.push_back(o.name);
    return out;
}

std::vector<Rational> ProblemSpec::guarantee_weights() const {
    std::vector<Rational> out;
    for (const auto& o : objectives) out.push_back(o.guarantee);
    return out;
}

std::vector<Rational> ProblemSpec::observe_weights() const {
    std::vector<Rational> out;
    for (const auto& o : objectives) out.push_back(o.observe);
    return out;
}

void ProblemSpec::validate() const {
    std::set<std::string> xs(inputs.begin(), inputs.end());
    std::set<std::string> ys(outputs.begin(), outputs.end());
    if (xs.size() != inputs.size()) throw Error("duplicate input atom");
    if (ys.size() != outputs.size()) throw Error("duplicate output atom");
    for (const auto& y : ys)
        if (xs.count(y)) throw Error("atom '" + y + "' is both input and output");
    if (objectives.empty()) throw Error("problem has no objectives");
    std::set<std::string> seen;
    for (const auto& o : objectives) {
        if (o.name.empty()) throw Error("objective with empty name");
        if (!seen.insert(o.name).second) throw Error("duplicate objective name '" + o.name + "'");
        for (const auto& a : ltlf::atoms(o.formula))
            if (!xs.count(a) && !ys.count(a))
                throw Error("objective '" + o.name + "' uses undeclared atom '" + a + "'");
        for (const Rational& w : {o.guarantee, o.observe})
            if (w <= 0 || w > 1)
                throw Error("objective '" + o.name + "' has weight " + to_string(w) + " outside (0,1]");
    }
}

void normalize_weights(ProblemSpec& spec) {
    if (spec.objectives.empty()) return;
    Rational gmax = 0, vmax = 0;
    for (const auto& o : spec.objectives) {
        gmax = std::max(gmax, o.guarantee);
        vmax = std::max(vmax, o.observe);
    }
    if (gmax <= 0 || vmax <= 0) throw Error("cannot normalize non-positive weights");
    for (auto& o : spec.objectives) {
        o.guarantee /= gmax;
        o.observe /= vmax;
    }
}

CompiledProblem compile(const ProblemSpec& spec, const BuildOptions& opts) {
    spec.validate();
    CompiledProblem p{spec, spec.alphabet(), {}};
    for (const auto& o : spec.objectives) p.components.push_back(compile_objective(o.formula, p.alphabet, opts));
    return p;
}

CompiledProblem restrict(const CompiledProblem& p, const std::vector<std::size_t>& keep) {
    CompiledProblem out{p.spec, p.alphabet, {}};
    out.spec.objectives.clear();
    for (std::size_t i : keep) {
        out.spec.objectives.push_back(p.spec.objectives.at(i));
        out.components.push_back(p.components.at(i));
    }
    return out;
}

std::vector<std::size_t> objective_indices(const ProblemSpec& spec, const std::vector<std::string>& names) {
    std::vector<std::size_t> out;
    for (const auto& n : names) {
        auto it = std::find_if(spec.objectives.begin(), spec.objectives.end(),
                               [&](const Objective& o) { return o.name == n; });
        if (it == spec.objectives.end()) throw Error("unknown objective '" + n + "'");
        out.push_back(static_cast<std::size_t>(it - spec.objectives.begin()));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace optsyn
