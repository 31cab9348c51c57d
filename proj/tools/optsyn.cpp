// optsyn: optimal LTLf synthesis from the command line.
//
//   optsyn synth SPEC --mode observe [-o strategy.txt]
//   optsyn verify SPEC STRATEGY [--horizon H]
//   optsyn play SPEC STRATEGY
//   optsyn dot SPEC|STRATEGY -o out.dot
//   optsyn bench DIR --timeout 60 --csv out.csv

#include "optsyn/bench.hpp"
#include "optsyn/io.hpp"
#include "optsyn/optimal.hpp"
#include "optsyn/oracle.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

using namespace optsyn;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_zero_value = 2;
constexpr int exit_resource = 3;

ProblemSpec load_problem(const std::string& path, const std::string& partition) {
    std::filesystem::path p(path);
    std::filesystem::path part(partition);
    if (part.empty() && p.extension() == ".ltlf") part = std::filesystem::path(p).replace_extension(".part");
    if (part.empty()) return load_spec(p);
    std::vector<std::string> warnings;
    ProblemSpec spec = load_syntcomp(p, part, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    return spec;
}

std::string name_set(const std::vector<std::string>& names) {
    std::string s = "{";
    for (std::size_t i = 0; i < names.size(); ++i) s += (i ? ", " : "") + names[i];
    return s + "}";
}

std::vector<std::string> split_names(const std::vector<std::string>& raw) {
    std::vector<std::string> out;
    for (const auto& r : raw) {
        std::string cur;
        for (char c : r) {
            if (c == ',') {
                if (!cur.empty()) out.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

struct SynthArgs {
    std::string spec, partition, mode = "observe", engine = "symbolic", search = "linear", output, order = "interleaved";
    std::vector<std::string> guarantee_set;
    bool search_all = false, full = false;
    double timeout = 0;
};

int cmd_synth(const SynthArgs& a) {
    const auto start = std::chrono::steady_clock::now();
    std::optional<Budget> budget;
    if (a.timeout > 0) budget.emplace(std::chrono::milliseconds(static_cast<std::int64_t>(a.timeout * 1000)));
    const Mode mode = parse_mode(a.mode);
    SynthesisOptions opts;
    opts.engine = parse_engine(a.engine);
    if (a.search != "linear" && a.search != "binary") throw Error("unknown search '" + a.search + "'");
    opts.search = a.search == "binary" ? Search::binary : Search::linear;
    if (opts.search == Search::binary && mode != Mode::observe)
        throw Error("--search binary applies to --mode observe only");
    if (a.order != "interleaved" && a.order != "declaration") throw Error("unknown variable order '" + a.order + "'");
    opts.order = a.order == "declaration" ? VarOrder::declaration : VarOrder::interleaved;
    opts.full = a.full;
    opts.search_all = a.search_all;
    opts.budget = budget ? &*budget : nullptr;

    BuildOptions bo;
    bo.budget = opts.budget;
    const CompiledProblem problem = compile(load_problem(a.spec, a.partition), bo);
    if (mode == Mode::combined) {
        if (!a.search_all && a.guarantee_set.empty())
            std::cerr << "note: no --guarantee-set given, using the empty set\n";
        opts.guarantee_set = objective_indices(problem.spec, split_names(a.guarantee_set));
    } else if (!a.guarantee_set.empty() || a.search_all) {
        throw Error("--guarantee-set and --search-all apply to --mode combined only");
    }
    const SynthesisOutcome o = synthesize(problem, mode, opts);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    std::vector<std::string> core;
    for (std::size_t i : o.core) core.push_back(problem.spec.objectives[i].name);
    std::cout << "value " << to_string(o.value);
    if (mode == Mode::guarantee) std::cout << ", core " << name_set(core);
    if (mode == Mode::combined) std::cout << ", observed " << to_string(o.observed) << ", guarantee set " << name_set(core);
    std::cout << "\n";
    std::cout << "games " << o.stats.games << ", iterations " << o.stats.steps << ", preimages " << o.stats.preimages
              << ", peak nodes " << o.stats.peak_nodes << ", strategy states "
              << (o.strategy ? o.strategy->num_states() : 0) << ", wall-ms " << static_cast<long long>(ms) << "\n";
    if (!o.levels.empty() && (mode == Mode::incremental_extended || mode == Mode::incremental_improved)) {
        std::cout << "levels";
        for (std::size_t k = 0; k < o.levels.size(); ++k)
            std::cout << ' ' << to_string(o.levels[k]) << ":" << o.stats.level_steps[k];
        std::cout << "\n";
    }
    if (!a.output.empty()) {
        if (o.strategy) {
            write_file(a.output, write_strategy(*o.strategy));
        } else {
            std::cerr << "no strategy: nothing is achievable, '" << a.output << "' not written\n";
        }
    }
    return o.value > 0 ? exit_ok : exit_zero_value;
}

int cmd_verify(const std::string& spec_path, const std::string& partition, const std::string& strategy_path,
               std::optional<std::size_t> horizon) {
    const CompiledProblem problem = compile(load_problem(spec_path, partition));
    const StrategyTransducer t = load_strategy(strategy_path);
    if (!(t.alphabet == problem.alphabet)) throw Error("strategy atoms differ from the problem's");
    const ProductDfa prod = product(problem.components);
    const std::vector<Rational> v = problem.spec.observe_weights();
    const std::size_t h = horizon.value_or(prod.num_states());
    const Rational min_observed = model_check_strategy(t, prod, v, h);
    const Rational promise = t.states.at(t.initial).ensured;
    std::cout << "horizon " << h << "\n";
    std::cout << "min observed value = " << to_string(min_observed) << "\n";
    std::cout << "reported value " << to_string(t.value) << ", promised at start " << to_string(promise) << "\n";
    OracleReport report = check_incremental_optimality(t, prod, v);
    report.instance = spec_path;
    std::cout << report.text(problem.alphabet);
    bool ok = min_observed >= promise;
    if (t.mode == Mode::incremental_extended || t.mode == Mode::incremental_improved) ok = ok && report.agreement;
    std::cout << (ok ? "verified" : "NOT verified") << "\n";
    return ok ? exit_ok : exit_failure;
}

int cmd_play(const std::string& spec_path, const std::string& partition, const std::string& strategy_path) {
    const ProblemSpec spec = load_problem(spec_path, partition);
    const StrategyTransducer t = load_strategy(strategy_path);
    if (!(t.alphabet == spec.alphabet())) throw Error("strategy atoms differ from the problem's");
    play(t, std::cin, std::cout);
    return exit_ok;
}

int cmd_dot(const std::string& input, const std::string& partition, const std::string& output) {
    const std::string text = read_file(input);
    std::string dot;
    if (text.rfind("optsyn-strategy", 0) == 0) {
        dot = to_dot(parse_strategy(text));
    } else {
        const CompiledProblem problem = compile(load_problem(input, partition));
        dot = to_dot(product(problem.components), problem.spec.names());
    }
    if (output.empty() || output == "-") std::cout << dot;
    else write_file(output, dot);
    return exit_ok;
}

int cmd_bench(const std::string& dir, double timeout, const std::string& csv, const std::string& engine,
              const std::vector<std::string>& modes) {
    BenchOptions opts;
    opts.timeout_seconds = timeout;
    opts.synthesis.engine = parse_engine(engine);
    if (!modes.empty()) {
        opts.modes.clear();
        for (const auto& m : split_names(modes)) opts.modes.push_back(parse_mode(m));
    }
    std::cerr << csv_header() << "\n";
    const auto rows = run_bench(dir, opts, &std::cerr);
    std::string out = csv_header() + "\n";
    std::size_t solved = 0;
    for (const auto& r : rows) {
        out += csv_row(r) + "\n";
        solved += r.status == "solved";
    }
    if (csv.empty() || csv == "-") std::cout << out;
    else write_file(csv, out);
    std::cout << rows.size() << " runs, " << solved << " solved\n";
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"optsyn: optimal LTLf synthesis (max-guarantee, max-observation, incremental)"};
    app.require_subcommand(1);

    SynthArgs sa;
    auto* synth = app.add_subcommand("synth", "synthesize an optimal strategy");
    synth->add_option("spec", sa.spec, "spec file, or formula file with a .part partition")->required();
    synth->add_option("--partition", sa.partition, "partition file for a plain formula");
    synth->add_option("--mode", sa.mode, "guarantee|observe|incremental-ext|incremental-imp|combined")
        ->check(CLI::IsMember({"guarantee", "observe", "incremental-ext", "incremental-imp", "combined"}));
    synth->add_option("--engine", sa.engine, "explicit|symbolic")->check(CLI::IsMember({"explicit", "symbolic"}));
    synth->add_option("--search", sa.search, "linear|binary")->check(CLI::IsMember({"linear", "binary"}));
    synth->add_option("--guarantee-set", sa.guarantee_set, "objective names (combined mode)");
    synth->add_flag("--search-all", sa.search_all, "combined mode: search every guarantee set");
    synth->add_flag("--full", sa.full, "incremental modes: value every ladder level");
    synth->add_option("--var-order", sa.order, "interleaved|declaration");
    synth->add_option("--timeout", sa.timeout, "wall-clock budget in seconds");
    synth->add_option("-o,--output", sa.output, "strategy file to write");

    std::string v_spec, v_part, v_strat;
    std::optional<std::size_t> v_horizon;
    auto* verify = app.add_subcommand("verify", "model check a strategy against a spec");
    verify->add_option("spec", v_spec)->required();
    verify->add_option("strategy", v_strat)->required();
    verify->add_option("--partition", v_part);
    verify->add_option("--horizon", v_horizon, "input sequence length (default: product size)");

    std::string p_spec, p_part, p_strat;
    auto* playc = app.add_subcommand("play", "interactive play against a strategy");
    playc->add_option("spec", p_spec)->required();
    playc->add_option("strategy", p_strat)->required();
    playc->add_option("--partition", p_part);

    std::string d_in, d_part, d_out;
    auto* dot = app.add_subcommand("dot", "export a product automaton or strategy as DOT");
    dot->add_option("input", d_in)->required();
    dot->add_option("--partition", d_part);
    dot->add_option("-o,--output", d_out);

    std::string b_dir, b_csv, b_engine = "symbolic";
    std::vector<std::string> b_modes;
    double b_timeout = 300;
    auto* bench = app.add_subcommand("bench", "run every instance of a directory");
    bench->add_option("dir", b_dir)->required();
    bench->add_option("--timeout", b_timeout, "seconds per instance and mode");
    bench->add_option("--csv", b_csv, "CSV output file");
    bench->add_option("--engine", b_engine)->check(CLI::IsMember({"explicit", "symbolic"}));
    bench->add_option("--modes", b_modes, "comma-separated modes");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*synth) return cmd_synth(sa);
        if (*verify) return cmd_verify(v_spec, v_part, v_strat, v_horizon);
        if (*playc) return cmd_play(p_spec, p_part, p_strat);
        if (*dot) return cmd_dot(d_in, d_part, d_out);
        if (*bench) return cmd_bench(b_dir, b_timeout, b_csv, b_engine, b_modes);
    } catch (const TimeoutError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_resource;
    } catch (const ResourceLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_resource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_failure;
    }
    return exit_failure;
}
