#include "optsyn/bench.hpp"

#include "optsyn/io.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace optsyn {

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string csv_header() {
    return "instance,mode,engine,value,states,dd-nodes-peak,fixpoint-steps,preimage-count,wall-ms,status";
}

std::string csv_row(const BenchRow& r) {
    std::ostringstream out;
    out << csv_field(r.instance) << ',' << r.mode << ',' << r.engine << ',' << r.value << ',' << r.states << ','
        << r.dd_nodes_peak << ',' << r.fixpoint_steps << ',' << r.preimage_count << ',' << std::fixed
        << std::setprecision(3) << r.wall_ms << ',' << r.status;
    return out.str();
}

std::vector<BenchInstance> list_instances(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) throw Error("'" + dir.string() + "' is not a directory");
    std::vector<BenchInstance> out;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const auto& p = entry.path();
        if (p.extension() == ".spec") {
            out.push_back({p.filename().string(), p, {}});
        } else if (p.extension() == ".ltlf") {
            auto part = p;
            part.replace_extension(".part");
            if (!std::filesystem::exists(part)) throw Error("'" + p.string() + "' has no partition file");
            out.push_back({p.filename().string(), p, part});
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    return out;
}

ProblemSpec load_instance(const BenchInstance& inst) {
    return inst.partition.empty() ? load_spec(inst.spec) : load_syntcomp(inst.spec, inst.partition);
}

BenchRow run_one(const BenchInstance& inst, Mode mode, const BenchOptions& opts) {
    BenchRow row;
    row.instance = inst.name;
    row.mode = to_string(mode);
    row.engine = to_string(opts.synthesis.engine);
    row.value = "-";
    const auto start = std::chrono::steady_clock::now();
    const Budget budget(std::chrono::milliseconds(static_cast<std::int64_t>(opts.timeout_seconds * 1000)));
    try {
        SynthesisOptions so = opts.synthesis;
        so.budget = &budget;
        BuildOptions bo;
        bo.budget = &budget;
        const CompiledProblem problem = compile(load_instance(inst), bo);
        const SynthesisOutcome o = synthesize(problem, mode, so);
        row.value = to_string(o.value);
        row.states = o.strategy ? o.strategy->num_states() : 0;
        row.dd_nodes_peak = o.stats.peak_nodes;
        row.fixpoint_steps = o.stats.steps;
        row.preimage_count = o.stats.preimages;
        row.status = "solved";
    } catch (const TimeoutError&) {
        row.status = "timeout";
    } catch (const ResourceLimitError&) {
        row.status = "limit";
    } catch (const Error&) {
        row.status = "error";
    }
    row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return row;
}

std::vector<BenchRow> run_bench(const std::filesystem::path& dir, const BenchOptions& opts, std::ostream* progress) {
    std::vector<BenchRow> rows;
    for (const auto& inst : list_instances(dir))
        for (Mode m : opts.modes) {
            rows.push_back(run_one(inst, m, opts));
            if (progress) *progress << csv_row(rows.back()) << std::endl;
        }
    return rows;
}

}  // namespace optsyn
