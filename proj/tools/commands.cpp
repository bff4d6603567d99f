#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "stackfold/errors.hpp"
#include "stackfold/structure.hpp"

namespace stackfold::cli {

using Json = nlohmann::ordered_json;

namespace {

std::string_view solver_name(SolverChoice s) {
    switch (s) {
        case SolverChoice::exact: return "exact";
        case SolverChoice::bb: return "bb";
        case SolverChoice::anneal: return "anneal";
        case SolverChoice::vqe: return "vqe";
    }
    return "exact";
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

Json pair_json(Pair p) { return Json::array({p.i, p.j}); }

Json header(const RunConfig& config, std::string_view command) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["config"] = to_json(config);
    return j;
}

std::filesystem::path prepare_output(const RunConfig& config, const std::string& name) {
    std::filesystem::create_directories(config.output_dir);
    return config.output_dir / name;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    return out;
}

void write_json(const std::filesystem::path& path, const Json& j) {
    auto out = open_output(path);
    out << j.dump(2) << '\n';
}

/// CSV artifacts carry the schema version and config as leading comment lines.
void write_csv_preamble(std::ostream& out, const RunConfig& config) {
    out << "# schema_version=" << kSchemaVersion << '\n';
    out << "# config=" << to_json(config).dump() << '\n';
}

Json solution_json(const Solution& s) {
    Json j;
    j["method"] = stackfold::to_string(s.method);
    j["energy"] = s.energy;
    j["bits"] = to_string(s.bits);
    j["proven_optimal"] = s.proven_optimal;
    j["work_units"] = s.work_units;
    if (s.method == SolveMethod::exhaustive) j["optimal_count"] = s.optimal_count;
    return j;
}

Json structure_json(const SecondaryStructure& s) {
    Json j;
    j["dot_bracket"] = to_dot_bracket(s);
    Json pairs = Json::array();
    for (Pair p : s.pairs) pairs.push_back(pair_json(p));
    j["pairs"] = std::move(pairs);
    j["pseudoknot"] = has_pseudoknot(s);
    return j;
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

Solution exact_reference(const QuartetModel& model, const StackTable& table,
                         const RunConfig& config) {
    const QuadraticProgram qp = build_program(model, table, config.weights, config.ua_mode);
    BranchBoundOptions bb;
    bb.node_limit = config.node_limit;
    return solve_branch_bound(qp, bb);
}

}  // namespace

Json to_json(const RunConfig& c) {
    Json j;
    j["sequence"] = c.sequence;
    j["sequence_file"] = c.sequence_file;
    j["min_loop"] = c.model.min_loop;
    j["qua_mode"] = c.model.qua_mode == QuaMode::outer_pair ? "outer" : "inner";
    j["qua_stacked_only"] = c.model.qua_stacked_only;
    j["reward"] = c.weights.reward;
    j["ua_penalty"] = c.weights.ua_penalty;
    j["constraint_penalty"] =
        c.weights.constraint_penalty ? Json(*c.weights.constraint_penalty) : Json("auto");
    j["ua_mode"] = c.ua_mode == UaTermMode::literal ? "literal" : "linear";
    j["solver"] = solver_name(c.solver);
    j["energy_table"] = c.energy_table.empty() ? std::string("builtin") : c.energy_table;
    j["seed"] = c.seed;
    j["output_dir"] = c.output_dir.string();
    j["vqe"] = {{"alpha", c.vqe.alpha},
                {"shots", c.vqe.shots},
                {"layers", c.vqe.layers},
                {"max_iterations", c.vqe.max_iterations},
                {"num_trials", c.vqe.num_trials},
                {"sweep_tolerance", c.vqe.sweep_tolerance},
                {"qubit_cap", c.vqe.qubit_cap}};
    j["anneal"] = {{"sweeps", c.anneal.sweeps}, {"restarts", c.anneal.restarts}};
    j["node_limit"] = c.node_limit;
    j["scaling"] = {{"lengths", c.lengths}, {"samples_per_length", c.samples_per_length}};
    j["experiment"] = {{"sizes", c.sizes}, {"sequences_per_size", c.sequences_per_size}};
    return j;
}

RnaSequence load_sequence(const RunConfig& config) {
    const bool inline_set = !config.sequence.empty();
    const bool file_set = !config.sequence_file.empty();
    if (inline_set == file_set)
        throw std::invalid_argument("exactly one of --seq and --seq-file is required");
    if (inline_set) return parse_sequence(config.sequence);

    std::ifstream in(config.sequence_file, std::ios::binary);
    if (!in) throw Error("cannot open sequence file " + config.sequence_file);
    std::ostringstream text;
    text << in.rdbuf();
    const std::string s = text.str();
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && s[first] == '>') return parse_fasta(s);
    return parse_sequence(s);
}

StackTable load_table(const RunConfig& config) {
    if (config.energy_table.empty()) return default_stack_table();
    return load_stack_table_file(config.energy_table);
}

Json cmd_preprocess(const RunConfig& config, std::ostream& log) {
    const RnaSequence seq = load_sequence(config);
    const StackTable table = load_table(config);
    const QuartetModel model = build_model(seq, config.model);

    Json doc = header(config, "preprocess");
    doc["sequence"] = seq.str();
    doc["length"] = seq.size();
    Json quartets = Json::array();
    for (std::size_t a = 0; a < model.size(); ++a) {
        const Quartet q = model.quartets()[a];
        Json entry;
        entry["index"] = a;
        entry["outer"] = pair_json(q.outer());
        entry["inner"] = pair_json(q.inner());
        entry["energy"] = quartet_energy(table, seq, q);
        quartets.push_back(std::move(entry));
    }
    doc["quartets"] = std::move(quartets);
    Json conflicts = Json::array();
    for (auto [a, b] : model.conflicts()) conflicts.push_back(Json::array({a, b}));
    doc["conflicts"] = std::move(conflicts);
    Json stacks = Json::array();
    for (auto [a, b] : model.stack_pairs()) stacks.push_back(Json::array({a, b}));
    doc["stacks"] = std::move(stacks);
    doc["ua_ends"] = model.ua_ends();
    Json warnings = Json::array();
    if (model.size() == 0) warnings.push_back("sequence has no quartets");
    doc["warnings"] = warnings;

    write_json(prepare_output(config, "model.json"), doc);
    log << "quartets: " << model.size() << ", conflicts: " << model.conflicts().size()
        << ", stacking pairs: " << model.stack_pairs().size() << '\n';
    for (const auto& w : warnings) log << "warning: " << w.get<std::string>() << '\n';
    return doc;
}

Json cmd_solve(const RunConfig& config, std::ostream& log) {
    const RnaSequence seq = load_sequence(config);
    const StackTable table = load_table(config);
    const QuartetModel model = build_model(seq, config.model);
    const QuadraticProgram qp = build_program(model, table, config.weights, config.ua_mode);
    const double penalty = config.weights.constraint_penalty.value_or(default_penalty(qp));
    const Qubo qubo = to_qubo(qp, penalty);

    Json doc = header(config, "solve");
    doc["sequence"] = seq.str();
    doc["num_vars"] = qp.num_vars;
    doc["num_constraints"] = qp.constraints.size();
    doc["constraint_penalty"] = penalty;

    const auto start = std::chrono::steady_clock::now();
    Bits best_bits;
    double best_energy = 0.0;
    std::vector<TrialResult> trials;

    if (config.solver == SolverChoice::vqe) {
        config.vqe.validate();
        if (qubo.num_vars > config.vqe.qubit_cap)
            throw CapacityError("problem needs " + std::to_string(qubo.num_vars) +
                                " qubits, cap is " + std::to_string(config.vqe.qubit_cap));
        if (qubo.num_vars == 0) throw Error("sequence has no quartets; nothing to optimize");
        VqeConfig vqe = config.vqe;
        vqe.seed = config.seed;
        const Solution reference = exact_reference(model, table, config);
        ExperimentResult result = run_experiment(qubo, vqe, reference);

        std::size_t best = 0;
        for (std::size_t t = 1; t < result.trials.size(); ++t)
            if (result.trials[t].f_low < result.trials[best].f_low) best = t;
        best_bits = result.trials[best].low_bits;
        best_energy = result.trials[best].f_low;

        doc["reference"] = solution_json(reference);
        Json exp;
        exp["successes"] = result.successes;
        exp["p_succ"] = result.p_succ;
        exp["gap_avg"] = optional_json(result.gap_avg);
        exp["bitstring_matches"] = result.bitstring_matches;
        exp["best_trial"] = best;
        Json tj = Json::array();
        for (std::size_t t = 0; t < result.trials.size(); ++t) {
            const TrialResult& tr = result.trials[t];
            tj.push_back({{"trial", t},
                          {"seed", tr.seed},
                          {"f_low", tr.f_low},
                          {"bits", to_string(tr.low_bits)},
                          {"success", tr.success},
                          {"gap", optional_json(tr.gap)},
                          {"iterations", tr.history.size()},
                          {"evaluations", tr.evaluations},
                          {"converged", tr.converged}});
        }
        exp["trials"] = std::move(tj);
        doc["experiment"] = std::move(exp);
        trials = std::move(result.trials);
    } else {
        Solution s;
        switch (config.solver) {
            case SolverChoice::exact: s = solve_exhaustive(qubo); break;
            case SolverChoice::bb: {
                BranchBoundOptions bb;
                bb.node_limit = config.node_limit;
                s = solve_branch_bound(qp, bb);
                break;
            }
            case SolverChoice::anneal: s = solve_anneal(qubo, config.anneal, config.seed); break;
            case SolverChoice::vqe: break;
        }
        best_bits = s.bits;
        best_energy = s.energy;
        doc["solution"] = solution_json(s);
    }
    const double wall = elapsed_ms(start);

    const SecondaryStructure structure = decode(best_bits, model);
    doc["energy"] = best_energy;
    doc["bits"] = to_string(best_bits);
    doc["structure"] = structure_json(structure);
    doc["timing"] = {{"wall_ms", wall}};

    write_json(prepare_output(config, "result.json"), doc);
    {
        auto out = open_output(prepare_output(config, "structure.dbn"));
        out << "> stackfold schema_version=" << kSchemaVersion
            << " energy=" << format_double(best_energy) << " config=" << to_json(config).dump()
            << '\n'
            << seq.str() << '\n'
            << to_dot_bracket(structure) << '\n';
    }
    for (std::size_t t = 0; t < trials.size(); ++t) {
        auto out = open_output(
            prepare_output(config, "convergence_trial_" + std::to_string(t) + ".csv"));
        write_csv_preamble(out, config);
        out << "iteration,cvar,best_energy_so_far\n";
        for (const auto& it : trials[t].history)
            out << it.iteration << ',' << format_double(it.cvar) << ','
                << format_double(it.best_energy) << '\n';
    }

    log << seq.str() << '\n' << to_dot_bracket(structure) << " (" << format_double(best_energy)
        << ")\n";
    return doc;
}

Json cmd_scaling(const RunConfig& config, std::ostream& log) {
    const StackTable table = load_table(config);
    TimingConfig tc;
    tc.lengths = config.lengths;
    tc.samples_per_length = config.samples_per_length;
    tc.seed = config.seed;
    tc.model = config.model;
    tc.weights = config.weights;
    tc.ua_mode = config.ua_mode;
    tc.solver.node_limit = config.node_limit;
    const std::vector<TimingRow> rows = timing_study(tc, table);

    {
        auto out = open_output(prepare_output(config, "scaling.csv"));
        write_csv_preamble(out, config);
        write_timing_csv(out, rows);
    }

    Json doc = header(config, "scaling");
    Json per_length = Json::array();
    for (std::size_t length : config.lengths) {
        std::vector<double> work, vars;
        for (const auto& r : rows) {
            if (r.length != length) continue;
            work.push_back(static_cast<double>(r.work_units));
            vars.push_back(static_cast<double>(r.num_vars));
        }
        if (work.empty()) continue;
        const Quartiles w = quartiles(work);
        const Quartiles v = quartiles(vars);
        per_length.push_back({{"length", length},
                              {"samples", work.size()},
                              {"median_work_units", w.median},
                              {"q1_work_units", w.q1},
                              {"q3_work_units", w.q3},
                              {"median_num_vars", v.median}});
        log << "length " << length << ": median work " << format_double(w.median)
            << ", median vars " << format_double(v.median) << '\n';
    }
    doc["per_length"] = std::move(per_length);
    write_json(prepare_output(config, "scaling.json"), doc);
    return doc;
}

Json cmd_experiment(const RunConfig& config, std::ostream& log) {
    config.vqe.validate();
    const StackTable table = load_table(config);

    Json doc = header(config, "experiment");
    Json sizes = Json::array();
    std::ostringstream rows_csv;
    std::ostringstream quart_csv;
    std::uint64_t instance = 0;

    for (std::size_t size : config.sizes) {
        if (size > config.vqe.qubit_cap)
            throw CapacityError("size " + std::to_string(size) + " exceeds qubit cap " +
                                std::to_string(config.vqe.qubit_cap));
        std::vector<double> succ_values, gap_values;
        Json seqs = Json::array();
        for (std::size_t k = 0; k < config.sequences_per_size; ++k, ++instance) {
            const std::uint64_t seq_seed = derive_seed(config.seed, instance);
            Rng rng(seq_seed);
            const RnaSequence seq =
                random_sequence_with_quartets(size, config.model.min_loop, rng);
            const QuartetModel model = build_model(seq, config.model);
            const Qubo qubo = compile_qubo(model, table, config.weights, config.ua_mode);
            const Solution reference = exact_reference(model, table, config);
            VqeConfig vqe = config.vqe;
            vqe.seed = derive_seed(seq_seed, 1);
            const ExperimentResult r = run_experiment(qubo, vqe, reference);

            succ_values.push_back(r.p_succ);
            if (r.gap_avg) gap_values.push_back(*r.gap_avg);
            seqs.push_back({{"index", k},
                            {"sequence", seq.str()},
                            {"reference_energy", reference.energy},
                            {"reference_bits", to_string(reference.bits)},
                            {"successes", r.successes},
                            {"p_succ", r.p_succ},
                            {"gap_avg", optional_json(r.gap_avg)},
                            {"bitstring_matches", r.bitstring_matches}});
            rows_csv << size << ',' << k << ',' << seq.str() << ','
                     << format_double(reference.energy) << ',' << format_double(r.p_succ) << ','
                     << (r.gap_avg ? format_double(*r.gap_avg) : "") << '\n';
        }
        Json entry;
        entry["size"] = size;
        entry["sequences"] = std::move(seqs);
        for (const auto& [name, values] :
             {std::pair{"p_succ", &succ_values}, std::pair{"gap_avg", &gap_values}}) {
            if (values->empty()) continue;
            const Quartiles q = quartiles(*values);
            entry[name] = {{"min", q.min},       {"q1", q.q1},   {"median", q.median},
                           {"q3", q.q3},         {"max", q.max}, {"mean", q.mean},
                           {"count", values->size()}};
            quart_csv << size << ',' << name << ',' << values->size() << ','
                      << format_double(q.min) << ',' << format_double(q.q1) << ','
                      << format_double(q.median) << ',' << format_double(q.q3) << ','
                      << format_double(q.max) << ',' << format_double(q.mean) << '\n';
        }
        if (!succ_values.empty()) {
            log << "size " << size << ": mean p_succ " << format_double(quartiles(succ_values).mean);
            if (!gap_values.empty()) log << ", mean gap " << format_double(quartiles(gap_values).mean) << '%';
            log << '\n';
        }
        sizes.push_back(std::move(entry));
    }
    doc["sizes"] = std::move(sizes);

    write_json(prepare_output(config, "experiment.json"), doc);
    {
        auto out = open_output(prepare_output(config, "experiment.csv"));
        write_csv_preamble(out, config);
        out << "size,sequence_index,sequence,reference_energy,p_succ,gap_avg\n" << rows_csv.str();
    }
    {
        auto out = open_output(prepare_output(config, "experiment_quartiles.csv"));
        write_csv_preamble(out, config);
        out << "size,metric,count,min,q1,median,q3,max,mean\n" << quart_csv.str();
    }
    return doc;
}

Quartiles quartiles(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("quartiles of an empty sample");
    std::sort(values.begin(), values.end());
    const auto at = [&](double q) {
        const double pos = q * static_cast<double>(values.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const std::size_t hi = std::min(lo + 1, values.size() - 1);
        return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
    };
    Quartiles q;
    q.min = values.front();
    q.max = values.back();
    q.q1 = at(0.25);
    q.median = at(0.5);
    q.q3 = at(0.75);
    double sum = 0;
    for (double v : values) sum += v;
    q.mean = sum / static_cast<double>(values.size());
    return q;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ParseError*>(&e)) return kExitParse;
    if (dynamic_cast<const CapacityError*>(&e)) return kExitCapacity;
    if (dynamic_cast<const InfeasibleError*>(&e)) return kExitInfeasible;
    if (dynamic_cast<const LookupError*>(&e)) return kExitLookup;
    return kExitUsage;
}

}  // namespace stackfold::cli
