#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

using stackfold::cli::RunConfig;

void add_model_options(CLI::App& cmd, RunConfig& c, std::string& penalty) {
    cmd.add_option("--seq", c.sequence, "RNA sequence (ACGU; T is read as U)");
    cmd.add_option("--seq-file", c.sequence_file, "FASTA or plain sequence file");
    cmd.add_option("--min-loop", c.model.min_loop, "Minimum hairpin loop length")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    cmd.add_option("--reward", c.weights.reward, "Stacking reward r")->capture_default_str();
    cmd.add_option("--ua-penalty", c.weights.ua_penalty, "UA end penalty p")->capture_default_str();
    cmd.add_option("--constraint-penalty", penalty, "Constraint penalty t: auto or a value")
        ->capture_default_str();
    const std::map<std::string, stackfold::UaTermMode> ua_modes{
        {"literal", stackfold::UaTermMode::literal}, {"linear", stackfold::UaTermMode::linear}};
    cmd.add_option("--ua-mode", c.ua_mode, "UA term expansion")
        ->transform(CLI::CheckedTransformer(ua_modes, CLI::ignore_case));
    const std::map<std::string, stackfold::QuaMode> qua_modes{
        {"outer", stackfold::QuaMode::outer_pair}, {"inner", stackfold::QuaMode::inner_pair}};
    cmd.add_option("--qua-mode", c.model.qua_mode, "Which pair of a quartet marks a UA end")
        ->transform(CLI::CheckedTransformer(qua_modes, CLI::ignore_case));
    cmd.add_flag("--qua-stacked-only", c.model.qua_stacked_only,
                 "Only quartets with a stacking partner can be UA ends");
    cmd.add_option("--energy-table", c.energy_table, "Stacking energy table file");
    cmd.add_option("--seed", c.seed, "Master seed")->capture_default_str();
    cmd.add_option("--out", c.output_dir, "Output directory")->capture_default_str();
    cmd.add_option("--node-limit", c.node_limit, "Branch-and-bound node limit (0: none)");
}

void add_vqe_options(CLI::App& cmd, RunConfig& c) {
    cmd.add_option("--alpha", c.vqe.alpha, "CVaR level")->capture_default_str();
    cmd.add_option("--shots", c.vqe.shots, "Shots per circuit evaluation")->capture_default_str();
    cmd.add_option("--layers", c.vqe.layers, "Ansatz repetitions p")->capture_default_str();
    cmd.add_option("--iters", c.vqe.max_iterations, "Optimizer iterations")->capture_default_str();
    cmd.add_option("--trials", c.vqe.num_trials, "Independent trials")->capture_default_str();
    cmd.add_option("--qubits-cap", c.vqe.qubit_cap, "Largest problem the simulator accepts")
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    namespace cli = stackfold::cli;
    CLI::App app{"RNA folding as a quartet QUBO, solved exactly or with CVaR-VQE"};
    app.require_subcommand(1);

    RunConfig config;
    std::string penalty = "auto";

    auto* pre = app.add_subcommand("preprocess", "Enumerate quartets and write model.json");
    add_model_options(*pre, config, penalty);

    auto* solve = app.add_subcommand("solve", "Fold one sequence");
    add_model_options(*solve, config, penalty);
    add_vqe_options(*solve, config);
    const std::map<std::string, cli::SolverChoice> solvers{{"exact", cli::SolverChoice::exact},
                                                           {"bb", cli::SolverChoice::bb},
                                                           {"anneal", cli::SolverChoice::anneal},
                                                           {"vqe", cli::SolverChoice::vqe}};
    solve->add_option("--solver", config.solver, "exact | bb | anneal | vqe")
        ->transform(CLI::CheckedTransformer(solvers, CLI::ignore_case));
    solve->add_option("--sweeps", config.anneal.sweeps, "Annealing sweeps per restart")
        ->capture_default_str();
    solve->add_option("--restarts", config.anneal.restarts, "Annealing restarts")
        ->capture_default_str();

    auto* scaling = app.add_subcommand("scaling", "Branch-and-bound cost over random sequences");
    add_model_options(*scaling, config, penalty);
    scaling->add_option("--lengths", config.lengths, "Sequence lengths")
        ->delimiter(',')
        ->capture_default_str();
    scaling->add_option("--samples", config.samples_per_length, "Sequences per length")
        ->capture_default_str();

    auto* experiment = app.add_subcommand("experiment", "CVaR-VQE success rate and gap per size");
    add_model_options(*experiment, config, penalty);
    add_vqe_options(*experiment, config);
    auto* sizes = experiment->add_option("--sizes", config.sizes, "Problem sizes in variables")
        ->delimiter(',')
        ->expected(0, CLI::detail::expected_max_vector_size);
    experiment->add_option("--sequences", config.sequences_per_size, "Sequences per size")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
        // A bare --sizes asks for no sizes at all.
        if (sizes->count() > 0 && sizes->as<std::string>().empty()) config.sizes.clear();
        if (penalty != "auto") {
            std::size_t used = 0;
            config.weights.constraint_penalty = std::stod(penalty, &used);
            if (used != penalty.size()) throw std::invalid_argument(penalty);
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? cli::kExitOk : cli::kExitUsage;
    } catch (const std::exception&) {
        std::cerr << "--constraint-penalty: expected auto or a number, got '" << penalty << "'\n";
        return cli::kExitUsage;
    }

    try {
        if (pre->parsed()) cli::cmd_preprocess(config, std::cout);
        if (solve->parsed()) cli::cmd_solve(config, std::cout);
        if (scaling->parsed()) cli::cmd_scaling(config, std::cout);
        if (experiment->parsed()) cli::cmd_experiment(config, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::exit_code_for(e);
    }
    return cli::kExitOk;
}
