#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "stackfold/cvar_vqe.hpp"
#include "stackfold/energy.hpp"
#include "stackfold/exact_solver.hpp"
#include "stackfold/quartets.hpp"
#include "stackfold/qubo.hpp"

namespace stackfold::cli {

inline constexpr int kSchemaVersion = 1;

/// Process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitParse = 2,
    kExitCapacity = 3,
    kExitInfeasible = 4,
    kExitLookup = 5,
};

enum class SolverChoice { exact, bb, anneal, vqe };

struct RunConfig {
    std::string sequence;
    std::string sequence_file;
    ModelOptions model;
    ObjectiveWeights weights;
    UaTermMode ua_mode = UaTermMode::literal;
    SolverChoice solver = SolverChoice::exact;
    VqeConfig vqe;
    AnnealOptions anneal;
    std::uint64_t node_limit = 0;
    /// Empty selects the built-in table.
    std::string energy_table;
    std::filesystem::path output_dir = ".";
    std::uint64_t seed = 0;

    std::vector<std::size_t> lengths = {15, 20, 25, 30, 35};
    std::size_t samples_per_length = 40;

    std::vector<std::size_t> sizes = {10};
    std::size_t sequences_per_size = 10;
};

nlohmann::ordered_json to_json(const RunConfig& config);

/// Inline sequence or the first record of a FASTA/plain file. Throws
/// std::invalid_argument unless exactly one source is set.
RnaSequence load_sequence(const RunConfig& config);

StackTable load_table(const RunConfig& config);

/// Each command writes its artifacts under config.output_dir, prints a
/// short summary to `log`, and returns the main JSON document.

/// model.json
nlohmann::ordered_json cmd_preprocess(const RunConfig& config, std::ostream& log);

/// result.json, structure.dbn and, for vqe, convergence_trial_<t>.csv.
nlohmann::ordered_json cmd_solve(const RunConfig& config, std::ostream& log);

/// scaling.csv and scaling.json.
nlohmann::ordered_json cmd_scaling(const RunConfig& config, std::ostream& log);

/// experiment.json, experiment.csv and experiment_quartiles.csv.
nlohmann::ordered_json cmd_experiment(const RunConfig& config, std::ostream& log);

struct Quartiles {
    double min = 0, q1 = 0, median = 0, q3 = 0, max = 0, mean = 0;
};

/// Linear interpolation between order statistics. Throws
/// std::invalid_argument on an empty sample.
Quartiles quartiles(std::vector<double> values);

/// Maps an exception escaping a command to its exit code.
int exit_code_for(const std::exception& e);

}  // namespace stackfold::cli
