#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "stackfold/bits.hpp"
#include "stackfold/energy.hpp"
#include "stackfold/qubo.hpp"
#include "stackfold/quartets.hpp"

namespace stackfold {

enum class SolveMethod { exhaustive, branch_bound, anneal };

std::string_view to_string(SolveMethod m);

struct Solution {
    Bits bits;
    double energy = 0.0;
    SolveMethod method = SolveMethod::exhaustive;
    std::chrono::duration<double, std::milli> elapsed{0};
    bool proven_optimal = false;
    /// Bitstrings evaluated (exhaustive), nodes expanded (branch and bound),
    /// or flips proposed (anneal). Machine independent.
    std::uint64_t work_units = 0;
    /// Number of optimal bitstrings within 1e-9; exhaustive search only.
    std::uint64_t optimal_count = 0;
};

inline constexpr std::size_t kDefaultExhaustiveCap = 26;

/// Global minimum over all 2^n assignments, visited in Gray-code order.
/// Ties within 1e-9 resolve to the lexicographically smallest bitstring.
/// Throws CapacityError when num_vars exceeds `cap`.
Solution solve_exhaustive(const Qubo& q, std::size_t cap = kDefaultExhaustiveCap);

struct BranchBoundOptions {
    std::optional<std::chrono::milliseconds> time_limit;
    /// 0 means unlimited.
    std::uint64_t node_limit = 0;
};

/// Depth-first branch and bound on the constrained program. Setting a
/// variable to 1 fixes all its conflict partners to 0. When a limit is hit
/// the best solution so far is returned with proven_optimal = false.
Solution solve_branch_bound(const QuadraticProgram& qp, const BranchBoundOptions& options = {});

struct AnnealOptions {
    std::size_t sweeps = 1000;
    std::size_t restarts = 10;
    /// Temperatures default to the problem's coefficient scale when unset.
    std::optional<double> t_initial;
    std::optional<double> t_final;
};

/// Single-flip Metropolis annealing with a geometric schedule. Restart r
/// draws from Rng::derive(seed, r), so the result does not depend on the
/// order restarts run in.
Solution solve_anneal(const Qubo& q, const AnnealOptions& options, std::uint64_t seed);

struct TimingConfig {
    std::vector<std::size_t> lengths;
    std::size_t samples_per_length = 1;
    std::uint64_t seed = 0;
    ModelOptions model;
    ObjectiveWeights weights;
    UaTermMode ua_mode = UaTermMode::literal;
    BranchBoundOptions solver;
};

struct TimingRow {
    std::size_t length = 0;
    std::uint64_t seed = 0;
    std::size_t num_vars = 0;
    std::size_t num_constraints = 0;
    std::uint64_t work_units = 0;
    double wall_ms = 0.0;
    double energy = 0.0;
    bool proven_optimal = false;
};

/// Random sequences per length solved with branch and bound. Every sample
/// gets its own seed, derived from the master seed and the sample's position
/// in the study and reported in its row.
std::vector<TimingRow> timing_study(const TimingConfig& config, const StackTable& table);

/// CSV with header `length,seed,num_vars,num_constraints,work_units,wall_ms,energy,proven_optimal`.
void write_timing_csv(std::ostream& out, const std::vector<TimingRow>& rows);

}  // namespace stackfold
