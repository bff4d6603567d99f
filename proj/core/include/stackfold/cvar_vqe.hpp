#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "stackfold/bits.hpp"
#include "stackfold/exact_solver.hpp"
#include "stackfold/qubo.hpp"
#include "stackfold/statevector.hpp"

namespace stackfold {

/// Number of lowest samples averaged by CVaR(alpha) over K samples:
/// ceil(alpha * K), computed so that exact products such as 0.7 * 10 are not
/// bumped up by rounding.
std::size_t cvar_count(double alpha, std::size_t samples);

/// Mean of the ceil(alpha K) lowest energies in a multiset of K samples.
/// Throws std::invalid_argument on an empty sample or alpha outside (0, 1].
double cvar(std::span<const double> energies, double alpha);

/// CVaR of a shot histogram, each outcome weighted by its count.
double cvar(const SampleSet& samples, const DenseQubo& qubo, double alpha);

/// Three-point fit of f(x) = c0 + c1 cos(x - c2) from samples at
/// x0, x0 + pi/2 and x0 - pi/2.
struct SineFit {
    double offset = 0.0;     // c0
    double amplitude = 0.0;  // c1 >= 0
    double phase = 0.0;      // c2
    /// c2 + pi wrapped to [0, 2 pi).
    double argmin() const;
    double operator()(double x) const;
};

SineFit fit_sine(double x0, double f_at_x0, double f_plus, double f_minus);

struct NftOptions {
    std::size_t max_iterations = 200;
    /// Stop once the objective at the current parameters stays within this
    /// range over a full sweep, counting the value the sweep ends at.
    /// Negative disables early stopping.
    double sweep_tolerance = 1e-6;
    /// Fits with amplitude below this leave the parameter unchanged.
    double degenerate_amplitude = 1e-12;
};

struct NftIteration {
    std::size_t iteration = 0;
    std::size_t parameter = 0;
    /// Objective at the current parameters before the update.
    double value = 0.0;
    /// Lowest objective value evaluated so far.
    double best = 0.0;
};

struct NftResult {
    std::vector<double> theta;
    std::vector<NftIteration> history;
    std::size_t evaluations = 0;
    bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Sequential sine-fit minimization. Parameters are visited cyclically; each
/// iteration evaluates the objective at theta_i and theta_i +- pi/2 and
/// moves theta_i to the fitted minimum, so one iteration costs exactly three
/// evaluations. Convergence is detected on the first evaluation of a new
/// sweep, which then adds one evaluation without an iteration.
NftResult nft_optimize(const Objective& objective, std::vector<double> theta0,
                       const NftOptions& options = {});

struct VqeConfig {
    double alpha = 0.1;
    std::uint64_t shots = 32;
    std::size_t layers = 2;
    std::size_t max_iterations = 200;
    std::size_t num_trials = 10;
    std::uint64_t seed = 0;
    double sweep_tolerance = 1e-6;
    std::size_t qubit_cap = kMaxQubits;

    /// Throws std::invalid_argument on out-of-range fields.
    void validate() const;
};

struct TrialIteration {
    std::size_t iteration = 0;
    /// CVaR at the parameters entering this iteration.
    double cvar = 0.0;
    double best_cvar = 0.0;
    /// Lowest bitstring energy among all shots so far.
    double best_energy = 0.0;
};

struct TrialResult {
    std::uint64_t seed = 0;
    std::vector<double> theta_initial;
    std::vector<double> theta_final;
    std::vector<TrialIteration> history;
    std::size_t evaluations = 0;
    bool converged = false;
    SampleSet final_samples;
    /// Lowest energy in the final sample and its (lexicographically first) bitstring.
    double f_low = 0.0;
    Bits low_bits;
    bool success = false;
    std::optional<double> gap;
};

/// One CVaR-VQE run on the QUBO: random initial angles in [0, 2 pi), NFT on
/// the shot-sampled CVaR, then a final sample at the optimized angles.
/// Throws CapacityError when the QUBO exceeds config.qubit_cap.
TrialResult run_trial(const Qubo& qubo, const VqeConfig& config, std::uint64_t trial_seed);

struct ExperimentResult {
    VqeConfig config;
    Solution reference;
    std::vector<TrialResult> trials;
    std::size_t successes = 0;
    double p_succ = 0.0;
    /// Empty when the reference energy is zero and the gap is undefined.
    std::optional<double> gap_avg;
    /// Trials whose lowest bitstring equals the reference bitstring.
    std::size_t bitstring_matches = 0;
};

/// Energy agreement required for a trial to count as a success.
inline constexpr double kSuccessTolerance = 1e-6;

/// Runs config.num_trials trials; trial t uses derive_seed(config.seed, t).
/// A trial succeeds when its f_low matches reference.energy within
/// kSuccessTolerance; gaps are averaged over all trials.
ExperimentResult run_experiment(const Qubo& qubo, const VqeConfig& config, const Solution& reference);

/// |f_low - f_ref| / |f_ref| * 100. Throws std::domain_error when f_ref == 0.
double optimality_gap(double f_low, double f_ref);

/// Total circuit executions 1/p_succ * iterations * shots * evaluations per
/// iteration. Throws std::domain_error unless 0 < p_succ <= 1.
double circuit_budget(double p_succ, double iterations, double shots, double evals_per_iteration = 3);

}  // namespace stackfold
