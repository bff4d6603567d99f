#include "stackfold/cvar_vqe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "stackfold/errors.hpp"
#include "stackfold/rng.hpp"

namespace stackfold {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0, 1]");
}

}  // namespace

// ---- CVaR -------------------------------------------------------------------

std::size_t cvar_count(double alpha, std::size_t samples) {
    check_alpha(alpha);
    const double x = alpha * static_cast<double>(samples);
    const double nearest = std::round(x);
    double count = std::abs(x - nearest) <= 1e-9 * std::max(1.0, x) ? nearest : std::ceil(x);
    count = std::clamp(count, 1.0, static_cast<double>(samples));
    return static_cast<std::size_t>(count);
}

double cvar(std::span<const double> energies, double alpha) {
    check_alpha(alpha);
    if (energies.empty()) throw std::invalid_argument("cvar of an empty sample");
    const std::size_t take = cvar_count(alpha, energies.size());
    std::vector<double> sorted(energies.begin(), energies.end());
    std::partial_sort(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(take), sorted.end());
    double sum = 0.0;
    for (std::size_t k = 0; k < take; ++k) sum += sorted[k];
    return sum / static_cast<double>(take);
}

double cvar(const SampleSet& samples, const DenseQubo& qubo, double alpha) {
    check_alpha(alpha);
    if (samples.shots == 0) throw std::invalid_argument("cvar of an empty sample");
    std::vector<std::pair<double, std::uint64_t>> weighted;
    weighted.reserve(samples.counts.size());
    for (const auto& [index, count] : samples.counts) {
        weighted.emplace_back(qubo.energy_of_index(index), count);
    }
    std::sort(weighted.begin(), weighted.end());
    std::uint64_t remaining = cvar_count(alpha, samples.shots);
    const auto take = static_cast<double>(remaining);
    double sum = 0.0;
    for (const auto& [energy, count] : weighted) {
        const std::uint64_t used = std::min(count, remaining);
        sum += energy * static_cast<double>(used);
        remaining -= used;
        if (remaining == 0) break;
    }
    return sum / take;
}

// ---- NFT --------------------------------------------------------------------

double SineFit::argmin() const { return wrap_angle(phase + std::numbers::pi); }

double SineFit::operator()(double x) const { return offset + amplitude * std::cos(x - phase); }

SineFit fit_sine(double x0, double f_at_x0, double f_plus, double f_minus) {
    // f(x0 + u) = c0 + a cos u + b sin u.
    const double c0 = 0.5 * (f_plus + f_minus);
    const double a = f_at_x0 - c0;
    const double b = 0.5 * (f_plus - f_minus);
    SineFit fit;
    fit.offset = c0;
    fit.amplitude = std::hypot(a, b);
    fit.phase = x0 + std::atan2(b, a);
    return fit;
}

NftResult nft_optimize(const Objective& objective, std::vector<double> theta0,
                       const NftOptions& options) {
    NftResult result;
    result.theta = std::move(theta0);
    const std::size_t dim = result.theta.size();
    if (dim == 0 || options.max_iterations == 0) return result;

    double best = std::numeric_limits<double>::infinity();
    double sweep_low = best;
    double sweep_high = -best;
    auto eval = [&](std::span<const double> theta) {
        const double v = objective(theta);
        ++result.evaluations;
        best = std::min(best, v);
        return v;
    };

    constexpr double kQuarter = std::numbers::pi / 2.0;
    for (std::size_t it = 0; it < options.max_iterations; ++it) {
        const std::size_t k = it % dim;
        auto& theta = result.theta;
        const double x0 = theta[k];
        const double f0 = eval(theta);
        sweep_low = std::min(sweep_low, f0);
        sweep_high = std::max(sweep_high, f0);
        if (k == 0 && it > 0) {
            // The range spans the previous sweep plus the value it ended at.
            if (options.sweep_tolerance >= 0.0 && sweep_high - sweep_low < options.sweep_tolerance) {
                result.converged = true;
                break;
            }
            sweep_low = sweep_high = f0;
        }
        theta[k] = x0 + kQuarter;
        const double f_plus = eval(theta);
        theta[k] = x0 - kQuarter;
        const double f_minus = eval(theta);

        const SineFit fit = fit_sine(x0, f0, f_plus, f_minus);
        theta[k] = fit.amplitude < options.degenerate_amplitude ? x0 : fit.argmin();
        result.history.push_back({it, k, f0, best});
    }
    return result;
}

// ---- VQE --------------------------------------------------------------------

void VqeConfig::validate() const {
    check_alpha(alpha);
    if (shots < 1) throw std::invalid_argument("shots must be at least 1");
    if (layers < 1) throw std::invalid_argument("layers must be at least 1");
    if (num_trials < 1) throw std::invalid_argument("trials must be at least 1");
}

TrialResult run_trial(const Qubo& qubo, const VqeConfig& config, std::uint64_t trial_seed) {
    config.validate();
    const std::size_t n = qubo.num_vars;
    const std::size_t cap = std::min(config.qubit_cap, kMaxQubits);
    if (n > cap) {
        throw CapacityError("problem needs " + std::to_string(n) + " qubits; cap is " +
                            std::to_string(cap));
    }
    if (n == 0) throw std::invalid_argument("QUBO has no variables");

    const DenseQubo dense(qubo);
    const Ansatz ansatz = build_ansatz(n, config.layers);
    Rng rng(trial_seed);

    TrialResult trial;
    trial.seed = trial_seed;
    trial.theta_initial.resize(ansatz.parameter_count());
    for (auto& t : trial.theta_initial) t = rng.uniform01() * kTwoPi;

    double best_energy = std::numeric_limits<double>::infinity();
    auto objective = [&](std::span<const double> theta) {
        const SampleSet shots = sample(ansatz, theta, config.shots, rng);
        for (const auto& [index, count] : shots.counts) {
            best_energy = std::min(best_energy, dense.energy_of_index(index));
        }
        return cvar(shots, dense, config.alpha);
    };

    // Record the running minimum sampled energy alongside the optimizer trace.
    std::vector<double> best_energy_after_eval;
    auto traced = [&](std::span<const double> theta) {
        const double v = objective(theta);
        best_energy_after_eval.push_back(best_energy);
        return v;
    };

    NftOptions nft;
    nft.max_iterations = config.max_iterations;
    nft.sweep_tolerance = config.sweep_tolerance;
    NftResult opt = nft_optimize(traced, trial.theta_initial, nft);

    trial.theta_final = std::move(opt.theta);
    trial.evaluations = opt.evaluations;
    trial.converged = opt.converged;
    trial.history.reserve(opt.history.size());
    for (std::size_t k = 0; k < opt.history.size(); ++k) {
        const auto& h = opt.history[k];
        // Three evaluations per iteration; the last of them closes the iteration.
        trial.history.push_back({h.iteration, h.value, h.best, best_energy_after_eval[3 * k + 2]});
    }

    trial.final_samples = sample(ansatz, trial.theta_final, config.shots, rng);
    double low = std::numeric_limits<double>::infinity();
    std::uint64_t low_index = 0;
    for (const auto& [index, count] : trial.final_samples.counts) {
        const double e = dense.energy_of_index(index);
        if (e < low - 1e-12) {
            low = e;
            low_index = index;
        }
    }
    trial.low_bits = bits_from_index(low_index, n);
    trial.f_low = evaluate(qubo, trial.low_bits);
    return trial;
}

ExperimentResult run_experiment(const Qubo& qubo, const VqeConfig& config, const Solution& reference) {
    config.validate();
    ExperimentResult out;
    out.config = config;
    out.reference = reference;
    out.trials.reserve(config.num_trials);

    const bool gap_defined = reference.energy != 0.0;
    double gap_sum = 0.0;
    for (std::size_t t = 0; t < config.num_trials; ++t) {
        TrialResult trial = run_trial(qubo, config, derive_seed(config.seed, t));
        trial.success = std::abs(trial.f_low - reference.energy) <= kSuccessTolerance;
        if (gap_defined) {
            trial.gap = trial.success ? 0.0 : optimality_gap(trial.f_low, reference.energy);
            gap_sum += *trial.gap;
        }
        if (trial.success) ++out.successes;
        if (trial.low_bits == reference.bits) ++out.bitstring_matches;
        out.trials.push_back(std::move(trial));
    }
    out.p_succ = static_cast<double>(out.successes) / static_cast<double>(config.num_trials);
    if (gap_defined) out.gap_avg = gap_sum / static_cast<double>(config.num_trials);
    return out;
}

double optimality_gap(double f_low, double f_ref) {
    if (f_ref == 0.0) throw std::domain_error("optimality gap undefined for a zero reference energy");
    return std::abs(f_low - f_ref) / std::abs(f_ref) * 100.0;
}

double circuit_budget(double p_succ, double iterations, double shots, double evals_per_iteration) {
    if (!(p_succ > 0.0 && p_succ <= 1.0)) throw std::domain_error("p_succ must lie in (0, 1]");
    return 1.0 / p_succ * iterations * shots * evals_per_iteration;
}

}  // namespace stackfold
