#include "stackfold/exact_solver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "stackfold/errors.hpp"
#include "stackfold/rng.hpp"
#include "stackfold/sequence.hpp"

namespace stackfold {

using Clock = std::chrono::steady_clock;

std::string_view to_string(SolveMethod m) {
    switch (m) {
        case SolveMethod::exhaustive: return "exhaustive";
        case SolveMethod::branch_bound: return "branch_bound";
        case SolveMethod::anneal: return "anneal";
    }
    return "unknown";
}

namespace {

constexpr double kTieTolerance = 1e-9;

bool lex_less(std::uint64_t a, std::uint64_t b) { return a < b; }

}  // namespace

Solution solve_exhaustive(const Qubo& q, std::size_t cap) {
    const std::size_t n = q.num_vars;
    if (n > cap) {
        throw CapacityError("exhaustive search over " + std::to_string(n) +
                            " variables exceeds cap of " + std::to_string(cap));
    }
    const auto start = Clock::now();
    const DenseQubo dense(q);

    // Local fields: field[a] = linear[a] + sum_b Q_ab x_b.
    std::vector<double> field(dense.size());
    for (std::size_t a = 0; a < n; ++a) field[a] = dense.linear(a);
    Bits bits(n, 0);

    double energy = dense.constant();
    double best = energy;
    std::uint64_t best_index = 0;
    std::uint64_t ties = 1;

    const std::uint64_t total = n == 0 ? 1 : (std::uint64_t{1} << n);
    for (std::uint64_t step = 1; step < total; ++step) {
        // Gray code: index bit b flips, which is variable n-1-b.
        const auto bit = static_cast<std::size_t>(std::countr_zero(step));
        const std::size_t var = n - 1 - bit;
        const double sign = bits[var] ? -1.0 : 1.0;
        energy += sign * field[var];
        bits[var] ^= 1U;
        for (std::size_t b = 0; b < n; ++b) field[b] += sign * dense.coupling(b, var);

        const std::uint64_t index = step ^ (step >> 1);
        if (energy < best - kTieTolerance) {
            best = energy;
            best_index = index;
            ties = 1;
        } else if (std::abs(energy - best) <= kTieTolerance) {
            ++ties;
            if (lex_less(index, best_index)) best_index = index;
            best = std::min(best, energy);
        }
    }

    Solution s;
    s.bits = bits_from_index(best_index, n);
    s.energy = evaluate(q, s.bits);
    s.method = SolveMethod::exhaustive;
    s.proven_optimal = true;
    s.work_units = total;
    s.optimal_count = ties;
    s.elapsed = Clock::now() - start;
    return s;
}

// ---- branch and bound -------------------------------------------------------

namespace {

class BranchBound {
public:
    BranchBound(const QuadraticProgram& qp, const BranchBoundOptions& options)
        : qp_(qp), options_(options), n_(qp.num_vars), matrix_(n_ * n_, 0.0), conflicts_(n_),
          value_(n_, kFree) {
        for (const auto& [key, coef] : qp.quadratic) {
            matrix_[key.first * n_ + key.second] += coef;
            matrix_[key.second * n_ + key.first] += coef;
        }
        for (const auto& [a, b] : qp.constraints) {
            conflicts_[a].push_back(b);
            conflicts_[b].push_back(a);
        }
        // Most attractive variables first finds good incumbents early.
        order_.resize(n_);
        for (std::size_t k = 0; k < n_; ++k) order_[k] = k;
        std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
            return qp.linear[a] < qp.linear[b];
        });
        field_ = qp.linear;
        best_bits_.assign(n_, 0);
        best_ = qp.constant;
    }

    Solution run() {
        start_ = Clock::now();
        search(0, qp_.constant);
        Solution s;
        s.bits = best_bits_;
        s.energy = qp_.objective(s.bits);
        s.method = SolveMethod::branch_bound;
        s.proven_optimal = !aborted_;
        s.work_units = nodes_;
        s.elapsed = Clock::now() - start_;
        return s;
    }

private:
    static constexpr signed char kFree = -1;

    bool out_of_budget() {
        if (options_.node_limit != 0 && nodes_ >= options_.node_limit) return true;
        if (options_.time_limit && (nodes_ & 1023U) == 0 &&
            Clock::now() - start_ > *options_.time_limit) {
            return true;
        }
        return false;
    }

    /// Fixed value plus, for each free variable, the most it could lower the
    /// objective counting each free-free negative coupling once.
    double bound(double fixed) const {
        double lb = fixed;
        for (std::size_t pos = 0; pos < n_; ++pos) {
            const std::size_t k = order_[pos];
            if (value_[k] != kFree) continue;
            double gain = field_[k];
            const double* row = &matrix_[k * n_];
            for (std::size_t later = pos + 1; later < n_; ++later) {
                const std::size_t j = order_[later];
                if (value_[j] == kFree && row[j] < 0.0) gain += row[j];
            }
            if (gain < 0.0) lb += gain;
        }
        return lb;
    }

    void set_one(std::size_t k, std::vector<std::size_t>& forced) {
        value_[k] = 1;
        const double* row = &matrix_[k * n_];
        for (std::size_t b = 0; b < n_; ++b) field_[b] += row[b];
        for (std::size_t c : conflicts_[k]) {
            if (value_[c] == kFree) {
                value_[c] = 0;
                forced.push_back(c);
            }
        }
    }

    void unset_one(std::size_t k, const std::vector<std::size_t>& forced) {
        for (std::size_t c : forced) value_[c] = kFree;
        const double* row = &matrix_[k * n_];
        for (std::size_t b = 0; b < n_; ++b) field_[b] -= row[b];
        value_[k] = kFree;
    }

    void search(std::size_t pos, double fixed) {
        if (aborted_) return;
        ++nodes_;
        if (out_of_budget()) {
            aborted_ = true;
            return;
        }
        while (pos < n_ && value_[order_[pos]] != kFree) ++pos;
        if (pos == n_) {
            if (fixed < best_) {
                best_ = fixed;
                for (std::size_t k = 0; k < n_; ++k) best_bits_[k] = value_[k] == 1;
            }
            return;
        }
        if (bound(fixed) >= best_ - 1e-12) return;

        const std::size_t k = order_[pos];
        std::vector<std::size_t> forced;
        const double gain = field_[k];
        set_one(k, forced);
        search(pos + 1, fixed + gain);
        unset_one(k, forced);

        value_[k] = 0;
        search(pos + 1, fixed);
        value_[k] = kFree;
    }

    const QuadraticProgram& qp_;
    BranchBoundOptions options_;
    std::size_t n_;
    std::vector<double> matrix_;
    std::vector<std::vector<std::size_t>> conflicts_;
    std::vector<signed char> value_;
    std::vector<std::size_t> order_;
    std::vector<double> field_;
    Bits best_bits_;
    double best_ = 0.0;
    std::uint64_t nodes_ = 0;
    bool aborted_ = false;
    Clock::time_point start_;
};

}  // namespace

Solution solve_branch_bound(const QuadraticProgram& qp, const BranchBoundOptions& options) {
    return BranchBound(qp, options).run();
}

// ---- annealing --------------------------------------------------------------

Solution solve_anneal(const Qubo& q, const AnnealOptions& options, std::uint64_t seed) {
    if (options.sweeps == 0 || options.restarts == 0) {
        throw std::invalid_argument("anneal needs at least one sweep and one restart");
    }
    const auto start = Clock::now();
    const DenseQubo dense(q);
    const std::size_t n = dense.size();

    double max_delta = 0.0;
    double min_coef = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < n; ++a) {
        double reach = std::abs(dense.linear(a));
        if (dense.linear(a) != 0.0) min_coef = std::min(min_coef, std::abs(dense.linear(a)));
        for (std::size_t b = 0; b < n; ++b) {
            const double c = dense.coupling(a, b);
            reach += std::abs(c);
            if (c != 0.0) min_coef = std::min(min_coef, std::abs(c));
        }
        max_delta = std::max(max_delta, reach);
    }
    if (!std::isfinite(min_coef)) min_coef = 1.0;
    const double t_hot = options.t_initial.value_or(std::max(max_delta, 1e-9) / std::log(2.0));
    const double t_cold = options.t_final.value_or(min_coef / std::log(100.0));
    const double cooling =
        options.sweeps > 1 ? std::pow(t_cold / t_hot, 1.0 / static_cast<double>(options.sweeps - 1))
                           : 1.0;

    Bits best_bits(n, 0);
    double best = dense.constant();
    std::uint64_t flips = 0;

    std::vector<double> field(n);
    for (std::size_t r = 0; r < options.restarts; ++r) {
        Rng rng = Rng::derive(seed, r);
        Bits bits(n);
        for (auto& b : bits) b = static_cast<std::uint8_t>(rng.below(2));
        for (std::size_t a = 0; a < n; ++a) {
            field[a] = dense.linear(a);
            for (std::size_t b = 0; b < n; ++b) {
                if (bits[b]) field[a] += dense.coupling(a, b);
            }
        }
        double energy = dense.energy(bits);
        Bits run_best = bits;
        double run_best_energy = energy;

        double temperature = t_hot;
        for (std::size_t sweep = 0; sweep < options.sweeps; ++sweep, temperature *= cooling) {
            for (std::size_t a = 0; a < n; ++a) {
                ++flips;
                const double delta = bits[a] ? -field[a] : field[a];
                const bool accept = delta <= 0.0 || rng.uniform01() < std::exp(-delta / temperature);
                if (!accept) continue;
                const double sign = bits[a] ? -1.0 : 1.0;
                bits[a] ^= 1U;
                energy += delta;
                for (std::size_t b = 0; b < n; ++b) field[b] += sign * dense.coupling(b, a);
                if (energy < run_best_energy - 1e-12) {
                    run_best_energy = energy;
                    run_best = bits;
                }
            }
        }
        const double exact = dense.energy(run_best);
        if (exact < best - 1e-12 || (std::abs(exact - best) <= 1e-12 && run_best < best_bits)) {
            best = exact;
            best_bits = run_best;
        }
    }

    Solution s;
    s.bits = std::move(best_bits);
    s.energy = evaluate(q, s.bits);
    s.method = SolveMethod::anneal;
    s.proven_optimal = false;
    s.work_units = flips;
    s.elapsed = Clock::now() - start;
    return s;
}

// ---- timing study -----------------------------------------------------------

std::vector<TimingRow> timing_study(const TimingConfig& config, const StackTable& table) {
    std::vector<TimingRow> rows;
    rows.reserve(config.lengths.size() * config.samples_per_length);
    for (std::size_t l = 0; l < config.lengths.size(); ++l) {
        for (std::size_t k = 0; k < config.samples_per_length; ++k) {
            const std::uint64_t task = l * config.samples_per_length + k;
            const std::uint64_t seed = derive_seed(config.seed, task);
            Rng rng(seed);
            const RnaSequence seq = random_sequence(config.lengths[l], rng);
            const QuartetModel model = build_model(seq, config.model);
            const QuadraticProgram qp = build_program(model, table, config.weights, config.ua_mode);
            const Solution s = solve_branch_bound(qp, config.solver);
            rows.push_back({config.lengths[l], seed, qp.num_vars, qp.constraints.size(), s.work_units,
                            s.elapsed.count(), s.energy, s.proven_optimal});
        }
    }
    return rows;
}

void write_timing_csv(std::ostream& out, const std::vector<TimingRow>& rows) {
    out << "length,seed,num_vars,num_constraints,work_units,wall_ms,energy,proven_optimal\n";
    char wall[32];
    char energy[40];
    for (const auto& r : rows) {
        std::snprintf(wall, sizeof wall, "%.3f", r.wall_ms);
        std::snprintf(energy, sizeof energy, "%.10g", r.energy);
        out << r.length << ',' << r.seed << ',' << r.num_vars << ',' << r.num_constraints << ','
            << r.work_units << ',' << wall << ',' << energy << ',' << (r.proven_optimal ? 1 : 0)
            << '\n';
    }
}

}  // namespace stackfold
