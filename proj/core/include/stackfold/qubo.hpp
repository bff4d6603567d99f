#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "stackfold/bits.hpp"
#include "stackfold/energy.hpp"
#include "stackfold/quartets.hpp"

namespace stackfold {

/// Quadratic coefficients keyed by (a, b) with a < b.
using QuadraticTerms = std::map<IndexPair, double>;

/// Binary quadratic objective with pairwise at-most-one constraints.
struct QuadraticProgram {
    std::size_t num_vars = 0;
    std::vector<double> linear;
    QuadraticTerms quadratic;
    double constant = 0.0;
    /// x_a + x_b <= 1 for each (a, b), a < b.
    std::vector<IndexPair> constraints;

    /// Objective value, ignoring constraints.
    double objective(std::span<const std::uint8_t> bits) const;
    std::size_t violations(std::span<const std::uint8_t> bits) const;
    bool feasible(std::span<const std::uint8_t> bits) const { return violations(bits) == 0; }
};

/// Unconstrained form: constant + sum l_a x_a + sum Q_ab x_a x_b.
struct Qubo {
    std::size_t num_vars = 0;
    std::vector<double> linear;
    QuadraticTerms quadratic;
    double constant = 0.0;
};

/// Spin form under x = (1 - z) / 2, so bit 1 <-> spin -1.
struct IsingHamiltonian {
    std::size_t num_spins = 0;
    std::vector<double> h;
    QuadraticTerms J;
    double offset = 0.0;

    /// Energy of a spin configuration with entries in {-1, +1}.
    double energy(std::span<const int> spins) const;
};

/// How the UA-end term enters the objective.
enum class UaTermMode {
    /// p * sum_{i in Q} sum_{j in QUA} x_i (1 - x_j), expanded exactly.
    literal,
    /// +p on the linear coefficient of each QUA quartet.
    linear,
};

/// Compiles the folding objective and its conflict constraints.
///
/// Stacking is counted as written in the double sum over i and QS(i): each
/// unordered stacking pair receives 2r. The literal UA term expands to
/// +p(|QUA| - [i in QUA]) on linear(i) and -p per ordered (i, j in QUA),
/// i != j, pair (so -2p when both ends are in QUA).
QuadraticProgram build_program(const QuartetModel& model, const StackTable& table,
                               const ObjectiveWeights& weights,
                               UaTermMode ua_mode = UaTermMode::literal);

/// 1 + sum |linear| + sum |quadratic|. Any single violated constraint then
/// costs more than the objective can gain, so every QUBO minimizer is feasible.
double default_penalty(const QuadraticProgram& qp);

/// Folds each constraint into +t x_a x_b. Throws std::invalid_argument if t <= 0.
Qubo to_qubo(const QuadraticProgram& qp, double penalty);

/// Program then QUBO, with `weights.constraint_penalty` or the default penalty.
Qubo compile_qubo(const QuartetModel& model, const StackTable& table,
                  const ObjectiveWeights& weights, UaTermMode ua_mode = UaTermMode::literal);

IsingHamiltonian to_ising(const Qubo& q);

/// Throws std::invalid_argument on length mismatch.
double evaluate(const Qubo& q, std::span<const std::uint8_t> bits);

/// Dense copy of a QUBO for repeated evaluation and single-flip deltas.
class DenseQubo {
public:
    explicit DenseQubo(const Qubo& q);

    std::size_t size() const { return n_; }
    double constant() const { return constant_; }
    double linear(std::size_t a) const { return linear_[a]; }
    /// Symmetric coupling; zero on the diagonal.
    double coupling(std::size_t a, std::size_t b) const { return matrix_[a * n_ + b]; }

    double energy(std::span<const std::uint8_t> bits) const;
    /// Energy of the basis index (variable 0 is the most significant bit).
    double energy_of_index(std::uint64_t index) const;
    /// Energy change from flipping variable a.
    double flip_delta(std::span<const std::uint8_t> bits, std::size_t a) const;

private:
    std::size_t n_;
    double constant_;
    std::vector<double> linear_;
    std::vector<double> matrix_;
};

/// Writes `qubo <n> <constant>` then `l <i> <coef>` and `q <i> <j> <coef>`
/// lines, with round-trip precision.
void write_qubo(std::ostream& out, const Qubo& q);
/// Inverse of write_qubo. Throws ParseError on malformed or out-of-range lines.
Qubo read_qubo(std::istream& in);
Qubo read_qubo(std::string_view text);

}  // namespace stackfold
