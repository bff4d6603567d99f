#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "stackfold/bits.hpp"
#include "stackfold/rng.hpp"

namespace stackfold {

inline constexpr std::size_t kMaxQubits = 26;

using Edge = std::pair<std::size_t, std::size_t>;

/// Two-local Ry/CZ circuit. Each of the `layers` repetitions applies one Ry
/// per qubit, then CZ on (i, i+1) for even i, then CZ on (i, i+1) for odd i;
/// a final Ry layer follows the last repetition.
struct Ansatz {
    std::size_t num_qubits = 0;
    std::size_t layers = 0;
    /// The two CZ layers applied in every repetition: even edges, odd edges.
    std::vector<std::vector<Edge>> entangler_layers;

    /// Rotation layer r, qubit q uses parameter r * num_qubits + q.
    std::size_t parameter_count() const { return num_qubits * (layers + 1); }
};

/// Throws std::invalid_argument unless n >= 1 and p >= 1.
Ansatz build_ansatz(std::size_t num_qubits, std::size_t layers);

/// Amplitudes over 2^n basis states. Qubit 0 is the most significant bit of
/// the basis index and the leftmost character of a bitstring.
class StateVector {
public:
    /// |0...0>. Throws CapacityError when n exceeds kMaxQubits.
    explicit StateVector(std::size_t num_qubits);

    std::size_t num_qubits() const { return n_; }
    std::size_t dimension() const { return amps_.size(); }
    std::span<const std::complex<double>> amplitudes() const { return amps_; }
    std::complex<double> amplitude(std::uint64_t index) const { return amps_[index]; }

    /// exp(-i theta/2 Y): |0> -> cos(theta/2)|0> + sin(theta/2)|1>.
    void apply_ry(std::size_t qubit, double theta);
    /// Phase -1 on |11> of the two qubits.
    void apply_cz(std::size_t a, std::size_t b);

    double norm() const;
    std::vector<double> probabilities() const;

private:
    std::uint64_t mask(std::size_t qubit) const { return std::uint64_t{1} << (n_ - 1 - qubit); }

    std::size_t n_;
    std::vector<std::complex<double>> amps_;
};

/// Runs the ansatz on |0...0>. Throws std::invalid_argument when the
/// parameter count does not match.
StateVector statevector(const Ansatz& ansatz, std::span<const double> theta);

/// Measurement outcomes keyed by basis index (see StateVector for order).
struct SampleSet {
    std::size_t num_qubits = 0;
    std::uint64_t shots = 0;
    std::map<std::uint64_t, std::uint64_t> counts;

    Bits bits_of(std::uint64_t index) const { return bits_from_index(index, num_qubits); }
};

/// Multinomial draw of `shots` outcomes from |amplitude|^2.
SampleSet sample(const StateVector& state, std::uint64_t shots, Rng& rng);
SampleSet sample(const Ansatz& ansatz, std::span<const double> theta, std::uint64_t shots, Rng& rng);

/// Sum_k |a_k|^2 * diagonal[k].
double expectation(const StateVector& state, std::span<const double> diagonal);

}  // namespace stackfold
