#include "stackfold/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "stackfold/errors.hpp"

namespace stackfold {

Ansatz build_ansatz(std::size_t num_qubits, std::size_t layers) {
    if (num_qubits < 1) throw std::invalid_argument("ansatz needs at least one qubit");
    if (layers < 1) throw std::invalid_argument("ansatz needs at least one repetition");
    Ansatz a;
    a.num_qubits = num_qubits;
    a.layers = layers;
    a.entangler_layers.resize(2);
    for (std::size_t i = 0; i + 1 < num_qubits; ++i) a.entangler_layers[i % 2].emplace_back(i, i + 1);
    return a;
}

StateVector::StateVector(std::size_t num_qubits) : n_(num_qubits) {
    if (num_qubits > kMaxQubits) {
        throw CapacityError("statevector of " + std::to_string(num_qubits) +
                            " qubits exceeds cap of " + std::to_string(kMaxQubits));
    }
    amps_.assign(std::size_t{1} << num_qubits, {0.0, 0.0});
    amps_[0] = 1.0;
}

void StateVector::apply_ry(std::size_t qubit, double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const std::uint64_t m = mask(qubit);
    const std::uint64_t dim = amps_.size();
    for (std::uint64_t block = 0; block < dim; block += 2 * m) {
        for (std::uint64_t k = block; k < block + m; ++k) {
            const std::complex<double> a0 = amps_[k];
            const std::complex<double> a1 = amps_[k + m];
            amps_[k] = c * a0 - s * a1;
            amps_[k + m] = s * a0 + c * a1;
        }
    }
}

void StateVector::apply_cz(std::size_t a, std::size_t b) {
    const std::uint64_t both = mask(a) | mask(b);
    for (std::uint64_t k = 0; k < amps_.size(); ++k) {
        if ((k & both) == both) amps_[k] = -amps_[k];
    }
}

double StateVector::norm() const {
    double sum = 0.0;
    for (const auto& a : amps_) sum += std::norm(a);
    return std::sqrt(sum);
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(amps_.size());
    for (std::size_t k = 0; k < amps_.size(); ++k) p[k] = std::norm(amps_[k]);
    return p;
}

StateVector statevector(const Ansatz& ansatz, std::span<const double> theta) {
    if (theta.size() != ansatz.parameter_count()) {
        throw std::invalid_argument("ansatz expects " + std::to_string(ansatz.parameter_count()) +
                                    " parameters, got " + std::to_string(theta.size()));
    }
    const std::size_t n = ansatz.num_qubits;
    StateVector state(n);
    for (std::size_t rep = 0; rep <= ansatz.layers; ++rep) {
        for (std::size_t q = 0; q < n; ++q) state.apply_ry(q, theta[rep * n + q]);
        if (rep == ansatz.layers) break;
        for (const auto& layer : ansatz.entangler_layers) {
            for (const auto& [a, b] : layer) state.apply_cz(a, b);
        }
    }
    return state;
}

SampleSet sample(const StateVector& state, std::uint64_t shots, Rng& rng) {
    if (shots == 0) throw std::invalid_argument("shots must be at least 1");
    std::vector<double> cumulative = state.probabilities();
    for (std::size_t k = 1; k < cumulative.size(); ++k) cumulative[k] += cumulative[k - 1];
    const double total = cumulative.back();
    auto last_nonzero = cumulative.end() - 1;
    while (last_nonzero != cumulative.begin() && *(last_nonzero - 1) == *last_nonzero) --last_nonzero;

    SampleSet out;
    out.num_qubits = state.num_qubits();
    out.shots = shots;
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = rng.uniform01() * total;
        // upper_bound never lands on a zero-probability state except past the end.
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        if (it == cumulative.end()) it = last_nonzero;
        ++out.counts[static_cast<std::uint64_t>(it - cumulative.begin())];
    }
    return out;
}

SampleSet sample(const Ansatz& ansatz, std::span<const double> theta, std::uint64_t shots, Rng& rng) {
    return sample(statevector(ansatz, theta), shots, rng);
}

double expectation(const StateVector& state, std::span<const double> diagonal) {
    if (diagonal.size() != state.dimension()) {
        throw std::invalid_argument("diagonal size does not match state dimension");
    }
    double sum = 0.0;
    const auto amps = state.amplitudes();
    for (std::size_t k = 0; k < amps.size(); ++k) sum += std::norm(amps[k]) * diagonal[k];
    return sum;
}

}  // namespace stackfold
