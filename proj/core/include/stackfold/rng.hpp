#pragma once

#include <cstdint>
#include <random>

namespace stackfold {

/// Deterministic random stream. Child streams are derived from a
/// (master seed, task index) pair so parallel or reordered work produces
/// the same numbers as sequential work.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    /// Stream for task `index` under `master`; independent of call order.
    static Rng derive(std::uint64_t master, std::uint64_t index);

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 bits of resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). `bound` must be nonzero.
    std::uint64_t below(std::uint64_t bound);

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; used to decorrelate derived seeds.
std::uint64_t mix_seed(std::uint64_t x);

/// Seed for task `index` under `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace stackfold
