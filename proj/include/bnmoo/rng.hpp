#pragma once

#include <cstdint>
#include <random>

namespace bnmoo {

/// Random source used everywhere. One stream per worker; never shared.
using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

/// Stable stream seed for one (scenario, repetition) cell of an experiment.
///
///   s = splitmix64(master)
///   s = splitmix64(s ^ (scenario + 0x9E3779B97F4A7C15))
///   s = splitmix64(s ^ (repetition + 0xD1B54A32D192ED03))
///
/// The constants and ordering are part of the reproducibility contract.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t scenario,
                       std::uint64_t repetition);

/// Uniform real in [0, 1).
double uniform01(Rng& rng);

/// True with probability p. p <= 0 never fires, p >= 1 always fires.
bool bernoulli(Rng& rng, double p);

/// Uniform integer in [lo, hi].
std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi);

}  // namespace bnmoo
