#pragma once

// Deterministic random sampling shared by the randomized checkers.

#include <cstdint>
#include <functional>
#include <random>

#include "softcone/soft_space.hpp"

namespace softcone {

using Rng = std::mt19937_64;

/// Independent per-trial seed derived from a run seed (splitmix64 step).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform(Rng& rng, double lo, double hi);

using PointSampler = std::function<SoftVector(Rng&)>;

/// Uniform over the box [lo, hi]^dim at every label.
PointSampler uniform_box_sampler(ParameterSet params, std::size_t dim, double lo = -10.0, double hi = 10.0);

/// Uniform over the box centred at `center` with the given half-width.
PointSampler box_around_sampler(SoftVector center, double half_width);

SoftReal random_soft_real(Rng& rng, const ParameterSet& params, double lo, double hi);

}  // namespace softcone
