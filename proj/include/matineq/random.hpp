#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "matineq/funcspace.hpp"
#include "matineq/interval.hpp"
#include "matineq/linalg.hpp"

namespace matineq {

// SplitMix64 (Steele, Lea, Flood). The constants below are part of the
// reproducibility contract: a seed must yield the same stream in every
// implementation that replays counterexample records.
//
//   state += 0x9E3779B97F4A7C15
//   z = state
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
//
// uniform() takes the top 53 bits: (next() >> 11) * 2^-53.
// normal() is Box-Muller on (1 - uniform(), uniform()), cosine branch only.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() noexcept;
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  double normal() noexcept;
  // Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) noexcept;

 private:
  std::uint64_t state_;
};

inline constexpr std::uint64_t kPairSeedXor = 0xD1B54A32D192ED03ULL;

// Independent stream for the pair (seed, stream).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

struct GeneratedHermitian {
  HermitianMatrix matrix;
  std::vector<double> drawn_eigenvalues;  // in draw order
};

// U diag(lambda) U* with lambda ~ U[lo, hi] and U from modified Gram-Schmidt
// (two passes) on a standard complex Gaussian matrix.
GeneratedHermitian random_hermitian_with_spectrum(std::uint64_t seed, int n,
                                                  const Interval& interval);
HermitianMatrix random_hermitian(std::uint64_t seed, int n, const Interval& interval);

// Draws A from seed and B from seed ^ kPairSeedXor.
std::pair<HermitianMatrix, HermitianMatrix> random_pair(std::uint64_t seed, int n,
                                                        const Interval& interval);

// Piecewise-linear weight that rises from base by the given increments over
// equally spaced knots on [0, 1/2] and is mirrored onto [1/2, 1].
WeightFunction admissible_weight(std::string id, double base, std::span<const double> increments);

// Random members of three weight families, each with a replayable id:
//   admissible:<seed>:<knots>  symmetric, non-decreasing on [0, 1/2]
//   reversed:<seed>:<knots>    symmetric, non-increasing on [0, 1/2]
//   skewed:<seed>:<knots>      nonnegative, generally not symmetric
WeightFunction random_admissible_weight(std::uint64_t seed, int knots);
WeightFunction random_reversed_weight(std::uint64_t seed, int knots);
WeightFunction random_skewed_weight(std::uint64_t seed, int knots);

// Builtin ids plus the three random families above.
WeightFunction resolve_weight(std::string_view id);

}  // namespace matineq
