#include "matineq/random.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "matineq/error.hpp"

namespace matineq {

std::uint64_t SplitMix64::next() noexcept {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() noexcept {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double SplitMix64::normal() noexcept {
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) noexcept {
  return bound == 0 ? 0 : next() % bound;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  SplitMix64 a(seed);
  const std::uint64_t first = a.next();
  SplitMix64 b(first ^ (stream * 0x9E3779B97F4A7C15ULL + 0x632BE59BD9B4E019ULL));
  return b.next();
}

GeneratedHermitian random_hermitian_with_spectrum(std::uint64_t seed, int n,
                                                  const Interval& interval) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "dimension must be at least 1");
  if (!interval.finite()) throw Error(ErrorKind::InvalidArgument, "spectral interval must be finite");
  const auto un = static_cast<std::size_t>(n);
  SplitMix64 rng(seed);

  std::vector<double> lambda(un);
  for (double& l : lambda) l = rng.uniform(interval.lo(), interval.hi());

  ComplexMatrix q(un);
  const double s = std::sqrt(0.5);
  for (std::size_t i = 0; i < un; ++i)
    for (std::size_t j = 0; j < un; ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      q(i, j) = Complex(s * re, s * im);
    }

  for (std::size_t j = 0; j < un; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        Complex dot{};
        for (std::size_t i = 0; i < un; ++i) dot += std::conj(q(i, k)) * q(i, j);
        for (std::size_t i = 0; i < un; ++i) q(i, j) -= dot * q(i, k);
      }
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < un; ++i) norm += std::norm(q(i, j));
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < un; ++i) q(i, j) /= norm;
  }

  SpectralDecomposition d{lambda, q, 0};
  HermitianMatrix a = hermitize(d.reconstruct());

  const std::vector<double> check = eigenvalues(a);
  if (!interval.contains(check.front(), 1e-10) || !interval.contains(check.back(), 1e-10)) {
    std::ostringstream os;
    os.precision(17);
    os << "generated spectrum [" << check.back() << ", " << check.front() << "] escapes "
       << interval.to_string();
    throw Error(ErrorKind::ParameterOutOfRange, os.str());
  }
  return {std::move(a), std::move(lambda)};
}

HermitianMatrix random_hermitian(std::uint64_t seed, int n, const Interval& interval) {
  return random_hermitian_with_spectrum(seed, n, interval).matrix;
}

std::pair<HermitianMatrix, HermitianMatrix> random_pair(std::uint64_t seed, int n,
                                                        const Interval& interval) {
  return {random_hermitian(seed, n, interval), random_hermitian(seed ^ kPairSeedXor, n, interval)};
}

namespace {

// Piecewise-linear interpolation of values at t_k = k / (values.size() - 1)
// scaled onto [0, span_end].
double interpolate(const std::vector<double>& values, double span_end, double t) {
  const std::size_t segments = values.size() - 1;
  if (segments == 0) return values[0];
  const double pos = std::clamp(t / span_end, 0.0, 1.0) * static_cast<double>(segments);
  const std::size_t k = std::min(static_cast<std::size_t>(pos), segments - 1);
  const double frac = pos - static_cast<double>(k);
  return values[k] + frac * (values[k + 1] - values[k]);
}

std::vector<double> mirrored_kinks(int knots) {
  std::vector<double> kinks;
  for (int k = 1; k <= knots; ++k) {
    const double t = 0.5 * k / knots;
    kinks.push_back(t);
    if (k < knots) kinks.push_back(1.0 - t);
  }
  std::sort(kinks.begin(), kinks.end());
  return kinks;
}

void require_knots(int knots) {
  if (knots < 1) throw Error(ErrorKind::InvalidArgument, "knots must be at least 1");
}

std::string family_id(std::string_view family, std::uint64_t seed, int knots) {
  return std::string(family) + ":" + std::to_string(seed) + ":" + std::to_string(knots);
}

}  // namespace

WeightFunction admissible_weight(std::string id, double base, std::span<const double> increments) {
  if (increments.empty()) throw Error(ErrorKind::InvalidArgument, "need at least one increment");
  if (base < 0.0) throw Error(ErrorKind::InvalidArgument, "base must be nonnegative");
  std::vector<double> values{base};
  for (double inc : increments) {
    if (inc < 0.0) throw Error(ErrorKind::InvalidArgument, "increments must be nonnegative");
    values.push_back(values.back() + inc);
  }
  WeightFlags flags{.nonnegative = true,
                    .symmetric = true,
                    .nondecreasing_first_half = true,
                    .strictly_positive = values[1] > 0.0};
  const int knots = static_cast<int>(increments.size());
  return WeightFunction(
      std::move(id),
      [values](double t) { return interpolate(values, 0.5, std::min(t, 1.0 - t)); }, flags,
      mirrored_kinks(knots));
}

WeightFunction random_admissible_weight(std::uint64_t seed, int knots) {
  require_knots(knots);
  SplitMix64 rng(seed);
  const double base = rng.uniform();
  std::vector<double> inc(static_cast<std::size_t>(knots));
  for (double& x : inc) x = rng.uniform();
  return admissible_weight(family_id("admissible", seed, knots), base, inc);
}

WeightFunction random_reversed_weight(std::uint64_t seed, int knots) {
  require_knots(knots);
  SplitMix64 rng(seed);
  const double base = rng.uniform();
  std::vector<double> values(static_cast<std::size_t>(knots) + 1);
  values.back() = base;
  for (int k = knots - 1; k >= 0; --k) values[k] = values[k + 1] + rng.uniform();
  const bool flat = values.front() == values.back();
  WeightFlags flags{.nonnegative = true,
                    .symmetric = true,
                    .nondecreasing_first_half = flat,
                    .strictly_positive = base > 0.0};
  return WeightFunction(
      family_id("reversed", seed, knots),
      [values](double t) { return interpolate(values, 0.5, std::min(t, 1.0 - t)); }, flags,
      mirrored_kinks(knots));
}

WeightFunction random_skewed_weight(std::uint64_t seed, int knots) {
  require_knots(knots);
  SplitMix64 rng(seed);
  std::vector<double> values(static_cast<std::size_t>(knots) + 1);
  for (double& v : values) v = rng.uniform();
  std::vector<double> kinks;
  for (int k = 1; k < knots; ++k) kinks.push_back(static_cast<double>(k) / knots);
  WeightFunction draft(
      family_id("skewed", seed, knots), [values](double t) { return interpolate(values, 1.0, t); },
      WeightFlags{}, kinks);
  // Flags of an arbitrary draw are read off the grid validators.
  WeightFlags flags{.nonnegative = true,
                    .symmetric = check_weight_symmetric(draft).pass,
                    .nondecreasing_first_half = check_weight_nondecreasing_first_half(draft).pass,
                    .strictly_positive = check_weight_strictly_positive(draft).pass};
  return WeightFunction(draft.id(), [values](double t) { return interpolate(values, 1.0, t); },
                        flags, kinks);
}

WeightFunction resolve_weight(std::string_view id) {
  const auto colon = id.find(':');
  if (colon == std::string_view::npos) return find_builtin_weight(id);
  const std::string_view family = id.substr(0, colon);
  const std::string_view rest = id.substr(colon + 1);
  const auto colon2 = rest.find(':');
  std::uint64_t seed = 0;
  int knots = 0;
  const auto bad = [&] {
    return Error(ErrorKind::UnknownId,
                 "expected <family>:<seed>:<knots> but got '" + std::string(id) + "'");
  };
  if (colon2 == std::string_view::npos) throw bad();
  const std::string_view seed_text = rest.substr(0, colon2);
  const std::string_view knots_text = rest.substr(colon2 + 1);
  if (std::from_chars(seed_text.data(), seed_text.data() + seed_text.size(), seed).ptr !=
          seed_text.data() + seed_text.size() ||
      std::from_chars(knots_text.data(), knots_text.data() + knots_text.size(), knots).ptr !=
          knots_text.data() + knots_text.size() ||
      seed_text.empty() || knots_text.empty()) {
    throw bad();
  }
  if (family == "admissible") return random_admissible_weight(seed, knots);
  if (family == "reversed") return random_reversed_weight(seed, knots);
  if (family == "skewed") return random_skewed_weight(seed, knots);
  throw Error(ErrorKind::UnknownId, "unknown weight family '" + std::string(family) + "'");
}

}  // namespace matineq
