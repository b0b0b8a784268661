#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "matineq/checks.hpp"
#include "matineq/interval.hpp"

namespace matineq {

// Which hypothesis a hunt deliberately breaks.
enum class Perturbation { None, DropSymmetry, DropMonotoneWeight, DropConvexity };
std::string_view to_string(Perturbation p);
Perturbation parse_perturbation(std::string_view s);

// Hypothesis names the perturbation waives.
std::vector<std::string> waived_hypotheses(Perturbation p);

// Whether the perturbation removes a hypothesis the theorem actually has.
bool perturbation_applies(std::string_view theorem, Perturbation p);

struct SamplerConfig {
  int nmin = 1;
  int nmax = 5;
  Interval interval{0.25, 2.0};  // spectra of A, B and the range for [a, b]
  // Explicit candidate ids. Empty means "every admissible id".
  std::vector<std::string> functions;
  std::vector<std::string> g_functions;
  std::vector<std::string> weights;
  Perturbation perturbation = Perturbation::None;
};

// A random instance of the theorem, fully determined by (theorem, seed, cfg).
// Unless filters say otherwise the function and weight come from the pool
// that satisfies the theorem's declared hypotheses, minus the perturbed one.
Instance sample_instance(std::string_view theorem, std::uint64_t seed, const SamplerConfig& cfg);

// Seed of trial k of theorem number t of a run started from seed.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t theorem_index, std::size_t trial);

// Worker threads: MATINEQ_THREADS if set and positive, else the hardware
// concurrency.
unsigned worker_count();

// Runs every instance; results come back in input order.
std::vector<CheckResult> run_batch(const std::vector<Instance>& instances, const CheckOptions& opt);

// trials instances of each theorem, theorems in the given order.
std::vector<CheckResult> sweep(const std::vector<std::string>& theorem_ids, int trials,
                               std::uint64_t seed, const SamplerConfig& cfg,
                               const CheckOptions& opt);

struct HuntOutcome {
  CheckOptions options;  // as used, including the waived hypotheses
  std::vector<CheckResult> results;
  std::vector<std::size_t> findings;  // indices of violated results
};

// Random search for violations. Under a perturbation the dropped
// hypotheses are waived; cfg.perturbation is overridden by perturbation.
HuntOutcome hunt(std::string_view theorem, int trials, std::uint64_t seed,
                 Perturbation perturbation, SamplerConfig cfg, CheckOptions opt);

}  // namespace matineq
