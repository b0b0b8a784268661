#include "matineq/hunt.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>

#include "matineq/error.hpp"
#include "matineq/random.hpp"

namespace matineq {

namespace {

const Interval kUnit(0.0, 1.0);

bool is_log_theorem(std::string_view id) {
  return id == theorem::kLogFejer || id == theorem::kEigProductFejer;
}

bool monotone(const ScalarFunction& f) {
  return f.flags().monotone_increasing || f.flags().monotone_decreasing;
}

bool fits(const ScalarFunction& f, const Interval& d) { return f.domain().contains(d); }

// Declared-flag admissibility of f for the theorem, with the convexity
// requirement inverted under drop-convexity.
bool function_admissible(std::string_view id, const ScalarFunction& f, Perturbation p) {
  const FunctionFlags& fl = f.flags();
  const bool drop = p == Perturbation::DropConvexity;
  const auto convex = [&](bool flag) { return drop ? !flag : flag; };
  if (id == theorem::kScalarLevinSteckin || id == theorem::kLevinSteckinRefined ||
      id == theorem::kScalarFejer) {
    return convex(fl.convex);
  }
  // Everything below integrates along a matrix path or consumes f'.
  if (!f.has_derivative()) return false;
  if (id == theorem::kMatrixFejerUpper) return convex(fl.convex) && monotone(f);
  if (is_log_theorem(id)) return fl.log_convex && fl.positive;
  if (id == theorem::kOperatorLevinSteckin) return convex(fl.operator_convex);
  return convex(fl.convex);
}

struct WeightNeeds {
  bool symmetric = false;
  bool nondecreasing = false;
  bool strictly_positive = false;
};

WeightNeeds weight_needs(const TheoremInfo& info) {
  return {info.requires_symmetric_weight, info.requires_monotone_weight, is_log_theorem(info.id)};
}

bool weight_admissible(const WeightNeeds& need, const WeightFunction& w, Perturbation p) {
  const WeightFlags& fl = w.flags();
  if (!fl.nonnegative) return false;
  if (need.strictly_positive && !fl.strictly_positive) return false;
  if (p == Perturbation::DropSymmetry) {
    if (fl.symmetric) return false;
  } else if (need.symmetric && !fl.symmetric) {
    return false;
  }
  if (p == Perturbation::DropMonotoneWeight) {
    if (fl.nondecreasing_first_half) return false;
  } else if (need.nondecreasing && !fl.nondecreasing_first_half) {
    return false;
  }
  return true;
}

template <class T>
const T& pick(SplitMix64& rng, const std::vector<T>& pool, std::string_view what,
              std::string_view theorem) {
  if (pool.empty()) {
    throw Error(ErrorKind::InvalidArgument,
                "no admissible " + std::string(what) + " for " + std::string(theorem));
  }
  return pool[rng.below(pool.size())];
}

std::vector<ScalarFunction> function_pool(const std::vector<std::string>& filter,
                                          const std::function<bool(const ScalarFunction&)>& ok) {
  std::vector<ScalarFunction> pool;
  if (!filter.empty()) {
    for (const std::string& id : filter) pool.push_back(find_function(id));
    return pool;
  }
  for (const ScalarFunction& f : builtin_functions()) {
    if (ok(f)) pool.push_back(f);
  }
  return pool;
}

std::string pick_weight(SplitMix64& rng, const TheoremInfo& info, const SamplerConfig& cfg) {
  if (!cfg.weights.empty()) return pick(rng, cfg.weights, "weight", info.id);
  std::vector<WeightFunction> candidates = builtin_weights();
  const std::uint64_t ws = rng.next();
  const int knots = 1 + static_cast<int>(rng.below(4));
  candidates.push_back(random_admissible_weight(ws, knots));
  candidates.push_back(random_reversed_weight(ws, knots));
  candidates.push_back(random_skewed_weight(ws, knots));
  const WeightNeeds need = weight_needs(info);
  std::vector<std::string> pool;
  for (const WeightFunction& w : candidates) {
    if (weight_admissible(need, w, cfg.perturbation)) pool.push_back(w.id());
  }
  return pick(rng, pool, "weight", info.id);
}

// Random sub-interval [a, b] of range with b - a at least a quarter of what
// remains to the right of a.
std::pair<double, double> pick_interval(SplitMix64& rng, const Interval& range) {
  const double a = range.lo() + 0.5 * range.length() * rng.uniform();
  const double b = a + (0.25 + 0.75 * rng.uniform()) * (range.hi() - a);
  return {a, b};
}

}  // namespace

std::string_view to_string(Perturbation p) {
  switch (p) {
    case Perturbation::None: return "none";
    case Perturbation::DropSymmetry: return "drop-symmetry";
    case Perturbation::DropMonotoneWeight: return "drop-monotone-weight";
    case Perturbation::DropConvexity: return "drop-convexity";
  }
  return "none";
}

Perturbation parse_perturbation(std::string_view s) {
  for (Perturbation p : {Perturbation::None, Perturbation::DropSymmetry,
                         Perturbation::DropMonotoneWeight, Perturbation::DropConvexity}) {
    if (to_string(p) == s) return p;
  }
  throw Error(ErrorKind::UnknownId, "unknown perturbation '" + std::string(s) + "'");
}

std::vector<std::string> waived_hypotheses(Perturbation p) {
  switch (p) {
    case Perturbation::None: return {};
    case Perturbation::DropSymmetry: return {std::string(hyp::kSymmetric)};
    case Perturbation::DropMonotoneWeight: return {std::string(hyp::kNondecreasing)};
    case Perturbation::DropConvexity:
      return {std::string(hyp::kConvex), std::string(hyp::kOperatorConvex)};
  }
  return {};
}

bool perturbation_applies(std::string_view theorem, Perturbation p) {
  const TheoremInfo& info = theorem_info(theorem);
  switch (p) {
    case Perturbation::None: return true;
    case Perturbation::DropSymmetry: return info.requires_symmetric_weight;
    case Perturbation::DropMonotoneWeight: return info.requires_monotone_weight;
    // The log theorems need a positive f; the registry has no positive
    // function that is not log-convex, so there is nothing to perturb.
    case Perturbation::DropConvexity: return info.requires_convexity && !is_log_theorem(theorem);
  }
  return false;
}

Instance sample_instance(std::string_view theorem, std::uint64_t seed, const SamplerConfig& cfg) {
  const TheoremInfo& info = theorem_info(theorem);
  if (!perturbation_applies(theorem, cfg.perturbation)) {
    throw Error(ErrorKind::InvalidArgument, std::string(to_string(cfg.perturbation)) +
                                                " does not apply to " + std::string(theorem));
  }
  if (cfg.nmin < 1 || cfg.nmax < cfg.nmin) {
    throw Error(ErrorKind::InvalidArgument, "need 1 <= nmin <= nmax");
  }
  if (!cfg.interval.finite()) {
    throw Error(ErrorKind::InvalidArgument, "sampling interval must be finite");
  }
  SplitMix64 rng(seed);
  Instance in;
  in.theorem = std::string(theorem);

  if (info.shape == InstanceShape::FunctionPair) {
    Interval d = kUnit;
    if (info.id == theorem::kChebyshevVariance) {
      const auto [a, b] = pick_interval(rng, cfg.interval);
      in.a = a;
      in.b = b;
      d = Interval(a, b);
    }
    const auto ok = [&](const ScalarFunction& f) { return fits(f, d) && monotone(f); };
    const ScalarFunction f = pick(rng, function_pool(cfg.functions, ok), "function", theorem);
    const bool inc = f.flags().monotone_increasing;
    const bool filtered = !cfg.functions.empty() || !cfg.g_functions.empty();
    const auto ok_g = [&](const ScalarFunction& g) {
      // The AM bound is stated for synchronous pairs only.
      if (info.id == theorem::kChebyshevAmBound) {
        return ok(g) && g.flags().monotone_increasing == inc;
      }
      return ok(g);
    };
    const ScalarFunction g = pick(rng, function_pool(cfg.g_functions, ok_g), "function g", theorem);
    in.f = f.id();
    in.g = g.id();
    if (info.id == theorem::kChebyshevVariance && !filtered) {
      in.mode = g.flags().monotone_increasing == inc ? Synchrony::Synchronous
                                                     : Synchrony::Asynchronous;
    }
    return in;
  }

  Interval d = kUnit;
  if (info.shape == InstanceShape::IntervalWeighted) {
    const auto [a, b] = pick_interval(rng, cfg.interval);
    in.a = a;
    in.b = b;
    d = Interval(a, b);
  } else if (info.shape == InstanceShape::MatrixWeighted) {
    d = cfg.interval;
  }
  const auto ok = [&](const ScalarFunction& f) {
    return fits(f, d) && function_admissible(theorem, f, cfg.perturbation);
  };
  in.f = pick(rng, function_pool(cfg.functions, ok), "function", theorem).id();
  in.p = pick_weight(rng, info, cfg);

  if (info.shape == InstanceShape::MatrixWeighted) {
    in.n = cfg.nmin + static_cast<int>(rng.below(static_cast<std::uint64_t>(cfg.nmax - cfg.nmin + 1)));
    in.interval = cfg.interval;
    in.seed = rng.next();
    if (info.id == theorem::kMondPecaricReverse) in.alpha = 2.0 * rng.uniform();
  }
  return in;
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t theorem_index, std::size_t trial) {
  return derive_seed(derive_seed(seed, theorem_index), trial);
}

unsigned worker_count() {
  if (const char* env = std::getenv("MATINEQ_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<CheckResult> run_batch(const std::vector<Instance>& instances, const CheckOptions& opt) {
  std::vector<CheckResult> results(instances.size());
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < instances.size(); i = next++) {
      results[i] = run_check(instances[i], opt);
    }
  };
  const unsigned n = std::min<std::size_t>(worker_count(), std::max<std::size_t>(1, instances.size()));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < n; ++k) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();
  return results;
}

std::vector<CheckResult> sweep(const std::vector<std::string>& theorem_ids, int trials,
                               std::uint64_t seed, const SamplerConfig& cfg,
                               const CheckOptions& opt) {
  if (trials < 1) throw Error(ErrorKind::InvalidArgument, "trials must be at least 1");
  std::vector<Instance> instances;
  for (std::size_t t = 0; t < theorem_ids.size(); ++t) {
    for (int k = 0; k < trials; ++k) {
      instances.push_back(sample_instance(theorem_ids[t], trial_seed(seed, t, k), cfg));
    }
  }
  return run_batch(instances, opt);
}

HuntOutcome hunt(std::string_view theorem, int trials, std::uint64_t seed,
                 Perturbation perturbation, SamplerConfig cfg, CheckOptions opt) {
  if (trials < 1) throw Error(ErrorKind::InvalidArgument, "trials must be at least 1");
  cfg.perturbation = perturbation;
  for (std::string& h : waived_hypotheses(perturbation)) {
    if (!opt.waives(h)) opt.waived.push_back(std::move(h));
  }
  HuntOutcome out;
  out.results = sweep({std::string(theorem)}, trials, seed, cfg, opt);
  out.options = std::move(opt);
  for (std::size_t i = 0; i < out.results.size(); ++i) {
    if (out.results[i].verdict == Verdict::Violated) out.findings.push_back(i);
  }
  return out;
}

}  // namespace matineq
