#include <doctest.h>

#include <cmath>

#include "matineq/error.hpp"
#include "matineq/hunt.hpp"
#include "matineq/random.hpp"

using namespace matineq;

TEST_CASE("SplitMix64 reference stream") {
  // First outputs for seed 0 from the reference implementation.
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
  CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
  CHECK(rng.next() == 0x06C45D188009454FULL);

  SplitMix64 u(42);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    CHECK((x >= 0.0 && x < 1.0));
  }
  SplitMix64 b(5);
  for (int i = 0; i < 1000; ++i) CHECK(b.below(7) < 7u);
  CHECK(derive_seed(1, 2) == derive_seed(1, 2));
  CHECK(derive_seed(1, 2) != derive_seed(1, 3));
  CHECK(derive_seed(1, 2) != derive_seed(2, 2));
}

TEST_CASE("random_hermitian") {
  const HermitianMatrix one = random_hermitian(3, 1, Interval(2, 5));
  CHECK(one.n() == 1);
  CHECK(one(0, 0).real() >= 2.0);
  CHECK(one(0, 0).real() <= 5.0);

  const HermitianMatrix a = random_hermitian(7, 5, Interval(-1, 1));
  const HermitianMatrix b = random_hermitian(7, 5, Interval(-1, 1));
  CHECK(max_abs_diff(a, b) == 0.0);

  const GeneratedHermitian g = random_hermitian_with_spectrum(42, 4, Interval(0, 1));
  std::vector<double> drawn = g.drawn_eigenvalues;
  std::sort(drawn.begin(), drawn.end(), std::greater<>());
  const std::vector<double> ev = eigenvalues(g.matrix);
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(ev[i] - drawn[i]) <= 1e-10);

  CHECK_THROWS_AS(random_hermitian(1, 0, Interval(0, 1)), Error);
}

TEST_CASE("spectrum containment over many draws") {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const int n = 1 + static_cast<int>(seed % 8);
    const Interval j(-0.5 + 0.001 * static_cast<double>(seed), 1.5);
    const std::vector<double> ev = eigenvalues(random_hermitian(seed, n, j));
    CHECK(ev.front() <= j.hi() + 1e-10);
    CHECK(ev.back() >= j.lo() - 1e-10);
  }
}

TEST_CASE("random_pair") {
  const auto [a, b] = random_pair(11, 3, Interval(0, 1));
  const auto [c, d] = random_pair(11, 3, Interval(0, 1));
  CHECK(max_abs_diff(a, c) == 0.0);
  CHECK(max_abs_diff(b, d) == 0.0);
  CHECK(max_abs_diff(a, b) > 1e-3);
  CHECK(max_abs_diff(b, random_hermitian(11 ^ kPairSeedXor, 3, Interval(0, 1))) == 0.0);
}

TEST_CASE("admissible_weight") {
  const std::vector<double> zero{0.0};
  const WeightFunction flat = admissible_weight("flat", 0.7, zero);
  for (int k = 0; k <= 10; ++k) CHECK(flat(k / 10.0) == doctest::Approx(0.7));

  const std::vector<double> inc{0.5, 0.0, 1.5};
  const WeightFunction w = admissible_weight("w", 0.2, inc);
  CHECK(w(0.0) == doctest::Approx(0.2));
  CHECK(w(0.5) == doctest::Approx(2.2));
  CHECK(w(1.0 / 6) == doctest::Approx(0.7));
  CHECK(w(0.9) == doctest::Approx(w(0.1)));
}

TEST_CASE("random weights pass their own validators") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const int knots = 1 + static_cast<int>(seed % 5);
    for (const WeightFunction& p :
         {random_admissible_weight(seed, knots), random_reversed_weight(seed, knots),
          random_skewed_weight(seed, knots)}) {
      CAPTURE(p.id());
      CHECK(check_weight_nonnegative(p).pass);
      if (p.flags().symmetric) {
        CHECK(check_weight_symmetric(p).pass);
        CHECK(std::abs(p(0.3) - p(0.7)) <= 1e-12);
      }
      if (p.flags().nondecreasing_first_half) CHECK(check_weight_nondecreasing_first_half(p).pass);
      if (p.flags().strictly_positive) CHECK(check_weight_strictly_positive(p).pass);
    }
    const WeightFunction adm = random_admissible_weight(seed, knots);
    CHECK(adm.flags().symmetric);
    CHECK(adm.flags().nondecreasing_first_half);
  }
}

TEST_CASE("resolve_weight") {
  const WeightFunction a = resolve_weight("admissible:12:3");
  const WeightFunction b = random_admissible_weight(12, 3);
  for (double t : {0.0, 0.1, 0.33, 0.5, 0.8}) CHECK(a(t) == b(t));
  CHECK(a.id() == "admissible:12:3");
  CHECK(resolve_weight("tent")(0.25) == 0.25);
  CHECK_THROWS_AS(resolve_weight("admissible:x:3"), Error);
  CHECK_THROWS_AS(resolve_weight("bogus:1:2"), Error);
  CHECK_THROWS_AS(resolve_weight("nope"), Error);
}

TEST_CASE("perturbations") {
  for (Perturbation p : {Perturbation::None, Perturbation::DropSymmetry,
                         Perturbation::DropMonotoneWeight, Perturbation::DropConvexity})
    CHECK(parse_perturbation(to_string(p)) == p);
  CHECK_THROWS_AS(parse_perturbation("drop-everything"), Error);
  CHECK(waived_hypotheses(Perturbation::None).empty());
  CHECK(perturbation_applies("scalar-levin-steckin", Perturbation::DropMonotoneWeight));
  CHECK_FALSE(perturbation_applies("scalar-fejer", Perturbation::DropMonotoneWeight));
  CHECK_FALSE(perturbation_applies("general-levin-steckin", Perturbation::DropSymmetry));
  CHECK_FALSE(perturbation_applies("chebyshev-variance", Perturbation::DropConvexity));
}

TEST_CASE("sample_instance is deterministic and admissible") {
  const SamplerConfig cfg;
  for (const TheoremInfo& t : theorems()) {
    CAPTURE(t.id);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const Instance a = sample_instance(t.id, seed, cfg);
      const Instance b = sample_instance(t.id, seed, cfg);
      CHECK(a.f == b.f);
      CHECK(a.g == b.g);
      CHECK(a.p == b.p);
      CHECK(a.seed == b.seed);
      CHECK(a.a == b.a);
      if (t.shape == InstanceShape::MatrixWeighted) {
        REQUIRE(a.n.has_value());
        CHECK(*a.n >= cfg.nmin);
        CHECK(*a.n <= cfg.nmax);
      }
      const CheckResult r = run_check(a, CheckOptions{});
      CHECK(r.verdict != Verdict::Error);
      CHECK(r.verdict != Verdict::HypothesisUnmet);
    }
  }
}

TEST_CASE("trial seeds") {
  CHECK(trial_seed(7, 0, 0) == trial_seed(7, 0, 0));
  CHECK(trial_seed(7, 0, 1) != trial_seed(7, 0, 0));
  CHECK(trial_seed(7, 1, 0) != trial_seed(7, 0, 0));
}

TEST_CASE("sweep results do not depend on the worker count") {
  const std::vector<std::string> ids{"matrix-fejer-lower", "scalar-fejer"};
  setenv("MATINEQ_THREADS", "1", 1);
  const auto serial = sweep(ids, 12, 3, SamplerConfig{}, CheckOptions{});
  setenv("MATINEQ_THREADS", "4", 1);
  const auto parallel = sweep(ids, 12, 3, SamplerConfig{}, CheckOptions{});
  unsetenv("MATINEQ_THREADS");
  REQUIRE(serial.size() == 24);
  REQUIRE(parallel.size() == 24);
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].theorem == parallel[i].theorem);
    CHECK(serial[i].margin == parallel[i].margin);
  }
  CHECK_THROWS_AS(sweep(ids, 0, 3, SamplerConfig{}, CheckOptions{}), Error);
}

TEST_CASE("hunt finds the negative control under a dropped monotonicity hypothesis") {
  SamplerConfig cfg;
  cfg.functions = {"shiftsq"};
  cfg.weights = {"vee"};
  const HuntOutcome h =
      hunt("scalar-levin-steckin", 5, 1, Perturbation::DropMonotoneWeight, cfg, CheckOptions{});
  REQUIRE(h.findings.size() == 5);
  const CheckResult& r = h.results[h.findings[0]];
  CHECK(r.verdict == Verdict::Violated);
  CHECK(std::abs(r.margin + 1.0 / 96) <= 1e-12);

  const HuntOutcome open =
      hunt("scalar-levin-steckin", 300, 2, Perturbation::DropMonotoneWeight, {}, CheckOptions{});
  CHECK_FALSE(open.findings.empty());
  for (std::size_t i : open.findings) CHECK(open.results[i].verdict == Verdict::Violated);
}

TEST_CASE("hunt without perturbation finds nothing on matrix-fejer-lower") {
  const HuntOutcome h = hunt("matrix-fejer-lower", 200, 5, Perturbation::None, {}, CheckOptions{});
  CHECK(h.results.size() == 200);
  CHECK(h.findings.empty());
}

TEST_CASE("hunt preconditions") {
  CHECK_THROWS_AS(hunt("scalar-fejer", 0, 1, Perturbation::None, {}, CheckOptions{}), Error);
  CHECK_THROWS_AS(hunt("scalar-fejer", 10, 1, Perturbation::DropMonotoneWeight, {}, CheckOptions{}),
                  Error);
  CHECK_THROWS_AS(hunt("nope", 10, 1, Perturbation::None, {}, CheckOptions{}), Error);
}
