#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "matineq/funcspace.hpp"
#include "matineq/linalg.hpp"
#include "matineq/orders.hpp"
#include "matineq/quadrature.hpp"

namespace matineq {

enum class Verdict { Pass, Violated, HypothesisUnmet, Error };
std::string_view to_string(Verdict v);
Verdict parse_verdict(std::string_view s);

namespace theorem {
inline constexpr std::string_view kScalarLevinSteckin = "scalar-levin-steckin";
inline constexpr std::string_view kScalarFejer = "scalar-fejer";
inline constexpr std::string_view kMatrixFejerLower = "matrix-fejer-lower";
inline constexpr std::string_view kMatrixFejerUpper = "matrix-fejer-upper";
inline constexpr std::string_view kLogFejer = "log-fejer";
inline constexpr std::string_view kEigProductFejer = "eig-product-fejer";
inline constexpr std::string_view kGeneralLevinSteckin = "general-levin-steckin";
inline constexpr std::string_view kMomentCorollary = "moment-corollary";
inline constexpr std::string_view kOperatorLevinSteckin = "operator-levin-steckin";
inline constexpr std::string_view kMondPecaricReverse = "mond-pecaric-reverse";
inline constexpr std::string_view kChebyshevVariance = "chebyshev-variance";
inline constexpr std::string_view kLevinSteckinRefined = "levin-steckin-refined";
inline constexpr std::string_view kChebyshevAmBound = "chebyshev-am-bound";
}  // namespace theorem

// What a theorem consumes besides the quadrature rule.
enum class InstanceShape {
  UnitWeighted,     // f, p on [0, 1]
  IntervalWeighted, // f, p, [a, b]
  MatrixWeighted,   // f, p, A, B
  FunctionPair,     // f, g, [a, b]
};

struct TheoremInfo {
  std::string_view id;
  InstanceShape shape;
  bool requires_monotone_weight;  // p non-decreasing on [0, 1/2]
  bool requires_symmetric_weight;
  bool requires_convexity;
};

// Registry order is the canonical sweep order.
const std::vector<TheoremInfo>& theorems();
const TheoremInfo& theorem_info(std::string_view id);

// Hypothesis names. Hunts waive them by name.
namespace hyp {
inline constexpr std::string_view kDomain = "f.domain";
inline constexpr std::string_view kConvex = "f.convex";
inline constexpr std::string_view kLogConvex = "f.log_convex";
inline constexpr std::string_view kOperatorConvex = "f.operator_convex";
inline constexpr std::string_view kMonotone = "f.monotone";
inline constexpr std::string_view kPositive = "f.positive";
inline constexpr std::string_view kDifferentiable = "f.differentiable";
inline constexpr std::string_view kGDomain = "g.domain";
inline constexpr std::string_view kSynchrony = "fg.synchrony";
inline constexpr std::string_view kSymmetric = "p.symmetric";
inline constexpr std::string_view kNonnegative = "p.nonnegative";
inline constexpr std::string_view kNondecreasing = "p.nondecreasing_first_half";
inline constexpr std::string_view kStrictlyPositive = "p.strictly_positive";
inline constexpr std::string_view kAlpha = "alpha.nonnegative";
inline constexpr std::string_view kEnclosure = "spectra.enclosed";
}  // namespace hyp

struct Hypothesis {
  std::string name;
  bool declared = false;   // registry flag (or structural precondition)
  bool validated = false;  // sampled check on the instance's interval
  bool waived = false;
  std::string detail;

  bool met() const noexcept { return declared && validated; }
};

// A scalar inequality lhs <= rhs; slack = rhs - lhs.
struct ScalarSlack {
  std::string label;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double scale = 1.0;
  bool holds = false;
};

struct LabeledOrder {
  std::string label;
  OrderVerdict verdict;
};

// Everything needed to reproduce a check. Matrices are always stored; seed,
// n and interval record their provenance when they were generated.
struct Instance {
  std::string theorem;
  std::string f;
  std::string g;
  std::string p;
  std::optional<double> a;
  std::optional<double> b;
  std::optional<HermitianMatrix> A;
  std::optional<HermitianMatrix> B;
  std::optional<std::uint64_t> seed;
  std::optional<int> n;
  std::optional<Interval> interval;
  std::optional<double> alpha;
  std::optional<double> m;
  std::optional<double> M;
  std::optional<Synchrony> mode;
};

struct CheckOptions {
  QuadratureRule rule;
  Tolerances tol;
  bool force = false;               // evaluate regardless of hypotheses
  std::vector<std::string> waived;  // evaluate regardless of these hypotheses

  bool waives(std::string_view name) const;
};

struct CheckResult {
  std::string theorem;
  Instance instance;
  QuadratureRule rule;
  Tolerances tol;
  std::vector<Hypothesis> hypotheses;
  std::vector<LabeledOrder> orders;
  std::vector<ScalarSlack> slacks;
  std::vector<std::pair<std::string, double>> quantities;
  std::vector<std::pair<std::string, std::vector<double>>> spectra;
  double margin = 0.0;  // NaN when nothing was evaluated
  Verdict verdict = Verdict::Error;
  std::string error;

  double quantity(std::string_view name) const;
  const std::vector<double>& spectrum(std::string_view name) const;
  const ScalarSlack& slack(std::string_view label) const;
};

CheckResult check_scalar_levin_steckin(const ScalarFunction& f, const WeightFunction& p,
                                       const CheckOptions& opt);
CheckResult check_scalar_fejer(const ScalarFunction& f, const WeightFunction& p, double a,
                               double b, const CheckOptions& opt);
CheckResult check_matrix_fejer_lower(const ScalarFunction& f, const WeightFunction& p,
                                     const HermitianMatrix& A, const HermitianMatrix& B,
                                     const CheckOptions& opt);
CheckResult check_matrix_fejer_upper(const ScalarFunction& f, const WeightFunction& p,
                                     const HermitianMatrix& A, const HermitianMatrix& B,
                                     const CheckOptions& opt);
CheckResult check_log_fejer(const ScalarFunction& f, const WeightFunction& p,
                            const HermitianMatrix& A, const HermitianMatrix& B,
                            const CheckOptions& opt);
CheckResult check_eig_product_fejer(const ScalarFunction& f, const WeightFunction& p,
                                    const HermitianMatrix& A, const HermitianMatrix& B,
                                    const CheckOptions& opt);
CheckResult check_general_levin_steckin(const ScalarFunction& f, const WeightFunction& p,
                                        const CheckOptions& opt);
CheckResult check_moment_corollary(const ScalarFunction& f, const WeightFunction& p,
                                   const CheckOptions& opt);
CheckResult check_operator_levin_steckin(const ScalarFunction& f, const WeightFunction& p,
                                         const HermitianMatrix& A, const HermitianMatrix& B,
                                         const CheckOptions& opt);
// m and M default to the hull of both spectra.
CheckResult check_mond_pecaric_reverse(const ScalarFunction& f, const WeightFunction& p,
                                       const HermitianMatrix& A, const HermitianMatrix& B,
                                       double alpha, const CheckOptions& opt,
                                       std::optional<double> m = std::nullopt,
                                       std::optional<double> M = std::nullopt);
CheckResult check_chebyshev_variance(const ScalarFunction& f, const ScalarFunction& g, double a,
                                     double b, Synchrony mode, const CheckOptions& opt);
CheckResult check_levin_steckin_refined(const ScalarFunction& f, const WeightFunction& p,
                                        const CheckOptions& opt);
CheckResult check_chebyshev_am_bound(const ScalarFunction& f, const ScalarFunction& g,
                                     const CheckOptions& opt);

// Resolves ids, generates matrices from seed/n/interval when they are not
// given, and dispatches on instance.theorem. Failures become verdict Error.
CheckResult run_check(const Instance& instance, const CheckOptions& opt);

}  // namespace matineq
