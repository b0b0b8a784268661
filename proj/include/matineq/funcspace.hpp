#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "matineq/interval.hpp"

namespace matineq {

inline constexpr int kDefaultGrid = 1001;

struct FunctionFlags {
  bool convex = false;
  bool log_convex = false;
  bool operator_convex = false;
  bool monotone_increasing = false;
  bool monotone_decreasing = false;
  bool positive = false;
};

// Real function of one variable with an analytic derivative (absent for
// functions with kinks) and declared shape flags. Flags describe the
// function on its whole domain.
class ScalarFunction {
 public:
  using Fn = std::function<double(double)>;

  ScalarFunction(std::string id, Fn eval, Fn deriv, Interval domain, FunctionFlags flags,
                 std::vector<double> kinks = {}, std::vector<double> singular = {});

  const std::string& id() const noexcept { return id_; }
  double operator()(double x) const { return eval_(x); }
  bool has_derivative() const noexcept { return static_cast<bool>(deriv_); }
  double derivative(double x) const;
  const Interval& domain() const noexcept { return domain_; }
  const FunctionFlags& flags() const noexcept { return flags_; }
  // Points where f is not differentiable; used to snap quadrature panels.
  const std::vector<double>& kinks() const noexcept { return kinks_; }
  // Points where f is continuous but its derivative is unbounded.
  const std::vector<double>& singular_points() const noexcept { return singular_; }
  // Quadrature breakpoints on iv: the kinks plus a geometric grading towards
  // each singular point, so composite rules keep their order of accuracy.
  std::vector<double> breakpoints(const Interval& iv) const;

 private:
  std::string id_;
  Fn eval_;
  Fn deriv_;
  Interval domain_;
  FunctionFlags flags_;
  std::vector<double> kinks_;
  std::vector<double> singular_;
};

struct WeightFlags {
  bool nonnegative = false;
  bool symmetric = false;
  bool nondecreasing_first_half = false;
  // p > 0 on the open interval (0, 1); endpoint zeros do not affect integrals.
  bool strictly_positive = false;
  bool normalized = false;
};

// Weight p on [0, 1].
class WeightFunction {
 public:
  using Fn = std::function<double(double)>;

  WeightFunction(std::string id, Fn eval, WeightFlags flags, std::vector<double> kinks = {});

  const std::string& id() const noexcept { return id_; }
  double operator()(double t) const { return eval_(t); }
  const WeightFlags& flags() const noexcept { return flags_; }
  const std::vector<double>& kinks() const noexcept { return kinks_; }

  WeightFunction scaled(double factor) const;

 private:
  std::string id_;
  Fn eval_;
  WeightFlags flags_;
  std::vector<double> kinks_;
};

// Chord of f over [m, M]: slope * x + intercept.
struct SecantCoeffs {
  double slope = 0.0;
  double intercept = 0.0;
};

// Outcome of a grid validator. worst_slack is the most negative (or least
// positive) margin seen; x and y locate it.
struct SampledCheck {
  bool pass = true;
  double worst_slack = 0.0;
  double x = 0.0;
  double y = 0.0;
};

enum class Synchrony { Synchronous, Asynchronous, Neither };
std::string_view to_string(Synchrony s);

struct SynchronyReport {
  Synchrony kind = Synchrony::Neither;
  double min_product = 0.0;
  double max_product = 0.0;
  // Pairs (s, t) realising the most negative and most positive products.
  double neg_s = 0.0, neg_t = 0.0;
  double pos_s = 0.0, pos_t = 0.0;
};

ScalarFunction affine(double c0, double c1);

// Alphabetical by id.
const std::vector<ScalarFunction>& builtin_functions();
const std::vector<WeightFunction>& builtin_weights();

// Accepts registry ids plus the parametric form "affine:c0,c1".
ScalarFunction find_function(std::string_view id);
WeightFunction find_builtin_weight(std::string_view id);

SampledCheck check_convex_sampled(const ScalarFunction& f, const Interval& j,
                                  int grid_size = kDefaultGrid);
SampledCheck check_log_convex_sampled(const ScalarFunction& f, const Interval& j,
                                      int grid_size = kDefaultGrid);
SampledCheck check_monotone_sampled(const ScalarFunction& f, const Interval& j, bool increasing,
                                    int grid_size = kDefaultGrid);
SampledCheck check_positive_sampled(const ScalarFunction& f, const Interval& j,
                                    int grid_size = kDefaultGrid);

SynchronyReport check_synchronous(const ScalarFunction& f, const ScalarFunction& g,
                                  const Interval& j, int grid_size = kDefaultGrid);

SampledCheck check_weight_symmetric(const WeightFunction& p, int grid_size = kDefaultGrid);
SampledCheck check_weight_nonnegative(const WeightFunction& p, int grid_size = kDefaultGrid);
SampledCheck check_weight_nondecreasing_first_half(const WeightFunction& p,
                                                   int grid_size = kDefaultGrid);
SampledCheck check_weight_strictly_positive(const WeightFunction& p,
                                            int grid_size = kDefaultGrid);

SecantCoeffs secant_coeffs(const ScalarFunction& f, double m, double big_m);

// max over [m, M] of slope*x + intercept - alpha*f(x).
double beta_max(const ScalarFunction& f, double m, double big_m, double alpha);

}  // namespace matineq
