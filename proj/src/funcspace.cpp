#include "matineq/funcspace.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "matineq/error.hpp"

namespace matineq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Smallest positive normal double; lower end of the (0, inf) domains.
constexpr double kTiny = std::numeric_limits<double>::min();

constexpr double kConvexSlack = 1e-10;
constexpr double kFlatSlack = 1e-12;

void require_grid(int grid_size) {
  if (grid_size < 3) {
    throw Error(ErrorKind::InvalidArgument,
                "grid size " + std::to_string(grid_size) + " is below the minimum of 3");
  }
}

void require_inside(const ScalarFunction& f, const Interval& j) {
  if (!j.finite()) throw Error(ErrorKind::InvalidArgument, "sampling interval must be finite");
  if (!f.domain().contains(j)) {
    throw Error(ErrorKind::DomainMismatch, j.to_string() + " is not inside the domain " +
                                               f.domain().to_string() + " of " + f.id());
  }
}

double grid_point(const Interval& j, int k, int last) {
  if (k == last) return j.hi();
  return j.lo() + (j.hi() - j.lo()) * (static_cast<double>(k) / last);
}

// Values on the half-step grid with 2*(grid_size-1)+1 points. Grid point i
// sits at index 2i and the midpoint of grid points i, j at index i+j.
std::vector<double> half_grid_values(const ScalarFunction& f, const Interval& j, int grid_size) {
  const int last = 2 * (grid_size - 1);
  std::vector<double> v(static_cast<std::size_t>(last) + 1);
  for (int k = 0; k <= last; ++k) v[k] = f(grid_point(j, k, last));
  return v;
}

SampledCheck midpoint_convexity(const std::vector<double>& h, const Interval& j, int grid_size) {
  const int last = 2 * (grid_size - 1);
  SampledCheck out;
  out.worst_slack = kInf;
  for (int a = 0; a < grid_size; ++a) {
    for (int b = a + 1; b < grid_size; ++b) {
      const double slack = 0.5 * (h[2 * a] + h[2 * b]) - h[a + b];
      if (slack < out.worst_slack) {
        out.worst_slack = slack;
        out.x = grid_point(j, 2 * a, last);
        out.y = grid_point(j, 2 * b, last);
      }
    }
  }
  out.pass = out.worst_slack >= -kConvexSlack;
  return out;
}

double parse_number(std::string_view text, std::string_view context) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw Error(ErrorKind::UnknownId,
                "cannot parse '" + std::string(text) + "' in '" + std::string(context) + "'");
  }
  return value;
}

ScalarFunction make(std::string id, ScalarFunction::Fn f, ScalarFunction::Fn df, Interval dom,
                    FunctionFlags flags, std::vector<double> kinks = {},
                    std::vector<double> singular = {}) {
  return ScalarFunction(std::move(id), std::move(f), std::move(df), dom, flags, std::move(kinks),
                        std::move(singular));
}

std::string format_coeff(double c) {
  std::ostringstream os;
  os.precision(17);
  os << c;
  return os.str();
}

}  // namespace

std::string_view to_string(Synchrony s) {
  switch (s) {
    case Synchrony::Synchronous: return "synchronous";
    case Synchrony::Asynchronous: return "asynchronous";
    case Synchrony::Neither: return "neither";
  }
  return "neither";
}

ScalarFunction::ScalarFunction(std::string id, Fn eval, Fn deriv, Interval domain,
                               FunctionFlags flags, std::vector<double> kinks,
                               std::vector<double> singular)
    : id_(std::move(id)),
      eval_(std::move(eval)),
      deriv_(std::move(deriv)),
      domain_(domain),
      flags_(flags),
      kinks_(std::move(kinks)),
      singular_(std::move(singular)) {}

std::vector<double> ScalarFunction::breakpoints(const Interval& iv) const {
  // Halving 40 times leaves an innermost panel of relative width 1e-12.
  constexpr int kLevels = 40;
  std::vector<double> r;
  for (double x : kinks_)
    if (iv.contains(x)) r.push_back(x);
  for (double s : singular_) {
    if (!iv.contains(s)) continue;
    r.push_back(s);
    for (double d : {iv.lo() - s, iv.hi() - s}) {
      for (int k = 1; k <= kLevels; ++k) {
        d *= 0.5;
        if (d != 0.0) r.push_back(s + d);
      }
    }
  }
  std::sort(r.begin(), r.end());
  return r;
}

double ScalarFunction::derivative(double x) const {
  if (!deriv_) throw Error(ErrorKind::InvalidArgument, id_ + " has no analytic derivative");
  return deriv_(x);
}

WeightFunction::WeightFunction(std::string id, Fn eval, WeightFlags flags,
                               std::vector<double> kinks)
    : id_(std::move(id)), eval_(std::move(eval)), flags_(flags), kinks_(std::move(kinks)) {}

WeightFunction WeightFunction::scaled(double factor) const {
  Fn base = eval_;
  WeightFlags flags = flags_;
  flags.normalized = false;
  return WeightFunction(id_, [base, factor](double t) { return factor * base(t); }, flags, kinks_);
}

ScalarFunction affine(double c0, double c1) {
  FunctionFlags flags;
  flags.convex = true;
  flags.operator_convex = true;
  flags.monotone_increasing = c1 >= 0.0;
  flags.monotone_decreasing = c1 <= 0.0;
  flags.positive = c1 == 0.0 && c0 > 0.0;
  flags.log_convex = flags.positive;
  return make("affine:" + format_coeff(c0) + "," + format_coeff(c1),
              [c0, c1](double x) { return c0 + c1 * x; }, [c1](double) { return c1; },
              Interval(-kInf, kInf), flags);
}

const std::vector<ScalarFunction>& builtin_functions() {
  static const std::vector<ScalarFunction> registry = [] {
    const Interval reals(-kInf, kInf);
    const Interval nonneg(0.0, kInf);
    const Interval positive(kTiny, kInf);
    std::vector<ScalarFunction> r;

    r.push_back(make(
        "abs_shift", [](double x) { return std::abs(x - 0.5); }, nullptr, reals,
        {.convex = true}, {0.5}));
    {
      ScalarFunction a = affine(1.0, 2.0);
      r.push_back(make(
          "affine", [](double x) { return 1.0 + 2.0 * x; }, [](double) { return 2.0; }, reals,
          a.flags()));
    }
    r.push_back(make(
        "exp", [](double x) { return std::exp(x); }, [](double x) { return std::exp(x); }, reals,
        {.convex = true, .log_convex = true, .monotone_increasing = true, .positive = true}));
    r.push_back(make(
        "identity", [](double x) { return x; }, [](double) { return 1.0; }, reals,
        {.convex = true, .operator_convex = true, .monotone_increasing = true}));
    r.push_back(make(
        "neg_log", [](double x) { return -std::log(x); }, [](double x) { return -1.0 / x; },
        positive, {.convex = true, .operator_convex = true, .monotone_decreasing = true}));
    r.push_back(make(
        "neg_square", [](double x) { return -x * x; }, [](double x) { return -2.0 * x; }, reals,
        {}));
    r.push_back(make(
        "reciprocal", [](double x) { return 1.0 / x; }, [](double x) { return -1.0 / (x * x); },
        positive,
        {.convex = true,
         .log_convex = true,
         .operator_convex = true,
         .monotone_decreasing = true,
         .positive = true}));
    r.push_back(make(
        "shiftsq", [](double x) { return (x - 0.5) * (x - 0.5); },
        [](double x) { return 2.0 * (x - 0.5); }, reals,
        {.convex = true, .operator_convex = true}));
    r.push_back(make(
        "sqrt", [](double x) { return std::sqrt(x); },
        [](double x) { return 0.5 / std::sqrt(x); }, nonneg, {.monotone_increasing = true}, {},
        {0.0}));
    r.push_back(make(
        "square", [](double x) { return x * x; }, [](double x) { return 2.0 * x; }, nonneg,
        {.convex = true, .operator_convex = true, .monotone_increasing = true}));
    r.push_back(make(
        "xlogx", [](double x) { return x * std::log(x); },
        [](double x) { return std::log(x) + 1.0; }, positive,
        {.convex = true, .operator_convex = true}));
    return r;
  }();
  return registry;
}

const std::vector<WeightFunction>& builtin_weights() {
  static const std::vector<WeightFunction> registry = [] {
    std::vector<WeightFunction> r;
    r.reserve(6);
    r.emplace_back("asym", [](double t) { return t; },
                   WeightFlags{.nonnegative = true,
                               .nondecreasing_first_half = true,
                               .strictly_positive = true});
    r.emplace_back("one", [](double) { return 1.0; },
                   WeightFlags{.nonnegative = true,
                               .symmetric = true,
                               .nondecreasing_first_half = true,
                               .strictly_positive = true,
                               .normalized = true});
    r.emplace_back("parabola_bump", [](double t) { return t * (1.0 - t); },
                   WeightFlags{.nonnegative = true,
                               .symmetric = true,
                               .nondecreasing_first_half = true,
                               .strictly_positive = true});
    r.emplace_back(
        "plateau", [](double t) { return std::clamp(4.0 * std::min(t, 1.0 - t), 0.0, 1.0); },
        WeightFlags{.nonnegative = true,
                    .symmetric = true,
                    .nondecreasing_first_half = true,
                    .strictly_positive = true},
        std::vector<double>{0.25, 0.75});
    r.emplace_back("tent", [](double t) { return std::min(t, 1.0 - t); },
                   WeightFlags{.nonnegative = true,
                               .symmetric = true,
                               .nondecreasing_first_half = true,
                               .strictly_positive = true},
                   std::vector<double>{0.5});
    r.emplace_back("vee", [](double t) { return std::abs(t - 0.5); },
                   WeightFlags{.nonnegative = true, .symmetric = true}, std::vector<double>{0.5});
    return r;
  }();
  return registry;
}

ScalarFunction find_function(std::string_view id) {
  constexpr std::string_view affine_prefix = "affine:";
  if (id.starts_with(affine_prefix)) {
    const std::string_view args = id.substr(affine_prefix.size());
    const auto comma = args.find(',');
    if (comma == std::string_view::npos) {
      throw Error(ErrorKind::UnknownId, "expected affine:c0,c1 but got '" + std::string(id) + "'");
    }
    return affine(parse_number(args.substr(0, comma), id), parse_number(args.substr(comma + 1), id));
  }
  for (const auto& f : builtin_functions())
    if (f.id() == id) return f;
  throw Error(ErrorKind::UnknownId, "no function named '" + std::string(id) + "'");
}

WeightFunction find_builtin_weight(std::string_view id) {
  for (const auto& p : builtin_weights())
    if (p.id() == id) return p;
  throw Error(ErrorKind::UnknownId, "no weight named '" + std::string(id) + "'");
}

SampledCheck check_convex_sampled(const ScalarFunction& f, const Interval& j, int grid_size) {
  require_grid(grid_size);
  require_inside(f, j);
  return midpoint_convexity(half_grid_values(f, j, grid_size), j, grid_size);
}

SampledCheck check_log_convex_sampled(const ScalarFunction& f, const Interval& j,
                                      int grid_size) {
  require_grid(grid_size);
  require_inside(f, j);
  std::vector<double> h = half_grid_values(f, j, grid_size);
  const int last = static_cast<int>(h.size()) - 1;
  for (int k = 0; k <= last; ++k) {
    if (!(h[k] > 0.0)) {
      std::ostringstream os;
      os.precision(17);
      os << f.id() << " is not positive at " << grid_point(j, k, last);
      throw Error(ErrorKind::NonPositiveFunction, os.str());
    }
    h[k] = std::log(h[k]);
  }
  return midpoint_convexity(h, j, grid_size);
}

SampledCheck check_monotone_sampled(const ScalarFunction& f, const Interval& j, bool increasing,
                                    int grid_size) {
  require_grid(grid_size);
  require_inside(f, j);
  const int last = grid_size - 1;
  SampledCheck out;
  out.worst_slack = kInf;
  double prev = f(grid_point(j, 0, last));
  for (int k = 1; k <= last; ++k) {
    const double cur = f(grid_point(j, k, last));
    const double step = increasing ? cur - prev : prev - cur;
    const double slack = step + kFlatSlack * std::max(1.0, std::abs(cur));
    if (step < out.worst_slack) {
      out.worst_slack = step;
      out.x = grid_point(j, k - 1, last);
      out.y = grid_point(j, k, last);
    }
    if (slack < 0.0) out.pass = false;
    prev = cur;
  }
  return out;
}

SampledCheck check_positive_sampled(const ScalarFunction& f, const Interval& j, int grid_size) {
  require_grid(grid_size);
  require_inside(f, j);
  const int last = grid_size - 1;
  SampledCheck out;
  out.worst_slack = kInf;
  for (int k = 0; k <= last; ++k) {
    const double x = grid_point(j, k, last);
    const double v = f(x);
    if (v < out.worst_slack) {
      out.worst_slack = v;
      out.x = out.y = x;
    }
  }
  out.pass = out.worst_slack > 0.0;
  return out;
}

SynchronyReport check_synchronous(const ScalarFunction& f, const ScalarFunction& g,
                                  const Interval& j, int grid_size) {
  require_grid(grid_size);
  require_inside(f, j);
  require_inside(g, j);
  const int last = grid_size - 1;
  std::vector<double> x(grid_size), fv(grid_size), gv(grid_size);
  for (int k = 0; k <= last; ++k) {
    x[k] = grid_point(j, k, last);
    fv[k] = f(x[k]);
    gv[k] = g(x[k]);
  }
  SynchronyReport out;
  out.min_product = kInf;
  out.max_product = -kInf;
  for (int a = 0; a < grid_size; ++a) {
    for (int b = a + 1; b < grid_size; ++b) {
      const double prod = (fv[b] - fv[a]) * (gv[b] - gv[a]);
      if (prod < out.min_product) {
        out.min_product = prod;
        out.neg_s = x[a];
        out.neg_t = x[b];
      }
      if (prod > out.max_product) {
        out.max_product = prod;
        out.pos_s = x[a];
        out.pos_t = x[b];
      }
    }
  }
  if (out.min_product >= -kFlatSlack) {
    out.kind = Synchrony::Synchronous;
  } else if (out.max_product <= kFlatSlack) {
    out.kind = Synchrony::Asynchronous;
  } else {
    out.kind = Synchrony::Neither;
  }
  return out;
}

SampledCheck check_weight_symmetric(const WeightFunction& p, int grid_size) {
  require_grid(grid_size);
  const int last = grid_size - 1;
  const Interval unit(0.0, 1.0);
  SampledCheck out;
  for (int k = 0; k <= last / 2; ++k) {
    const double diff = std::abs(p(grid_point(unit, k, last)) - p(grid_point(unit, last - k, last)));
    if (-diff < out.worst_slack) {
      out.worst_slack = -diff;
      out.x = grid_point(unit, k, last);
      out.y = grid_point(unit, last - k, last);
    }
  }
  out.pass = out.worst_slack >= -kFlatSlack;
  return out;
}

SampledCheck check_weight_nonnegative(const WeightFunction& p, int grid_size) {
  require_grid(grid_size);
  const int last = grid_size - 1;
  const Interval unit(0.0, 1.0);
  SampledCheck out;
  out.worst_slack = kInf;
  for (int k = 0; k <= last; ++k) {
    const double t = grid_point(unit, k, last);
    const double v = p(t);
    if (v < out.worst_slack) {
      out.worst_slack = v;
      out.x = out.y = t;
    }
  }
  out.pass = out.worst_slack >= -kFlatSlack;
  return out;
}

SampledCheck check_weight_nondecreasing_first_half(const WeightFunction& p, int grid_size) {
  require_grid(grid_size);
  const int last = grid_size - 1;
  const Interval unit(0.0, 1.0);
  SampledCheck out;
  out.worst_slack = kInf;
  double prev = p(0.0);
  for (int k = 1; 2 * k <= last; ++k) {
    const double t = grid_point(unit, k, last);
    const double cur = p(t);
    if (cur - prev < out.worst_slack) {
      out.worst_slack = cur - prev;
      out.x = grid_point(unit, k - 1, last);
      out.y = t;
    }
    prev = cur;
  }
  out.pass = out.worst_slack >= -kFlatSlack;
  return out;
}

SampledCheck check_weight_strictly_positive(const WeightFunction& p, int grid_size) {
  require_grid(grid_size);
  const int last = grid_size - 1;
  const Interval unit(0.0, 1.0);
  SampledCheck out;
  out.worst_slack = kInf;
  for (int k = 1; k < last; ++k) {
    const double t = grid_point(unit, k, last);
    const double v = p(t);
    if (v < out.worst_slack) {
      out.worst_slack = v;
      out.x = out.y = t;
    }
  }
  out.pass = out.worst_slack > 0.0;
  return out;
}

SecantCoeffs secant_coeffs(const ScalarFunction& f, double m, double big_m) {
  if (!(big_m - m > 1e-12)) {
    std::ostringstream os;
    os.precision(17);
    os << "secant needs M - m > 1e-12, got [" << m << ", " << big_m << "]";
    throw Error(ErrorKind::DegenerateInterval, os.str());
  }
  require_inside(f, Interval(m, big_m));
  const double fm = f(m);
  const double fM = f(big_m);
  return {(fM - fm) / (big_m - m), (big_m * fm - m * fM) / (big_m - m)};
}

double beta_max(const ScalarFunction& f, double m, double big_m, double alpha) {
  if (!(alpha >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "alpha must be nonnegative");
  }
  const SecantCoeffs sc = secant_coeffs(f, m, big_m);
  const auto h = [&](double x) { return sc.slope * x + sc.intercept - alpha * f(x); };

  constexpr int kScan = 2001;
  const Interval range(m, big_m);
  const int last = kScan - 1;
  int best_k = 0;
  double best = h(m);
  for (int k = 1; k <= last; ++k) {
    const double v = h(grid_point(range, k, last));
    if (v > best) {
      best = v;
      best_k = k;
    }
  }

  // Golden-section refinement on the cell pair around the best grid point.
  double lo = grid_point(range, std::max(best_k - 1, 0), last);
  double hi = grid_point(range, std::min(best_k + 1, last), last);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double h1 = h(x1);
  double h2 = h(x2);
  while (hi - lo > 1e-10) {
    if (h1 < h2) {
      lo = x1;
      x1 = x2;
      h1 = h2;
      x2 = lo + inv_phi * (hi - lo);
      h2 = h(x2);
    } else {
      hi = x2;
      x2 = x1;
      h2 = h1;
      x1 = hi - inv_phi * (hi - lo);
      h1 = h(x1);
    }
  }
  return std::max({best, h1, h2, h(0.5 * (lo + hi)), h(m), h(big_m)});
}

}  // namespace matineq
