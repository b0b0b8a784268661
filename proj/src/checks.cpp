#include "matineq/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "matineq/error.hpp"
#include "matineq/random.hpp"

namespace matineq {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kEnclosureSlack = 1e-10;
const Interval kUnit(0.0, 1.0);
const Interval kDefaultSpectrum(0.25, 2.0);

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::string sampled_detail(const SampledCheck& c) {
  return "worst slack " + fmt(c.worst_slack) + " at (" + fmt(c.x) + ", " + fmt(c.y) + ")";
}

Hypothesis hypothesis(std::string_view name, bool declared, bool validated, std::string detail) {
  Hypothesis h;
  h.name = std::string(name);
  h.declared = declared;
  h.validated = validated;
  h.detail = std::move(detail);
  return h;
}

bool inside_domain(const ScalarFunction& f, const Interval& j) {
  return j.finite() && f.domain().contains(j.lo(), kDomainSlack) &&
         f.domain().contains(j.hi(), kDomainSlack);
}

// j pulled onto the domain after inside_domain() has accepted it.
Interval clamp_to_domain(const ScalarFunction& f, const Interval& j) {
  const double lo = std::clamp(j.lo(), f.domain().lo(), f.domain().hi());
  const double hi = std::clamp(j.hi(), f.domain().lo(), f.domain().hi());
  return Interval(lo, std::max(lo, hi));
}

Hypothesis domain_hypothesis(std::string_view name, const ScalarFunction& f, const Interval& j) {
  const bool ok = inside_domain(f, j);
  return hypothesis(name, true, ok,
                    j.to_string() + (ok ? " inside " : " not inside ") + f.domain().to_string());
}

// Runs a sampled validator only when j is usable; a thrown precondition
// (for instance a non-positive f under the log-convexity test) counts as a
// failed validation.
Hypothesis sampled_hypothesis(std::string_view name, bool declared, const ScalarFunction& f,
                              const Interval& j,
                              const std::function<SampledCheck(const Interval&)>& check) {
  if (!inside_domain(f, j)) return hypothesis(name, declared, false, "interval outside domain");
  try {
    const SampledCheck c = check(clamp_to_domain(f, j));
    return hypothesis(name, declared, c.pass, sampled_detail(c));
  } catch (const Error& e) {
    return hypothesis(name, declared, false, e.what());
  }
}

Hypothesis convex_hypothesis(const ScalarFunction& f, const Interval& j) {
  return sampled_hypothesis(hyp::kConvex, f.flags().convex, f, j,
                            [&](const Interval& s) { return check_convex_sampled(f, s); });
}

// Operator convexity is registry metadata; the sampled check only confirms
// the necessary scalar convexity on j.
Hypothesis operator_convex_hypothesis(const ScalarFunction& f, const Interval& j) {
  return sampled_hypothesis(hyp::kOperatorConvex, f.flags().operator_convex, f, j,
                            [&](const Interval& s) { return check_convex_sampled(f, s); });
}

Hypothesis log_convex_hypothesis(const ScalarFunction& f, const Interval& j) {
  return sampled_hypothesis(hyp::kLogConvex, f.flags().log_convex, f, j,
                            [&](const Interval& s) { return check_log_convex_sampled(f, s); });
}

Hypothesis positive_hypothesis(const ScalarFunction& f, const Interval& j) {
  return sampled_hypothesis(hyp::kPositive, f.flags().positive, f, j,
                            [&](const Interval& s) { return check_positive_sampled(f, s); });
}

Hypothesis monotone_hypothesis(const ScalarFunction& f, const Interval& j) {
  const bool inc = f.flags().monotone_increasing;
  const bool dec = f.flags().monotone_decreasing;
  if (!inc && !dec) return hypothesis(hyp::kMonotone, false, false, "no monotonicity declared");
  return sampled_hypothesis(hyp::kMonotone, true, f, j, [&](const Interval& s) {
    return check_monotone_sampled(f, s, inc);
  });
}

Hypothesis differentiable_hypothesis(const ScalarFunction& f) {
  const bool d = f.has_derivative();
  return hypothesis(hyp::kDifferentiable, d, d, d ? "analytic derivative" : "no derivative");
}

Hypothesis weight_hypothesis(std::string_view name, bool declared, const SampledCheck& c) {
  return hypothesis(name, declared, c.pass, sampled_detail(c));
}

Hypothesis symmetric_hypothesis(const WeightFunction& p) {
  return weight_hypothesis(hyp::kSymmetric, p.flags().symmetric, check_weight_symmetric(p));
}
Hypothesis nonnegative_hypothesis(const WeightFunction& p) {
  return weight_hypothesis(hyp::kNonnegative, p.flags().nonnegative, check_weight_nonnegative(p));
}
Hypothesis nondecreasing_hypothesis(const WeightFunction& p) {
  return weight_hypothesis(hyp::kNondecreasing, p.flags().nondecreasing_first_half,
                           check_weight_nondecreasing_first_half(p));
}
Hypothesis strictly_positive_hypothesis(const WeightFunction& p) {
  return weight_hypothesis(hyp::kStrictlyPositive, p.flags().strictly_positive,
                           check_weight_strictly_positive(p));
}

CheckResult start(std::string_view theorem, const CheckOptions& opt) {
  CheckResult r;
  r.theorem = std::string(theorem);
  r.instance.theorem = r.theorem;
  r.rule = opt.rule;
  r.tol = opt.tol;
  r.margin = kNaN;
  return r;
}

// Marks waivers and decides whether evaluation goes ahead.
bool gate(CheckResult& r, const CheckOptions& opt) {
  bool go = true;
  for (Hypothesis& h : r.hypotheses) {
    h.waived = opt.force || opt.waives(h.name);
    if (!h.met() && !h.waived) go = false;
  }
  if (!go) r.verdict = Verdict::HypothesisUnmet;
  return go;
}

void add_slack(CheckResult& r, std::string label, double lhs, double rhs) {
  ScalarSlack s;
  s.label = std::move(label);
  s.lhs = lhs;
  s.rhs = rhs;
  s.slack = rhs - lhs;
  s.scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  s.holds = s.slack >= -r.tol.allowance(s.scale);
  r.slacks.push_back(std::move(s));
}

void add_order(CheckResult& r, std::string label, OrderVerdict v) {
  r.orders.push_back({std::move(label), std::move(v)});
}

void add_quantity(CheckResult& r, std::string name, double v) {
  r.quantities.emplace_back(std::move(name), v);
}

void add_spectrum(CheckResult& r, std::string name, std::vector<double> v) {
  r.spectra.emplace_back(std::move(name), std::move(v));
}

CheckResult finish(CheckResult r) {
  bool fails = false;
  double margin = std::numeric_limits<double>::infinity();
  for (const LabeledOrder& o : r.orders) {
    margin = std::min(margin, o.verdict.margin);
    fails = fails || !o.verdict.holds;
  }
  for (const ScalarSlack& s : r.slacks) {
    margin = std::min(margin, s.slack);
    fails = fails || !s.holds;
  }
  r.margin = margin;
  const bool all_met =
      std::all_of(r.hypotheses.begin(), r.hypotheses.end(), [](const Hypothesis& h) { return h.met(); });
  r.verdict = fails ? Verdict::Violated : (all_met ? Verdict::Pass : Verdict::HypothesisUnmet);
  return r;
}

std::vector<double> merge_breakpoints(std::vector<double> a, const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  return a;
}

double integral(const std::function<double(double)>& g, const QuadratureRule& rule,
                const std::vector<double>& breakpoints, const Interval& iv = kUnit) {
  return integrate_scalar(g, iv, rule, breakpoints);
}

Interval spectral_hull(const std::vector<double>& a_desc, const std::vector<double>& b_desc) {
  return Interval(std::min(a_desc.back(), b_desc.back()), std::max(a_desc.front(), b_desc.front()));
}

void require_same_dim(const HermitianMatrix& A, const HermitianMatrix& B) {
  if (A.n() != B.n()) {
    throw Error(ErrorKind::DimensionMismatch, "A is " + std::to_string(A.n()) + "x" +
                                                  std::to_string(A.n()) + " but B is " +
                                                  std::to_string(B.n()) + "x" +
                                                  std::to_string(B.n()));
  }
}

// Shared set-up of the matrix theorems: spectra of A and B and their hull J.
struct MatrixSetup {
  std::vector<double> spec_a;
  std::vector<double> spec_b;
  Interval j;
};

MatrixSetup matrix_setup(CheckResult& r, const ScalarFunction& f, const WeightFunction& p,
                         const HermitianMatrix& A, const HermitianMatrix& B) {
  require_same_dim(A, B);
  MatrixSetup s{eigenvalues(A), eigenvalues(B), Interval()};
  s.j = spectral_hull(s.spec_a, s.spec_b);
  r.instance.f = f.id();
  r.instance.p = p.id();
  r.instance.A = A;
  r.instance.B = B;
  r.instance.n = static_cast<int>(A.n());
  return s;
}

// t -> w(t) f((1-t)A + tB).
std::function<HermitianMatrix(double)> path_integrand(const ScalarFunction& f,
                                                      const HermitianMatrix& A,
                                                      const HermitianMatrix& B,
                                                      std::function<double(double)> w) {
  return [&f, &A, &B, w = std::move(w)](double t) {
    return w(t) * apply_function(f, convex_path(A, B, t));
  };
}

HermitianMatrix weighted_path_integral(const ScalarFunction& f, const WeightFunction& p,
                                       const HermitianMatrix& A, const HermitianMatrix& B,
                                       const QuadratureRule& rule) {
  return integrate_matrix(path_integrand(f, A, B, [&p](double t) { return p(t); }), kUnit, rule,
                          p.kinks());
}

HermitianMatrix plain_path_integral(const ScalarFunction& f, const HermitianMatrix& A,
                                    const HermitianMatrix& B, const QuadratureRule& rule) {
  return integrate_matrix(path_integrand(f, A, B, [](double) { return 1.0; }), kUnit, rule);
}

HermitianMatrix midpoint(const HermitianMatrix& A, const HermitianMatrix& B) {
  return convex_path(A, B, 0.5);
}

std::vector<double> partial_sums(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  double s = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = s += v[k];
  return out;
}

std::vector<double> partial_products(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  double s = 1.0;
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = s *= v[k];
  return out;
}

void add_matrix_hypotheses(CheckResult& r, const ScalarFunction& f, const Interval& j) {
  r.hypotheses.push_back(domain_hypothesis(hyp::kDomain, f, j));
}

// Mean value moments on [a, b] used by the two Chebyshev checkers.
struct PairMoments {
  double mean_f, mean_g, mean_fg, var_f, var_g;
};

PairMoments pair_moments(const ScalarFunction& f, const ScalarFunction& g, const Interval& iv,
                         const QuadratureRule& rule) {
  const double len = iv.length();
  if (!(len > 1e-12)) {
    throw Error(ErrorKind::DegenerateInterval, "interval " + iv.to_string() + " has no length");
  }
  const std::vector<double> bp = merge_breakpoints(f.breakpoints(iv), g.breakpoints(iv));
  const auto mean = [&](const std::function<double(double)>& h) {
    return integral(h, rule, bp, iv) / len;
  };
  PairMoments m{};
  m.mean_f = mean([&](double x) { return f(x); });
  m.mean_g = mean([&](double x) { return g(x); });
  m.mean_fg = mean([&](double x) { return f(x) * g(x); });
  m.var_f = mean([&](double x) { const double v = f(x); return v * v; }) - m.mean_f * m.mean_f;
  m.var_g = mean([&](double x) { const double v = g(x); return v * v; }) - m.mean_g * m.mean_g;
  return m;
}

Hypothesis synchrony_hypothesis(const ScalarFunction& f, const ScalarFunction& g,
                                const Interval& iv, Synchrony mode) {
  const bool declared = mode != Synchrony::Neither;
  if (!inside_domain(f, iv) || !inside_domain(g, iv)) {
    return hypothesis(hyp::kSynchrony, declared, false, "interval outside domain");
  }
  const SynchronyReport s = check_synchronous(f, g, iv);
  // A pair can be both (one function constant); test the requested sign only.
  const bool ok = mode == Synchrony::Synchronous    ? s.min_product >= -1e-12
                  : mode == Synchrony::Asynchronous ? s.max_product <= 1e-12
                                                    : false;
  std::string detail = "requested " + std::string(to_string(mode)) + ", sampled " +
                       std::string(to_string(s.kind)) + ", products in [" + fmt(s.min_product) +
                       ", " + fmt(s.max_product) + "]";
  return hypothesis(hyp::kSynchrony, declared, ok, std::move(detail));
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Violated: return "violated";
    case Verdict::HypothesisUnmet: return "hypothesis-unmet";
    case Verdict::Error: return "error";
  }
  return "error";
}

Verdict parse_verdict(std::string_view s) {
  for (Verdict v : {Verdict::Pass, Verdict::Violated, Verdict::HypothesisUnmet, Verdict::Error}) {
    if (to_string(v) == s) return v;
  }
  throw Error(ErrorKind::UnknownId, "unknown verdict '" + std::string(s) + "'");
}

const std::vector<TheoremInfo>& theorems() {
  using S = InstanceShape;
  static const std::vector<TheoremInfo> list{
      {theorem::kScalarLevinSteckin, S::UnitWeighted, true, true, true},
      {theorem::kScalarFejer, S::IntervalWeighted, false, true, true},
      {theorem::kMatrixFejerLower, S::MatrixWeighted, false, true, true},
      {theorem::kMatrixFejerUpper, S::MatrixWeighted, false, true, true},
      {theorem::kLogFejer, S::MatrixWeighted, false, true, true},
      {theorem::kEigProductFejer, S::MatrixWeighted, false, true, true},
      {theorem::kGeneralLevinSteckin, S::UnitWeighted, false, false, true},
      {theorem::kMomentCorollary, S::UnitWeighted, true, true, true},
      {theorem::kOperatorLevinSteckin, S::MatrixWeighted, true, true, true},
      {theorem::kMondPecaricReverse, S::MatrixWeighted, false, true, true},
      {theorem::kChebyshevVariance, S::FunctionPair, false, false, false},
      {theorem::kLevinSteckinRefined, S::UnitWeighted, true, true, true},
      {theorem::kChebyshevAmBound, S::FunctionPair, false, false, false},
  };
  return list;
}

const TheoremInfo& theorem_info(std::string_view id) {
  for (const TheoremInfo& t : theorems()) {
    if (t.id == id) return t;
  }
  throw Error(ErrorKind::UnknownId, "no theorem named '" + std::string(id) + "'");
}

bool CheckOptions::waives(std::string_view name) const {
  return std::find(waived.begin(), waived.end(), name) != waived.end();
}

double CheckResult::quantity(std::string_view name) const {
  for (const auto& [k, v] : quantities) {
    if (k == name) return v;
  }
  throw Error(ErrorKind::UnknownId, "result has no quantity '" + std::string(name) + "'");
}

const std::vector<double>& CheckResult::spectrum(std::string_view name) const {
  for (const auto& [k, v] : spectra) {
    if (k == name) return v;
  }
  throw Error(ErrorKind::UnknownId, "result has no spectrum '" + std::string(name) + "'");
}

const ScalarSlack& CheckResult::slack(std::string_view label) const {
  for (const ScalarSlack& s : slacks) {
    if (s.label == label) return s;
  }
  throw Error(ErrorKind::UnknownId, "result has no slack '" + std::string(label) + "'");
}

CheckResult check_scalar_levin_steckin(const ScalarFunction& f, const WeightFunction& p,
                                       const CheckOptions& opt) {
  CheckResult r = start(theorem::kScalarLevinSteckin, opt);
  r.instance.f = f.id();
  r.instance.p = p.id();
  r.hypotheses = {domain_hypothesis(hyp::kDomain, f, kUnit), convex_hypothesis(f, kUnit),
                  symmetric_hypothesis(p), nondecreasing_hypothesis(p)};
  if (!gate(r, opt)) return r;

  const std::vector<double> bp = merge_breakpoints(p.kinks(), f.breakpoints(kUnit));
  const double ip = integral([&](double t) { return p(t); }, opt.rule, bp);
  const double iff = integral([&](double t) { return f(t); }, opt.rule, bp);
  const double ipf = integral([&](double t) { return p(t) * f(t); }, opt.rule, bp);
  add_quantity(r, "int_p", ip);
  add_quantity(r, "int_f", iff);
  add_quantity(r, "int_pf", ipf);
  add_quantity(r, "int_p_times_int_f", ip * iff);
  add_slack(r, "levin-steckin", ipf, ip * iff);
  return finish(std::move(r));
}

CheckResult check_scalar_fejer(const ScalarFunction& f, const WeightFunction& p, double a,
                               double b, const CheckOptions& opt) {
  CheckResult r = start(theorem::kScalarFejer, opt);
  r.instance.f = f.id();
  r.instance.p = p.id();
  r.instance.a = a;
  r.instance.b = b;
  const Interval ab(a, b);
  r.hypotheses = {domain_hypothesis(hyp::kDomain, f, ab), convex_hypothesis(f, ab),
                  symmetric_hypothesis(p), nonnegative_hypothesis(p)};
  if (!gate(r, opt)) return r;

  // Breakpoints of f, mapped to the path parameter, join the kinks of p.
  std::vector<double> bp = p.kinks();
  if (b > a) {
    for (double x : f.breakpoints(ab)) bp.push_back((x - a) / (b - a));
  }
  std::sort(bp.begin(), bp.end());
  const auto path = [a, b](double t) { return (1.0 - t) * a + t * b; };
  const double ip = integral([&](double t) { return p(t); }, opt.rule, bp);
  const double middle = integral([&](double t) { return p(t) * f(path(t)); }, opt.rule, bp);
  const double lower = ip * f(0.5 * (a + b));
  const double upper = ip * 0.5 * (f(a) + f(b));
  add_quantity(r, "int_p", ip);
  add_quantity(r, "lower", lower);
  add_quantity(r, "middle", middle);
  add_quantity(r, "upper", upper);
  add_slack(r, "fejer-lower", lower, middle);
  add_slack(r, "fejer-upper", middle, upper);
  return finish(std::move(r));
}

CheckResult check_matrix_fejer_lower(const ScalarFunction& f, const WeightFunction& p,
                                     const HermitianMatrix& A, const HermitianMatrix& B,
                                     const CheckOptions& opt) {
  CheckResult r = start(theorem::kMatrixFejerLower, opt);
  const MatrixSetup s = matrix_setup(r, f, p, A, B);
  add_matrix_hypotheses(r, f, s.j);
  r.hypotheses.push_back(convex_hypothesis(f, s.j));
  r.hypotheses.push_back(symmetric_hypothesis(p));
  r.hypotheses.push_back(nonnegative_hypothesis(p));
  if (!gate(r, opt)) return r;

  const double ip = weight_total(p, opt.rule);
  const HermitianMatrix lhs = ip * apply_function(f, midpoint(A, B));
  const HermitianMatrix rhs = weighted_path_integral(f, p, A, B, opt.rule);
  add_quantity(r, "int_p", ip);
  add_spectrum(r, "lhs", eigenvalues(lhs));
  add_spectrum(r, "rhs", eigenvalues(rhs));
  add_order(r, "fejer-lower", weak_majorize(lhs, rhs, opt.tol));
  return finish(std::move(r));
}

CheckResult check_matrix_fejer_upper(const ScalarFunction& f, const WeightFunction& p,
                                     const HermitianMatrix& A, const HermitianMatrix& B,
                                     const CheckOptions& opt) {
  CheckResult r = start(theorem::kMatrixFejerUpper, opt);
  const MatrixSetup s = matrix_setup(r, f, p, A, B);
  add_matrix_hypotheses(r, f, s.j);
  r.hypotheses.push_back(convex_hypothesis(f, s.j));
  r.hypotheses.push_back(monotone_hypothesis(f, s.j));
  r.hypotheses.push_back(symmetric_hypothesis(p));
  r.hypotheses.push_back(nonnegative_hypothesis(p));
  if (!gate(r, opt)) return r;

  const double ip = weight_total(p, opt.rule);
  const HermitianMatrix lhs = weighted_path_integral(f, p, A, B, opt.rule);
  const HermitianMatrix rhs = (0.5 * ip) * (apply_function(f, A) + apply_function(f, B));
  add_quantity(r, "int_p", ip);
  add_spectrum(r, "lhs", eigenvalues(lhs));
  add_spectrum(r, "rhs", eigenvalues(rhs));
  add_order(r, "fejer-upper", eigen_leq(lhs, rhs, opt.tol));
  return finish(std::move(r));
}

namespace {

void add_log_hypotheses(CheckResult& r, const ScalarFunction& f, const WeightFunction& p,
                        const Interval& j) {
  add_matrix_hypotheses(r, f, j);
  r.hypotheses.push_back(log_convex_hypothesis(f, j));
  r.hypotheses.push_back(positive_hypothesis(f, j));
  r.hypotheses.push_back(symmetric_hypothesis(p));
  r.hypotheses.push_back(strictly_positive_hypothesis(p));
}

}  // namespace

CheckResult check_log_fejer(const ScalarFunction& f, const WeightFunction& p,
                            const HermitianMatrix& A, const HermitianMatrix& B,
                            const CheckOptions& opt) {
  CheckResult r = start(theorem::kLogFejer, opt);
  const MatrixSetup s = matrix_setup(r, f, p, A, B);
  add_log_hypotheses(r, f, p, s.j);
  if (!gate(r, opt)) return r;

  const WeightFunction pn = normalize_weight(p, opt.rule);
  const HermitianMatrix lhs = matrix_log(apply_function(f, midpoint(A, B)));
  const HermitianMatrix rhs = matrix_log(weighted_path_integral(f, pn, A, B, opt.rule));
  add_spectrum(r, "lhs", eigenvalues(lhs));
  add_spectrum(r, "rhs", eigenvalues(rhs));
  add_order(r, "log-fejer", weak_majorize(lhs, rhs, opt.tol));
  return finish(std::move(r));
}

CheckResult check_eig_product_fejer(const ScalarFunction& f, const WeightFunction& p,
                                    const HermitianMatrix& A, const HermitianMatrix& B,
                                    const CheckOptions& opt) {
  CheckResult r = start(theorem::kEigProductFejer, opt);
  const MatrixSetup s = matrix_setup(r, f, p, A, B);
  add_log_hypotheses(r, f, p, s.j);
  if (!gate(r, opt)) return r;

  const WeightFunction pn = normalize_weight(p, opt.rule);
  const std::vector<double> lhs = eigenvalues(apply_function(f, midpoint(A, B)));
  const std::vector<double> rhs = eigenvalues(weighted_path_integral(f, pn, A, B, opt.rule));
  const auto logs = [](const std::vector<double>& v, const char* side) {
    std::vector<double> out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (!(v[k] > kPositivityFloor)) {
        throw Error(ErrorKind::NotPositiveDefinite,
                    std::string(side) + " eigenvalue " + fmt(v[k]) + " is not positive");
      }
      out[k] = std::log(v[k]);
    }
    return out;
  };
  const std::vector<double> log_lhs = logs(lhs, "lhs");
  const std::vector<double> log_rhs = logs(rhs, "rhs");
  add_spectrum(r, "lhs", lhs);
  add_spectrum(r, "rhs", rhs);
  add_spectrum(r, "lhs_products", partial_products(lhs));
  add_spectrum(r, "rhs_products", partial_products(rhs));
  add_spectrum(r, "lhs_log_sums", partial_sums(log_lhs));
  add_spectrum(r, "rhs_log_sums", partial_sums(log_rhs));
  add_order(r, "eig-product", weak_majorize_vectors(log_lhs, log_rhs, opt.tol));
  return finish(std::move(r));
}

CheckResult check_general_levin_steckin(const ScalarFunction& f, const WeightFunction& p,
                                        const CheckOptions& opt) {
  CheckResult r = start(theorem::kGeneralLevinSteckin, opt);
  r.instance.f = f.id();
  r.instance.p = p.id();
  r.hypotheses = {domain_hypothesis(hyp::kDomain, f, kUnit), convex_hypothesis(f, kUnit),
                  differentiable_hypothesis(f), nonnegative_hypothesis(p)};
  if (!gate(r, opt)) return r;

  const std::vector<double> bp = merge_breakpoints(p.kinks(), f.breakpoints(kUnit));
  const auto I = [&](const std::function<double(double)>& g) { return integral(g, opt.rule, bp); };
  const double ip = I([&](double t) { return p(t); });
  const double itp = I([&](double t) { return t * p(t); });
  const double iff = I([&](double t) { return f(t); });
  const double ipf = I([&](double t) { return p(t) * f(t); });
  const double idf = I([&](double t) { return f.derivative(t); });
  const double itdf = I([&](double t) { return t * f.derivative(t); });
  const double ipdf = I([&](double t) { return p(t) * f.derivative(t); });
  const double iptdf = I([&](double t) { return p(t) * t * f.derivative(t); });
  add_quantity(r, "int_p", ip);
  add_quantity(r, "int_tp", itp);
  add_quantity(r, "int_f", iff);
  add_quantity(r, "int_pf", ipf);
  add_quantity(r, "int_df", idf);
  add_quantity(r, "int_tdf", itdf);
  add_quantity(r, "int_pdf", ipdf);
  add_quantity(r, "int_ptdf", iptdf);
  add_slack(r, "first-order-lower", iff * ip + (idf * itp - itdf * ip), ipf);
  add_slack(r, "first-order-upper", ipf + 0.5 * ipdf - iptdf, ip * iff);
  return finish(std::move(r));
}

CheckResult check_moment_corollary(const ScalarFunction& f, const WeightFunction& p,
                                   const CheckOptions& opt) {
  CheckResult r = start(theorem::kMomentCorollary, opt);
  r.instance.f = f.id();
  r.instance.p = p.id();
  r.hypotheses = {domain_hypothesis(hyp::kDomain, f, kUnit), convex_hypothesis(f, kUnit),
                  differentiable_hypothesis(f), symmetric_hypothesis(p),
                  nondecreasing_hypothesis(p)};
  if (!gate(r, opt)) return r;

  const std::vector<double> bp = merge_breakpoints(p.kinks(), f.breakpoints(kUnit));
  const auto I = [&](const std::function<double(double)>& g) { return integral(g, opt.rule, bp); };
  const double ip = I([&](double t) { return p(t); });
  const double itp = I([&](double t) { return t * p(t); });
  const double idf = I([&](double t) { return f.derivative(t); });
  const double itdf = I([&](double t) { return t * f.derivative(t); });
  add_quantity(r, "int_p", ip);
  add_quantity(r, "int_tp", itp);
  add_quantity(r, "int_df", idf);
  add_quantity(r, "int_tdf", itdf);
  add_slack(r, "moment", idf * itp, itdf * ip);
  return finish(std::move(r));
}

CheckResult check_operator_levin_steckin(const ScalarFunction& f, const WeightFunction& p,
                                         const HermitianMatrix& A, const HermitianMatrix& B,
                                         const CheckOptions& opt) {
  CheckResult r = start(theorem::kOperatorLevinSteckin, opt);
  const MatrixSetup s = matrix_setup(r, f, p, A, B);
  add_matrix_hypotheses(r, f, s.j);
  r.hypotheses.push_back(operator_convex_hypothesis(f, s.j));
  r.hypotheses.push_back(symmetric_hypothesis(p));
  r.hypotheses.push_back(nondecreasing_hypothesis(p));
  if (!gate(r, opt)) return r;

  const double ip = weight_total(p, opt.rule);
  const HermitianMatrix lhs = weighted_path_integral(f, p, A, B, opt.rule);
  const HermitianMatrix rhs = ip * plain_path_integral(f, A, B, opt.rule);
  add_quantity(r, "int_p", ip);
  add_spectrum(r, "lhs", eigenvalues(lhs));
  add_spectrum(r, "rhs", eigenvalues(rhs));
  add_order(r, "operator-levin-steckin", loewner_leq(lhs, rhs, opt.tol));
  return finish(std::move(r));
}

CheckResult check_mond_pecaric_reverse(const ScalarFunction& f, const WeightFunction& p,
                                       const HermitianMatrix& A, const HermitianMatrix& B,
                                       double alpha, const CheckOptions& opt,
                                       std::optional<double> m, std::optional<double> M) {
  CheckResult r = start(theorem::kMondPecaricReverse, opt);
  const MatrixSetup s = matrix_setup(r, f, p, A, B);
  const double lo = m.value_or(s.j.lo());
  const double hi = M.value_or(s.j.hi());
  const Interval mM(lo, hi);
  r.instance.alpha = alpha;
  r.instance.m = lo;
  r.instance.M = hi;

  r.hypotheses.push_back(domain_hypothesis(hyp::kDomain, f, mM));
  r.hypotheses.push_back(convex_hypothesis(f, mM));
  r.hypotheses.push_back(hypothesis(hyp::kAlpha, true, alpha >= 0.0, "alpha = " + fmt(alpha)));
  const bool enclosed = mM.contains(s.j.lo(), kEnclosureSlack) && mM.contains(s.j.hi(), kEnclosureSlack);
  r.hypotheses.push_back(hypothesis(hyp::kEnclosure, true, enclosed,
                                    "spectra " + s.j.to_string() + " against " + mM.to_string()));
  r.hypotheses.push_back(symmetric_hypothesis(p));
  r.hypotheses.push_back(nonnegative_hypothesis(p));
  if (!gate(r, opt)) return r;

  double beta = 0.0;
  if (hi - lo <= 1e-12) {
    // The chord collapses to the point (m, f(m)).
    beta = (1.0 - alpha) * f(lo);
  } else {
    const SecantCoeffs c = secant_coeffs(f, lo, hi);
    add_quantity(r, "a_f", c.slope);
    add_quantity(r, "b_f", c.intercept);
    beta = beta_max(f, lo, hi, alpha);
  }
  const double ip = weight_total(p, opt.rule);
  const HermitianMatrix weighted = weighted_path_integral(f, p, A, B, opt.rule);
  const HermitianMatrix lhs = ip * plain_path_integral(f, A, B, opt.rule);
  const HermitianMatrix rhs = (beta * ip) * HermitianMatrix::identity(A.n()) + alpha * weighted;
  add_quantity(r, "beta", beta);
  add_quantity(r, "int_p", ip);
  add_quantity(r, "m", lo);
  add_quantity(r, "M", hi);
  add_quantity(r, "alpha", alpha);
  add_spectrum(r, "lhs", eigenvalues(lhs));
  add_spectrum(r, "rhs", eigenvalues(rhs));
  add_order(r, "reverse", loewner_leq(lhs, rhs, opt.tol));
  return finish(std::move(r));
}

CheckResult check_chebyshev_variance(const ScalarFunction& f, const ScalarFunction& g, double a,
                                     double b, Synchrony mode, const CheckOptions& opt) {
  CheckResult r = start(theorem::kChebyshevVariance, opt);
  r.instance.f = f.id();
  r.instance.g = g.id();
  r.instance.a = a;
  r.instance.b = b;
  r.instance.mode = mode;
  const Interval ab(a, b);
  r.hypotheses = {domain_hypothesis(hyp::kDomain, f, ab), domain_hypothesis(hyp::kGDomain, g, ab),
                  synchrony_hypothesis(f, g, ab, mode)};
  if (!gate(r, opt)) return r;

  const PairMoments mo = pair_moments(f, g, ab, opt.rule);
  const double cov = mo.mean_fg - mo.mean_f * mo.mean_g;
  const double middle = mode == Synchrony::Asynchronous ? -cov : cov;
  const double vmin = std::min(mo.var_f, mo.var_g);
  const double vmax = std::max(mo.var_f, mo.var_g);
  add_quantity(r, "mean_f", mo.mean_f);
  add_quantity(r, "mean_g", mo.mean_g);
  add_quantity(r, "mean_fg", mo.mean_fg);
  add_quantity(r, "var_f", mo.var_f);
  add_quantity(r, "var_g", mo.var_g);
  add_quantity(r, "middle", middle);
  add_slack(r, "variance-lower", vmin, middle);
  add_slack(r, "variance-upper", middle, vmax);
  return finish(std::move(r));
}

CheckResult check_levin_steckin_refined(const ScalarFunction& f, const WeightFunction& p,
                                        const CheckOptions& opt) {
  CheckResult r = start(theorem::kLevinSteckinRefined, opt);
  r.instance.f = f.id();
  r.instance.p = p.id();
  r.hypotheses = {domain_hypothesis(hyp::kDomain, f, kUnit), convex_hypothesis(f, kUnit),
                  symmetric_hypothesis(p), nondecreasing_hypothesis(p)};
  if (!gate(r, opt)) return r;

  std::vector<double> fk = f.breakpoints(kUnit);
  for (double x : f.breakpoints(kUnit)) fk.push_back(1.0 - x);
  const std::vector<double> bp = merge_breakpoints(p.kinks(), fk);
  const Interval half(0.0, 0.5);
  const auto I = [&](const std::function<double(double)>& g) { return integral(g, opt.rule, bp); };
  const auto Ihalf = [&](const std::function<double(double)>& g) {
    return integral(g, opt.rule, bp, half);
  };
  const auto fold = [&](double t) { return f(t) + f(1.0 - t); };

  const double ip = I([&](double t) { return p(t); });
  const double iff = I([&](double t) { return f(t); });
  const double ipf = I([&](double t) { return p(t) * f(t); });
  const double p_bracket = 2.0 * Ihalf([&](double t) { return p(t) * p(t); }) - ip * ip;
  const double fold_mean = 0.5 * I(fold);
  const double f_bracket =
      0.5 * Ihalf([&](double t) { const double v = fold(t); return v * v; }) - fold_mean * fold_mean;
  const double correction = std::min(p_bracket, f_bracket);
  add_quantity(r, "int_p", ip);
  add_quantity(r, "int_f", iff);
  add_quantity(r, "int_pf", ipf);
  add_quantity(r, "p_bracket", p_bracket);
  add_quantity(r, "f_bracket", f_bracket);
  add_quantity(r, "correction", correction);
  add_slack(r, "refined", ipf, ip * iff - correction);
  return finish(std::move(r));
}

CheckResult check_chebyshev_am_bound(const ScalarFunction& f, const ScalarFunction& g,
                                     const CheckOptions& opt) {
  CheckResult r = start(theorem::kChebyshevAmBound, opt);
  r.instance.f = f.id();
  r.instance.g = g.id();
  r.hypotheses = {domain_hypothesis(hyp::kDomain, f, kUnit),
                  domain_hypothesis(hyp::kGDomain, g, kUnit),
                  synchrony_hypothesis(f, g, kUnit, Synchrony::Synchronous)};
  if (!gate(r, opt)) return r;

  const PairMoments mo = pair_moments(f, g, kUnit, opt.rule);
  const double cov = mo.mean_fg - mo.mean_f * mo.mean_g;
  add_quantity(r, "mean_f", mo.mean_f);
  add_quantity(r, "mean_g", mo.mean_g);
  add_quantity(r, "mean_fg", mo.mean_fg);
  add_quantity(r, "var_f", mo.var_f);
  add_quantity(r, "var_g", mo.var_g);
  add_quantity(r, "covariance", cov);
  add_slack(r, "am-bound", cov, 0.5 * (mo.var_f + mo.var_g));
  return finish(std::move(r));
}

namespace {

CheckResult dispatch(Instance& in, const CheckOptions& opt) {
  const TheoremInfo& info = theorem_info(in.theorem);
  const auto need = [&](const std::string& id, const char* what) -> const std::string& {
    if (id.empty()) {
      throw Error(ErrorKind::InvalidArgument, in.theorem + " needs " + what);
    }
    return id;
  };

  if (info.shape == InstanceShape::FunctionPair) {
    const ScalarFunction f = find_function(need(in.f, "a function f"));
    const ScalarFunction g = find_function(need(in.g, "a function g"));
    if (info.id == theorem::kChebyshevAmBound) return check_chebyshev_am_bound(f, g, opt);
    const double a = in.a.value_or(0.0);
    const double b = in.b.value_or(1.0);
    Synchrony mode = Synchrony::Synchronous;
    if (in.mode) {
      mode = *in.mode;
    } else if (inside_domain(f, Interval(a, b)) && inside_domain(g, Interval(a, b))) {
      // Without an explicit mode, test the sign the pair actually has.
      const SynchronyReport s = check_synchronous(f, g, Interval(a, b));
      if (s.kind == Synchrony::Asynchronous) mode = Synchrony::Asynchronous;
    }
    return check_chebyshev_variance(f, g, a, b, mode, opt);
  }

  const ScalarFunction f = find_function(need(in.f, "a function f"));
  const WeightFunction p = resolve_weight(need(in.p, "a weight p"));

  if (info.shape == InstanceShape::UnitWeighted) {
    if (info.id == theorem::kScalarLevinSteckin) return check_scalar_levin_steckin(f, p, opt);
    if (info.id == theorem::kGeneralLevinSteckin) return check_general_levin_steckin(f, p, opt);
    if (info.id == theorem::kMomentCorollary) return check_moment_corollary(f, p, opt);
    return check_levin_steckin_refined(f, p, opt);
  }
  if (info.shape == InstanceShape::IntervalWeighted) {
    return check_scalar_fejer(f, p, in.a.value_or(0.0), in.b.value_or(1.0), opt);
  }

  if (in.A.has_value() != in.B.has_value()) {
    throw Error(ErrorKind::InvalidArgument, "give both A and B or neither");
  }
  if (!in.A) {
    if (!in.seed) throw Error(ErrorKind::InvalidArgument, in.theorem + " needs A, B or a seed");
    if (!in.n) in.n = 3;
    if (!in.interval) in.interval = kDefaultSpectrum;
    auto [A, B] = random_pair(*in.seed, *in.n, *in.interval);
    in.A = std::move(A);
    in.B = std::move(B);
  }
  const HermitianMatrix& A = *in.A;
  const HermitianMatrix& B = *in.B;
  if (info.id == theorem::kMatrixFejerLower) return check_matrix_fejer_lower(f, p, A, B, opt);
  if (info.id == theorem::kMatrixFejerUpper) return check_matrix_fejer_upper(f, p, A, B, opt);
  if (info.id == theorem::kLogFejer) return check_log_fejer(f, p, A, B, opt);
  if (info.id == theorem::kEigProductFejer) return check_eig_product_fejer(f, p, A, B, opt);
  if (info.id == theorem::kOperatorLevinSteckin) {
    return check_operator_levin_steckin(f, p, A, B, opt);
  }
  return check_mond_pecaric_reverse(f, p, A, B, in.alpha.value_or(1.0), opt, in.m, in.M);
}

}  // namespace

CheckResult run_check(const Instance& instance, const CheckOptions& opt) {
  Instance in = instance;
  try {
    opt.rule.validate();
    CheckResult r = dispatch(in, opt);
    // Keep provenance fields the checker does not know about.
    r.instance.seed = in.seed;
    r.instance.interval = in.interval;
    if (in.n) r.instance.n = in.n;
    return r;
  } catch (const std::exception& e) {
    CheckResult r = start(in.theorem, opt);
    r.instance = in;
    r.verdict = Verdict::Error;
    r.error = e.what();
    return r;
  }
}

}  // namespace matineq
