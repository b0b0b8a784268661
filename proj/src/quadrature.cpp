#include "matineq/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "matineq/error.hpp"

namespace matineq {

namespace {

// Fixed-shape pairwise reduction so that results do not depend on how the
// node evaluations were scheduled.
template <typename T>
T pairwise_sum(std::span<const T> terms) {
  if (terms.size() == 1) return terms[0];
  const std::size_t half = terms.size() / 2;
  return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

std::vector<double> panel_boundaries(const Interval& interval, int panels,
                                     std::span<const double> breakpoints) {
  std::vector<double> b;
  b.reserve(static_cast<std::size_t>(panels) + 1 + breakpoints.size());
  const double len = interval.length();
  for (int k = 0; k <= panels; ++k) {
    b.push_back(k == panels ? interval.hi() : interval.lo() + len * (static_cast<double>(k) / panels));
  }
  const double eps = 1e-12 * std::max(1.0, len);
  for (double x : breakpoints) {
    if (x <= interval.lo() + eps || x >= interval.hi() - eps) continue;
    const bool present = std::any_of(b.begin(), b.end(), [&](double y) { return std::abs(y - x) <= eps; });
    if (!present) b.push_back(x);
  }
  std::sort(b.begin(), b.end());
  return b;
}

}  // namespace

std::string_view to_string(Scheme s) {
  return s == Scheme::CompositeSimpson ? "simpson" : "gauss";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "simpson") return Scheme::CompositeSimpson;
  if (name == "gauss") return Scheme::GaussLegendre;
  throw Error(ErrorKind::UnknownId, "unknown quadrature scheme '" + std::string(name) + "'");
}

void QuadratureRule::validate() const {
  if (panels < 1) throw Error(ErrorKind::InvalidArgument, "panels must be at least 1");
  if (scheme == Scheme::GaussLegendre && nodes_per_panel < 1) {
    throw Error(ErrorKind::InvalidArgument, "nodes_per_panel must be at least 1");
  }
}

QuadratureRule QuadratureRule::refined() const {
  QuadratureRule r = *this;
  r.panels *= 2;
  return r;
}

std::vector<QuadratureNode> gauss_legendre(int points) {
  if (points < 1) throw Error(ErrorKind::InvalidArgument, "Gauss rule needs at least one node");
  std::vector<QuadratureNode> nodes(static_cast<std::size_t>(points));
  const int n = points;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton on P_n starting from the Chebyshev-like guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    if (n == 1) {
      nodes[0] = {0.0, 2.0};
      break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[static_cast<std::size_t>(i)] = {-x, w};
    nodes[static_cast<std::size_t>(n - 1 - i)] = {x, w};
  }
  if (n % 2 == 1 && n > 1) nodes[static_cast<std::size_t>(n / 2)].t = 0.0;
  return nodes;
}

std::vector<QuadratureNode> quadrature_nodes(const Interval& interval, const QuadratureRule& rule,
                                             std::span<const double> breakpoints) {
  rule.validate();
  if (!interval.finite()) throw Error(ErrorKind::InvalidArgument, "integration interval must be finite");
  const std::vector<double> b = panel_boundaries(interval, rule.panels, breakpoints);
  std::vector<QuadratureNode> out;

  if (rule.scheme == Scheme::CompositeSimpson) {
    out.reserve(2 * (b.size() - 1) + 1);
    out.push_back({b[0], 0.0});
    for (std::size_t k = 0; k + 1 < b.size(); ++k) {
      const double h = b[k + 1] - b[k];
      out.back().w += h / 6.0;
      out.push_back({0.5 * (b[k] + b[k + 1]), 4.0 * h / 6.0});
      out.push_back({b[k + 1], h / 6.0});
    }
    return out;
  }

  const std::vector<QuadratureNode> ref = gauss_legendre(rule.nodes_per_panel);
  out.reserve((b.size() - 1) * ref.size());
  for (std::size_t k = 0; k + 1 < b.size(); ++k) {
    const double half = 0.5 * (b[k + 1] - b[k]);
    const double mid = 0.5 * (b[k + 1] + b[k]);
    for (const auto& node : ref) out.push_back({mid + half * node.t, half * node.w});
  }
  return out;
}

double integrate_scalar(const std::function<double(double)>& g, const Interval& interval,
                        const QuadratureRule& rule, std::span<const double> breakpoints) {
  const auto nodes = quadrature_nodes(interval, rule, breakpoints);
  std::vector<double> terms(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double v = g(nodes[i].t);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os.precision(17);
      os << "integrand is " << v << " at t = " << nodes[i].t;
      throw Error(ErrorKind::NonFiniteSample, os.str());
    }
    terms[i] = nodes[i].w * v;
  }
  return pairwise_sum(std::span<const double>(terms));
}

HermitianMatrix integrate_matrix(const std::function<HermitianMatrix(double)>& g,
                                 const Interval& interval, const QuadratureRule& rule,
                                 std::span<const double> breakpoints) {
  const auto nodes = quadrature_nodes(interval, rule, breakpoints);
  std::vector<HermitianMatrix> terms;
  terms.reserve(nodes.size());
  for (const auto& node : nodes) {
    HermitianMatrix v = g(node.t);
    if (!terms.empty() && v.n() != terms.front().n()) {
      std::ostringstream os;
      os << "integrand changes dimension from " << terms.front().n() << " to " << v.n()
         << " at t = " << node.t;
      throw Error(ErrorKind::DimensionMismatch, os.str());
    }
    for (const Complex& z : v.matrix().data()) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        std::ostringstream os;
        os.precision(17);
        os << "matrix integrand has a non-finite entry at t = " << node.t;
        throw Error(ErrorKind::NonFiniteSample, os.str());
      }
    }
    terms.push_back(node.w * v);
  }
  return hermitize(pairwise_sum(std::span<const HermitianMatrix>(terms)).matrix());
}

double weight_total(const WeightFunction& p, const QuadratureRule& rule) {
  return integrate_scalar([&](double t) { return p(t); }, Interval(0.0, 1.0), rule, p.kinks());
}

double weight_first_moment(const WeightFunction& p, const QuadratureRule& rule) {
  return integrate_scalar([&](double t) { return t * p(t); }, Interval(0.0, 1.0), rule, p.kinks());
}

WeightFunction normalize_weight(const WeightFunction& p, const QuadratureRule& rule) {
  const double total = weight_total(p, rule);
  if (!(total > 1e-12)) {
    std::ostringstream os;
    os.precision(17);
    os << "weight " << p.id() << " has total mass " << total;
    throw Error(ErrorKind::DegenerateWeight, os.str());
  }
  WeightFlags flags = p.flags();
  flags.normalized = true;
  const double scale = 1.0 / total;
  return WeightFunction(p.id(), [p, scale](double t) { return scale * p(t); }, flags, p.kinks());
}

}  // namespace matineq
