#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "matineq/funcspace.hpp"
#include "matineq/interval.hpp"
#include "matineq/linalg.hpp"

namespace matineq {

enum class Scheme { CompositeSimpson, GaussLegendre };

std::string_view to_string(Scheme s);
Scheme parse_scheme(std::string_view name);

struct QuadratureRule {
  Scheme scheme = Scheme::GaussLegendre;
  int panels = 32;
  int nodes_per_panel = 5;  // Gauss only

  void validate() const;
  QuadratureRule refined() const;  // twice the panels

  friend bool operator==(const QuadratureRule&, const QuadratureRule&) = default;
};

struct QuadratureNode {
  double t;
  double w;
};

// Nodes and weights of the composite rule. Breakpoints strictly inside the
// interval are added as extra panel boundaries so that each panel sees a
// smooth integrand.
std::vector<QuadratureNode> quadrature_nodes(const Interval& interval, const QuadratureRule& rule,
                                             std::span<const double> breakpoints = {});

// Gauss-Legendre abscissae and weights on [-1, 1], abscissae ascending.
std::vector<QuadratureNode> gauss_legendre(int points);

double integrate_scalar(const std::function<double(double)>& g, const Interval& interval,
                        const QuadratureRule& rule, std::span<const double> breakpoints = {});

HermitianMatrix integrate_matrix(const std::function<HermitianMatrix(double)>& g,
                                 const Interval& interval, const QuadratureRule& rule,
                                 std::span<const double> breakpoints = {});

double weight_total(const WeightFunction& p, const QuadratureRule& rule);
double weight_first_moment(const WeightFunction& p, const QuadratureRule& rule);
WeightFunction normalize_weight(const WeightFunction& p, const QuadratureRule& rule);

}  // namespace matineq
