#pragma once

// Independent scalar oracles shared by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <functional>
#include <string_view>
#include <vector>

#include "matineq/checks.hpp"
#include "matineq/error.hpp"
#include "matineq/funcspace.hpp"
#include "matineq/quadrature.hpp"

namespace oracle {

using namespace matineq;

inline double integrate(const std::function<double(double)>& g, const WeightFunction& p,
                        const QuadratureRule& rule) {
  return integrate_scalar(g, Interval(0.0, 1.0), rule, p.kinks());
}

inline std::vector<double> descending(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

// Min over k of top-k sum differences, both lists sorted descending.
inline double weak_majorization_margin(std::vector<double> u, std::vector<double> v) {
  u = descending(std::move(u));
  v = descending(std::move(v));
  double su = 0.0, sv = 0.0, m = 1e300;
  for (std::size_t k = 0; k < u.size(); ++k) {
    su += u[k];
    sv += v[k];
    m = std::min(m, sv - su);
  }
  return m;
}

inline double eigenwise_margin(std::vector<double> u, std::vector<double> v) {
  u = descending(std::move(u));
  v = descending(std::move(v));
  double m = 1e300;
  for (std::size_t k = 0; k < u.size(); ++k) m = std::min(m, v[k] - u[k]);
  return m;
}

// Margin of a matrix theorem on A = diag(a), B = diag(b), computed entry by
// entry from scalar integrals.
inline double diagonal_margin(std::string_view theorem, const ScalarFunction& f,
                              const WeightFunction& p, const std::vector<double>& a,
                              const std::vector<double>& b, const QuadratureRule& rule,
                              double alpha = 1.0) {
  const std::size_t n = a.size();
  const auto path = [&](std::size_t i) {
    return [&, i](double t) { return f((1.0 - t) * a[i] + t * b[i]); };
  };
  const double ip = integrate([&](double t) { return p(t); }, p, rule);
  std::vector<double> plain(n), weighted(n), mid(n), ends(n);
  for (std::size_t i = 0; i < n; ++i) {
    plain[i] = integrate(path(i), p, rule);
    weighted[i] = integrate([&](double t) { return p(t) * path(i)(t); }, p, rule);
    mid[i] = f(0.5 * (a[i] + b[i]));
    ends[i] = 0.5 * (f(a[i]) + f(b[i]));
  }

  if (theorem == theorem::kMatrixFejerLower) {
    std::vector<double> lhs(n);
    for (std::size_t i = 0; i < n; ++i) lhs[i] = ip * mid[i];
    return weak_majorization_margin(lhs, weighted);
  }
  if (theorem == theorem::kMatrixFejerUpper) {
    std::vector<double> rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = ip * ends[i];
    return eigenwise_margin(weighted, rhs);
  }
  if (theorem == theorem::kLogFejer || theorem == theorem::kEigProductFejer) {
    std::vector<double> lhs(n), rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
      lhs[i] = std::log(mid[i]);
      rhs[i] = std::log(weighted[i] / ip);
    }
    return weak_majorization_margin(lhs, rhs);
  }
  if (theorem == theorem::kOperatorLevinSteckin) {
    double m = 1e300;
    for (std::size_t i = 0; i < n; ++i) m = std::min(m, ip * plain[i] - weighted[i]);
    return m;
  }
  if (theorem == theorem::kMondPecaricReverse) {
    double lo = 1e300, hi = -1e300;
    for (std::size_t i = 0; i < n; ++i) {
      lo = std::min({lo, a[i], b[i]});
      hi = std::max({hi, a[i], b[i]});
    }
    const double beta = hi - lo > 1e-12 ? beta_max(f, lo, hi, alpha) : (1.0 - alpha) * f(lo);
    double m = 1e300;
    for (std::size_t i = 0; i < n; ++i)
      m = std::min(m, beta * ip + alpha * weighted[i] - ip * plain[i]);
    return m;
  }
  throw Error(ErrorKind::UnknownId, "no diagonal oracle for " + std::string(theorem));
}

}  // namespace oracle
