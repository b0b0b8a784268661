#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "matineq/linalg.hpp"

namespace matineq {

struct Tolerances {
  double abs = 1e-9;
  double rel = 1e-8;

  double allowance(double scale) const noexcept { return abs + rel * scale; }
};

enum class OrderKind { Loewner, Eigenwise, WeakMajorization };
std::string_view to_string(OrderKind k);

// Result of comparing two Hermitian matrices (or two real vectors) in one of
// the three orders. margin is the most binding slack; negative means the
// relation fails before tolerances are applied.
struct OrderVerdict {
  OrderKind kind = OrderKind::Loewner;
  bool holds = false;
  double margin = 0.0;
  std::vector<double> detail;
  double tol_abs = 0.0;
  double tol_rel = 0.0;
  double scale = 1.0;  // max(1, largest |eigenvalue| encountered)
};

// A <= B: detail holds the eigenvalues of B - A in ascending order.
OrderVerdict loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b,
                         const Tolerances& tol = {});

// lambda_i(A) <= lambda_i(B) for descending spectra.
OrderVerdict eigen_leq(const HermitianMatrix& a, const HermitianMatrix& b,
                       const Tolerances& tol = {});

// A weakly majorized by B: detail[k] is the difference of top-(k+1) sums.
OrderVerdict weak_majorize(const HermitianMatrix& a, const HermitianMatrix& b,
                           const Tolerances& tol = {});

// Same as weak_majorize on explicit lists (sorted descending internally).
OrderVerdict weak_majorize_vectors(std::span<const double> u, std::span<const double> v,
                                   const Tolerances& tol = {});

// Spectrum-level entry points used when eigenvalues are already known.
OrderVerdict eigen_leq_spectra(std::span<const double> a_desc, std::span<const double> b_desc,
                               const Tolerances& tol = {});

}  // namespace matineq
