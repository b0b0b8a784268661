#include "matineq/orders.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "matineq/error.hpp"

namespace matineq {

namespace {

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.n() != b.n()) {
    std::ostringstream os;
    os << "cannot compare " << a.n() << "x" << a.n() << " with " << b.n() << "x" << b.n();
    throw Error(ErrorKind::DimensionMismatch, os.str());
  }
}

OrderVerdict finish(OrderKind kind, std::vector<double> detail, double scale,
                    const Tolerances& tol) {
  OrderVerdict v;
  v.kind = kind;
  v.detail = std::move(detail);
  v.margin = *std::min_element(v.detail.begin(), v.detail.end());
  v.tol_abs = tol.abs;
  v.tol_rel = tol.rel;
  v.scale = std::max(1.0, scale);
  v.holds = v.margin >= -tol.allowance(v.scale);
  return v;
}

OrderVerdict majorize_sorted(std::span<const double> u_desc, std::span<const double> v_desc,
                             const Tolerances& tol) {
  std::vector<double> detail(u_desc.size());
  double su = 0.0;
  double sv = 0.0;
  for (std::size_t k = 0; k < u_desc.size(); ++k) {
    su += u_desc[k];
    sv += v_desc[k];
    detail[k] = sv - su;
  }
  return finish(OrderKind::WeakMajorization, std::move(detail),
                std::max(max_abs(u_desc), max_abs(v_desc)), tol);
}

}  // namespace

std::string_view to_string(OrderKind k) {
  switch (k) {
    case OrderKind::Loewner: return "loewner";
    case OrderKind::Eigenwise: return "eigenwise";
    case OrderKind::WeakMajorization: return "weak-majorization";
  }
  return "loewner";
}

OrderVerdict loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b,
                         const Tolerances& tol) {
  require_same_dim(a, b);
  std::vector<double> diff = eigenvalues(b - a);
  std::reverse(diff.begin(), diff.end());
  const double scale =
      std::max({max_abs(eigenvalues(a)), max_abs(eigenvalues(b)), max_abs(diff)});
  return finish(OrderKind::Loewner, std::move(diff), scale, tol);
}

OrderVerdict eigen_leq_spectra(std::span<const double> a_desc, std::span<const double> b_desc,
                               const Tolerances& tol) {
  if (a_desc.size() != b_desc.size() || a_desc.empty()) {
    throw Error(ErrorKind::LengthMismatch, "spectra must be nonempty and of equal length");
  }
  std::vector<double> detail(a_desc.size());
  for (std::size_t i = 0; i < detail.size(); ++i) detail[i] = b_desc[i] - a_desc[i];
  return finish(OrderKind::Eigenwise, std::move(detail),
                std::max(max_abs(a_desc), max_abs(b_desc)), tol);
}

OrderVerdict eigen_leq(const HermitianMatrix& a, const HermitianMatrix& b,
                       const Tolerances& tol) {
  require_same_dim(a, b);
  return eigen_leq_spectra(eigenvalues(a), eigenvalues(b), tol);
}

OrderVerdict weak_majorize(const HermitianMatrix& a, const HermitianMatrix& b,
                           const Tolerances& tol) {
  require_same_dim(a, b);
  return majorize_sorted(eigenvalues(a), eigenvalues(b), tol);
}

OrderVerdict weak_majorize_vectors(std::span<const double> u, std::span<const double> v,
                                   const Tolerances& tol) {
  if (u.size() != v.size()) {
    std::ostringstream os;
    os << "vectors of length " << u.size() << " and " << v.size() << " cannot be compared";
    throw Error(ErrorKind::LengthMismatch, os.str());
  }
  if (u.empty()) throw Error(ErrorKind::LengthMismatch, "empty vectors");
  std::vector<double> us(u.begin(), u.end());
  std::vector<double> vs(v.begin(), v.end());
  std::sort(us.begin(), us.end(), std::greater<>());
  std::sort(vs.begin(), vs.end(), std::greater<>());
  return majorize_sorted(us, vs, tol);
}

}  // namespace matineq
