#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "matineq/funcspace.hpp"
#include "matineq/interval.hpp"

namespace matineq {

using Complex = std::complex<double>;

inline constexpr double kHermitianGuard = 1e-8;
inline constexpr double kHermitianInvariant = 1e-12;
inline constexpr double kDomainSlack = 1e-12;
inline constexpr double kPositivityFloor = 1e-12;
inline constexpr int kMaxJacobiSweeps = 50;

// Dense row-major square complex matrix. General purpose; carries no
// structural invariant.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t n) : n_(n), data_(n * n) {}
  ComplexMatrix(std::size_t n, std::vector<Complex> row_major);

  static ComplexMatrix identity(std::size_t n);

  std::size_t n() const noexcept { return n_; }
  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::span<const Complex> data() const noexcept { return data_; }

  ComplexMatrix adjoint() const;

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(double s, const ComplexMatrix& a);

 private:
  std::size_t n_ = 0;
  std::vector<Complex> data_;
};

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_norm(const ComplexMatrix& a);

// Complex matrix that is Hermitian to the last bit: entry (j,i) is stored as
// the exact conjugate of entry (i,j) and the diagonal is real. Sums,
// differences and real scalings preserve that exactly.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  static HermitianMatrix identity(std::size_t n);
  static HermitianMatrix zeros(std::size_t n);
  static HermitianMatrix diagonal(std::span<const double> d);

  std::size_t n() const noexcept { return m_.n(); }
  const Complex& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  double trace() const;

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator*(double s, const HermitianMatrix& a);

  friend HermitianMatrix hermitize(const ComplexMatrix& m);

 private:
  explicit HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

double max_abs_diff(const HermitianMatrix& a, const HermitianMatrix& b);

// (M + M*)/2. Rejects inputs whose asymmetry exceeds kHermitianGuard.
HermitianMatrix hermitize(const ComplexMatrix& m);

struct SpectralDecomposition {
  std::vector<double> eigenvalues;  // descending
  ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]
  int sweeps = 0;

  ComplexMatrix reconstruct() const;
  double spectral_scale() const;
  Interval spectrum_hull() const;
};

// Cyclic complex Jacobi. Stops once the off-diagonal Frobenius mass drops to
// 1e-14 of the input's Frobenius norm; throws NoConvergence after 50 sweeps.
SpectralDecomposition eig_hermitian(const HermitianMatrix& a);

// Convenience: descending eigenvalues only.
std::vector<double> eigenvalues(const HermitianMatrix& a);

// f(A) = U diag(f(lambda)) U*. Eigenvalues within kDomainSlack outside the
// domain are clamped onto it; anything further out is rejected.
HermitianMatrix apply_function(const ScalarFunction& f, const HermitianMatrix& a);
HermitianMatrix apply_function(const ScalarFunction& f, const SpectralDecomposition& d);

HermitianMatrix matrix_log(const HermitianMatrix& a);

// (1-t)A + tB for t in [0, 1].
HermitianMatrix convex_path(const HermitianMatrix& a, const HermitianMatrix& b, double t);

}  // namespace matineq
