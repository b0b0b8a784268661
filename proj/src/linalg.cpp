#include "matineq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "matineq/error.hpp"

namespace matineq {

namespace {

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": dimensions " << a << " and " << b << " differ";
    throw Error(ErrorKind::DimensionMismatch, os.str());
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t n, std::vector<Complex> row_major)
    : n_(n), data_(std::move(row_major)) {
  if (data_.size() != n_ * n_) {
    std::ostringstream os;
    os << "expected " << n_ * n_ << " entries for a " << n_ << "x" << n_ << " matrix, got "
       << data_.size();
    throw Error(ErrorKind::NonSquare, os.str());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_size(a.n_, b.n_, "matrix sum");
  ComplexMatrix out(a.n_);
  for (std::size_t k = 0; k < a.data_.size(); ++k) out.data_[k] = a.data_[k] + b.data_[k];
  return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_size(a.n_, b.n_, "matrix difference");
  ComplexMatrix out(a.n_);
  for (std::size_t k = 0; k < a.data_.size(); ++k) out.data_[k] = a.data_[k] - b.data_[k];
  return out;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_size(a.n_, b.n_, "matrix product");
  const std::size_t n = a.n_;
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

ComplexMatrix operator*(double s, const ComplexMatrix& a) {
  ComplexMatrix out(a.n_);
  for (std::size_t k = 0; k < a.data_.size(); ++k) out.data_[k] = s * a.data_[k];
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_size(a.n(), b.n(), "max_abs_diff");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    worst = std::max(worst, std::abs(a.data()[k] - b.data()[k]));
  return worst;
}

double frobenius_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (const Complex& z : a.data()) sum += std::norm(z);
  return std::sqrt(sum);
}

HermitianMatrix HermitianMatrix::identity(std::size_t n) {
  return HermitianMatrix(ComplexMatrix::identity(n));
}

HermitianMatrix HermitianMatrix::zeros(std::size_t n) { return HermitianMatrix(ComplexMatrix(n)); }

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> d) {
  ComplexMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return HermitianMatrix(std::move(m));
}

double HermitianMatrix::trace() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < n(); ++i) sum += m_(i, i).real();
  return sum;
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(a.m_ + b.m_);
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(a.m_ - b.m_);
}

HermitianMatrix operator*(double s, const HermitianMatrix& a) { return HermitianMatrix(s * a.m_); }

double max_abs_diff(const HermitianMatrix& a, const HermitianMatrix& b) {
  return max_abs_diff(a.matrix(), b.matrix());
}

HermitianMatrix hermitize(const ComplexMatrix& m) {
  const std::size_t n = m.n();
  if (n == 0) throw Error(ErrorKind::NonSquare, "empty matrix");
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const Complex upper = m(i, j);
      const Complex lower = m(j, i);
      if (!std::isfinite(upper.real()) || !std::isfinite(upper.imag()) ||
          !std::isfinite(lower.real()) || !std::isfinite(lower.imag())) {
        std::ostringstream os;
        os << "non-finite entry near (" << i << ", " << j << ")";
        throw Error(ErrorKind::NonFiniteSample, os.str());
      }
      const double asym = std::abs(upper - std::conj(lower));
      if (asym > kHermitianGuard) {
        std::ostringstream os;
        os << "entry (" << i << ", " << j << ") differs from the conjugate of (" << j << ", "
           << i << ") by " << asym;
        throw Error(ErrorKind::NotNumericallyHermitian, os.str());
      }
      const Complex avg = 0.5 * (upper + std::conj(lower));
      if (i == j) {
        out(i, i) = avg.real();
      } else {
        out(i, j) = avg;
        out(j, i) = std::conj(avg);
      }
    }
  }
  return HermitianMatrix(std::move(out));
}

ComplexMatrix SpectralDecomposition::reconstruct() const {
  const std::size_t n = eigenvalues.size();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex sum{};
      for (std::size_t k = 0; k < n; ++k)
        sum += eigenvectors(i, k) * eigenvalues[k] * std::conj(eigenvectors(j, k));
      out(i, j) = sum;
    }
  return out;
}

double SpectralDecomposition::spectral_scale() const {
  double scale = 0.0;
  for (double v : eigenvalues) scale = std::max(scale, std::abs(v));
  return scale;
}

Interval SpectralDecomposition::spectrum_hull() const {
  return Interval(eigenvalues.back(), eigenvalues.front());
}

namespace {

double off_diagonal_mass(const ComplexMatrix& w) {
  double sum = 0.0;
  for (std::size_t i = 0; i < w.n(); ++i)
    for (std::size_t j = 0; j < w.n(); ++j)
      if (i != j) sum += std::norm(w(i, j));
  return std::sqrt(sum);
}

// Annihilates w(p,q) with J = [[c, s e], [-s conj(e), c]] where e is the
// phase of w(p,q); updates w <- J* w J and v <- v J.
void rotate(ComplexMatrix& w, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const Complex apq = w(p, q);
  const double g = std::abs(apq);
  if (g == 0.0) return;
  const Complex e = apq / g;
  const double app = w(p, p).real();
  const double aqq = w(q, q).real();

  const double theta = (aqq - app) / (2.0 * g);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Complex se = s * e;
  const Complex se_bar = s * std::conj(e);

  const std::size_t n = w.n();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex wkp = w(k, p);
    const Complex wkq = w(k, q);
    w(k, p) = c * wkp - se_bar * wkq;
    w(k, q) = se * wkp + c * wkq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex wpk = w(p, k);
    const Complex wqk = w(q, k);
    w(p, k) = c * wpk - se * wqk;
    w(q, k) = se_bar * wpk + c * wqk;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = c * vkp - se_bar * vkq;
    v(k, q) = se * vkp + c * vkq;
  }
  w(p, q) = 0.0;
  w(q, p) = 0.0;
  w(p, p) = app - t * g;
  w(q, q) = aqq + t * g;
}

}  // namespace

SpectralDecomposition eig_hermitian(const HermitianMatrix& a) {
  const std::size_t n = a.n();
  ComplexMatrix w = a.matrix();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double target = 1e-14 * frobenius_norm(w);

  int sweeps = 0;
  for (double off = off_diagonal_mass(w); off > target; off = off_diagonal_mass(w)) {
    if (sweeps == kMaxJacobiSweeps) {
      std::ostringstream os;
      os << "Jacobi did not converge in " << kMaxJacobiSweeps
         << " sweeps; off-diagonal residual " << off << " > " << target;
      throw Error(ErrorKind::NoConvergence, os.str());
    }
    ++sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(w, v, p, q);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return w(i, i).real() > w(j, j).real();
  });

  SpectralDecomposition out;
  out.sweeps = sweeps;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = w(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

std::vector<double> eigenvalues(const HermitianMatrix& a) { return eig_hermitian(a).eigenvalues; }

HermitianMatrix apply_function(const ScalarFunction& f, const SpectralDecomposition& d) {
  const Interval& dom = f.domain();
  std::vector<double> values(d.eigenvalues.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double lambda = d.eigenvalues[k];
    if (!dom.contains(lambda, kDomainSlack)) {
      std::ostringstream os;
      os.precision(17);
      os << "eigenvalue " << lambda << " lies outside the domain " << dom.to_string() << " of "
         << f.id();
      throw Error(ErrorKind::SpectrumOutsideDomain, os.str());
    }
    const double x = std::clamp(lambda, dom.lo(), dom.hi());
    values[k] = f(x);
    if (!std::isfinite(values[k])) {
      std::ostringstream os;
      os.precision(17);
      os << f.id() << "(" << x << ") is not finite";
      throw Error(ErrorKind::NonFiniteSample, os.str());
    }
  }
  SpectralDecomposition fd{values, d.eigenvectors, d.sweeps};
  return hermitize(fd.reconstruct());
}

HermitianMatrix apply_function(const ScalarFunction& f, const HermitianMatrix& a) {
  return apply_function(f, eig_hermitian(a));
}

HermitianMatrix matrix_log(const HermitianMatrix& a) {
  const SpectralDecomposition d = eig_hermitian(a);
  const double smallest = d.eigenvalues.back();
  if (!(smallest > kPositivityFloor)) {
    std::ostringstream os;
    os.precision(17);
    os << "smallest eigenvalue " << smallest << " is not above " << kPositivityFloor;
    throw Error(ErrorKind::NotPositiveDefinite, os.str());
  }
  static const ScalarFunction log_fn(
      "log", [](double x) { return std::log(x); }, [](double x) { return 1.0 / x; },
      Interval(kPositivityFloor, INFINITY), FunctionFlags{});
  return apply_function(log_fn, d);
}

HermitianMatrix convex_path(const HermitianMatrix& a, const HermitianMatrix& b, double t) {
  require_same_size(a.n(), b.n(), "convex_path");
  if (!(t >= 0.0 && t <= 1.0)) {
    std::ostringstream os;
    os << "path parameter " << t << " outside [0, 1]";
    throw Error(ErrorKind::ParameterOutOfRange, os.str());
  }
  return (1.0 - t) * a + t * b;
}

}  // namespace matineq
