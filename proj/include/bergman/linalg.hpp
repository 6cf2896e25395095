#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace bergman {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using RealOf = typename Eigen::NumTraits<Scalar>::Real;

/// Symmetrized copy (H + H^*) / 2; quadrature-assembled Grams are Hermitian
/// only up to rounding.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> hermitian_part(const Eigen::MatrixBase<Derived>& h) {
  return (h + h.adjoint()) / RealOf<typename Derived::Scalar>(2);
}

/// Truncated whitening of a Hermitian positive semidefinite Gram matrix G:
/// columns of `basis` are coefficient vectors of an orthonormal system for the
/// dominant eigenspace, basis^* G basis = I. Eigenvalues below
/// rel_cutoff * max are dropped.
template <typename Scalar>
struct Whitening {
  DenseMatrix<Scalar> basis;
  DenseVector<RealOf<Scalar>> eigenvalues;  // all eigenvalues, ascending
  Eigen::Index rank = 0;

  RealOf<Scalar> min_eigenvalue() const { return eigenvalues.size() ? eigenvalues(0) : 0; }
  RealOf<Scalar> max_eigenvalue() const {
    return eigenvalues.size() ? eigenvalues(eigenvalues.size() - 1) : 0;
  }
  /// Spectral condition number; infinite when the smallest eigenvalue is not positive.
  RealOf<Scalar> condition() const {
    const auto lo = min_eigenvalue();
    if (!(lo > 0)) return std::numeric_limits<RealOf<Scalar>>::infinity();
    return max_eigenvalue() / lo;
  }
};

template <typename Derived>
Whitening<typename Derived::Scalar> whiten(const Eigen::MatrixBase<Derived>& gram,
                                           RealOf<typename Derived::Scalar> rel_cutoff) {
  using Scalar = typename Derived::Scalar;
  Whitening<Scalar> w;
  const Eigen::Index n = gram.rows();
  if (n == 0) return w;
  Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> es(hermitian_part(gram));
  w.eigenvalues = es.eigenvalues();
  const auto top = w.eigenvalues(n - 1);
  Eigen::Index first = n;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (w.eigenvalues(k) > rel_cutoff * top && w.eigenvalues(k) > 0) {
      first = k;
      break;
    }
  }
  w.rank = n - first;
  w.basis = es.eigenvectors().rightCols(w.rank);
  for (Eigen::Index k = 0; k < w.rank; ++k) {
    w.basis.col(k) /= std::sqrt(w.eigenvalues(first + k));
  }
  return w;
}

/// U f(Lambda) U^* for Hermitian H.
template <typename Derived, typename F>
DenseMatrix<typename Derived::Scalar> hermitian_function(const Eigen::MatrixBase<Derived>& h,
                                                         F&& f) {
  using Scalar = typename Derived::Scalar;
  Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> es(hermitian_part(h));
  DenseVector<RealOf<Scalar>> d = es.eigenvalues().unaryExpr(f);
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

/// Principal square root; negative rounding noise in the spectrum is clamped.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> hermitian_sqrt(const Eigen::MatrixBase<Derived>& h) {
  using Real = RealOf<typename Derived::Scalar>;
  return hermitian_function(h, [](Real x) { return std::sqrt(std::max(x, Real(0))); });
}

/// H^{-1/2}; requires a positive spectrum.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> hermitian_inv_sqrt(const Eigen::MatrixBase<Derived>& h) {
  using Real = RealOf<typename Derived::Scalar>;
  return hermitian_function(h, [](Real x) { return Real(1) / std::sqrt(x); });
}

template <typename Derived>
DenseMatrix<typename Derived::Scalar> hermitian_inverse(const Eigen::MatrixBase<Derived>& h) {
  using Real = RealOf<typename Derived::Scalar>;
  return hermitian_function(h, [](Real x) { return Real(1) / x; });
}

template <typename Derived>
RealOf<typename Derived::Scalar> hermitian_condition(const Eigen::MatrixBase<Derived>& h) {
  using Scalar = typename Derived::Scalar;
  if (h.rows() == 0) return 1;
  Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> es(hermitian_part(h), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const auto lo = ev.cwiseAbs().minCoeff();
  if (!(lo > 0)) return std::numeric_limits<RealOf<Scalar>>::infinity();
  return ev.cwiseAbs().maxCoeff() / lo;
}

/// D^{-1/2} H D^{-1/2} with D = diag(H): removes the arbitrary scaling of the
/// underlying system before conditioning is compared.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> jacobi_scaled(const Eigen::MatrixBase<Derived>& h) {
  using Real = RealOf<typename Derived::Scalar>;
  DenseVector<Real> s = h.diagonal().real().cwiseAbs().cwiseSqrt().cwiseInverse();
  return s.asDiagonal() * hermitian_part(h) * s.asDiagonal();
}

/// Eigenvalues of the pencil A v = lambda B v restricted to the dominant
/// eigenspace of B (truncated at rel_cutoff), ascending.
template <typename DA, typename DB>
DenseVector<RealOf<typename DA::Scalar>> generalized_eigenvalues(
    const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b,
    RealOf<typename DA::Scalar> rel_cutoff) {
  using Scalar = typename DA::Scalar;
  const Whitening<Scalar> w = whiten(b, rel_cutoff);
  const DenseMatrix<Scalar> reduced = w.basis.adjoint() * a * w.basis;
  Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> es(hermitian_part(reduced),
                                                        Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

template <typename DA, typename DB>
RealOf<typename DA::Scalar> relative_difference(const Eigen::MatrixBase<DA>& a,
                                                const Eigen::MatrixBase<DB>& b) {
  const auto scale = std::max(a.norm(), b.norm());
  if (scale == 0) return 0;
  return (a - b).norm() / scale;
}

}  // namespace bergman
