#pragma once

// Dense complex Hermitian and normal eigensolvers.
//
// Both solvers return eigenvectors as ROWS of a unitary matrix W, so that
// W * H * W^* is diagonal. Rows are the natural orientation for the module
// code: a module element over M_k is a k x (n k) matrix whose rows are left
// eigenvectors of the flattened operator.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wstar/errors.hpp"

namespace wstar {

template <typename Real>
using ComplexMatrixX = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using ComplexVectorX = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
struct HermitianEig {
  /// Sorted descending.
  Eigen::Matrix<Real, Eigen::Dynamic, 1> values;
  /// Row r is the eigenvector belonging to values[r].
  ComplexMatrixX<Real> vectors;
  int sweeps = 0;
};

template <typename Real>
struct NormalEig {
  ComplexVectorX<Real> values;
  /// Unitary U with U * N * U^* = diag(values).
  ComplexMatrixX<Real> vectors;
};

struct JacobiOptions {
  int max_sweeps = 60;
};

namespace detail {

template <typename Real>
Real off_diagonal_norm(const ComplexMatrixX<Real>& a) {
  Real sum = 0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

template <typename Real>
Real max_abs(const ComplexMatrixX<Real>& a) {
  return a.size() == 0 ? Real(0) : a.cwiseAbs().maxCoeff();
}

// Make the first non-negligible component of every row real and positive.
template <typename Real>
void normalize_row_phases(ComplexMatrixX<Real>& rows) {
  for (Eigen::Index r = 0; r < rows.rows(); ++r) {
    const Real row_norm = rows.row(r).norm();
    for (Eigen::Index c = 0; c < rows.cols(); ++c) {
      const Real mag = std::abs(rows(r, c));
      if (mag > Real(1e-10) * row_norm) {
        rows.row(r) *= std::conj(rows(r, c)) / mag;
        break;
      }
    }
  }
}

}  // namespace detail

/// Cyclic complex Jacobi. `tol` bounds the admissible anti-Hermitian part,
/// max|H - H^*| <= tol * (1 + ||H||_F); sweeps run to round-off.
template <typename Derived>
HermitianEig<typename Eigen::NumTraits<typename Derived::Scalar>::Real> eig_hermitian(
    const Eigen::MatrixBase<Derived>& h,
    typename Eigen::NumTraits<typename Derived::Scalar>::Real tol = 1e-10,
    JacobiOptions options = {}) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  using Complex = std::complex<Real>;
  using Matrix = ComplexMatrixX<Real>;

  if (h.rows() != h.cols()) throw ShapeError("eig_hermitian: matrix is not square");
  Matrix a = h.template cast<Complex>();
  if (!a.allFinite()) throw DomainError("eig_hermitian: non-finite entry");
  const Eigen::Index d = a.rows();
  const Real scale = a.norm();
  if (detail::max_abs<Real>(a - a.adjoint()) > tol * (1 + scale))
    throw DomainError("eig_hermitian: matrix is not Hermitian");

  a = Real(0.5) * (a + a.adjoint()).eval();
  Matrix v = Matrix::Identity(d, d);
  const Real eps = std::numeric_limits<Real>::epsilon();
  const Real target = eps * scale;

  int sweep = 0;
  for (;; ++sweep) {
    if (detail::off_diagonal_norm(a) <= target) break;
    if (sweep == options.max_sweeps)
      throw ConvergenceError("eig_hermitian: no convergence after " +
                             std::to_string(options.max_sweeps) + " sweeps");
    for (Eigen::Index p = 0; p + 1 < d; ++p) {
      for (Eigen::Index q = p + 1; q < d; ++q) {
        const Complex g = a(p, q);
        const Real mag = std::abs(g);
        if (mag == Real(0)) continue;
        const Real app = std::real(a(p, p));
        const Real aqq = std::real(a(q, q));
        // Late sweeps: drop entries already below the diagonal's resolution.
        if (sweep > 3 && std::abs(app) + 100 * mag == std::abs(app) &&
            std::abs(aqq) + 100 * mag == std::abs(aqq)) {
          a(p, q) = a(q, p) = Complex(0);
          continue;
        }
        const Real theta = (aqq - app) / (2 * mag);
        Real t;
        if (std::abs(theta) > Real(1e150))
          t = Real(0.5) / theta;
        else
          t = (theta >= 0 ? Real(1) : Real(-1)) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const Real c = 1 / std::sqrt(1 + t * t);
        const Real s = t * c;
        const Complex phase = g / mag;
        const Complex phase_conj = std::conj(phase);

        // a <- G^* a G with G = [[c, s], [-s e^*, c e^*]] on the (p, q) plane.
        for (Eigen::Index r = 0; r < d; ++r) {
          const Complex arp = a(r, p), arq = a(r, q);
          a(r, p) = c * arp - s * phase_conj * arq;
          a(r, q) = s * arp + c * phase_conj * arq;
        }
        for (Eigen::Index col = 0; col < d; ++col) {
          const Complex apc = a(p, col), aqc = a(q, col);
          a(p, col) = c * apc - s * phase * aqc;
          a(q, col) = s * apc + c * phase * aqc;
        }
        a(p, q) = a(q, p) = Complex(0);
        a(p, p) = std::real(a(p, p));
        a(q, q) = std::real(a(q, q));
        for (Eigen::Index r = 0; r < d; ++r) {
          const Complex vrp = v(r, p), vrq = v(r, q);
          v(r, p) = c * vrp - s * phase_conj * vrq;
          v(r, q) = s * vrp + c * phase_conj * vrq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return std::real(a(i, i)) > std::real(a(j, j));
  });

  HermitianEig<Real> out;
  out.values.resize(d);
  out.vectors.resize(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    const Eigen::Index src = order[static_cast<std::size_t>(r)];
    out.values(r) = std::real(a(src, src));
    out.vectors.row(r) = v.col(src).adjoint();
  }
  detail::normalize_row_phases(out.vectors);
  out.sweeps = sweep;
  return out;
}

/// Unitary diagonalization of a normal matrix: diagonalize the Hermitian part
/// (N + N^*)/2, then the skew part (N - N^*)/2i inside each of its
/// (numerically) degenerate eigenspaces.
template <typename Derived>
NormalEig<typename Eigen::NumTraits<typename Derived::Scalar>::Real> eig_normal(
    const Eigen::MatrixBase<Derived>& n,
    typename Eigen::NumTraits<typename Derived::Scalar>::Real tol = 1e-10) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  using Complex = std::complex<Real>;
  using Matrix = ComplexMatrixX<Real>;

  if (n.rows() != n.cols()) throw ShapeError("eig_normal: matrix is not square");
  const Matrix a = n.template cast<Complex>();
  if (!a.allFinite()) throw DomainError("eig_normal: non-finite entry");
  const Real scale = a.norm();
  const Matrix commutator = a * a.adjoint() - a.adjoint() * a;
  if (detail::max_abs<Real>(commutator) > tol * (1 + scale * scale))
    throw DomainError("eig_normal: matrix is not normal");

  const Matrix herm = Real(0.5) * (a + a.adjoint());
  const Matrix skew = (a - a.adjoint()) / Complex(0, 2);
  const auto outer = eig_hermitian(herm);
  Matrix u = outer.vectors;
  const Matrix skew_rotated = u * skew * u.adjoint();

  const Real cluster_gap = std::sqrt(std::numeric_limits<Real>::epsilon()) * (1 + scale);
  const Eigen::Index d = a.rows();
  Eigen::Index start = 0;
  while (start < d) {
    Eigen::Index stop = start + 1;
    while (stop < d && outer.values(stop - 1) - outer.values(stop) <= cluster_gap) ++stop;
    const Eigen::Index m = stop - start;
    if (m > 1) {
      Matrix sub = skew_rotated.block(start, start, m, m);
      sub = Real(0.5) * (sub + sub.adjoint()).eval();
      const auto inner = eig_hermitian(sub);
      u.middleRows(start, m) = (inner.vectors * u.middleRows(start, m)).eval();
    }
    start = stop;
  }
  detail::normalize_row_phases(u);

  NormalEig<Real> out;
  out.values = (u * a * u.adjoint()).diagonal();
  out.vectors = std::move(u);
  return out;
}

}  // namespace wstar
