#pragma once

// Finite-dimensional W*-algebras A = M_{k_1}(C) (+) ... (+) M_{k_m}(C).
//
// Elements are tuples of dense complex blocks. Every operation here is a pure
// function of immutable values.

#include <complex>
#include <initializer_list>
#include <ostream>
#include <vector>

#include <Eigen/Dense>

namespace wstar {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

class AlgebraShape {
 public:
  explicit AlgebraShape(std::vector<int> block_sizes);
  AlgebraShape(std::initializer_list<int> block_sizes)
      : AlgebraShape(std::vector<int>(block_sizes)) {}

  int num_blocks() const { return static_cast<int>(block_sizes_.size()); }
  int block_size(int j) const { return block_sizes_.at(static_cast<std::size_t>(j)); }
  const std::vector<int>& block_sizes() const { return block_sizes_; }
  /// Complex dimension, sum of k_j^2.
  int dimension() const;

  friend bool operator==(const AlgebraShape&, const AlgebraShape&) = default;

 private:
  std::vector<int> block_sizes_;
};

std::ostream& operator<<(std::ostream& os, const AlgebraShape& shape);

class AlgebraElement {
 public:
  /// Throws ShapeError if a block does not conform, DomainError on NaN/Inf.
  AlgebraElement(AlgebraShape shape, std::vector<Matrix> blocks);

  static AlgebraElement zero(const AlgebraShape& shape);
  static AlgebraElement identity(const AlgebraShape& shape);
  static AlgebraElement scalar(const AlgebraShape& shape, Complex value);
  /// Same complex matrix in every block; all blocks must have its size.
  static AlgebraElement uniform(const AlgebraShape& shape, const Matrix& block);

  const AlgebraShape& shape() const { return shape_; }
  const Matrix& block(int j) const { return blocks_.at(static_cast<std::size_t>(j)); }
  const std::vector<Matrix>& blocks() const { return blocks_; }

 private:
  AlgebraShape shape_;
  std::vector<Matrix> blocks_;
};

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator-(const AlgebraElement& a);
AlgebraElement operator*(Complex s, const AlgebraElement& a);
inline AlgebraElement operator*(const AlgebraElement& a, Complex s) { return s * a; }
/// The algebra product (blockwise matrix product).
AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);

inline AlgebraElement alg_mul(const AlgebraElement& a, const AlgebraElement& b) { return a * b; }

/// Blockwise conjugate transpose.
AlgebraElement adjoint(const AlgebraElement& a);

/// C*-norm: largest singular value over all blocks.
double norm(const AlgebraElement& a);

/// Largest absolute entry over all blocks. Used for residual reporting.
double max_abs(const AlgebraElement& a);

bool is_self_adjoint(const AlgebraElement& a, double tol);
bool is_projection(const AlgebraElement& a, double tol);
/// Every block is a multiple of the identity.
bool is_central(const AlgebraElement& a, double tol);

/// Default positivity tolerance, 1e-10 * (1 + ||a||).
double default_positivity_tol(const AlgebraElement& a);

/// All block eigenvalues >= -tol. Requires a self-adjoint argument.
bool is_positive(const AlgebraElement& a, double tol);
bool is_positive(const AlgebraElement& a);

/// a <= b in the order of the positive cone: b - a is positive. Throws
/// DomainError when either argument is not self-adjoint.
bool alg_leq(const AlgebraElement& a, const AlgebraElement& b, double tol);
bool alg_leq(const AlgebraElement& a, const AlgebraElement& b);

/// Per block (tr(a_j) / k_j) * I.
AlgebraElement center_valued_trace(const AlgebraElement& a);

struct SpectralDecomposition {
  /// Strictly decreasing.
  std::vector<double> eigenvalues;
  /// Mutually orthogonal projections summing to 1_A.
  std::vector<AlgebraElement> projections;

  AlgebraElement reassemble() const;
};

/// a = sum_i lambda_i P_i. Eigenvalues closer than `merge_tol` share a
/// projection; a negative merge_tol selects the default 1e-9 * ||a||.
SpectralDecomposition spectral_decomposition(const AlgebraElement& a, double merge_tol = -1);

struct SqrtPinv {
  AlgebraElement inverse_sqrt;   // s, with s a s = q
  AlgebraElement support;        // q
};

/// Pseudo-inverse square root of a positive element. Eigenvalues below
/// rank_tol * ||a|| count as zero; clearly negative ones raise DomainError.
SqrtPinv sqrt_pinv(const AlgebraElement& a, double rank_tol = 1e-8);

std::ostream& operator<<(std::ostream& os, const AlgebraElement& a);

}  // namespace wstar
