#pragma once

// Worked fixtures: the rank-two operator K = theta_{x,x} + theta_{y,y} on
// M_2(C)^2 with its three eigenvector families, and the self-adjoint operator
// on (C^N)^N built from central projections p_n and weights alpha_n.

#include <string>
#include <vector>

#include "wstar/diagonalizer.hpp"

namespace wstar {

/// How a family's eigenvalues act on its eigenvectors.
enum class EigenRelation {
  left,   // K(x) = Lambda x
  right,  // K(x) = x Lambda
};

struct EigenFamily {
  std::string name;
  EigenRelation relation = EigenRelation::left;
  std::vector<EigenPair> pairs;
};

struct Example8 {
  AlgebraShape algebra;
  HilbertModule module;
  ModuleOperator k;
  ModuleElement x, y;
  /// {x, y}: Lambda_x = diag(1,9), Lambda_y = diag(4,4). Not projections,
  /// not comparable.
  EigenFamily generating;
  /// Unit eigenvectors with Lambda_1 = diag(1,4) <= Lambda_2 = diag(4,9).
  EigenFamily unit;
  /// Eigenvectors spanning K-invariant submodules; drops Lambda p = Lambda.
  /// These satisfy K(x) = x Lambda, not K(x) = Lambda x.
  EigenFamily invariant_submodule;
};

Example8 construct_example8();

struct Prop4Construction {
  AlgebraShape algebra;   // C^N
  HilbertModule module;   // A^N
  ModuleOperator k;
  std::vector<double> alphas;
  /// p_n, the n-th minimal central projection (0-based).
  std::vector<AlgebraElement> projections;
  /// p_1 e_1, p_n (e_1 + e_n)/sqrt2, (1 - p_n) e_n, p_n (e_1 - e_n)/sqrt2 for
  /// n >= 2, with eigenvalues alpha_1 p_1, alpha_n p_n, 0, -alpha_n p_n.
  std::vector<EigenPair> expected;
};

/// K(e_1) = sum_n alpha_n p_n e_n, K(e_j) = alpha_j p_j e_1 (j != 1).
/// Throws DomainError unless N >= 2 and alphas are N positive, strictly
/// decreasing values.
Prop4Construction construct_prop4(int n, const std::vector<double>& alphas);

/// alpha_n = 2^{-n}, n = 1..N.
std::vector<double> geometric_alphas(int n);

}  // namespace wstar
