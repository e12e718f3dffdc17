#pragma once

#include <string>
#include <vector>

#include "wstar/constructions.hpp"
#include "wstar/diagonalizer.hpp"

namespace wstar {

struct VerifyOptions {
  /// Absolute bound for every residual.
  double tol = 1e-9;
  /// Relative bound for the moment comparison.
  double moment_tol = 1e-7;
  int max_moment = 6;
};

struct VerificationReport {
  double tol = 0;
  /// max_i ||K(x_i) - Lambda_i x_i||
  double condition_i_residual = 0;
  /// Trivial orthogonal complement of {x_i}.
  bool condition_ii = false;
  double complement_singular_value = 0;
  /// max_{i != j} ||<x_i, x_j>||
  double orthogonality_residual = 0;
  /// max_i of ||p_i - p_i^*|| and ||p_i^2 - p_i||, p_i = <x_i, x_i>.
  double projection_defect = 0;
  bool vectors_nontrivial = false;
  /// max_i ||Lambda_i p_i - Lambda_i||
  double condition_iv_residual = 0;
  bool ordering_checked = false;
  bool ordering_ok = false;
  /// True when the chain was built from derived rather than supplied labels.
  bool ordering_labels_derived = false;
  std::vector<OrderRelation> ordering;
  bool oracle_ok = false;
  double oracle_max_deviation = 0;
  bool overall = false;

  bool condition_i_ok() const { return condition_i_residual <= tol; }
  bool condition_iii_ok() const {
    return orthogonality_residual <= tol && projection_defect <= tol && vectors_nontrivial;
  }
  bool condition_iv_ok() const { return condition_iv_residual <= tol; }
};

/// Checks every clause of the diagonalization conditions, the eigenvalue
/// order chain (self-adjoint results) and the moment oracle.
VerificationReport verify_definition2(const ModuleOperator& k, const DiagonalizationResult& result,
                                      VerifyOptions options = {});

/// Largest relative deviation, over algebra blocks and m = 1..max_moment,
/// between tr(flatten(K)^m) and sum_i tr((p_i Lambda_i p_i)^m). Computed by
/// direct matrix powers; no eigensolver involved.
double moment_deviation(const ModuleOperator& k, const std::vector<EigenPair>& pairs, int max_moment);

bool moment_oracle(const ModuleOperator& k, const DiagonalizationResult& result, int max_moment,
                   double tol);

/// Labels 1, 3, 5, ... for the positive Lambda_i (largest trace first),
/// 2, 4, ... for the negative ones; empty when some Lambda_i is neither.
std::vector<int> derive_order_labels(const std::vector<EigenPair>& pairs, double tol);

/// One named check of a fixture reproduction.
struct CheckLine {
  std::string name;
  double value = 0;
  bool ok = false;
};

std::vector<CheckLine> reproduce_example8(double tol = 1e-12);
std::vector<CheckLine> reproduce_prop4(int n, const std::vector<double>& alphas, double tol = 1e-10);

}  // namespace wstar
