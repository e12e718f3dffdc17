#pragma once

// A-linear operators on A^n, stored as an n x n array of algebra elements
// acting from the right: (T x)_j = sum_i x_i T_ij. Left multiplication by A
// commutes with every such T, so A-linearity holds by construction.
//
// On a finitely generated module every bounded module operator is a finite
// sum of theta-operators, so no separate "compact" flag is carried.

#include <span>
#include <utility>
#include <vector>

#include "wstar/module.hpp"

namespace wstar {

class ModuleOperator {
 public:
  /// `entries` is row-major, entries[i * n + j] = T_ij.
  ModuleOperator(HilbertModule module, std::vector<AlgebraElement> entries);

  static ModuleOperator zero(const HilbertModule& module);
  static ModuleOperator identity(const HilbertModule& module);
  /// Inverse of flatten(): one (n k_j) x (n k_j) matrix per algebra block.
  static ModuleOperator from_flattened(const HilbertModule& module, std::span<const Matrix> blocks);

  const HilbertModule& module() const { return module_; }
  int rank() const { return module_.rank(); }
  const AlgebraElement& entry(int i, int j) const {
    return entries_.at(static_cast<std::size_t>(i * rank() + j));
  }
  const std::vector<AlgebraElement>& entries() const { return entries_; }

  ModuleElement operator()(const ModuleElement& x) const;

 private:
  HilbertModule module_;
  std::vector<AlgebraElement> entries_;
};

/// Block j of T as the (n k_j) x (n k_j) matrix with (i, l) block (T_il)_j,
/// so that flatten(T x, j) = flatten(x, j) * flatten(T, j).
Matrix flatten(const ModuleOperator& t, int block);

/// theta_{x,y}(z) = <z, x> y; entries x_i^* y_j.
ModuleOperator theta(const ModuleElement& x, const ModuleElement& y);

ModuleOperator adjoint(const ModuleOperator& t);

inline ModuleElement op_apply(const ModuleOperator& t, const ModuleElement& x) { return t(x); }

/// (S o T)(x) = S(T(x)).
ModuleOperator compose(const ModuleOperator& s, const ModuleOperator& t);
ModuleOperator operator+(const ModuleOperator& s, const ModuleOperator& t);
ModuleOperator operator-(const ModuleOperator& s, const ModuleOperator& t);
ModuleOperator operator*(Complex c, const ModuleOperator& t);
/// Left multiplication of every entry, a T.
ModuleOperator operator*(const AlgebraElement& a, const ModuleOperator& t);

/// Largest singular value of the flattened action.
double op_norm(const ModuleOperator& t);

/// max |T_ij - (T^*)_ij| entrywise.
double self_adjoint_defect(const ModuleOperator& t);
/// max |(T T^* - T^* T)_ij| entrywise.
double normality_defect(const ModuleOperator& t);
double max_abs(const ModuleOperator& t);

/// T = pT (+) (1 - p)T for a central projection p.
std::pair<ModuleOperator, ModuleOperator> central_decompose(const ModuleOperator& t,
                                                            const AlgebraElement& p,
                                                            double tol = 1e-12);

}  // namespace wstar
