#pragma once

// The free Hilbert A-module A^n with <x, y> = sum_i x_i y_i^*.

#include <ostream>
#include <span>
#include <vector>

#include "wstar/algebra.hpp"

namespace wstar {

class HilbertModule {
 public:
  HilbertModule(AlgebraShape shape, int rank);

  const AlgebraShape& shape() const { return shape_; }
  int rank() const { return rank_; }

  friend bool operator==(const HilbertModule&, const HilbertModule&) = default;

 private:
  AlgebraShape shape_;
  int rank_;
};

class ModuleElement {
 public:
  ModuleElement(HilbertModule module, std::vector<AlgebraElement> coords);

  static ModuleElement zero(const HilbertModule& module);
  /// Standard basis vector e_i, 0-based.
  static ModuleElement basis(const HilbertModule& module, int i);
  /// Inverse of flatten(): one k_j x (n k_j) matrix per algebra block.
  static ModuleElement from_flattened(const HilbertModule& module, std::span<const Matrix> blocks);

  const HilbertModule& module() const { return module_; }
  const AlgebraElement& coord(int i) const { return coords_.at(static_cast<std::size_t>(i)); }
  const std::vector<AlgebraElement>& coords() const { return coords_; }

 private:
  HilbertModule module_;
  std::vector<AlgebraElement> coords_;
};

/// Block j of x as the k_j x (n k_j) matrix [x_1 | x_2 | ... | x_n].
Matrix flatten(const ModuleElement& x, int block);

ModuleElement operator+(const ModuleElement& x, const ModuleElement& y);
ModuleElement operator-(const ModuleElement& x, const ModuleElement& y);
ModuleElement operator*(Complex s, const ModuleElement& x);
/// Left A-action, coordinatewise a * x_i.
ModuleElement operator*(const AlgebraElement& a, const ModuleElement& x);

inline ModuleElement left_action(const AlgebraElement& a, const ModuleElement& x) { return a * x; }

/// Coordinatewise x_i * a. Not a module map; used to test right eigen
/// relations K(x) = x a.
ModuleElement right_multiply(const ModuleElement& x, const AlgebraElement& a);

AlgebraElement inner_product(const ModuleElement& x, const ModuleElement& y);

/// ||<x, x>||_A^{1/2}
double module_norm(const ModuleElement& x);

struct NormalizedElement {
  ModuleElement vector;      // x' = s x
  AlgebraElement support;    // q = <x', x'>
};

/// Rescale x so that <x, x> becomes a projection. rank_tol is relative to
/// ||<x, x>||. Throws DomainError for x = 0.
NormalizedElement normalize_to_projection(const ModuleElement& x, double rank_tol = 1e-8);

/// True iff the only z with <z, x_i> = 0 for all i is z = 0, i.e. the
/// flattened map z -> (<z, x_i>)_i has smallest singular value above tol.
bool orthogonal_complement_trivial(std::span<const ModuleElement> xs, double tol);

/// Smallest singular value of that flattened map, over all algebra blocks.
double complement_singular_value(std::span<const ModuleElement> xs);

std::ostream& operator<<(std::ostream& os, const ModuleElement& x);

}  // namespace wstar
