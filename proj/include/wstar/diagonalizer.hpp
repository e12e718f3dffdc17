#pragma once

// Diagonalization of self-adjoint and normal module operators on A^n:
// eigenvectors x_i with K(x_i) = Lambda_i x_i, pairwise orthogonal, with
// projection-valued <x_i, x_i> = p_i, Lambda_i p_i = Lambda_i, and a set
// {x_i} whose orthogonal complement is trivial.
//
// Eigenvalues of self-adjoint operators are labelled so that
//
//   Lambda_2 <= Lambda_4 <= ... <= 0 <= ... <= Lambda_3 <= Lambda_1,
//
// odd labels carrying the positive part and even labels the negative part.

#include <optional>
#include <string>
#include <vector>

#include "wstar/operator.hpp"

namespace wstar {

struct EigenPair {
  ModuleElement vector;     // x_i
  AlgebraElement value;     // Lambda_i
  AlgebraElement support;   // p_i = <x_i, x_i>
  /// Position in the order chain; unset when no ordering applies.
  std::optional<int> label;
};

/// lower <= upper, where label 0 stands for the zero element.
struct OrderRelation {
  int lower = 0;
  int upper = 0;
  bool verified = false;

  std::string to_string() const;
  friend bool operator==(const OrderRelation&, const OrderRelation&) = default;
};

struct DiagonalizationResult {
  std::vector<EigenPair> pairs;
  std::vector<OrderRelation> ordering_certificate;
  double tolerance_used = 0;
  /// True for self-adjoint input, where the certificate applies.
  bool ordered = false;

  const EigenPair* find_label(int label) const;
  bool all_supports_are_identity(double tol) const;
};

struct DiagonalizeOptions {
  /// Input check and zero threshold: scalars with |lambda| <= tol * ||K||
  /// are classified as zero.
  double tol = 1e-9;
};

/// Slot layout inside one algebra block: each slot holds k scalar positions,
/// each filled by the index of a scalar eigenvalue or left empty.
enum class SlotClass { positive, negative, zero };

struct Slot {
  SlotClass kind = SlotClass::zero;
  int label = 0;
  /// Index into the block's scalar eigenvalue list, or -1 for an empty
  /// (zero-support) position.
  std::vector<int> sources;
};

struct SlotAssignment {
  std::vector<Slot> slots;
  /// Values per slot as k x k diagonal entries (0 where empty).
  std::vector<std::vector<double>> diagonals(const std::vector<double>& scalars) const;
};

struct SlotCounts {
  int positive = 0;
  int negative = 0;
  int zero = 0;
};

/// Minimal slot counts for one block: ceil(P/k) positive, ceil(Q/k)
/// negative, and enough zero slots to reach `rank` slots in total.
SlotCounts minimal_slot_counts(const std::vector<double>& scalars, int block_size, int rank,
                               double zero_tol);

/// Chain labels for the given counts: positive slots take 1, 3, 5, ...,
/// negative slots 2, 4, ..., zero slots the smallest labels still free.
/// Returned in label order.
std::vector<std::pair<SlotClass, int>> slot_labels(const SlotCounts& counts);

/// Fill slots for one block. Positive scalars (descending) fill positive
/// slots position by position, negative scalars (ascending) fill negative
/// slots, and zero scalars pad the remaining positions in label order.
/// Positions left over are empty.
SlotAssignment assign_slots(const std::vector<double>& scalars, int block_size,
                            const SlotCounts& counts, double zero_tol);

/// Single-block convenience: minimal_slot_counts with rank = 1, then
/// assign_slots.
SlotAssignment order_eigenvalues(const std::vector<double>& scalars, int block_size,
                                 double zero_tol = 0.0);

/// The order chain over the labels present, each relation checked with
/// alg_leq at `tol`.
std::vector<OrderRelation> ordering_chain(const std::vector<EigenPair>& pairs, double tol);

DiagonalizationResult diagonalize_selfadjoint(const ModuleOperator& k, DiagonalizeOptions options = {});
DiagonalizationResult diagonalize_normal(const ModuleOperator& k, DiagonalizeOptions options = {});

/// Per algebra block, the scalar spectrum of the flattened operator
/// (descending, self-adjoint input).
std::vector<std::vector<double>> block_spectra(const ModuleOperator& k);

/// sum_i theta_{x_i, Lambda_i x_i}; equals K for a complete eigensystem.
ModuleOperator reconstruct(const DiagonalizationResult& result);

}  // namespace wstar
