#include "wstar/diagonalizer.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "wstar/eigen_core.hpp"
#include "wstar/errors.hpp"

namespace wstar {

std::string OrderRelation::to_string() const {
  auto name = [](int label) { return label == 0 ? std::string("0") : "L" + std::to_string(label); };
  return name(lower) + " <= " + name(upper);
}

const EigenPair* DiagonalizationResult::find_label(int label) const {
  for (const auto& p : pairs)
    if (p.label == label) return &p;
  return nullptr;
}

bool DiagonalizationResult::all_supports_are_identity(double tol) const {
  return std::all_of(pairs.begin(), pairs.end(), [tol](const EigenPair& p) {
    return norm(p.support - AlgebraElement::identity(p.support.shape())) <= tol;
  });
}

std::vector<std::vector<double>> SlotAssignment::diagonals(const std::vector<double>& scalars) const {
  std::vector<std::vector<double>> out;
  for (const auto& slot : slots) {
    std::vector<double> diag;
    for (int src : slot.sources) diag.push_back(src < 0 ? 0.0 : scalars.at(static_cast<std::size_t>(src)));
    out.push_back(std::move(diag));
  }
  return out;
}

namespace {

int ceil_div(int a, int b) { return (a + b - 1) / b; }

}  // namespace

SlotCounts minimal_slot_counts(const std::vector<double>& scalars, int block_size, int rank,
                               double zero_tol) {
  int positives = 0, negatives = 0;
  for (double v : scalars) {
    if (v > zero_tol) ++positives;
    else if (v < -zero_tol) ++negatives;
  }
  SlotCounts counts;
  counts.positive = ceil_div(positives, block_size);
  counts.negative = ceil_div(negatives, block_size);
  counts.zero = std::max(0, rank - counts.positive - counts.negative);
  return counts;
}

std::vector<std::pair<SlotClass, int>> slot_labels(const SlotCounts& counts) {
  std::vector<std::pair<SlotClass, int>> out;
  std::set<int> used;
  for (int r = 0; r < counts.positive; ++r) {
    out.emplace_back(SlotClass::positive, 2 * r + 1);
    used.insert(2 * r + 1);
  }
  for (int r = 0; r < counts.negative; ++r) {
    out.emplace_back(SlotClass::negative, 2 * r + 2);
    used.insert(2 * r + 2);
  }
  for (int label = 1, placed = 0; placed < counts.zero; ++label) {
    if (used.count(label)) continue;
    out.emplace_back(SlotClass::zero, label);
    ++placed;
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  return out;
}

SlotAssignment assign_slots(const std::vector<double>& scalars, int block_size,
                            const SlotCounts& counts, double zero_tol) {
  std::vector<int> positive, negative, zero;
  for (int i = 0; i < static_cast<int>(scalars.size()); ++i) {
    const double v = scalars[static_cast<std::size_t>(i)];
    if (v > zero_tol) positive.push_back(i);
    else if (v < -zero_tol) negative.push_back(i);
    else zero.push_back(i);
  }
  auto value = [&](int i) { return scalars[static_cast<std::size_t>(i)]; };
  std::stable_sort(positive.begin(), positive.end(), [&](int a, int b) { return value(a) > value(b); });
  std::stable_sort(negative.begin(), negative.end(), [&](int a, int b) { return value(a) < value(b); });
  if (static_cast<int>(positive.size()) > counts.positive * block_size ||
      static_cast<int>(negative.size()) > counts.negative * block_size)
    throw DomainError("assign_slots: slot counts too small for the spectrum");

  SlotAssignment out;
  int positive_ordinal = 0, negative_ordinal = 0;
  for (const auto& [kind, label] : slot_labels(counts)) {
    Slot slot{kind, label, std::vector<int>(static_cast<std::size_t>(block_size), -1)};
    const std::vector<int>* signed_list = nullptr;
    int ordinal = 0;
    if (kind == SlotClass::positive) {
      signed_list = &positive;
      ordinal = positive_ordinal++;
    } else if (kind == SlotClass::negative) {
      signed_list = &negative;
      ordinal = negative_ordinal++;
    }
    if (signed_list) {
      for (int t = 0; t < block_size; ++t) {
        const auto idx = static_cast<std::size_t>(ordinal * block_size + t);
        if (idx < signed_list->size()) slot.sources[static_cast<std::size_t>(t)] = (*signed_list)[idx];
      }
    }
    out.slots.push_back(std::move(slot));
  }

  // Pad with kernel scalars, in label order.
  std::size_t next_zero = 0;
  for (auto& slot : out.slots)
    for (int& src : slot.sources)
      if (src < 0 && next_zero < zero.size()) src = zero[next_zero++];
  return out;
}

SlotAssignment order_eigenvalues(const std::vector<double>& scalars, int block_size, double zero_tol) {
  const int rank = ceil_div(static_cast<int>(scalars.size()), block_size);
  return assign_slots(scalars, block_size, minimal_slot_counts(scalars, block_size, rank, zero_tol),
                      zero_tol);
}

std::vector<OrderRelation> ordering_chain(const std::vector<EigenPair>& pairs, double tol) {
  std::vector<int> odd, even;
  for (const auto& p : pairs) {
    if (!p.label) continue;
    (*p.label % 2 ? odd : even).push_back(*p.label);
  }
  std::sort(odd.begin(), odd.end());
  std::sort(even.begin(), even.end());

  std::vector<OrderRelation> chain;
  for (std::size_t i = 0; i + 1 < even.size(); ++i) chain.push_back({even[i], even[i + 1]});
  if (!even.empty()) chain.push_back({even.back(), 0});
  if (!odd.empty()) chain.push_back({0, odd.back()});
  for (std::size_t i = odd.size(); i-- > 1;) chain.push_back({odd[i], odd[i - 1]});

  if (pairs.empty()) return chain;
  const AlgebraShape& shape = pairs.front().value.shape();
  auto element = [&](int label) -> AlgebraElement {
    if (label == 0) return AlgebraElement::zero(shape);
    for (const auto& p : pairs)
      if (p.label == label) return p.value;
    return AlgebraElement::zero(shape);
  };
  for (auto& rel : chain) {
    try {
      rel.verified = alg_leq(element(rel.lower), element(rel.upper), tol);
    } catch (const DomainError&) {
      rel.verified = false;
    }
  }
  return chain;
}

namespace {

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

EigenPair make_pair(const HilbertModule& module, std::vector<Matrix> vector_blocks,
                    std::vector<Matrix> value_blocks, std::optional<int> label) {
  ModuleElement x = ModuleElement::from_flattened(module, vector_blocks);
  AlgebraElement value(module.shape(), std::move(value_blocks));
  AlgebraElement support = inner_product(x, x);
  return EigenPair{std::move(x), std::move(value), std::move(support), label};
}

}  // namespace

std::vector<std::vector<double>> block_spectra(const ModuleOperator& k) {
  std::vector<std::vector<double>> out;
  for (int b = 0; b < k.module().shape().num_blocks(); ++b) {
    const auto eig = eig_hermitian(hermitian_part(flatten(k, b)), 1.0);
    out.emplace_back(eig.values.data(), eig.values.data() + eig.values.size());
  }
  return out;
}

DiagonalizationResult diagonalize_selfadjoint(const ModuleOperator& k, DiagonalizeOptions options) {
  const double tol = options.tol;
  const double k_norm = op_norm(k);
  if (self_adjoint_defect(k) > tol * (1 + k_norm))
    throw DomainError("diagonalize_selfadjoint: operator is not self-adjoint");
  const double zero_tol = tol * k_norm;

  const HilbertModule& module = k.module();
  const AlgebraShape& shape = module.shape();
  const int n = module.rank();

  // Central blocks are independent; each gets its own scalar eigensystem.
  std::vector<HermitianEig<double>> eigs;
  std::vector<std::vector<double>> scalars;
  SlotCounts global;
  for (int b = 0; b < shape.num_blocks(); ++b) {
    eigs.push_back(eig_hermitian(hermitian_part(flatten(k, b)), 1.0));
    const auto& vals = eigs.back().values;
    scalars.emplace_back(vals.data(), vals.data() + vals.size());
    const SlotCounts c = minimal_slot_counts(scalars.back(), shape.block_size(b), n, zero_tol);
    global.positive = std::max(global.positive, c.positive);
    global.negative = std::max(global.negative, c.negative);
  }
  global.zero = std::max(0, n - global.positive - global.negative);

  std::vector<SlotAssignment> assignments;
  for (int b = 0; b < shape.num_blocks(); ++b)
    assignments.push_back(assign_slots(scalars[static_cast<std::size_t>(b)], shape.block_size(b),
                                       global, zero_tol));

  DiagonalizationResult result;
  result.tolerance_used = tol;
  result.ordered = true;
  const auto labels = slot_labels(global);
  for (std::size_t s = 0; s < labels.size(); ++s) {
    std::vector<Matrix> vector_blocks, value_blocks;
    for (int b = 0; b < shape.num_blocks(); ++b) {
      const int kb = shape.block_size(b);
      const auto& eig = eigs[static_cast<std::size_t>(b)];
      const auto& slot = assignments[static_cast<std::size_t>(b)].slots[s];
      Matrix rows = Matrix::Zero(kb, n * kb);
      Matrix lambda = Matrix::Zero(kb, kb);
      for (int t = 0; t < kb; ++t) {
        const int src = slot.sources[static_cast<std::size_t>(t)];
        if (src < 0) continue;
        rows.row(t) = eig.vectors.row(src);
        lambda(t, t) = eig.values(src);
      }
      vector_blocks.push_back(std::move(rows));
      value_blocks.push_back(std::move(lambda));
    }
    result.pairs.push_back(make_pair(module, std::move(vector_blocks), std::move(value_blocks),
                                     labels[s].second));
  }
  result.ordering_certificate = ordering_chain(result.pairs, tol * (1 + k_norm));
  return result;
}

DiagonalizationResult diagonalize_normal(const ModuleOperator& k, DiagonalizeOptions options) {
  const double tol = options.tol;
  const double k_norm = op_norm(k);
  if (normality_defect(k) > tol * (1 + k_norm * k_norm))
    throw DomainError("diagonalize_normal: operator is not normal");

  const HilbertModule& module = k.module();
  const AlgebraShape& shape = module.shape();
  const int n = module.rank();

  std::vector<NormalEig<double>> eigs;
  for (int b = 0; b < shape.num_blocks(); ++b) eigs.push_back(eig_normal(flatten(k, b), 1.0));

  DiagonalizationResult result;
  result.tolerance_used = tol;
  result.ordered = false;
  for (int s = 0; s < n; ++s) {
    std::vector<Matrix> vector_blocks, value_blocks;
    for (int b = 0; b < shape.num_blocks(); ++b) {
      const int kb = shape.block_size(b);
      const auto& eig = eigs[static_cast<std::size_t>(b)];
      vector_blocks.push_back(eig.vectors.middleRows(s * kb, kb));
      value_blocks.push_back(eig.values.segment(s * kb, kb).asDiagonal());
    }
    result.pairs.push_back(
        make_pair(module, std::move(vector_blocks), std::move(value_blocks), std::nullopt));
  }
  return result;
}

ModuleOperator reconstruct(const DiagonalizationResult& result) {
  if (result.pairs.empty()) throw ShapeError("reconstruct: empty result");
  ModuleOperator out = ModuleOperator::zero(result.pairs.front().vector.module());
  for (const auto& p : result.pairs) out = out + theta(p.vector, p.value * p.vector);
  return out;
}

}  // namespace wstar
