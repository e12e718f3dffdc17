#include "wstar/operator.hpp"

#include <algorithm>

#include "wstar/errors.hpp"

namespace wstar {

namespace {

void require_same_module(const ModuleOperator& s, const ModuleOperator& t, const char* what) {
  if (s.module() != t.module()) throw ShapeError(std::string(what) + ": module mismatch");
}

}  // namespace

ModuleOperator::ModuleOperator(HilbertModule module, std::vector<AlgebraElement> entries)
    : module_(std::move(module)), entries_(std::move(entries)) {
  const auto n = static_cast<std::size_t>(module_.rank());
  if (entries_.size() != n * n)
    throw ShapeError("ModuleOperator: expected " + std::to_string(n * n) + " entries");
  for (const auto& e : entries_)
    if (e.shape() != module_.shape()) throw ShapeError("ModuleOperator: entry shape mismatch");
}

ModuleOperator ModuleOperator::zero(const HilbertModule& module) {
  const auto n = static_cast<std::size_t>(module.rank());
  return ModuleOperator(module, std::vector<AlgebraElement>(n * n, AlgebraElement::zero(module.shape())));
}

ModuleOperator ModuleOperator::identity(const HilbertModule& module) {
  const int n = module.rank();
  std::vector<AlgebraElement> entries;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      entries.push_back(i == j ? AlgebraElement::identity(module.shape())
                               : AlgebraElement::zero(module.shape()));
  return ModuleOperator(module, std::move(entries));
}

ModuleOperator ModuleOperator::from_flattened(const HilbertModule& module,
                                              std::span<const Matrix> blocks) {
  const AlgebraShape& shape = module.shape();
  const int n = module.rank();
  if (static_cast<int>(blocks.size()) != shape.num_blocks())
    throw ShapeError("from_flattened: wrong number of blocks");
  std::vector<std::vector<Matrix>> per_entry(static_cast<std::size_t>(n * n));
  for (int b = 0; b < shape.num_blocks(); ++b) {
    const int k = shape.block_size(b);
    const Matrix& m = blocks[static_cast<std::size_t>(b)];
    if (m.rows() != n * k || m.cols() != n * k) throw ShapeError("from_flattened: block size mismatch");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        per_entry[static_cast<std::size_t>(i * n + j)].push_back(m.block(i * k, j * k, k, k));
  }
  std::vector<AlgebraElement> entries;
  for (auto& blks : per_entry) entries.emplace_back(shape, std::move(blks));
  return ModuleOperator(module, std::move(entries));
}

ModuleElement ModuleOperator::operator()(const ModuleElement& x) const {
  if (x.module() != module_) throw ShapeError("op_apply: module mismatch");
  const int n = rank();
  std::vector<AlgebraElement> coords;
  for (int j = 0; j < n; ++j) {
    AlgebraElement acc = AlgebraElement::zero(module_.shape());
    for (int i = 0; i < n; ++i) acc = acc + x.coord(i) * entry(i, j);
    coords.push_back(std::move(acc));
  }
  return ModuleElement(module_, std::move(coords));
}

Matrix flatten(const ModuleOperator& t, int block) {
  const int k = t.module().shape().block_size(block);
  const int n = t.rank();
  Matrix out(n * k, n * k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.block(i * k, j * k, k, k) = t.entry(i, j).block(block);
  return out;
}

ModuleOperator theta(const ModuleElement& x, const ModuleElement& y) {
  if (x.module() != y.module()) throw ShapeError("theta: module mismatch");
  const int n = x.module().rank();
  std::vector<AlgebraElement> entries;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) entries.push_back(adjoint(x.coord(i)) * y.coord(j));
  return ModuleOperator(x.module(), std::move(entries));
}

ModuleOperator adjoint(const ModuleOperator& t) {
  const int n = t.rank();
  std::vector<AlgebraElement> entries;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) entries.push_back(adjoint(t.entry(j, i)));
  return ModuleOperator(t.module(), std::move(entries));
}

ModuleOperator compose(const ModuleOperator& s, const ModuleOperator& t) {
  require_same_module(s, t, "compose");
  // S(T(x))_j = sum_l (sum_i x_i T_il) S_lj
  const int n = s.rank();
  std::vector<AlgebraElement> entries;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      AlgebraElement acc = AlgebraElement::zero(s.module().shape());
      for (int l = 0; l < n; ++l) acc = acc + t.entry(i, l) * s.entry(l, j);
      entries.push_back(std::move(acc));
    }
  return ModuleOperator(s.module(), std::move(entries));
}

ModuleOperator operator+(const ModuleOperator& s, const ModuleOperator& t) {
  require_same_module(s, t, "add");
  std::vector<AlgebraElement> entries;
  for (std::size_t i = 0; i < s.entries().size(); ++i) entries.push_back(s.entries()[i] + t.entries()[i]);
  return ModuleOperator(s.module(), std::move(entries));
}

ModuleOperator operator-(const ModuleOperator& s, const ModuleOperator& t) {
  require_same_module(s, t, "subtract");
  std::vector<AlgebraElement> entries;
  for (std::size_t i = 0; i < s.entries().size(); ++i) entries.push_back(s.entries()[i] - t.entries()[i]);
  return ModuleOperator(s.module(), std::move(entries));
}

ModuleOperator operator*(Complex c, const ModuleOperator& t) {
  std::vector<AlgebraElement> entries;
  for (const auto& e : t.entries()) entries.push_back(c * e);
  return ModuleOperator(t.module(), std::move(entries));
}

ModuleOperator operator*(const AlgebraElement& a, const ModuleOperator& t) {
  if (a.shape() != t.module().shape()) throw ShapeError("scale: shape mismatch");
  std::vector<AlgebraElement> entries;
  for (const auto& e : t.entries()) entries.push_back(a * e);
  return ModuleOperator(t.module(), std::move(entries));
}

double op_norm(const ModuleOperator& t) {
  double out = 0;
  for (int b = 0; b < t.module().shape().num_blocks(); ++b) {
    Eigen::JacobiSVD<Matrix> svd(flatten(t, b));
    out = std::max(out, svd.singularValues()(0));
  }
  return out;
}

double max_abs(const ModuleOperator& t) {
  double out = 0;
  for (const auto& e : t.entries()) out = std::max(out, max_abs(e));
  return out;
}

double self_adjoint_defect(const ModuleOperator& t) { return max_abs(t - adjoint(t)); }

double normality_defect(const ModuleOperator& t) {
  const ModuleOperator ts = adjoint(t);
  return max_abs(compose(t, ts) - compose(ts, t));
}

std::pair<ModuleOperator, ModuleOperator> central_decompose(const ModuleOperator& t,
                                                            const AlgebraElement& p, double tol) {
  if (p.shape() != t.module().shape()) throw ShapeError("central_decompose: shape mismatch");
  if (!is_projection(p, tol) || !is_central(p, tol))
    throw DomainError("central_decompose: p must be a central projection");
  const AlgebraElement complement = AlgebraElement::identity(p.shape()) - p;
  return {p * t, complement * t};
}

}  // namespace wstar
