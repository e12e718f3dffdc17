#include "wstar/module.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wstar/errors.hpp"

namespace wstar {

namespace {

void require_same_module(const ModuleElement& x, const ModuleElement& y, const char* what) {
  if (x.module() != y.module()) throw ShapeError(std::string(what) + ": module mismatch");
}

template <typename F>
ModuleElement coordinatewise(const ModuleElement& x, F&& f) {
  std::vector<AlgebraElement> coords;
  coords.reserve(x.coords().size());
  for (const auto& c : x.coords()) coords.push_back(f(c));
  return ModuleElement(x.module(), std::move(coords));
}

}  // namespace

HilbertModule::HilbertModule(AlgebraShape shape, int rank) : shape_(std::move(shape)), rank_(rank) {
  if (rank_ < 1) throw ShapeError("HilbertModule: rank must be positive");
}

ModuleElement::ModuleElement(HilbertModule module, std::vector<AlgebraElement> coords)
    : module_(std::move(module)), coords_(std::move(coords)) {
  if (static_cast<int>(coords_.size()) != module_.rank())
    throw ShapeError("ModuleElement: expected " + std::to_string(module_.rank()) + " coordinates");
  for (const auto& c : coords_)
    if (c.shape() != module_.shape()) throw ShapeError("ModuleElement: coordinate shape mismatch");
}

ModuleElement ModuleElement::zero(const HilbertModule& module) {
  return ModuleElement(module, std::vector<AlgebraElement>(static_cast<std::size_t>(module.rank()),
                                                           AlgebraElement::zero(module.shape())));
}

ModuleElement ModuleElement::basis(const HilbertModule& module, int i) {
  if (i < 0 || i >= module.rank()) throw ShapeError("ModuleElement::basis: index out of range");
  std::vector<AlgebraElement> coords(static_cast<std::size_t>(module.rank()),
                                     AlgebraElement::zero(module.shape()));
  coords[static_cast<std::size_t>(i)] = AlgebraElement::identity(module.shape());
  return ModuleElement(module, std::move(coords));
}

ModuleElement ModuleElement::from_flattened(const HilbertModule& module,
                                            std::span<const Matrix> blocks) {
  const AlgebraShape& shape = module.shape();
  const int n = module.rank();
  if (static_cast<int>(blocks.size()) != shape.num_blocks())
    throw ShapeError("from_flattened: wrong number of blocks");
  std::vector<std::vector<Matrix>> per_coord(static_cast<std::size_t>(n));
  for (int j = 0; j < shape.num_blocks(); ++j) {
    const int k = shape.block_size(j);
    const Matrix& m = blocks[static_cast<std::size_t>(j)];
    if (m.rows() != k || m.cols() != n * k) throw ShapeError("from_flattened: block size mismatch");
    for (int i = 0; i < n; ++i) per_coord[static_cast<std::size_t>(i)].push_back(m.middleCols(i * k, k));
  }
  std::vector<AlgebraElement> coords;
  for (auto& blks : per_coord) coords.emplace_back(shape, std::move(blks));
  return ModuleElement(module, std::move(coords));
}

Matrix flatten(const ModuleElement& x, int block) {
  const int k = x.module().shape().block_size(block);
  const int n = x.module().rank();
  Matrix out(k, n * k);
  for (int i = 0; i < n; ++i) out.middleCols(i * k, k) = x.coord(i).block(block);
  return out;
}

ModuleElement operator+(const ModuleElement& x, const ModuleElement& y) {
  require_same_module(x, y, "add");
  std::vector<AlgebraElement> coords;
  for (int i = 0; i < x.module().rank(); ++i) coords.push_back(x.coord(i) + y.coord(i));
  return ModuleElement(x.module(), std::move(coords));
}

ModuleElement operator-(const ModuleElement& x, const ModuleElement& y) {
  require_same_module(x, y, "subtract");
  std::vector<AlgebraElement> coords;
  for (int i = 0; i < x.module().rank(); ++i) coords.push_back(x.coord(i) - y.coord(i));
  return ModuleElement(x.module(), std::move(coords));
}

ModuleElement operator*(Complex s, const ModuleElement& x) {
  return coordinatewise(x, [s](const AlgebraElement& c) { return s * c; });
}

ModuleElement operator*(const AlgebraElement& a, const ModuleElement& x) {
  if (a.shape() != x.module().shape()) throw ShapeError("left_action: shape mismatch");
  return coordinatewise(x, [&a](const AlgebraElement& c) { return a * c; });
}

ModuleElement right_multiply(const ModuleElement& x, const AlgebraElement& a) {
  if (a.shape() != x.module().shape()) throw ShapeError("right_multiply: shape mismatch");
  return coordinatewise(x, [&a](const AlgebraElement& c) { return c * a; });
}

AlgebraElement inner_product(const ModuleElement& x, const ModuleElement& y) {
  require_same_module(x, y, "inner_product");
  AlgebraElement out = AlgebraElement::zero(x.module().shape());
  for (int i = 0; i < x.module().rank(); ++i) out = out + x.coord(i) * adjoint(y.coord(i));
  return out;
}

double module_norm(const ModuleElement& x) { return std::sqrt(norm(inner_product(x, x))); }

NormalizedElement normalize_to_projection(const ModuleElement& x, double rank_tol) {
  const AlgebraElement gram = inner_product(x, x);
  if (norm(gram) == 0.0) throw DomainError("normalize_to_projection: zero element");
  const SqrtPinv root = sqrt_pinv(gram, rank_tol);
  ModuleElement scaled = root.inverse_sqrt * x;
  AlgebraElement support = inner_product(scaled, scaled);
  return {std::move(scaled), std::move(support)};
}

double complement_singular_value(std::span<const ModuleElement> xs) {
  if (xs.empty()) return 0.0;
  const HilbertModule& module = xs.front().module();
  for (const auto& x : xs)
    if (x.module() != module) throw ShapeError("orthogonal_complement_trivial: module mismatch");
  // In block j, z -> (<z, x_i>)_i is Z -> Z [X_1^* ... X_m^*]; row-wise, so
  // its singular values are those of the stacked (n k) x (m k) matrix.
  double smallest = std::numeric_limits<double>::infinity();
  for (int j = 0; j < module.shape().num_blocks(); ++j) {
    const int k = module.shape().block_size(j);
    const auto m = static_cast<Eigen::Index>(xs.size());
    Matrix stacked(module.rank() * k, m * k);
    for (Eigen::Index i = 0; i < m; ++i)
      stacked.middleCols(i * k, k) = flatten(xs[static_cast<std::size_t>(i)], j).adjoint();
    if (stacked.cols() < stacked.rows()) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(stacked);
    smallest = std::min(smallest, svd.singularValues()(stacked.rows() - 1));
  }
  return smallest;
}

bool orthogonal_complement_trivial(std::span<const ModuleElement> xs, double tol) {
  return complement_singular_value(xs) > tol;
}

std::ostream& operator<<(std::ostream& os, const ModuleElement& x) {
  os << '[';
  for (int i = 0; i < x.module().rank(); ++i) os << (i ? ", " : "") << x.coord(i);
  return os << ']';
}

}  // namespace wstar
