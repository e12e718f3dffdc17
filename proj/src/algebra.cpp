#include "wstar/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "wstar/eigen_core.hpp"
#include "wstar/errors.hpp"

namespace wstar {

namespace {

void require_same_shape(const AlgebraElement& a, const AlgebraElement& b, const char* what) {
  if (a.shape() != b.shape()) {
    std::ostringstream msg;
    msg << what << ": shape mismatch " << a.shape() << " vs " << b.shape();
    throw ShapeError(msg.str());
  }
}

template <typename F>
AlgebraElement blockwise(const AlgebraElement& a, F&& f) {
  std::vector<Matrix> blocks;
  blocks.reserve(a.blocks().size());
  for (const auto& blk : a.blocks()) blocks.push_back(f(blk));
  return AlgebraElement(a.shape(), std::move(blocks));
}

template <typename F>
AlgebraElement blockwise(const AlgebraElement& a, const AlgebraElement& b, F&& f) {
  std::vector<Matrix> blocks;
  blocks.reserve(a.blocks().size());
  for (int j = 0; j < a.shape().num_blocks(); ++j) blocks.push_back(f(a.block(j), b.block(j)));
  return AlgebraElement(a.shape(), std::move(blocks));
}

}  // namespace

AlgebraShape::AlgebraShape(std::vector<int> block_sizes) : block_sizes_(std::move(block_sizes)) {
  if (block_sizes_.empty()) throw ShapeError("AlgebraShape: at least one block required");
  for (int k : block_sizes_)
    if (k < 1) throw ShapeError("AlgebraShape: block sizes must be positive");
}

int AlgebraShape::dimension() const {
  return std::accumulate(block_sizes_.begin(), block_sizes_.end(), 0,
                         [](int acc, int k) { return acc + k * k; });
}

std::ostream& operator<<(std::ostream& os, const AlgebraShape& shape) {
  os << '(';
  for (int j = 0; j < shape.num_blocks(); ++j) os << (j ? " + " : "") << 'M' << shape.block_size(j);
  return os << ')';
}

AlgebraElement::AlgebraElement(AlgebraShape shape, std::vector<Matrix> blocks)
    : shape_(std::move(shape)), blocks_(std::move(blocks)) {
  if (static_cast<int>(blocks_.size()) != shape_.num_blocks())
    throw ShapeError("AlgebraElement: wrong number of blocks");
  for (int j = 0; j < shape_.num_blocks(); ++j) {
    const auto& blk = blocks_[static_cast<std::size_t>(j)];
    const int k = shape_.block_size(j);
    if (blk.rows() != k || blk.cols() != k)
      throw ShapeError("AlgebraElement: block " + std::to_string(j) + " is not " +
                       std::to_string(k) + "x" + std::to_string(k));
    if (!blk.allFinite()) throw DomainError("AlgebraElement: non-finite entry");
  }
}

AlgebraElement AlgebraElement::zero(const AlgebraShape& shape) {
  std::vector<Matrix> blocks;
  for (int k : shape.block_sizes()) blocks.push_back(Matrix::Zero(k, k));
  return AlgebraElement(shape, std::move(blocks));
}

AlgebraElement AlgebraElement::identity(const AlgebraShape& shape) {
  return scalar(shape, Complex(1));
}

AlgebraElement AlgebraElement::scalar(const AlgebraShape& shape, Complex value) {
  std::vector<Matrix> blocks;
  for (int k : shape.block_sizes()) blocks.push_back(value * Matrix::Identity(k, k));
  return AlgebraElement(shape, std::move(blocks));
}

AlgebraElement AlgebraElement::uniform(const AlgebraShape& shape, const Matrix& block) {
  return AlgebraElement(shape, std::vector<Matrix>(static_cast<std::size_t>(shape.num_blocks()), block));
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_shape(a, b, "add");
  return blockwise(a, b, [](const Matrix& x, const Matrix& y) -> Matrix { return x + y; });
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_shape(a, b, "subtract");
  return blockwise(a, b, [](const Matrix& x, const Matrix& y) -> Matrix { return x - y; });
}

AlgebraElement operator-(const AlgebraElement& a) {
  return blockwise(a, [](const Matrix& x) -> Matrix { return -x; });
}

AlgebraElement operator*(Complex s, const AlgebraElement& a) {
  return blockwise(a, [s](const Matrix& x) -> Matrix { return s * x; });
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_shape(a, b, "alg_mul");
  return blockwise(a, b, [](const Matrix& x, const Matrix& y) -> Matrix { return x * y; });
}

AlgebraElement adjoint(const AlgebraElement& a) {
  return blockwise(a, [](const Matrix& x) -> Matrix { return x.adjoint(); });
}

double norm(const AlgebraElement& a) {
  double out = 0;
  for (const auto& blk : a.blocks()) {
    Eigen::JacobiSVD<Matrix> svd(blk);
    out = std::max(out, svd.singularValues()(0));
  }
  return out;
}

double max_abs(const AlgebraElement& a) {
  double out = 0;
  for (const auto& blk : a.blocks()) out = std::max(out, blk.cwiseAbs().maxCoeff());
  return out;
}

bool is_self_adjoint(const AlgebraElement& a, double tol) {
  return norm(a - adjoint(a)) <= tol;
}

bool is_projection(const AlgebraElement& a, double tol) {
  return norm(a - adjoint(a)) <= tol && norm(a * a - a) <= tol;
}

bool is_central(const AlgebraElement& a, double tol) {
  for (const auto& blk : a.blocks()) {
    const Complex c = blk.trace() / static_cast<double>(blk.rows());
    const Matrix diff = blk - c * Matrix::Identity(blk.rows(), blk.cols());
    if (diff.cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

double default_positivity_tol(const AlgebraElement& a) { return 1e-10 * (1 + norm(a)); }

bool is_positive(const AlgebraElement& a, double tol) {
  if (!is_self_adjoint(a, tol)) throw DomainError("is_positive: element is not self-adjoint");
  for (const auto& blk : a.blocks()) {
    const auto eig = eig_hermitian(blk, 1.0);
    if (eig.values(eig.values.size() - 1) < -tol) return false;
  }
  return true;
}

bool is_positive(const AlgebraElement& a) { return is_positive(a, default_positivity_tol(a)); }

bool alg_leq(const AlgebraElement& a, const AlgebraElement& b, double tol) {
  require_same_shape(a, b, "alg_leq");
  const double sa_tol = 1e-10 * (1 + std::max(norm(a), norm(b)));
  if (!is_self_adjoint(a, std::max(tol, sa_tol)) || !is_self_adjoint(b, std::max(tol, sa_tol)))
    throw DomainError("alg_leq: arguments must be self-adjoint");
  const AlgebraElement diff = b - a;
  const AlgebraElement sym = Complex(0.5) * (diff + adjoint(diff));
  for (const auto& blk : sym.blocks()) {
    const auto eig = eig_hermitian(blk, 1.0);
    if (eig.values(eig.values.size() - 1) < -tol) return false;
  }
  return true;
}

bool alg_leq(const AlgebraElement& a, const AlgebraElement& b) {
  return alg_leq(a, b, default_positivity_tol(b - a));
}

AlgebraElement center_valued_trace(const AlgebraElement& a) {
  return blockwise(a, [](const Matrix& x) -> Matrix {
    const auto k = x.rows();
    return (x.trace() / static_cast<double>(k)) * Matrix::Identity(k, k);
  });
}

AlgebraElement SpectralDecomposition::reassemble() const {
  AlgebraElement out = AlgebraElement::zero(projections.front().shape());
  for (std::size_t i = 0; i < eigenvalues.size(); ++i)
    out = out + Complex(eigenvalues[i]) * projections[i];
  return out;
}

SpectralDecomposition spectral_decomposition(const AlgebraElement& a, double merge_tol) {
  const double scale = norm(a);
  if (!is_self_adjoint(a, 1e-10 * (1 + scale)))
    throw DomainError("spectral_decomposition: element is not self-adjoint");
  if (merge_tol < 0) merge_tol = 1e-9 * scale;

  struct Scalar {
    double value;
    int block;
    Eigen::Index row;
  };
  const AlgebraShape& shape = a.shape();
  std::vector<HermitianEig<double>> eigs;
  std::vector<Scalar> all;
  for (int j = 0; j < shape.num_blocks(); ++j) {
    eigs.push_back(eig_hermitian(a.block(j), 1.0));
    for (Eigen::Index r = 0; r < eigs.back().values.size(); ++r)
      all.push_back({eigs.back().values(r), j, r});
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const Scalar& x, const Scalar& y) { return x.value > y.value; });

  SpectralDecomposition out;
  std::size_t start = 0;
  while (start < all.size()) {
    std::size_t stop = start + 1;
    while (stop < all.size() && all[stop - 1].value - all[stop].value <= merge_tol) ++stop;
    double mean = 0;
    std::vector<Matrix> blocks;
    for (int k : shape.block_sizes()) blocks.push_back(Matrix::Zero(k, k));
    for (std::size_t i = start; i < stop; ++i) {
      mean += all[i].value;
      const auto row = eigs[static_cast<std::size_t>(all[i].block)].vectors.row(all[i].row);
      blocks[static_cast<std::size_t>(all[i].block)] += row.adjoint() * row;
    }
    out.eigenvalues.push_back(mean / static_cast<double>(stop - start));
    out.projections.emplace_back(shape, std::move(blocks));
    start = stop;
  }
  return out;
}

SqrtPinv sqrt_pinv(const AlgebraElement& a, double rank_tol) {
  const double scale = norm(a);
  const double zero_cut = rank_tol * scale;
  const double negative_cut = std::max(zero_cut, 1e-10 * (1 + scale));
  if (!is_self_adjoint(a, 1e-10 * (1 + scale)))
    throw DomainError("sqrt_pinv: element is not self-adjoint");

  std::vector<Matrix> s_blocks, q_blocks;
  for (const auto& blk : a.blocks()) {
    const auto k = blk.rows();
    const auto eig = eig_hermitian(blk, 1.0);
    Matrix s = Matrix::Zero(k, k), q = Matrix::Zero(k, k);
    for (Eigen::Index r = 0; r < k; ++r) {
      const double lambda = eig.values(r);
      if (lambda < -negative_cut) throw DomainError("sqrt_pinv: element is not positive");
      if (lambda <= zero_cut) continue;
      const auto row = eig.vectors.row(r);
      const Matrix proj = row.adjoint() * row;
      s += proj / std::sqrt(lambda);
      q += proj;
    }
    s_blocks.push_back(std::move(s));
    q_blocks.push_back(std::move(q));
  }
  return {AlgebraElement(a.shape(), std::move(s_blocks)),
          AlgebraElement(a.shape(), std::move(q_blocks))};
}

namespace {

void print_complex(std::ostream& os, Complex z) {
  const double re = std::abs(z.real()) < 5e-16 ? 0.0 : z.real();
  const double im = z.imag();
  if (std::abs(im) <= 1e-12 * std::max(1.0, std::abs(re))) {
    os << re;
  } else {
    os << re << (im < 0 ? '-' : '+') << std::abs(im) << 'i';
  }
}

}  // namespace

std::ostream& operator<<(std::ostream& os, const AlgebraElement& a) {
  for (int j = 0; j < a.shape().num_blocks(); ++j) {
    if (j) os << " (+) ";
    const Matrix& blk = a.block(j);
    os << '(';
    for (Eigen::Index r = 0; r < blk.rows(); ++r) {
      if (r) os << "; ";
      for (Eigen::Index c = 0; c < blk.cols(); ++c) {
        if (c) os << ' ';
        print_complex(os, blk(r, c));
      }
    }
    os << ')';
  }
  return os;
}

}  // namespace wstar
