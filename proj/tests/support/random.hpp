#pragma once

// Seeded generators for property-style tests.

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/QR>

#include "wstar/operator.hpp"

namespace wstar::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double normal() { return normal_(gen_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  Complex complex() { return {normal(), normal()}; }

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

inline Matrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = rng.complex();
  return m;
}

inline Matrix random_hermitian(Rng& rng, Eigen::Index d) {
  const Matrix m = random_matrix(rng, d, d);
  return 0.5 * (m + m.adjoint());
}

inline Matrix random_unitary(Rng& rng, Eigen::Index d) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(rng, d, d));
  return qr.householderQ() * Matrix::Identity(d, d);
}

/// U diag(values) U^* for a random unitary U.
inline Matrix random_with_spectrum(Rng& rng, const Eigen::VectorXcd& values) {
  const Matrix u = random_unitary(rng, values.size());
  return u * values.asDiagonal() * u.adjoint();
}

inline AlgebraElement random_element(Rng& rng, const AlgebraShape& shape) {
  std::vector<Matrix> blocks;
  for (int k : shape.block_sizes()) blocks.push_back(random_matrix(rng, k, k));
  return AlgebraElement(shape, std::move(blocks));
}

inline AlgebraElement random_self_adjoint(Rng& rng, const AlgebraShape& shape) {
  std::vector<Matrix> blocks;
  for (int k : shape.block_sizes()) blocks.push_back(random_hermitian(rng, k));
  return AlgebraElement(shape, std::move(blocks));
}

inline AlgebraElement random_positive(Rng& rng, const AlgebraShape& shape) {
  const AlgebraElement a = random_element(rng, shape);
  return a * adjoint(a);
}

inline AlgebraElement random_unitary_element(Rng& rng, const AlgebraShape& shape) {
  std::vector<Matrix> blocks;
  for (int k : shape.block_sizes()) blocks.push_back(random_unitary(rng, k));
  return AlgebraElement(shape, std::move(blocks));
}

inline ModuleElement random_vector(Rng& rng, const HilbertModule& module) {
  std::vector<AlgebraElement> coords;
  for (int i = 0; i < module.rank(); ++i) coords.push_back(random_element(rng, module.shape()));
  return ModuleElement(module, std::move(coords));
}

inline ModuleOperator random_operator(Rng& rng, const HilbertModule& module) {
  std::vector<AlgebraElement> entries;
  for (int i = 0; i < module.rank() * module.rank(); ++i) entries.push_back(random_element(rng, module.shape()));
  return ModuleOperator(module, std::move(entries));
}

inline ModuleOperator random_self_adjoint_operator(Rng& rng, const HilbertModule& module) {
  const ModuleOperator t = random_operator(rng, module);
  return Complex(0.5) * (t + adjoint(t));
}

/// theta_{x,x} - theta_{y,y} + theta_{z,z}: self-adjoint, generically
/// indefinite and of low rank once n k exceeds three.
inline ModuleOperator random_low_rank_self_adjoint(Rng& rng, const HilbertModule& module) {
  const ModuleElement x = random_vector(rng, module), y = random_vector(rng, module);
  std::vector<Matrix> first_row;
  for (int k : module.shape().block_sizes()) {
    Matrix m = Matrix::Zero(k, k);
    m(0, 0) = 1;
    first_row.push_back(m);
  }
  const AlgebraElement e11(module.shape(), std::move(first_row));
  const ModuleElement z = e11 * random_vector(rng, module);
  return theta(x, x) - theta(y, y) + theta(z, z);
}

inline ModuleOperator random_positive_definite_operator(Rng& rng, const HilbertModule& module) {
  const ModuleOperator t = random_operator(rng, module);
  return compose(adjoint(t), t) + Complex(0.1) * ModuleOperator::identity(module);
}

inline ModuleOperator random_normal_operator(Rng& rng, const HilbertModule& module) {
  std::vector<Matrix> blocks;
  for (int k : module.shape().block_sizes()) {
    const Eigen::Index d = module.rank() * k;
    Eigen::VectorXcd values(d);
    for (Eigen::Index i = 0; i < d; ++i) values(i) = rng.complex();
    blocks.push_back(random_with_spectrum(rng, values));
  }
  return ModuleOperator::from_flattened(module, blocks);
}

/// The algebra shapes exercised by the property suites.
inline std::vector<AlgebraShape> suite_shapes() {
  return {AlgebraShape{2}, AlgebraShape{2, 3}, AlgebraShape{1, 1, 1, 1}, AlgebraShape{2, 1, 3}};
}

}  // namespace wstar::testing
