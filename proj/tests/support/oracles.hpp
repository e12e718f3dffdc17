#pragma once

// Reference computations that share no code path with the library's
// eigensolver: Eigen's own SelfAdjointEigenSolver / ComplexEigenSolver.

#include <algorithm>
#include <vector>

#include <Eigen/Eigenvalues>

#include "wstar/diagonalizer.hpp"

namespace wstar::testing {

inline std::vector<double> reference_spectrum(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
  std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Complex> reference_complex_spectrum(const Matrix& m) {
  Eigen::ComplexEigenSolver<Matrix> solver(m, false);
  std::vector<Complex> out(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
  return out;
}

/// Largest distance in an optimal-ish greedy matching of two complex
/// multisets of equal size; infinity on size mismatch.
inline double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0;
  for (const Complex& z : a) {
    auto best = std::min_element(b.begin(), b.end(), [&](const Complex& u, const Complex& v) {
      return std::abs(u - z) < std::abs(v - z);
    });
    worst = std::max(worst, std::abs(*best - z));
    b.erase(best);
  }
  return worst;
}

inline double sorted_distance(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

/// Eigenvalues of each p_i Lambda_i p_i restricted to the range of p_i, per
/// algebra block. Uses Eigen's solver on the compressed blocks.
inline std::vector<Complex> result_spectrum(const DiagonalizationResult& result, int block) {
  std::vector<Complex> out;
  for (const auto& p : result.pairs) {
    const Matrix& proj = p.support.block(block);
    Eigen::SelfAdjointEigenSolver<Matrix> range(0.5 * (proj + proj.adjoint()));
    Matrix basis(proj.rows(), 0);
    for (Eigen::Index c = 0; c < proj.rows(); ++c) {
      if (range.eigenvalues()(c) > 0.5) {
        basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
        basis.col(basis.cols() - 1) = range.eigenvectors().col(c);
      }
    }
    if (basis.cols() == 0) continue;
    const Matrix compressed = basis.adjoint() * p.value.block(block) * basis;
    Eigen::ComplexEigenSolver<Matrix> solver(compressed, false);
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) out.push_back(solver.eigenvalues()(i));
  }
  return out;
}

inline std::vector<Complex> as_complex(const std::vector<double>& v) {
  return {v.begin(), v.end()};
}

}  // namespace wstar::testing
