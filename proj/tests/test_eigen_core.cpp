#include <doctest.h>

#include <algorithm>

#include "support/oracles.hpp"
#include "support/random.hpp"
#include "wstar/eigen_core.hpp"
#include "wstar/errors.hpp"

using namespace wstar;
using wstar::testing::Rng;

namespace {

double reconstruction_residual(const Matrix& h, const HermitianEig<double>& e) {
  const Matrix d = e.vectors * h * e.vectors.adjoint();
  return (d - Matrix(e.values.cast<Complex>().asDiagonal())).cwiseAbs().maxCoeff();
}

double unitarity_defect(const Matrix& v) {
  return (v * v.adjoint() - Matrix::Identity(v.rows(), v.cols())).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("eig_hermitian on small fixed matrices") {
  Matrix h = Matrix::Zero(2, 2);
  h(0, 0) = 1;
  h(1, 1) = 9;
  auto e = eig_hermitian(h);
  CHECK(e.values(0) == 9.0);
  CHECK(e.values(1) == 1.0);
  CHECK(std::abs(e.vectors(0, 1)) == doctest::Approx(1.0));
  CHECK(std::abs(e.vectors(1, 0)) == doctest::Approx(1.0));

  Matrix swap = Matrix::Zero(2, 2);
  swap(0, 1) = swap(1, 0) = 1;
  e = eig_hermitian(swap);
  CHECK(e.values(0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(e.values(1) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(reconstruction_residual(swap, e) < 1e-15);
}

TEST_CASE("eig_hermitian on random Hermitian matrices") {
  Rng rng(21);
  for (int d : {1, 2, 3, 8, 17}) {
    const Matrix h = testing::random_hermitian(rng, d);
    const auto e = eig_hermitian(h);
    CHECK(reconstruction_residual(h, e) <= 1e-9 * (1 + h.norm()));
    CHECK(unitarity_defect(e.vectors) <= 1e-10);
    std::vector<double> ours(e.values.data(), e.values.data() + d);
    CHECK(testing::sorted_distance(ours, testing::reference_spectrum(h)) < 1e-10 * (1 + h.norm()));
    CHECK(std::is_sorted(ours.rbegin(), ours.rend()));
  }
}

TEST_CASE("eig_hermitian handles degenerate spectra") {
  Rng rng(22);
  Eigen::VectorXcd values(5);
  values << 2, 2, 2, -1, -1;
  const Matrix h = testing::random_with_spectrum(rng, values);
  const auto e = eig_hermitian(h);
  CHECK(reconstruction_residual(h, e) < 1e-12);
  CHECK(unitarity_defect(e.vectors) < 1e-12);
  CHECK(e.values(0) == doctest::Approx(2.0));
  CHECK(e.values(4) == doctest::Approx(-1.0));

  const auto ident = eig_hermitian(Matrix::Identity(4, 4));
  CHECK(ident.sweeps == 0);
  CHECK(unitarity_defect(ident.vectors) == 0.0);
}

TEST_CASE("eig_hermitian is deterministic and phase-normalized") {
  Rng rng(23);
  const Matrix h = testing::random_hermitian(rng, 6);
  const auto a = eig_hermitian(h);
  const auto b = eig_hermitian(h);
  CHECK(a.values == b.values);
  CHECK(a.vectors == b.vectors);
  for (Eigen::Index r = 0; r < a.vectors.rows(); ++r) {
    Eigen::Index c = 0;
    while (std::abs(a.vectors(r, c)) <= 1e-10) ++c;
    CHECK(a.vectors(r, c).imag() == doctest::Approx(0.0));
    CHECK(a.vectors(r, c).real() > 0);
  }
}

TEST_CASE("eigenvalues are invariant under unitary conjugation") {
  Rng rng(24);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = rng.integer(2, 12);
    const Matrix h = testing::random_hermitian(rng, d);
    const Matrix u = testing::random_unitary(rng, d);
    const auto a = eig_hermitian(h);
    const auto b = eig_hermitian(Matrix(u * h * u.adjoint()));
    CHECK((a.values - b.values).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("moment identities sum lambda^m = tr(H^m)") {
  Rng rng(25);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix h = testing::random_hermitian(rng, rng.integer(1, 15));
    const auto e = eig_hermitian(h);
    Matrix power = Matrix::Identity(h.rows(), h.cols());
    for (int m = 1; m <= 3; ++m) {
      power = (power * h).eval();
      const double lhs = e.values.array().pow(m).sum();
      const double rhs = power.trace().real();
      CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("eig_hermitian input validation and failure modes") {
  Matrix nonherm = Matrix::Zero(2, 2);
  nonherm(0, 1) = 1;
  CHECK_THROWS_AS(eig_hermitian(nonherm), DomainError);
  CHECK_THROWS_AS(eig_hermitian(Matrix::Zero(2, 3)), ShapeError);

  Rng rng(26);
  const Matrix h = testing::random_hermitian(rng, 5);
  CHECK_THROWS_AS(eig_hermitian(h, 1e-10, JacobiOptions{0}), ConvergenceError);
}

TEST_CASE("eig_hermitian is generic in the scalar type") {
  Eigen::MatrixXd real(3, 3);
  real << 2, 1, 0, 1, 2, 1, 0, 1, 2;
  const auto e = eig_hermitian(real);
  CHECK(e.values(0) == doctest::Approx(2 + std::sqrt(2.0)));
  CHECK(e.values(2) == doctest::Approx(2 - std::sqrt(2.0)));

  const Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic> wide =
      real.cast<std::complex<long double>>();
  const auto w = eig_hermitian(wide);
  CHECK(static_cast<double>(w.values(1)) == doctest::Approx(2.0));
}

TEST_CASE("eig_normal") {
  SUBCASE("diagonal complex matrix") {
    Eigen::VectorXcd d(3);
    d << Complex(1, 2), Complex(-1, 0), Complex(0, -3);
    const Matrix n = d.asDiagonal();
    const auto e = eig_normal(n);
    CHECK(testing::multiset_distance({d.data(), d.data() + 3}, {e.values.data(), e.values.data() + 3}) < 1e-14);
    // The unitary is a permutation.
    CHECK((e.vectors.cwiseAbs().array() - e.vectors.cwiseAbs().array().round()).abs().maxCoeff() < 1e-14);
  }
  SUBCASE("i times identity") {
    const Matrix n = Complex(0, 1) * Matrix::Identity(4, 4);
    const auto e = eig_normal(n);
    for (Eigen::Index i = 0; i < 4; ++i) CHECK(std::abs(e.values(i) - Complex(0, 1)) < 1e-15);
  }
  SUBCASE("random normal matrices") {
    Rng rng(27);
    for (int trial = 0; trial < 10; ++trial) {
      const int d = rng.integer(1, 10);
      Eigen::VectorXcd values(d);
      for (int i = 0; i < d; ++i) values(i) = rng.complex();
      const Matrix n = testing::random_with_spectrum(rng, values);
      const auto e = eig_normal(n);
      CHECK(testing::multiset_distance({values.data(), values.data() + d},
                                       {e.values.data(), e.values.data() + d}) < 1e-8);
      const Matrix diag = e.vectors * n * e.vectors.adjoint();
      CHECK((diag - Matrix(e.values.asDiagonal())).cwiseAbs().maxCoeff() < 1e-10);
      CHECK(unitarity_defect(e.vectors) < 1e-10);
    }
  }
  SUBCASE("shared real parts") {
    Rng rng(28);
    Eigen::VectorXcd values(4);
    values << Complex(1, 1), Complex(1, -1), Complex(1, 2), Complex(-2, 0);
    const Matrix n = testing::random_with_spectrum(rng, values);
    const auto e = eig_normal(n);
    CHECK(testing::multiset_distance({values.data(), values.data() + 4}, {e.values.data(), e.values.data() + 4}) <
          1e-10);
  }
  Matrix jordan = Matrix::Zero(2, 2);
  jordan(0, 1) = 1;
  CHECK_THROWS_AS(eig_normal(jordan), DomainError);
}
