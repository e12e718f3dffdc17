#include <doctest.h>

#include <vector>

#include "support/random.hpp"
#include "wstar/constructions.hpp"
#include "wstar/errors.hpp"
#include "wstar/module.hpp"

using namespace wstar;
using wstar::testing::Rng;

namespace {

double distance(const AlgebraElement& a, const AlgebraElement& b) { return max_abs(a - b); }

double distance(const ModuleElement& x, const ModuleElement& y) {
  double out = 0;
  for (int i = 0; i < x.module().rank(); ++i) out = std::max(out, max_abs(x.coord(i) - y.coord(i)));
  return out;
}

AlgebraElement diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return AlgebraElement(AlgebraShape{2}, {m});
}

}  // namespace

TEST_CASE("inner products in the 2x2 example") {
  const Example8 ex = construct_example8();
  CHECK(distance(inner_product(ex.x, ex.x), diag2(1, 9)) < 1e-15);
  CHECK(distance(inner_product(ex.y, ex.y), diag2(4, 4)) < 1e-15);
  CHECK(max_abs(inner_product(ex.x, ex.y)) == 0.0);
  CHECK(module_norm(ex.x) == doctest::Approx(3.0));
  CHECK(module_norm(ex.y) == doctest::Approx(2.0));

  const auto e1 = ModuleElement::basis(ex.module, 0);
  const auto e2 = ModuleElement::basis(ex.module, 1);
  CHECK(max_abs(inner_product(e1, e2)) == 0.0);
  CHECK(distance(inner_product(e1, e1), AlgebraElement::identity(ex.algebra)) == 0.0);

  // p2 (e1 + e2) has inner product 2 p2.
  const auto p2 = diag2(0, 1);
  const auto v = p2 * (e1 + e2);
  CHECK(distance(inner_product(v, v), Complex(2) * p2) < 1e-15);
}

TEST_CASE("inner product axioms on random elements") {
  Rng rng(31);
  for (const auto& shape : testing::suite_shapes()) {
    for (int n = 1; n <= 3; ++n) {
      const HilbertModule module(shape, n);
      for (int trial = 0; trial < 5; ++trial) {
        const auto x = testing::random_vector(rng, module);
        const auto y = testing::random_vector(rng, module);
        const auto z = testing::random_vector(rng, module);
        const auto a = testing::random_element(rng, shape);
        const Complex c = rng.complex();

        CHECK(distance(inner_product(x + y, z), inner_product(x, z) + inner_product(y, z)) < 1e-12);
        CHECK(distance(inner_product(a * x, y), a * inner_product(x, y)) < 1e-11);
        CHECK(distance(inner_product(c * x, y), c * inner_product(x, y)) < 1e-12);
        CHECK(distance(inner_product(y, x), adjoint(inner_product(x, y))) < 1e-12);
        CHECK(is_positive(inner_product(x, x)));

        // Cauchy-Schwarz: <x,y><y,x> <= ||<y,y>|| <x,x>.
        const auto xy = inner_product(x, y);
        const auto lhs = xy * adjoint(xy);
        const auto rhs = Complex(norm(inner_product(y, y))) * inner_product(x, x);
        CHECK(alg_leq(lhs, rhs, 1e-9 * (1 + norm(rhs))));
      }
    }
  }
}

TEST_CASE("inner product vanishes only at zero") {
  const HilbertModule module(AlgebraShape{2, 1}, 2);
  const auto zero = ModuleElement::zero(module);
  CHECK(max_abs(inner_product(zero, zero)) == 0.0);
  CHECK(module_norm(zero) == 0.0);
  Rng rng(32);
  const auto x = testing::random_vector(rng, module);
  CHECK(module_norm(x) > 0);
}

TEST_CASE("flattening round-trips") {
  Rng rng(33);
  for (const auto& shape : testing::suite_shapes()) {
    const HilbertModule module(shape, 3);
    const auto x = testing::random_vector(rng, module);
    std::vector<Matrix> blocks;
    for (int b = 0; b < shape.num_blocks(); ++b) {
      const Matrix f = flatten(x, b);
      CHECK(f.rows() == shape.block_size(b));
      CHECK(f.cols() == 3 * shape.block_size(b));
      blocks.push_back(f);
    }
    CHECK(distance(ModuleElement::from_flattened(module, blocks), x) == 0.0);
    // Block b of <x,x> is X X^*.
    for (int b = 0; b < shape.num_blocks(); ++b) {
      const Matrix f = flatten(x, b);
      CHECK((inner_product(x, x).block(b) - f * f.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("right multiplication") {
  Rng rng(34);
  const AlgebraShape shape{2, 3};
  const HilbertModule module(shape, 2);
  const auto x = testing::random_vector(rng, module);
  const auto a = testing::random_element(rng, shape);
  const auto xa = right_multiply(x, a);
  for (int i = 0; i < 2; ++i) CHECK(distance(xa.coord(i), x.coord(i) * a) == 0.0);
}

TEST_CASE("normalize_to_projection") {
  const Example8 ex = construct_example8();
  auto n = normalize_to_projection(ex.x);
  CHECK(distance(n.support, AlgebraElement::identity(ex.algebra)) < 1e-12);
  CHECK(distance(inner_product(n.vector, n.vector), n.support) < 1e-12);

  // A vector supported on p2 only.
  const auto p2 = diag2(0, 1);
  const auto v = p2 * (ModuleElement::basis(ex.module, 0) + ModuleElement::basis(ex.module, 1));
  n = normalize_to_projection(v);
  CHECK(distance(n.support, p2) < 1e-12);
  CHECK(is_projection(n.support, 1e-12));

  Rng rng(35);
  for (const auto& shape : testing::suite_shapes()) {
    const HilbertModule module(shape, 2);
    const auto x = testing::random_vector(rng, module);
    n = normalize_to_projection(x);
    CHECK(is_projection(n.support, 1e-10));
    CHECK(distance(inner_product(n.vector, n.vector), n.support) < 1e-10);
  }
  CHECK_THROWS_AS(normalize_to_projection(ModuleElement::zero(ex.module)), DomainError);
}

TEST_CASE("orthogonal complement test") {
  const HilbertModule module(AlgebraShape{2}, 2);
  const std::vector<ModuleElement> basis{ModuleElement::basis(module, 0), ModuleElement::basis(module, 1)};
  CHECK(orthogonal_complement_trivial(basis, 1e-10));
  CHECK(complement_singular_value(basis) == doctest::Approx(1.0));

  const std::vector<ModuleElement> only_first{basis[0]};
  CHECK_FALSE(orthogonal_complement_trivial(only_first, 1e-10));
  CHECK(complement_singular_value(only_first) < 1e-12);

  for (int n : {2, 3, 5}) {
    const auto prop = construct_prop4(n, geometric_alphas(n));
    std::vector<ModuleElement> xs;
    for (const auto& pair : prop.expected) xs.push_back(pair.vector);
    CHECK(orthogonal_complement_trivial(xs, 1e-10));
    xs.pop_back();
    CHECK_FALSE(orthogonal_complement_trivial(xs, 1e-10));
  }
}

TEST_CASE("module shape mismatches are rejected") {
  const HilbertModule a(AlgebraShape{2}, 2);
  const HilbertModule b(AlgebraShape{2}, 3);
  const HilbertModule c(AlgebraShape{3}, 2);
  CHECK_THROWS_AS(ModuleElement::zero(a) + ModuleElement::zero(b), ShapeError);
  CHECK_THROWS_AS(inner_product(ModuleElement::zero(a), ModuleElement::zero(c)), ShapeError);
  CHECK_THROWS_AS(ModuleElement::basis(a, 2), ShapeError);
  CHECK_THROWS_AS(AlgebraElement::identity(AlgebraShape{3}) * ModuleElement::zero(a), ShapeError);
  CHECK_THROWS_AS(ModuleElement(a, {AlgebraElement::zero(AlgebraShape{2})}), ShapeError);
}
