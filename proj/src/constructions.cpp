#include "wstar/constructions.hpp"

#include <cmath>

#include "wstar/errors.hpp"

namespace wstar {

namespace {

AlgebraElement m2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return AlgebraElement(AlgebraShape{2}, {m});
}

EigenPair pair_of(ModuleElement x, AlgebraElement lambda) {
  AlgebraElement support = inner_product(x, x);
  return EigenPair{std::move(x), std::move(lambda), std::move(support), std::nullopt};
}

}  // namespace

Example8 construct_example8() {
  const AlgebraShape shape{2};
  const HilbertModule module(shape, 2);
  const AlgebraElement zero = AlgebraElement::zero(shape);

  ModuleElement x(module, {m2(1, 0, 0, 3), zero});
  ModuleElement y(module, {zero, m2(2, 0, 0, 2)});
  ModuleOperator k = theta(x, x) + theta(y, y);

  const AlgebraElement lambda_x = m2(1, 0, 0, 9);
  const AlgebraElement lambda_y = m2(4, 0, 0, 4);
  const AlgebraElement lambda_1 = m2(1, 0, 0, 4);
  const AlgebraElement lambda_2 = m2(4, 0, 0, 9);

  EigenFamily generating{"generating pair (x, y)", EigenRelation::left,
                         {pair_of(x, lambda_x), pair_of(y, lambda_y)}};
  EigenFamily unit{"unit pair (x1, x2)", EigenRelation::left,
                   {pair_of(ModuleElement(module, {m2(1, 0, 0, 0), m2(0, 0, 0, 1)}), lambda_1),
                    pair_of(ModuleElement(module, {m2(0, 0, 0, 1), m2(1, 0, 0, 0)}), lambda_2)}};
  EigenFamily invariant{"invariant-submodule pair", EigenRelation::right,
                        {pair_of(ModuleElement(module, {m2(1, 0, 1, 0), m2(0, 1, 0, 1)}), lambda_1),
                         pair_of(ModuleElement(module, {m2(0, 1, 0, 1), m2(1, 0, 1, 0)}), lambda_2)}};

  return Example8{shape,          module,          std::move(k),          std::move(x), std::move(y),
                  std::move(generating), std::move(unit), std::move(invariant)};
}

std::vector<double> geometric_alphas(int n) {
  std::vector<double> out;
  for (int i = 1; i <= n; ++i) out.push_back(std::ldexp(1.0, -i));
  return out;
}

Prop4Construction construct_prop4(int n, const std::vector<double>& alphas) {
  if (n < 2) throw DomainError("construct_prop4: need at least two central projections");
  if (static_cast<int>(alphas.size()) != n)
    throw DomainError("construct_prop4: expected " + std::to_string(n) + " alphas");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 0) || !std::isfinite(alphas[i]))
      throw DomainError("construct_prop4: alphas must be positive");
    if (i > 0 && !(alphas[i] < alphas[i - 1]))
      throw DomainError("construct_prop4: alphas must be strictly decreasing");
  }

  const AlgebraShape shape(std::vector<int>(static_cast<std::size_t>(n), 1));
  const HilbertModule module(shape, n);
  const AlgebraElement one = AlgebraElement::identity(shape);

  std::vector<AlgebraElement> p;
  for (int i = 0; i < n; ++i) {
    std::vector<Matrix> blocks(static_cast<std::size_t>(n), Matrix::Zero(1, 1));
    blocks[static_cast<std::size_t>(i)](0, 0) = 1;
    p.emplace_back(shape, std::move(blocks));
  }
  auto alpha = [&](int i) { return Complex(alphas[static_cast<std::size_t>(i)]); };

  // Row i of the entry array is K(e_i).
  std::vector<AlgebraElement> entries(static_cast<std::size_t>(n * n), AlgebraElement::zero(shape));
  for (int j = 0; j < n; ++j) entries[static_cast<std::size_t>(j)] = alpha(j) * p[static_cast<std::size_t>(j)];
  for (int i = 1; i < n; ++i)
    entries[static_cast<std::size_t>(i * n)] = alpha(i) * p[static_cast<std::size_t>(i)];
  ModuleOperator k(module, std::move(entries));

  const Complex inv_sqrt2(1 / std::sqrt(2.0));
  auto e = [&](int i) { return ModuleElement::basis(module, i); };
  std::vector<EigenPair> expected;
  expected.push_back(pair_of(p[0] * e(0), alpha(0) * p[0]));
  for (int i = 1; i < n; ++i) {
    const auto& pi = p[static_cast<std::size_t>(i)];
    expected.push_back(pair_of(inv_sqrt2 * (pi * (e(0) + e(i))), alpha(i) * pi));
  }
  for (int i = 1; i < n; ++i)
    expected.push_back(pair_of((one - p[static_cast<std::size_t>(i)]) * e(i), AlgebraElement::zero(shape)));
  for (int i = n - 1; i >= 1; --i) {
    const auto& pi = p[static_cast<std::size_t>(i)];
    expected.push_back(pair_of(inv_sqrt2 * (pi * (e(0) - e(i))), -(alpha(i) * pi)));
  }

  return Prop4Construction{shape, module, std::move(k), alphas, std::move(p), std::move(expected)};
}

}  // namespace wstar
