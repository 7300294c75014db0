#include <functional>
#include <numeric>

#include "doctest.h"
#include "generators.hpp"

#include "brokenlines/linalg.hpp"

using namespace bl;

namespace {

Matrix random_matrix(gen::Rng& rng, int rows, int cols, double density = 0.6) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (gen::coin(rng, density)) m.at(i, j) = gen::signed_value(rng);
    }
  }
  return m;
}

/// Leibniz expansion; fine for n <= 5.
Rational determinant(const Matrix& m) {
  const int n = m.rows();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rational det = 0;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    }
    Rational term = inversions % 2 ? -1 : 1;
    for (int i = 0; i < n; ++i) term *= m.at(i, perm[i]);
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

/// Entry (k, i, j) of the product of unit matrices, as structure constants.
NonunitalAlgebra from_unit_matrices(int size, const std::vector<std::pair<int, int>>& basis) {
  const int d = static_cast<int>(basis.size());
  std::vector<Rational> c(static_cast<std::size_t>(d) * d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      // E_i E_j as a size x size matrix.
      std::vector<std::vector<int>> prod(size, std::vector<int>(size, 0));
      for (int r = 0; r < size; ++r) {
        for (int s = 0; s < size; ++s) {
          for (int t = 0; t < size; ++t) {
            int ei = basis[i] == std::pair{r, t}, ej = basis[j] == std::pair{t, s};
            prod[r][s] += ei * ej;
          }
        }
      }
      for (int k = 0; k < d; ++k) c[(static_cast<std::size_t>(k) * d + i) * d + j] = prod[basis[k].first][basis[k].second];
    }
  }
  return NonunitalAlgebra(d, std::move(c));
}

}  // namespace

TEST_CASE("sparse storage: explicit zeros are invisible") {
  Matrix a(2, 2), b(2, 2);
  a.at(0, 1) = 0;
  CHECK(a == b);
  CHECK(a.is_zero());
  CHECK(a.nonzeros() == 0);
  const Matrix& ca = a;
  CHECK(ca.at(1, 1) == 0);
  CHECK(Matrix::identity(3).is_identity());
  CHECK_FALSE(Matrix::zero(2, 3).is_identity());
  CHECK(Matrix::from_rows({{1, 2}, {0, Rational(1, 2)}}).to_string() == "[1/1 2/1; 0/1 1/2]");
  CHECK_THROWS_AS(Matrix::from_rows({{1, 2}, {3}}), std::invalid_argument);
}

TEST_CASE("products and sums") {
  auto a = Matrix::from_rows({{1, 2}, {3, 4}});
  auto b = Matrix::from_rows({{0, 1}, {1, 0}});
  CHECK(a * b == Matrix::from_rows({{2, 1}, {4, 3}}));
  CHECK(a + b == Matrix::from_rows({{1, 3}, {4, 4}}));
  CHECK(scale(Rational(1, 2), a) == Matrix::from_rows({{Rational(1, 2), 1}, {Rational(3, 2), 2}}));
  CHECK_THROWS_AS(a * Matrix(3, 1), std::invalid_argument);
  CHECK_THROWS_AS(a + Matrix(3, 1), std::invalid_argument);
}

TEST_CASE("tensor: dimensions, units and bifunctoriality (property)") {
  gen::Rng rng(40);
  auto scalar = Matrix::from_rows({{Rational(3)}});
  auto m = random_matrix(rng, 2, 3);
  CHECK(tensor(scalar, m) == scale(3, m));
  CHECK(tensor(m, scalar) == scale(3, m));
  for (int t = 0; t < 100; ++t) {
    int p = gen::uniform(rng, 1, 3), q = gen::uniform(rng, 1, 3), r = gen::uniform(rng, 1, 3);
    int s = gen::uniform(rng, 1, 3), u = gen::uniform(rng, 1, 3), v = gen::uniform(rng, 1, 3);
    auto f = random_matrix(rng, p, q), f2 = random_matrix(rng, q, r);
    auto g = random_matrix(rng, s, u), g2 = random_matrix(rng, u, v);
    auto fg = tensor(f, g);
    CHECK(fg.rows() == p * s);
    CHECK(fg.cols() == q * u);
    CHECK(tensor(f, g) * tensor(f2, g2) == tensor(f * f2, g * g2));
    // Kronecker entries, j fastest.
    for (int i = 0; i < p; ++i) {
      for (int k = 0; k < s; ++k) CHECK(fg.at(i * s + k, 0) == f.at(i, 0) * g.at(k, 0));
    }
    auto h = random_matrix(rng, gen::uniform(rng, 1, 3), gen::uniform(rng, 1, 3));
    CHECK(tensor(tensor(f, g), h) == tensor(f, tensor(g, h)));
  }
  CHECK(tensor_power(m, 0) == Matrix::identity(1));
  CHECK(tensor_power(m, 2) == tensor(m, m));
}

TEST_CASE("associators satisfy the pentagon on dims <= 3") {
  for (int a = 1; a <= 3; ++a) {
    for (int b = 1; b <= 3; ++b) {
      for (int c = 1; c <= 3; ++c) {
        CHECK(associator(a, b, c).is_identity());
        for (int d = 1; d <= 3; ++d) {
          auto lhs = associator(a, b, c * d) * associator(a * b, c, d);
          auto rhs = tensor(Matrix::identity(a), associator(b, c, d)) * associator(a, b * c, d) *
                     tensor(associator(a, b, c), Matrix::identity(d));
          CHECK(lhs == rhs);
        }
      }
    }
  }
}

TEST_CASE("direct sums and distributors") {
  CHECK(direct_sum({}).rows() == 0);
  CHECK(direct_sum({}).cols() == 0);
  gen::Rng rng(41);
  auto f = random_matrix(rng, 2, 2), g = random_matrix(rng, 3, 3);
  auto fg = direct_sum({f, g});
  CHECK(fg.rows() == 5);
  CHECK(fg.at(0, 0) == f.at(0, 0));
  CHECK(fg.at(4, 4) == g.at(2, 2));
  CHECK(fg.at(0, 4) == 0);
  for (int t = 0; t < 60; ++t) {
    int u = gen::uniform(rng, 1, 3), u2 = gen::uniform(rng, 1, 3);
    int r = gen::uniform(rng, 1, 3);
    std::vector<int> vs, ws;
    std::vector<Matrix> gs;
    for (int k = 0; k < r; ++k) {
      vs.push_back(gen::uniform(rng, 1, 3));
      ws.push_back(gen::uniform(rng, 1, 3));
      gs.push_back(random_matrix(rng, ws.back(), vs.back()));
    }
    auto a = random_matrix(rng, u2, u);
    // Naturality: U ⊗ (⊕ V_k) -> ⊕ (U ⊗ V_k).
    std::vector<Matrix> parts;
    for (const auto& gk : gs) parts.push_back(tensor(a, gk));
    CHECK(left_distributor(u2, ws) * tensor(a, direct_sum(gs)) == direct_sum(parts) * left_distributor(u, vs));
    std::vector<Matrix> rparts;
    for (const auto& gk : gs) rparts.push_back(tensor(gk, a));
    CHECK(right_distributor(ws, u2) * tensor(direct_sum(gs), a) == direct_sum(rparts) * right_distributor(vs, u));
    // Dimensions add, then multiply.
    const int total = std::accumulate(vs.begin(), vs.end(), 0);
    CHECK(left_distributor(u, vs).rows() == u * total);
    CHECK(inverse(left_distributor(u, vs)).has_value());
  }
}

TEST_CASE("inverse and rank against the determinant") {
  gen::Rng rng(42);
  for (int t = 0; t < 150; ++t) {
    const int n = gen::uniform(rng, 1, 4);
    auto m = random_matrix(rng, n, n, 0.5);
    auto inv = inverse(m);
    const bool singular = determinant(m) == 0;
    CHECK(inv.has_value() == !singular);
    CHECK((rank(m) == n) == !singular);
    if (inv) {
      CHECK((m * *inv).is_identity());
      CHECK((*inv * m).is_identity());
    }
    auto wide = random_matrix(rng, n, n + 2);
    CHECK(rank(m * wide) <= std::min(rank(m), rank(wide)));
    if (!singular) CHECK(rank(m * wide) == rank(wide));
  }
  CHECK_FALSE(inverse(Matrix(2, 3)).has_value());
  CHECK(rank(Matrix::from_rows({{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("reference algebras") {
  CHECK_FALSE(validate_algebra(zero_algebra(3)).has_value());
  CHECK_FALSE(validate_algebra(rational_algebra()).has_value());
  auto nil = from_unit_matrices(3, {{0, 1}, {0, 2}, {1, 2}});
  CHECK(nil == nilpotent3_algebra());
  CHECK_FALSE(validate_algebra(nil).has_value());
  auto full = from_unit_matrices(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  CHECK(full == matrix2_algebra());
  CHECK_FALSE(validate_algebra(full).has_value());

  // e0 e0 = e1, e1 e0 = e0: (e0 e0) e0 = e0 but e0 (e0 e0) = 0.
  std::vector<Rational> c(8);
  c[(1 * 2 + 0) * 2 + 0] = 1;
  c[(0 * 2 + 1) * 2 + 0] = 1;
  auto v = validate_algebra(NonunitalAlgebra(2, c));
  REQUIRE(v.has_value());
  CHECK(v->i == 0);
  CHECK(v->j == 0);
  CHECK(v->k == 0);

  for (const auto& a : {nil, full, rational_algebra()}) CHECK(NonunitalAlgebra::from_multiplication(a.multiplication()) == a);
  CHECK(builtin_algebra("matrix2") == matrix2_algebra());
  CHECK_FALSE(builtin_algebra("octonions").has_value());
  CHECK_THROWS_AS(NonunitalAlgebra(2, std::vector<Rational>(3)), std::invalid_argument);
}
