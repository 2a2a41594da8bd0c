#include <catch2/catch_amalgamated.hpp>

#include "logder/logder.hpp"
#include "oracles.hpp"

using namespace logder;

TEST_CASE("rational parsing accepts the documented grammar", "[rational]") {
  REQUIRE(parse_rational("3") == 3);
  REQUIRE(parse_rational("-7") == -7);
  REQUIRE(parse_rational("-7/2") == Rational(-7, 2));
  REQUIRE(parse_rational("0/5") == 0);
  REQUIRE(parse_rational("10/4") == Rational(5, 2));
}

TEST_CASE("rational parsing rejects everything else", "[rational]") {
  for (const char* bad : {"", "-", "1/0", "1/-2", "2/", "/3", "a", "1.5", "+1", "1 ", "1/2/3"})
    REQUIRE_THROWS_AS(parse_rational(bad), std::invalid_argument);
}

TEST_CASE("rational arithmetic is exact", "[rational]") {
  REQUIRE(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  Rational x(1, 10);
  Rational sum = 0;
  for (int i = 0; i < 10; ++i) sum += x;
  REQUIRE(sum == 1);
  REQUIRE(rational_str(Rational(-4, 6)) == "-2/3");
}

TEST_CASE("multivariate polynomial arithmetic", "[mpoly]") {
  const unsigned k = 3;
  const MPoly x = MPoly::variable(k, 0);
  const MPoly y = MPoly::variable(k, 1);
  const MPoly z = MPoly::variable(k, 2);

  const MPoly p = (x + y) * (x - y);
  REQUIRE(p == x * x - y * y);
  REQUIRE(p.degree() == 2);
  REQUIRE(p.coeff({2, 0, 0}) == 1);
  REQUIRE(p.coeff({0, 2, 0}) == -1);
  REQUIRE(p.coeff({1, 1, 0}) == 0);

  REQUIRE(MPoly::zero(k).is_zero());
  REQUIRE(MPoly::zero(k).degree() == -1);
  REQUIRE((p - p).is_zero());

  const MPoly lin = MPoly::linear({Rational(1), Rational(-2), Rational(1, 2)});
  REQUIRE(lin.evaluate({Rational(2), Rational(1), Rational(4)}) == 2);
  REQUIRE((x * y * z).evaluate({3, 5, 7}) == 105);

  REQUIRE(p.scaled(Rational(1, 2)) + p.scaled(Rational(1, 2)) == p);
}

TEST_CASE("polynomial determinant matches the permutation expansion", "[mpoly][oracle]") {
  const unsigned k = 2;
  const MPoly x = MPoly::variable(k, 0);
  const MPoly y = MPoly::variable(k, 1);
  const MPoly one = MPoly::one(k);

  SECTION("1x1 and 2x2") {
    REQUIRE(poly_det({{x}}) == oracle::perm_det({{x}}));
    const std::vector<std::vector<MPoly>> m{{x, y}, {one, x + y}};
    REQUIRE(poly_det(m) == oracle::perm_det(m));
    REQUIRE(poly_det(m) == x * x + x * y - y);
  }

  SECTION("3x3 with repeated rows is zero") {
    const std::vector<std::vector<MPoly>> m{{x, y, one}, {x, y, one}, {y, x, x}};
    REQUIRE(poly_det(m).is_zero());
    REQUIRE(oracle::perm_det(m).is_zero());
  }

  SECTION("4x4 structured entries") {
    std::vector<std::vector<MPoly>> m(4, std::vector<MPoly>(4, MPoly::zero(k)));
    for (unsigned i = 0; i < 4; ++i)
      for (unsigned j = 0; j < 4; ++j) {
        m[i][j] = MPoly::constant(k, Rational(long(i * j + 1), long(i + j + 1)));
        if (i == j) m[i][j] += x;
        if (i + 1 == j) m[i][j] += y * y;
      }
    REQUIRE(poly_det(m) == oracle::perm_det(m));
  }
}

TEST_CASE("rref, rank and kernel", "[qmatrix]") {
  const QMatrix m = QMatrix::from_rows({{1, 2, 3}, {2, 4, 6}, {0, 1, 1}});
  REQUIRE(rank(m) == 2);

  const auto r = rref(m);
  REQUIRE(r.pivots == std::vector<std::size_t>{0, 1});
  // rref is idempotent
  REQUIRE(rref(r.mat).mat.at(0, 0) == r.mat.at(0, 0));

  const auto kern = kernel_basis(m);
  REQUIRE(kern.size() == 1);
  for (const auto& v : kern)
    for (std::size_t row = 0; row < m.rows(); ++row) {
      Rational dot = 0;
      for (std::size_t c = 0; c < m.cols(); ++c) dot += m.at(row, c) * v[c];
      REQUIRE(dot == 0);
    }

  const auto k1 = kernel_basis(QMatrix::from_rows({{1, -1}}));
  REQUIRE(k1 == std::vector<std::vector<Rational>>{{1, 1}});

  REQUIRE(rank(QMatrix::identity(5)) == 5);
  REQUIRE(kernel_basis(QMatrix::identity(3)).empty());
}

TEST_CASE("rank + nullity equals the number of columns", "[qmatrix][property]") {
  // Deterministic pseudo-random small integer matrices.
  unsigned seed = 12345;
  auto next = [&seed] {
    seed = seed * 1103515245u + 12345u;
    return int(seed >> 16) % 7 - 3;
  };
  for (unsigned trial = 0; trial < 20; ++trial) {
    const std::size_t rows = 1 + trial % 5, cols = 1 + (trial / 2) % 5;
    QMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = next();
    REQUIRE(rank(m) + kernel_basis(m).size() == cols);
  }
}

TEST_CASE("row span incremental membership", "[qmatrix]") {
  RowSpan span(3);
  REQUIRE(span.insert({1, 2, 3}));
  REQUIRE(span.insert({0, 1, 1}));
  REQUIRE_FALSE(span.insert({1, 3, 4}));  // sum of the first two
  REQUIRE(span.rank() == 2);
  REQUIRE(span.contains({2, 5, 7}));
  REQUIRE_FALSE(span.contains({0, 0, 1}));
}
