#include <doctest.h>

#include "courant/linalg.hpp"

using namespace courant;

namespace {

Matrix from(std::initializer_list<std::initializer_list<const char*>> rows) {
  int r = static_cast<int>(rows.size());
  int c = static_cast<int>(rows.begin()->size());
  Matrix m(r, c);
  int i = 0;
  for (auto row : rows) {
    int j = 0;
    for (auto e : row) m(i, j++) = parse_scalar(e, 3);
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("determinant and inverse over rational functions") {
  Matrix m = from({{"x1", "1"}, {"x2", "x1"}});
  CHECK(determinant(m) == parse_scalar("x1^2 - x2", 3));
  Matrix inv = inverse(m);
  CHECK(m * inv == Matrix::identity(2));
  CHECK(inv * m == Matrix::identity(2));
  CHECK_THROWS_AS(inverse(from({{"x1", "x2"}, {"2*x1", "2*x2"}})), DomainError);
}

TEST_CASE("rank with lexicographic pivots") {
  Matrix m = from({{"0", "x1", "2*x1", "1"}, {"0", "1", "2", "x2"}});
  RowEchelon e = row_reduce(m);
  CHECK(e.pivots == std::vector<int>{1, 3});
  CHECK(rank(m) == 2);
  CHECK(rank(Matrix(3, 3)) == 0);
}

TEST_CASE("solve sets free variables to zero") {
  Matrix a = from({{"1", "1", "0"}, {"0", "0", "1"}});
  Matrix b = from({{"x1"}, {"x2"}});
  auto x = solve(a, b);
  REQUIRE(x);
  CHECK((*x)(0, 0) == parse_scalar("x1", 3));
  CHECK((*x)(1, 0).is_zero());
  CHECK((*x)(2, 0) == parse_scalar("x2", 3));
  CHECK(a * *x == b);
  Matrix inconsistent = from({{"1", "1"}, {"2", "2"}});
  CHECK_FALSE(solve(inconsistent, from({{"1"}, {"3"}})));
}
