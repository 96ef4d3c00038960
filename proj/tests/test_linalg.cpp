#include <catch_amalgamated.hpp>

#include "dualis/linalg.hpp"

#include <random>

using namespace dualis;

namespace {

Matrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo = -3, int hi = 3) {
  std::uniform_int_distribution<int> d(lo, hi);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

// Cofactor expansion, independent of elimination.
Scalar det_by_minors(const Matrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Scalar s = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 1; i < n; ++i) rows.push_back(i);
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) cols.push_back(k);
    Scalar sub = det_by_minors(m.select_rows(rows).select_columns(cols));
    s += (j % 2 == 0 ? 1 : -1) * m(0, j) * sub;
  }
  return s;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Largest k with a nonzero k x k minor.
std::size_t rank_by_minors(const Matrix& m) {
  for (std::size_t k = std::min(m.rows(), m.cols()); k > 0; --k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(m.rows(), k, 0, cur, rs);
    subsets(m.cols(), k, 0, cur, cs);
    for (const auto& r : rs)
      for (const auto& c : cs)
        if (det_by_minors(m.select_rows(r).select_columns(c)) != 0) return k;
  }
  return 0;
}

bool is_rref(const Matrix& r, const std::vector<std::size_t>& piv) {
  for (std::size_t i = 0; i < piv.size(); ++i) {
    if (r(i, piv[i]) != 1) return false;
    for (std::size_t k = 0; k < r.rows(); ++k)
      if (k != i && r(k, piv[i]) != 0) return false;
    for (std::size_t j = 0; j < piv[i]; ++j)
      if (r(i, j) != 0) return false;
    if (i > 0 && piv[i] <= piv[i - 1]) return false;
  }
  for (std::size_t i = piv.size(); i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j)
      if (r(i, j) != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("scalars print as reduced p/q") {
  CHECK(to_string(Scalar(3)) == "3/1");
  CHECK(to_string(Scalar(-4, 6)) == "-2/3");
  CHECK(parse_scalar("6/4") == Scalar(3, 2));
  CHECK(parse_scalar("-5") == Scalar(-5));
  CHECK_THROWS(parse_scalar("1/0"));
  CHECK_THROWS(parse_scalar("abc"));
}

TEST_CASE("rref of the identity") {
  auto r = rref(Matrix::identity(3));
  CHECK(r.reduced == Matrix::identity(3));
  CHECK(r.pivots == std::vector<std::size_t>{0, 1, 2});
  CHECK(r.transform == Matrix::identity(3));
}

TEST_CASE("rref of a rank one matrix") {
  Matrix m{{2, 4}, {1, 2}};
  auto r = rref(m);
  CHECK(r.reduced == Matrix{{1, 2}, {0, 0}});
  CHECK(r.pivots == std::vector<std::size_t>{0});
  CHECK(r.transform * m == r.reduced);
}

TEST_CASE("rref agrees with the minor-expansion rank on random matrices") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    Matrix m = random_matrix(rng, 5, 7);
    if (trial % 3 == 0) {
      // force dependencies
      for (std::size_t j = 0; j < 7; ++j) m(4, j) = m(0, j) - 2 * m(1, j);
    }
    auto r = rref(m);
    CHECK(r.transform * m == r.reduced);
    CHECK(determinant(r.transform) != 0);
    CHECK(is_rref(r.reduced, r.pivots));
    CHECK(r.pivots.size() == rank_by_minors(m));
    CHECK(rref(r.reduced).reduced == r.reduced);
  }
}

TEST_CASE("determinant matches cofactor expansion") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix m = random_matrix(rng, 4, 4);
    CHECK(determinant(m) == det_by_minors(m));
  }
}

TEST_CASE("kernel and image") {
  auto k = kernel_basis(Matrix(2, 3));
  CHECK(k.dim() == 3);
  CHECK(image_basis(Matrix(2, 3)).dim() == 0);

  Matrix m{{1, 0}, {0, 0}};
  auto ker = kernel_basis(m);
  REQUIRE(ker.dim() == 1);
  CHECK(ker.basis.row(0) == Vector{0, 1});
  auto im = image_basis(m);
  REQUIRE(im.dim() == 1);
  CHECK(im.basis.row(0) == Vector{1, 0});

  std::mt19937 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    std::uniform_int_distribution<int> sz(1, 8);
    std::size_t r = sz(rng), c = sz(rng);
    Matrix a = random_matrix(rng, r, c, -1, 1);
    auto kb = kernel_basis(a);
    for (std::size_t i = 0; i < kb.dim(); ++i) CHECK(is_zero(a * kb.basis.row(i)));
    CHECK(kb.dim() + image_basis(a).dim() == c);
  }
}

TEST_CASE("subspace coordinates round-trip") {
  auto s = Subspace::from_spanning_rows(Matrix{{1, 2, 3}, {2, 4, 6}, {0, 1, 1}}, 3);
  CHECK(s.dim() == 2);
  Vector v{3, 7, 10};
  REQUIRE(s.contains(v));
  CHECK(s.combine(s.coordinates(v)) == v);
  CHECK_FALSE(s.contains(Vector{0, 0, 1}));
}

TEST_CASE("quotient spaces") {
  auto w = Subspace::whole(3);
  auto q0 = quotient_space(w, w);
  CHECK(q0.dim() == 0);

  auto zero = Subspace::from_spanning_rows(Matrix(0, 3), 3);
  auto q1 = quotient_space(w, zero);
  CHECK(q1.dim() == 3);
  CHECK(q1.projection == Matrix::identity(3));

  auto line = Subspace::from_spanning_rows(Matrix{{1, 1, 1}}, 3);
  auto q2 = quotient_space(w, line);
  CHECK(q2.dim() == 2);
  CHECK(is_zero(q2.projection * Vector{1, 1, 1}));
  // projection is the identity on the chosen representatives
  CHECK(q2.projection * q2.representatives.transpose() == Matrix::identity(2));

  auto plane = Subspace::from_spanning_rows(Matrix{{1, 0, 0}, {0, 1, 0}}, 3);
  CHECK_THROWS_AS(quotient_space(plane, Subspace::from_spanning_rows(Matrix{{0, 0, 1}}, 3)), std::invalid_argument);
}

TEST_CASE("characteristic polynomials") {
  CHECK(charpoly(Matrix(2, 2)) == std::vector<Scalar>{1, 0, 0});
  CHECK(charpoly(Matrix{{2, 0}, {0, 3}}) == std::vector<Scalar>{1, -5, 6});
  // companion matrix of x^3 - x - 1
  Matrix comp{{0, 0, 1}, {1, 0, 1}, {0, 1, 0}};
  CHECK(charpoly(comp) == std::vector<Scalar>{1, 0, -1, -1});
  CHECK_THROWS(charpoly(Matrix(2, 3)));

  std::mt19937 rng(5);
  for (std::size_t n = 1; n <= 6; ++n) {
    Matrix m = random_matrix(rng, n, n);
    auto p = charpoly(m);
    CHECK(p.size() == n + 1);
    CHECK(evaluate_polynomial(p, m).is_zero());
    CHECK(p.back() == (n % 2 == 0 ? 1 : -1) * determinant(m));
  }
}

TEST_CASE("inverse and products") {
  Matrix m{{2, 1}, {1, 1}};
  CHECK(inverse(m) * m == Matrix::identity(2));
  CHECK_THROWS_AS(inverse(Matrix{{1, 2}, {2, 4}}), std::invalid_argument);
  CHECK(matrix_power(m, 3) == m * m * m);
  CHECK(matrix_power(m, -1) == inverse(m));
  CHECK(kron(Matrix{{1, 2}}, Matrix{{1}, {3}}) == Matrix{{1, 2}, {3, 6}});
}
