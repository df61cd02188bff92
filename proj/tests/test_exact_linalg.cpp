#include <doctest.h>

#include <limits>

#include "realkn/exact_linalg.hpp"
#include "support.hpp"

using namespace realkn;
using testing_support::random_matrix;
using testing_support::random_unimodular;

namespace {

const IntMatrix T1{{1, 0}, {1, 1}};
const IntMatrix T2{{2, -1}, {1, 0}};
const IntMatrix T3{{1, -1}, {0, 1}};

// Schoolbook product, used as an oracle.
IntMatrix naive_product(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Int s = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

// Cofactor expansion, independent of the library's elimination.
Int cofactor_det(const IntMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 1) return a(0, 0);
  if (n == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  Int d = 0;
  for (std::size_t j = 0; j < n; ++j) {
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = a(r, c);
    d += (j % 2 ? -1 : 1) * a(0, j) * cofactor_det(minor);
  }
  return d;
}

GF2Vector gf2_apply(const GF2Matrix& a, const GF2Vector& x) {
  GF2Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    bool s = false;
    for (std::size_t j = 0; j < a.cols(); ++j) s ^= a(i, j) && x[j];
    y.set(i, s);
  }
  return y;
}

}  // namespace

TEST_CASE("mat_mul examples") {
  CHECK(mat_mul(IntMatrix::identity(2), T1) == T1);
  CHECK(mat_mul(T1, T3) == IntMatrix{{1, -1}, {1, 0}});
  CHECK(mat_pow(IntMatrix{{1, -1}, {1, 0}}, 12) == IntMatrix::identity(2));
  CHECK(mat_pow(IntMatrix{{1, -1}, {1, 0}}, 6) == IntMatrix::identity(2));
  CHECK(mat_pow(IntMatrix{{1, -1}, {1, 0}}, 3) == IntMatrix{{-1, 0}, {0, -1}});
}

TEST_CASE("mat_mul errors") {
  CHECK_THROWS_AS(mat_mul(IntMatrix(2, 3), IntMatrix(2, 3)), Error);
  try {
    mat_mul(IntMatrix(2, 3), IntMatrix(2, 3));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
  const Int big = std::numeric_limits<Int>::max() / 2 + 1;
  IntMatrix a{{big, 0}, {0, 1}};
  try {
    mat_mul(a, IntMatrix{{2, 0}, {0, 1}});
    FAIL("expected overflow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Overflow);
  }
  CHECK_THROWS_AS(checked_add(std::numeric_limits<Int>::max(), 1), Error);
  CHECK_THROWS_AS(checked_neg(std::numeric_limits<Int>::min()), Error);
}

TEST_CASE("mat_mul agrees with the schoolbook product") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto r = static_cast<std::size_t>(testing_support::uniform(rng, 1, 4));
    const auto k = static_cast<std::size_t>(testing_support::uniform(rng, 1, 4));
    const auto c = static_cast<std::size_t>(testing_support::uniform(rng, 1, 4));
    IntMatrix a = random_matrix(rng, r, k, -9, 9), b = random_matrix(rng, k, c, -9, 9);
    CHECK(mat_mul(a, b) == naive_product(a, b));
  }
}

TEST_CASE("unimodular_inverse examples") {
  CHECK(unimodular_inverse(IntMatrix::identity(2)) == IntMatrix::identity(2));
  CHECK(unimodular_inverse(T1) == IntMatrix{{1, 0}, {-1, 1}});
  CHECK(unimodular_inverse(T2) == IntMatrix{{0, 1}, {-1, 2}});
  try {
    unimodular_inverse(IntMatrix{{2, 0}, {0, 1}});
    FAIL("expected NotUnimodular");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotUnimodular);
  }
  CHECK(is_unimodular(T3));
  CHECK_FALSE(is_unimodular(IntMatrix{{2, 1}, {1, 1}, {0, 0}}));
}

TEST_CASE("random unimodular matrices invert exactly") {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = static_cast<std::size_t>(testing_support::uniform(rng, 1, 4));
    IntMatrix a = random_unimodular(rng, n, 8);
    REQUIRE(is_unimodular(a));
    IntMatrix inv = unimodular_inverse(a);
    CHECK(mat_mul(a, inv) == IntMatrix::identity(n));
    CHECK(mat_mul(inv, a) == IntMatrix::identity(n));
  }
}

TEST_CASE("determinant is multiplicative and matches cofactor expansion") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = trial % 2 ? 2 : 3;
    IntMatrix a = random_matrix(rng, n, n, -5, 5), b = random_matrix(rng, n, n, -5, 5);
    CHECK(determinant(a) == cofactor_det(a));
    CHECK(determinant(mat_mul(a, b)) == determinant(a) * determinant(b));
  }
}

TEST_CASE("rank, kernel and lattice bases") {
  CHECK(rank(IntMatrix{{1, 2}, {2, 4}}) == 1);
  CHECK(rank(IntMatrix(3, 3)) == 0);
  CHECK(rank(std::vector<IntVector>{{1, 0, 0}, {0, 1, 0}, {1, 1, 0}}, 3) == 2);

  auto k = integer_kernel(IntMatrix{{1, 1, -1}});
  CHECK(k.size() == 2);
  for (const auto& v : k) {
    CHECK(v[0] + v[1] - v[2] == 0);
    CHECK(is_primitive(v));
  }

  CHECK(extends_to_lattice_basis({{1, 0, 1}}, 3));
  CHECK_FALSE(extends_to_lattice_basis({{2, 0, 0}}, 3));
  CHECK_FALSE(extends_to_lattice_basis({{1, 1}, {1, -1}}, 2));
  CHECK(extends_to_lattice_basis({}, 2));

  std::mt19937 rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix a = random_matrix(rng, 2, 4, -3, 3);
    auto basis = integer_kernel(a);
    CHECK(basis.size() + rank(a) == 4);
    for (const auto& v : basis) CHECK(mat_vec(a, v).is_zero());
  }
}

TEST_CASE("primitive vectors") {
  CHECK(primitive_part(IntVector{4, -6}) == IntVector{2, -3});
  CHECK(content(IntVector{0, 0}) == 0);
  CHECK_THROWS_AS(primitive_part(IntVector{0, 0}), Error);
}

TEST_CASE("gf2_solve examples") {
  auto zero = gf2_solve(GF2Matrix(2, 2), GF2Vector(2));
  REQUIRE(zero);
  CHECK(zero->solution.is_zero());
  CHECK(zero->nullspace_basis.size() == 2);
  CHECK(gf2_rank(zero->nullspace_basis) == 2);

  auto id = gf2_solve(GF2Matrix::identity(2), GF2Vector{1, 0});
  REQUIRE(id);
  CHECK(id->solution == GF2Vector{1, 0});
  CHECK(id->nullspace_basis.empty());

  auto s = gf2_solve(GF2Matrix{{1, 1}, {0, 0}}, GF2Vector{1, 0});
  REQUIRE(s);
  CHECK(s->solution[0] != s->solution[1]);
  REQUIRE(s->nullspace_basis.size() == 1);
  CHECK(s->nullspace_basis[0] == GF2Vector{1, 1});

  CHECK_FALSE(gf2_solve(GF2Matrix{{1, 1}, {1, 1}}, GF2Vector{1, 0}));
  CHECK_THROWS_AS(gf2_solve(GF2Matrix(2, 2), GF2Vector(3)), Error);
}

TEST_CASE("gf2_solve agrees with exhaustive enumeration") {
  std::mt19937 rng(15);
  for (int trial = 0; trial < 300; ++trial) {
    const auto r = static_cast<std::size_t>(testing_support::uniform(rng, 1, 5));
    const auto c = static_cast<std::size_t>(testing_support::uniform(rng, 1, 6));
    GF2Matrix a(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) a.set(i, j, testing_support::uniform(rng, 0, 1));
    GF2Vector b = testing_support::random_bits(rng, r);

    std::size_t solutions = 0, kernel = 0;
    for (std::uint64_t x = 0; x < (1u << c); ++x) {
      GF2Vector v = GF2Vector::from_index(x, c);
      solutions += gf2_apply(a, v) == b;
      kernel += gf2_apply(a, v).is_zero();
    }
    auto got = gf2_solve(a, b);
    CHECK(got.has_value() == (solutions > 0));
    if (!got) continue;
    CHECK(gf2_apply(a, got->solution) == b);
    CHECK(mat_vec(a, got->solution) == b);
    for (const auto& n : got->nullspace_basis) CHECK(gf2_apply(a, n).is_zero());
    CHECK(gf2_rank(got->nullspace_basis) == got->nullspace_basis.size());
    CHECK((std::size_t{1} << got->nullspace_basis.size()) == kernel);
  }
}

TEST_CASE("GF2 vectors and echelon spans") {
  GF2Vector v = GF2Vector::from_index(2, 2);
  CHECK(v == GF2Vector{0, 1});
  CHECK(v.to_index() == 2);
  CHECK((v + v).is_zero());
  CHECK(GF2Vector::reduce(IntVector{3, -2}) == GF2Vector{1, 0});
  CHECK(vec_mat(GF2Vector{0, 1}, GF2Matrix::reduce(T1)) == GF2Vector{1, 1});

  GF2Echelon e(3);
  CHECK(e.insert(GF2Vector{1, 1, 0}));
  CHECK(e.insert(GF2Vector{0, 1, 1}));
  CHECK_FALSE(e.insert(GF2Vector{1, 0, 1}));
  CHECK(e.contains(GF2Vector{1, 0, 1}));
  CHECK_FALSE(e.contains(GF2Vector{1, 0, 0}));
  CHECK(e.dimension() == 2);
}
