#pragma once

// Exact integer and GF(2) linear algebra.
//
// Conventions: vectors are ROW vectors. A covector acts on a matrix by right
// multiplication, so `vec_mat(v, T)` computes v·T. All integer arithmetic is
// 64-bit and checked; an overflow raises Error(ErrorCode::Overflow) instead of
// wrapping.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <vector>

#include "realkn/error.hpp"

namespace realkn {

using Int = std::int64_t;

Int checked_add(Int a, Int b);
Int checked_sub(Int a, Int b);
Int checked_mul(Int a, Int b);
Int checked_neg(Int a);

// Non-negative gcd; gcd(0, 0) = 0.
Int gcd(Int a, Int b);

class IntVector {
 public:
  IntVector() = default;
  explicit IntVector(std::size_t n) : entries_(n, 0) {}
  IntVector(std::initializer_list<Int> init) : entries_(init) {}
  explicit IntVector(std::vector<Int> entries) : entries_(std::move(entries)) {}

  std::size_t size() const noexcept { return entries_.size(); }
  Int operator[](std::size_t i) const { return entries_[i]; }
  Int& operator[](std::size_t i) { return entries_[i]; }

  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  const std::vector<Int>& values() const noexcept { return entries_; }
  bool is_zero() const noexcept;

  friend bool operator==(const IntVector&, const IntVector&) = default;
  friend auto operator<=>(const IntVector&, const IntVector&) = default;

 private:
  std::vector<Int> entries_;
};

IntVector operator+(const IntVector& a, const IntVector& b);
IntVector operator-(const IntVector& a, const IntVector& b);
IntVector operator-(const IntVector& a);
IntVector operator*(Int s, const IntVector& a);
Int dot(const IntVector& a, const IntVector& b);

// gcd of the entries (0 for the zero vector).
Int content(const IntVector& v);
bool is_primitive(const IntVector& v);
// v / content(v); the zero vector is rejected with NotPrimitive.
IntVector primitive_part(const IntVector& v);

std::ostream& operator<<(std::ostream& os, const IntVector& v);

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<Int>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Int operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const;
  IntVector col(std::size_t j) const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b);
IntMatrix mat_pow(const IntMatrix& a, unsigned exponent);
IntMatrix transpose(const IntMatrix& a);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);

// Row vector times matrix: (v·A)_j = sum_i v_i A_ij.
IntVector vec_mat(const IntVector& v, const IntMatrix& a);
// Matrix times column vector.
IntVector mat_vec(const IntMatrix& a, const IntVector& v);

Int determinant(const IntMatrix& a);
bool is_unimodular(const IntMatrix& a);
IntMatrix unimodular_inverse(const IntMatrix& a);

// Rank over Q.
std::size_t rank(const IntMatrix& a);
std::size_t rank(const std::vector<IntVector>& rows, std::size_t ambient);

// Basis of the rational kernel {x : A x = 0}, each vector scaled to a
// primitive integer vector. Deterministic: one vector per free column.
std::vector<IntVector> integer_kernel(const IntMatrix& a);

// True iff the vectors (all of length `ambient`) are part of a basis of
// Z^ambient, i.e. the gcd of their maximal minors is 1. The empty family is
// trivially extendable.
bool extends_to_lattice_basis(const std::vector<IntVector>& vectors,
                              std::size_t ambient);

// ---------------------------------------------------------------------------
// GF(2)

class GF2Vector {
 public:
  GF2Vector() = default;
  explicit GF2Vector(std::size_t n) : bits_(n, 0) {}
  GF2Vector(std::initializer_list<int> init);

  static GF2Vector reduce(const IntVector& v);
  // Bit i of `index` becomes entry i; so (1,0) <-> 1, (0,1) <-> 2.
  static GF2Vector from_index(std::uint64_t index, std::size_t n);
  std::uint64_t to_index() const;

  std::size_t size() const noexcept { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool value) { bits_[i] = value ? 1 : 0; }
  void flip(std::size_t i) { bits_[i] ^= 1; }
  bool is_zero() const noexcept;

  GF2Vector& operator+=(const GF2Vector& other);
  friend GF2Vector operator+(GF2Vector a, const GF2Vector& b) { return a += b; }

  IntVector to_int() const;

  friend bool operator==(const GF2Vector&, const GF2Vector&) = default;
  friend auto operator<=>(const GF2Vector&, const GF2Vector&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

std::ostream& operator<<(std::ostream& os, const GF2Vector& v);

class GF2Matrix {
 public:
  GF2Matrix() = default;
  GF2Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), bits_(rows * cols, 0) {}
  GF2Matrix(std::initializer_list<std::initializer_list<int>> rows);

  static GF2Matrix reduce(const IntMatrix& a);
  static GF2Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool operator()(std::size_t i, std::size_t j) const { return bits_[i * cols_ + j] != 0; }
  void set(std::size_t i, std::size_t j, bool value) { bits_[i * cols_ + j] = value ? 1 : 0; }
  void flip(std::size_t i, std::size_t j) { bits_[i * cols_ + j] ^= 1; }

  GF2Vector row(std::size_t i) const;

  friend bool operator==(const GF2Matrix&, const GF2Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint8_t> bits_;
};

GF2Vector vec_mat(const GF2Vector& v, const GF2Matrix& a);
GF2Vector mat_vec(const GF2Matrix& a, const GF2Vector& x);

struct GF2Solution {
  GF2Vector solution;
  std::vector<GF2Vector> nullspace_basis;
};

// Solves A x = b. Returns std::nullopt when the system is inconsistent.
std::optional<GF2Solution> gf2_solve(const GF2Matrix& a, const GF2Vector& b);

std::size_t gf2_rank(const std::vector<GF2Vector>& vectors);

// Incrementally maintained echelon basis of a subspace of GF(2)^n.
class GF2Echelon {
 public:
  explicit GF2Echelon(std::size_t n) : n_(n) {}

  // Adds v to the span; returns false when v was already in it.
  bool insert(const GF2Vector& v);
  bool contains(const GF2Vector& v) const;
  std::size_t dimension() const noexcept { return rows_.size(); }

 private:
  GF2Vector reduce(GF2Vector v) const;

  std::size_t n_;
  std::vector<GF2Vector> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace realkn
