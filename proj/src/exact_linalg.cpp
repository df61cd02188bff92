#include "realkn/exact_linalg.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace realkn {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::UnknownGenerator: return "UnknownGenerator";
    case ErrorCode::PartialPresentation: return "PartialPresentation";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::RankTooLarge: return "RankTooLarge";
    case ErrorCode::BoundInsufficient: return "BoundInsufficient";
    case ErrorCode::NotStrictlyConvex: return "NotStrictlyConvex";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::NotAFace: return "NotAFace";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "integer addition");
  return r;
}

Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "integer subtraction");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "integer multiplication");
  return r;
}

Int checked_neg(Int a) {
  if (a == std::numeric_limits<Int>::min()) throw Error(ErrorCode::Overflow, "integer negation");
  return -a;
}

Int gcd(Int a, Int b) {
  a = a < 0 ? checked_neg(a) : a;
  b = b < 0 ? checked_neg(b) : b;
  return std::gcd(a, b);
}

namespace {

// Exact rational with checked 64-bit parts, always normalized (den > 0).
struct Rational {
  Int num = 0;
  Int den = 1;

  Rational() = default;
  Rational(Int n) : num(n) {}  // NOLINT(google-explicit-constructor)
  Rational(Int n, Int d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den < 0) {
      num = checked_neg(num);
      den = checked_neg(den);
    }
    Int g = gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  bool is_zero() const { return num == 0; }
};

Rational operator-(const Rational& a, const Rational& b) {
  Int g = gcd(a.den, b.den);
  Int l = checked_mul(a.den / g, b.den);
  return {checked_sub(checked_mul(a.num, l / a.den), checked_mul(b.num, l / b.den)), l};
}

Rational operator*(const Rational& a, const Rational& b) {
  Int g1 = gcd(a.num, b.den);
  Int g2 = gcd(b.num, a.den);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  return {checked_mul(a.num / g1, b.num / g2), checked_mul(a.den / g2, b.den / g1)};
}

Rational operator/(const Rational& a, const Rational& b) {
  return a * Rational(b.den, b.num);
}

using RationalMatrix = std::vector<std::vector<Rational>>;

RationalMatrix to_rational(const IntMatrix& a) {
  RationalMatrix m(a.rows(), std::vector<Rational>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = Rational(a(i, j));
  return m;
}

// Reduced row echelon form in place; returns pivot columns. `sign` tracks
// the parity of row swaps and `scale` the product of pivots divided out, so
// that det = sign * scale for square full-rank input.
std::vector<std::size_t> rref(RationalMatrix& m, std::size_t cols, int* sign = nullptr,
                              Rational* scale = nullptr) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c].is_zero()) ++p;
    if (p == m.size()) continue;
    if (p != r) {
      std::swap(m[p], m[r]);
      if (sign) *sign = -*sign;
    }
    Rational piv = m[r][c];
    if (scale) *scale = *scale * piv;
    // Pivots are searched in the first `cols` columns only; row operations
    // cover the whole row so augmented columns follow along.
    const std::size_t width = m[r].size();
    for (std::size_t j = c; j < width; ++j) m[r][j] = m[r][j] / piv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j < width; ++j) m[i][j] = m[i][j] - f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

void require_same_size(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size())
    throw Error(ErrorCode::DimensionMismatch,
                "vector lengths " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
}

}  // namespace

// --- IntVector --------------------------------------------------------------

bool IntVector::is_zero() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](Int x) { return x == 0; });
}

IntVector operator+(const IntVector& a, const IntVector& b) {
  require_same_size(a, b);
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], b[i]);
  return r;
}

IntVector operator-(const IntVector& a, const IntVector& b) {
  require_same_size(a, b);
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_sub(a[i], b[i]);
  return r;
}

IntVector operator-(const IntVector& a) {
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_neg(a[i]);
  return r;
}

IntVector operator*(Int s, const IntVector& a) {
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_mul(s, a[i]);
  return r;
}

Int dot(const IntVector& a, const IntVector& b) {
  require_same_size(a, b);
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = checked_add(s, checked_mul(a[i], b[i]));
  return s;
}

Int content(const IntVector& v) {
  Int g = 0;
  for (Int x : v) g = gcd(g, x);
  return g;
}

bool is_primitive(const IntVector& v) { return content(v) == 1; }

IntVector primitive_part(const IntVector& v) {
  Int g = content(v);
  if (g == 0) throw Error(ErrorCode::NotPrimitive, "zero vector has no primitive part");
  IntVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
  return r;
}

std::ostream& operator<<(std::ostream& os, const IntVector& v) {
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os << ')';
}

// --- IntMatrix --------------------------------------------------------------

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<Int>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorCode::DimensionMismatch, "ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(std::vector<Int>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_));
}

IntVector IntMatrix::col(std::size_t j) const {
  IntVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) os << (i ? "," : "") << m.row(i);
  return os << ']';
}

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows())
    throw Error(ErrorCode::DimensionMismatch, "mat_mul: " + std::to_string(a.cols()) +
                                                  " columns against " + std::to_string(b.rows()) +
                                                  " rows");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      Int aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        c(i, j) = checked_add(c(i, j), checked_mul(aik, b(k, j)));
    }
  return c;
}

IntMatrix mat_pow(const IntMatrix& a, unsigned exponent) {
  if (!a.is_square()) throw Error(ErrorCode::DimensionMismatch, "mat_pow of non-square matrix");
  IntMatrix result = IntMatrix::identity(a.rows());
  IntMatrix base = a;
  while (exponent) {
    if (exponent & 1u) result = mat_mul(result, base);
    exponent >>= 1;
    if (exponent) base = mat_mul(base, base);
  }
  return result;
}

IntMatrix transpose(const IntMatrix& a) {
  IntMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::DimensionMismatch, "matrix sum");
  IntMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = checked_add(a(i, j), b(i, j));
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::DimensionMismatch, "matrix difference");
  IntMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = checked_sub(a(i, j), b(i, j));
  return c;
}

IntVector vec_mat(const IntVector& v, const IntMatrix& a) {
  if (v.size() != a.rows()) throw Error(ErrorCode::DimensionMismatch, "vec_mat");
  IntVector r(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) r[j] = checked_add(r[j], checked_mul(v[i], a(i, j)));
  }
  return r;
}

IntVector mat_vec(const IntMatrix& a, const IntVector& v) {
  if (v.size() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "mat_vec");
  IntVector r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) r[i] = dot(a.row(i), v);
  return r;
}

Int determinant(const IntMatrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  if (a.rows() == 0) return 1;
  auto m = to_rational(a);
  int sign = 1;
  Rational scale(1);
  auto pivots = rref(m, a.cols(), &sign, &scale);
  if (pivots.size() < a.rows()) return 0;
  // scale is a product of integer-matrix pivots of a fraction-free process;
  // the determinant of an integer matrix is an integer.
  if (scale.den != 1) throw Error(ErrorCode::Overflow, "non-integral determinant");
  return sign > 0 ? scale.num : checked_neg(scale.num);
}

bool is_unimodular(const IntMatrix& a) {
  if (!a.is_square()) return false;
  Int d = determinant(a);
  return d == 1 || d == -1;
}

IntMatrix unimodular_inverse(const IntMatrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::NotUnimodular, "non-square matrix");
  Int det = determinant(a);
  if (det != 1 && det != -1)
    throw Error(ErrorCode::NotUnimodular, "determinant " + std::to_string(det));
  const std::size_t n = a.rows();
  // Gauss-Jordan on [A | I]; the result is integral because det = ±1.
  RationalMatrix m(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = Rational(a(i, j));
    m[i][n + i] = Rational(1);
  }
  rref(m, n);
  IntMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& q = m[i][n + j];
      if (q.den != 1) throw Error(ErrorCode::NotUnimodular, "non-integral inverse");
      inv(i, j) = q.num;
    }
  return inv;
}

std::size_t rank(const IntMatrix& a) {
  auto m = to_rational(a);
  return rref(m, a.cols()).size();
}

std::size_t rank(const std::vector<IntVector>& rows, std::size_t ambient) {
  if (rows.empty()) return 0;
  for (const auto& r : rows)
    if (r.size() != ambient) throw Error(ErrorCode::DimensionMismatch, "rank: vector length");
  return rank(IntMatrix::from_rows(rows));
}

std::vector<IntVector> integer_kernel(const IntMatrix& a) {
  auto m = to_rational(a);
  auto pivots = rref(m, a.cols());
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;

  std::vector<IntVector> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> x(a.cols(), Rational(0));
    x[free] = Rational(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = Rational(0) - m[r][free];
    Int lcm = 1;
    for (const auto& q : x) lcm = checked_mul(lcm / gcd(lcm, q.den), q.den);
    IntVector v(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) v[j] = checked_mul(x[j].num, lcm / x[j].den);
    basis.push_back(primitive_part(v));
  }
  return basis;
}

bool extends_to_lattice_basis(const std::vector<IntVector>& vectors, std::size_t ambient) {
  const std::size_t k = vectors.size();
  if (k == 0) return true;
  if (k > ambient) return false;
  for (const auto& v : vectors)
    if (v.size() != ambient) throw Error(ErrorCode::DimensionMismatch, "lattice basis test");

  // gcd over all k x k minors, columns chosen by a k-subset of coordinates.
  Int g = 0;
  std::vector<std::size_t> cols(k);
  std::iota(cols.begin(), cols.end(), 0);
  while (true) {
    IntMatrix minor(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor(i, j) = vectors[i][cols[j]];
    g = gcd(g, determinant(minor));
    if (g == 1) return true;
    std::size_t i = k;
    while (i > 0 && cols[i - 1] == ambient - k + (i - 1)) --i;
    if (i == 0) break;
    ++cols[i - 1];
    for (std::size_t j = i; j < k; ++j) cols[j] = cols[j - 1] + 1;
  }
  return g == 1;
}

// --- GF(2) ------------------------------------------------------------------

GF2Vector::GF2Vector(std::initializer_list<int> init) {
  for (int x : init) bits_.push_back(static_cast<std::uint8_t>(x & 1));
}

GF2Vector GF2Vector::reduce(const IntVector& v) {
  GF2Vector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r.set(i, (v[i] % 2) != 0);
  return r;
}

GF2Vector GF2Vector::from_index(std::uint64_t index, std::size_t n) {
  GF2Vector r(n);
  for (std::size_t i = 0; i < n; ++i) r.set(i, (index >> i) & 1u);
  return r;
}

std::uint64_t GF2Vector::to_index() const {
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) idx |= (std::uint64_t{1} << i);
  return idx;
}

bool GF2Vector::is_zero() const noexcept {
  return std::all_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b == 0; });
}

GF2Vector& GF2Vector::operator+=(const GF2Vector& other) {
  if (other.size() != size()) throw Error(ErrorCode::DimensionMismatch, "GF(2) vector sum");
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] ^= other.bits_[i];
  return *this;
}

IntVector GF2Vector::to_int() const {
  IntVector r(bits_.size());
  for (std::size_t i = 0; i < bits_.size(); ++i) r[i] = bits_[i];
  return r;
}

std::ostream& operator<<(std::ostream& os, const GF2Vector& v) {
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << int(v[i]);
  return os << ')';
}

GF2Matrix::GF2Matrix(std::initializer_list<std::initializer_list<int>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged GF(2) matrix literal");
    for (int x : r) bits_.push_back(static_cast<std::uint8_t>(x & 1));
  }
}

GF2Matrix GF2Matrix::reduce(const IntMatrix& a) {
  GF2Matrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m.set(i, j, (a(i, j) % 2) != 0);
  return m;
}

GF2Matrix GF2Matrix::identity(std::size_t n) {
  GF2Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

GF2Vector GF2Matrix::row(std::size_t i) const {
  GF2Vector r(cols_);
  for (std::size_t j = 0; j < cols_; ++j) r.set(j, (*this)(i, j));
  return r;
}

GF2Vector vec_mat(const GF2Vector& v, const GF2Matrix& a) {
  if (v.size() != a.rows()) throw Error(ErrorCode::DimensionMismatch, "GF(2) vec_mat");
  GF2Vector r(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (!v[i]) continue;
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j)) r.flip(j);
  }
  return r;
}

GF2Vector mat_vec(const GF2Matrix& a, const GF2Vector& x) {
  if (x.size() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "GF(2) mat_vec");
  GF2Vector r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    bool s = false;
    for (std::size_t j = 0; j < a.cols(); ++j) s ^= (a(i, j) && x[j]);
    r.set(i, s);
  }
  return r;
}

std::optional<GF2Solution> gf2_solve(const GF2Matrix& a, const GF2Vector& b) {
  if (a.rows() != b.size())
    throw Error(ErrorCode::DimensionMismatch, "gf2_solve: " + std::to_string(a.rows()) +
                                                  " equations, right-hand side of length " +
                                                  std::to_string(b.size()));
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  // Augmented rows [A | b].
  std::vector<GF2Vector> m;
  m.reserve(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    GF2Vector r(cols + 1);
    for (std::size_t j = 0; j < cols; ++j) r.set(j, a(i, j));
    r.set(cols, b[i]);
    m.push_back(std::move(r));
  }

  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && !m[p][c]) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < rows; ++i)
      if (i != r && m[i][c]) m[i] += m[r];
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (m[i][cols]) return std::nullopt;

  GF2Solution sol{GF2Vector(cols), {}};
  for (std::size_t i = 0; i < pivots.size(); ++i) sol.solution.set(pivots[i], m[i][cols]);

  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    GF2Vector v(cols);
    v.set(free, true);
    for (std::size_t i = 0; i < pivots.size(); ++i) v.set(pivots[i], m[i][free]);
    sol.nullspace_basis.push_back(std::move(v));
  }
  return sol;
}

std::size_t gf2_rank(const std::vector<GF2Vector>& vectors) {
  if (vectors.empty()) return 0;
  GF2Echelon e(vectors.front().size());
  for (const auto& v : vectors) e.insert(v);
  return e.dimension();
}

GF2Vector GF2Echelon::reduce(GF2Vector v) const {
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (v[pivots_[i]]) v += rows_[i];
  return v;
}

bool GF2Echelon::insert(const GF2Vector& v) {
  if (v.size() != n_) throw Error(ErrorCode::DimensionMismatch, "GF2Echelon::insert");
  GF2Vector r = reduce(v);
  if (r.is_zero()) return false;
  std::size_t p = 0;
  while (!r[p]) ++p;
  // keep fully reduced: clear the new pivot from existing rows
  for (auto& row : rows_)
    if (row[p]) row += r;
  rows_.push_back(std::move(r));
  pivots_.push_back(p);
  return true;
}

bool GF2Echelon::contains(const GF2Vector& v) const {
  if (v.size() != n_) throw Error(ErrorCode::DimensionMismatch, "GF2Echelon::contains");
  return reduce(v).is_zero();
}

}  // namespace realkn
