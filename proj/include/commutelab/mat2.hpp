#pragma once

#include <array>
#include <compare>
#include <vector>

#include "commutelab/rational.hpp"

namespace commutelab {

/// 2x2 matrix with exact rational entries, row-major.
struct Mat2 {
  Rat a11, a12, a21, a22;

  friend bool operator==(const Mat2&, const Mat2&) = default;

  friend bool operator<(const Mat2& x, const Mat2& y) {
    if (x.a11 != y.a11) return x.a11 < y.a11;
    if (x.a12 != y.a12) return x.a12 < y.a12;
    if (x.a21 != y.a21) return x.a21 < y.a21;
    return x.a22 < y.a22;
  }

  Mat2 operator+(const Mat2& o) const {
    return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22};
  }
  Mat2 operator-(const Mat2& o) const {
    return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22};
  }
  friend Mat2 operator*(const Rat& c, const Mat2& m) {
    return {c * m.a11, c * m.a12, c * m.a21, c * m.a22};
  }

  std::array<Rat, 4> vec() const { return {a11, a12, a21, a22}; }

  bool is_zero() const {
    return a11 == 0 && a12 == 0 && a21 == 0 && a22 == 0;
  }
  /// Member of {lambda * I}, including the zero matrix.
  bool is_scalar() const { return a12 == 0 && a21 == 0 && a11 == a22; }
};

inline Mat2 identity2() { return {Rat(1), Rat(0), Rat(0), Rat(1)}; }

inline Mat2 mat_mul(const Mat2& x, const Mat2& y) {
  return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
          x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22};
}

/// XY = YX, decided entrywise on the three nontrivial product entries:
/// x2*y3 = x3*y2, x2*(y4-y1) = y2*(x4-x1), x3*(y4-y1) = y3*(x4-x1).
inline bool commutes(const Mat2& x, const Mat2& y) {
  if (x.a12 * y.a21 != x.a21 * y.a12) return false;
  Rat dx = x.a22 - x.a11;
  Rat dy = y.a22 - y.a11;
  return x.a12 * dy == y.a12 * dx && x.a21 * dy == y.a21 * dx;
}

namespace detail {

// Clears denominators of a 4-vector and drops the content, so elimination
// stays in integers.
inline std::array<Int, 4> integer_row(const std::array<Rat, 4>& v) {
  Int l(1);
  for (const Rat& r : v) l = lcm(l, denominator(r));
  std::array<Int, 4> row;
  for (int i = 0; i < 4; ++i) row[i] = numerator(v[i]) * (l / denominator(v[i]));
  Int g(0);
  for (const Int& x : row) g = gcd(g, x);
  if (g > 1)
    for (Int& x : row) x /= g;
  return row;
}

// Incremental fraction-free row reduction on up to four pivot rows.
class RowSpan {
 public:
  int rank() const { return static_cast<int>(rows_.size()); }

  /// Reduces v against the current basis; returns true (and extends the
  /// basis) when v was independent.
  bool add(const std::array<Rat, 4>& v) {
    std::array<Int, 4> row = integer_row(v);
    for (const auto& [pivot_col, basis] : rows_) {
      if (row[pivot_col] == 0) continue;
      Int a = basis[pivot_col], b = row[pivot_col];
      for (int i = 0; i < 4; ++i) row[i] = row[i] * a - basis[i] * b;
    }
    int pivot = -1;
    for (int i = 0; i < 4; ++i)
      if (row[i] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) return false;
    rows_.emplace_back(pivot, row);
    return true;
  }

  bool contains(const std::array<Rat, 4>& v) const {
    std::array<Int, 4> row = integer_row(v);
    for (const auto& [pivot_col, basis] : rows_) {
      if (row[pivot_col] == 0) continue;
      Int a = basis[pivot_col], b = row[pivot_col];
      for (int i = 0; i < 4; ++i) row[i] = row[i] * a - basis[i] * b;
    }
    return row == std::array<Int, 4>{};
  }

 private:
  std::vector<std::pair<int, std::array<Int, 4>>> rows_;
};

}  // namespace detail

/// Rank over Q of the vectorized matrices.
inline int span_dim(const std::vector<Mat2>& mats) {
  detail::RowSpan span;
  for (const Mat2& m : mats) {
    span.add(m.vec());
    if (span.rank() == 4) break;
  }
  return span.rank();
}

/// Z in span{X, Y} over Q.
inline bool in_span2(const Mat2& x, const Mat2& y, const Mat2& z) {
  detail::RowSpan span;
  span.add(x.vec());
  span.add(y.vec());
  return span.contains(z.vec());
}

}  // namespace commutelab
