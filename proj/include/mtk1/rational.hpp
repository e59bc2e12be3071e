#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace mtk1 {

using Rational = mpq_class;
using RatVec = std::vector<Rational>;

/// Dense row-major matrix of exact rationals.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static RatMatrix identity(int n);
  static RatMatrix from_rows(const std::vector<RatVec>& rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& operator()(int r, int c) { return data_[r * cols_ + c]; }
  const Rational& operator()(int r, int c) const { return data_[r * cols_ + c]; }
  RatVec row(int r) const;

  RatMatrix operator*(const RatMatrix& other) const;
  RatVec operator*(const RatVec& v) const;
  RatMatrix operator-(const RatMatrix& other) const;
  friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// std::nullopt when singular.
  std::optional<RatMatrix> inverse() const;
  Rational determinant() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

/// Reduced row-echelon form in place; returns pivot columns. Pivots are
/// searched only in columns < `pivot_limit` (default: all).
std::vector<int> rref(RatMatrix& m, int pivot_limit = -1);

/// Basis of {x : M x = 0}, one vector per free column, in column order.
std::vector<RatVec> null_space(const RatMatrix& m);

int rank(RatMatrix m);

RatVec operator+(const RatVec& a, const RatVec& b);
RatVec operator-(const RatVec& a, const RatVec& b);
RatVec scale(const Rational& s, const RatVec& v);
Rational dot(const RatVec& a, const RatVec& b);

/// Parses "p", "-p", "p/q".
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);

}  // namespace mtk1
