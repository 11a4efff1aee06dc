#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace a1cell {

using BigInt = boost::multiprecision::cpp_int;

/// Dense row-major matrix over an arbitrary ring-like value type.
template <typename T> class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T &fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto &row : init) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n, T(0));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] bool empty() const { return data_.empty(); }

  T &operator()(std::size_t r, std::size_t c) {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }
  const T &operator()(std::size_t r, std::size_t c) const {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }

  [[nodiscard]] std::vector<T> column(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }
  [[nodiscard]] std::vector<T> row(std::size_t r) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
  }

  [[nodiscard]] Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }
  // row[dst] += k * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const T &k) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += k * (*this)(src, c);
  }
  // col[dst] += k * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const T &k) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += k * (*this)(r, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
  }
  void negate_col(std::size_t c) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
  }

  /// Horizontal concatenation [*this | other].
  [[nodiscard]] Matrix hconcat(const Matrix &other) const {
    if (rows_ != other.rows_ && !(empty() || other.empty()))
      throw std::invalid_argument("hconcat: row count mismatch");
    const std::size_t rows = std::max(rows_, other.rows_);
    Matrix out(rows, cols_ + other.cols_, T(0));
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
    for (std::size_t r = 0; r < other.rows_; ++r)
      for (std::size_t c = 0; c < other.cols_; ++c) out(r, cols_ + c) = other(r, c);
    return out;
  }

  friend bool operator==(const Matrix &a, const Matrix &b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix &a, const Matrix &b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    Matrix out(a.rows_, b.cols_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T &aik = a(i, k);
        if (aik == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend std::vector<T> operator*(const Matrix &a, const std::vector<T> &v) {
    if (a.cols_ != v.size()) throw std::invalid_argument("matrix-vector product: shape mismatch");
    std::vector<T> out(a.rows_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) out[i] += a(i, k) * v[k];
    return out;
  }

  template <typename F> [[nodiscard]] auto map(F &&f) const {
    using U = std::decay_t<decltype(f(std::declval<const T &>()))>;
    Matrix<U> out(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(r, c) = f((*this)(r, c));
    return out;
  }

  [[nodiscard]] bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const T &x) { return x == T(0); });
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<long long>;
using BigMatrix = Matrix<BigInt>;

inline BigMatrix to_big(const IntMatrix &m) {
  return m.map([](long long x) { return BigInt(x); });
}

} // namespace a1cell
