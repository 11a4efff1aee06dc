#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "a1cell/matrix.hpp"

namespace a1cell {

template <typename Int> Int abs_value(const Int &x) { return x < 0 ? Int(-x) : x; }

/// U * m * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... .
/// Uinv is tracked alongside U so images can be expressed without inversion.
template <typename Int> struct SmithResult {
  Matrix<Int> U;
  Matrix<Int> Uinv;
  Matrix<Int> D;
  Matrix<Int> V;
  std::size_t rank = 0;

  [[nodiscard]] std::vector<Int> invariant_factors() const {
    std::vector<Int> out;
    for (std::size_t t = 0; t < rank; ++t) out.push_back(D(t, t));
    return out;
  }
};

namespace detail {

template <typename Int> class SmithReducer {
public:
  explicit SmithReducer(const Matrix<Int> &m)
      : a_(m), u_(Matrix<Int>::identity(m.rows())), uinv_(Matrix<Int>::identity(m.rows())),
        v_(Matrix<Int>::identity(m.cols())) {}

  SmithResult<Int> run() {
    const std::size_t n = a_.rows();
    const std::size_t k = a_.cols();
    std::size_t t = 0;
    for (; t < std::min(n, k); ++t) {
      auto pivot = smallest_in_block(t);
      if (!pivot) break;
      move_to(t, pivot->first, pivot->second);
      while (true) {
        bool clean = true;
        for (std::size_t i = t + 1; i < n; ++i) {
          if (a_(i, t) == 0) continue;
          row_op(i, t, Int(-(a_(i, t) / a_(t, t))));
          if (a_(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < k; ++j) {
          if (a_(t, j) == 0) continue;
          col_op(j, t, Int(-(a_(t, j) / a_(t, t))));
          if (a_(t, j) != 0) clean = false;
        }
        if (!clean) {
          repivot_cross(t);
          continue;
        }
        // Row and column cleared: enforce divisibility of the remaining block.
        std::optional<std::size_t> offender;
        for (std::size_t i = t + 1; i < n && !offender; ++i)
          for (std::size_t j = t + 1; j < k; ++j)
            if (a_(i, j) % a_(t, t) != 0) {
              offender = i;
              break;
            }
        if (!offender) break;
        row_op(t, *offender, Int(1));
      }
      if (a_(t, t) < 0) negate_row(t);
    }
    return {std::move(u_), std::move(uinv_), std::move(a_), std::move(v_), t};
  }

private:
  // Smallest nonzero |entry| in the block [t.., t..]; ties go to the lowest row, then column.
  std::optional<std::pair<std::size_t, std::size_t>> smallest_in_block(std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Int best_abs = 0;
    for (std::size_t i = t; i < a_.rows(); ++i)
      for (std::size_t j = t; j < a_.cols(); ++j) {
        if (a_(i, j) == 0) continue;
        Int v = abs_value(a_(i, j));
        if (!best || v < best_abs) {
          best = {i, j};
          best_abs = v;
        }
      }
    return best;
  }

  // After a partial reduction, bring the smallest remainder in row t / column t to (t, t).
  void repivot_cross(std::size_t t) {
    std::pair<std::size_t, std::size_t> best{t, t};
    Int best_abs = abs_value(a_(t, t));
    for (std::size_t i = t + 1; i < a_.rows(); ++i)
      if (a_(i, t) != 0 && abs_value(a_(i, t)) < best_abs) {
        best = {i, t};
        best_abs = abs_value(a_(i, t));
      }
    for (std::size_t j = t + 1; j < a_.cols(); ++j)
      if (a_(t, j) != 0 && abs_value(a_(t, j)) < best_abs) {
        best = {t, j};
        best_abs = abs_value(a_(t, j));
      }
    move_to(t, best.first, best.second);
  }

  void move_to(std::size_t t, std::size_t i, std::size_t j) {
    if (i != t) {
      a_.swap_rows(t, i);
      u_.swap_rows(t, i);
      uinv_.swap_cols(t, i);
    }
    if (j != t) {
      a_.swap_cols(t, j);
      v_.swap_cols(t, j);
    }
  }

  // row[dst] += c * row[src]
  void row_op(std::size_t dst, std::size_t src, const Int &c) {
    a_.add_row_multiple(dst, src, c);
    u_.add_row_multiple(dst, src, c);
    uinv_.add_col_multiple(src, dst, Int(-c));
  }
  // col[dst] += c * col[src]
  void col_op(std::size_t dst, std::size_t src, const Int &c) {
    a_.add_col_multiple(dst, src, c);
    v_.add_col_multiple(dst, src, c);
  }
  void negate_row(std::size_t t) {
    a_.negate_row(t);
    u_.negate_row(t);
    uinv_.negate_col(t);
  }

  Matrix<Int> a_;
  Matrix<Int> u_;
  Matrix<Int> uinv_;
  Matrix<Int> v_;
};

} // namespace detail

template <typename Int> SmithResult<Int> smith_normal_form(const Matrix<Int> &m) {
  return detail::SmithReducer<Int>(m).run();
}

} // namespace a1cell
