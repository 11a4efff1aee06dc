#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "a1cell/errors.hpp"
#include "a1cell/matrix.hpp"
#include "a1cell/mwscalar.hpp"
#include "a1cell/rootdata.hpp"
#include "a1cell/weyl.hpp"

namespace a1cell {

using MWMatrix = Matrix<MWScalar>;

enum class ComplexKind { RankOne, ProjectiveSpace, PuncturedAffine, Flag, Pi1Presentation };

/// One free summand of a chain group: K^MW_weight, the plain Z summand
/// (integral, weight 0), or with the milnor flag the quotient K^MW_weight / eta.
struct Generator {
  std::string label;
  int weight = 0;
  bool milnor = false;
  bool integral = false;
};

/// Chain complex of free K^MW-modules with scalar differentials.
/// differentials[d] maps degree d to degree d - 1; rows index the degree
/// d - 1 generators and columns the degree d generators.
struct GradedComplex {
  ComplexKind kind = ComplexKind::ProjectiveSpace;
  std::string name;
  std::vector<std::vector<Generator>> generators;
  std::vector<MWMatrix> differentials;
  std::map<std::string, std::string> metadata;

  [[nodiscard]] int top_degree() const { return static_cast<int>(generators.size()) - 1; }

  [[nodiscard]] std::size_t count(int degree) const {
    if (degree < 0 || degree > top_degree()) return 0;
    return generators[degree].size();
  }

  /// Differential out of `degree`, with zero-sized shapes outside the range.
  [[nodiscard]] MWMatrix differential(int degree) const {
    if (degree >= 1 && degree <= top_degree()) return differentials[degree];
    return MWMatrix(count(degree - 1), count(degree));
  }

  /// The differential written with rows indexed by source generators.
  [[nodiscard]] MWMatrix source_rows(int degree) const { return differential(degree).transpose(); }

  [[nodiscard]] std::vector<std::string> free_symbols() const {
    std::vector<std::string> out;
    for (const auto &m : differentials)
      for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
          for (const auto &s : m(r, c).free_symbols())
            if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// An entry from a weight-m source to a weight-n target has eta-exponent m - n.
  void check_weights() const {
    for (int d = 1; d <= top_degree(); ++d) {
      const MWMatrix &m = differentials[d];
      for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
          const int e = generators[d][c].weight - generators[d - 1][r].weight;
          if (!m(r, c).homogeneous_of_eta_degree(e))
            throw InvariantViolation(name + ": entry " + m(r, c).to_string() + " in degree " +
                                     std::to_string(d) + " violates weight bookkeeping");
        }
    }
  }
};

namespace detail {
inline Generator kmw(int weight, std::string label) { return {std::move(label), weight, false, false}; }
inline Generator integral_z(std::string label = "Z") { return {std::move(label), 0, false, true}; }
} // namespace detail

/// SL2 (simply connected) or PGL2 cellular complex:
/// K^MW_2 + K^MW_1 -> K^MW_1 + Z.
inline GradedComplex build_rank_one(bool simply_connected) {
  GradedComplex c;
  c.kind = ComplexKind::RankOne;
  c.name = simply_connected ? "SL2" : "PGL2";
  c.generators = {{detail::kmw(1, "KMW1[T]"), detail::integral_z("Z[T]")},
                  {detail::kmw(2, "KMW2[sT]"), detail::kmw(1, "KMW1[sT]")}};
  MWMatrix d1(2, 2);
  if (simply_connected) {
    d1(0, 0) = MWScalar::eta();
    d1(0, 1) = MWScalar(1);
  } else {
    d1(0, 1) = MWScalar::h();
  }
  c.differentials = {MWMatrix(), d1};
  c.metadata["simplyConnected"] = simply_connected ? "true" : "false";
  return c;
}

/// P^n: K^MW_n -> ... -> K^MW_1 -> Z, with d_i = 0 (i odd) and eta (i even).
inline GradedComplex build_projective_space(int n) {
  if (n < 1) throw InvalidInput("projective space requires n >= 1");
  GradedComplex c;
  c.kind = ComplexKind::ProjectiveSpace;
  c.name = "P" + std::to_string(n);
  c.generators.push_back({detail::integral_z("Z")});
  for (int i = 1; i <= n; ++i) c.generators.push_back({detail::kmw(i, "KMW" + std::to_string(i))});
  c.differentials.emplace_back();
  for (int i = 1; i <= n; ++i) {
    MWMatrix d(1, 1);
    if (i % 2 == 0) d(0, 0) = MWScalar::eta();
    c.differentials.push_back(d);
  }
  c.metadata["n"] = std::to_string(n);
  return c;
}

/// A^{n+1} - {0}: degree i is K^MW_{i+1} + K^MW_i (degree 0: K^MW_1 + Z).
inline GradedComplex build_punctured_affine(int n) {
  if (n < 1) throw InvalidInput("punctured affine space requires n >= 1");
  GradedComplex c;
  c.kind = ComplexKind::PuncturedAffine;
  c.name = "A" + std::to_string(n + 1) + "-0";
  c.generators.push_back({detail::kmw(1, "KMW1[0]"), detail::integral_z("Z[0]")});
  for (int i = 1; i <= n; ++i)
    c.generators.push_back({detail::kmw(i + 1, "KMW" + std::to_string(i + 1) + "[" + std::to_string(i) + "]"),
                            detail::kmw(i, "KMW" + std::to_string(i) + "[" + std::to_string(i) + "]")});
  c.differentials.emplace_back();
  for (int i = 1; i <= n; ++i) {
    MWMatrix d(2, 2);
    if (i % 2 == 1) {
      d(0, 0) = MWScalar::eta();
      d(0, 1) = MWScalar(1);
    } else {
      d(0, 1) = MWScalar::minus_one_form();
      d(1, 1) = MWScalar::eta();
    }
    c.differentials.push_back(d);
  }
  c.metadata["n"] = std::to_string(n);
  return c;
}

/// G/B in degrees <= 2: Z <- (K^MW_1 per simple root) <- (K^MW_2 per
/// codimension-2 cell), d1 = 0 and cell (i,j) mapping to row j by n_eps(n_ji) eta.
inline GradedComplex build_flag_low_degrees(const WeylGroup &weyl) {
  const RootDatum &datum = weyl.datum();
  const int r = datum.rank();
  const auto cells = weyl.codim2_cells(weyl.longest_word());
  GradedComplex c;
  c.kind = ComplexKind::Flag;
  c.name = "flag(" + datum.type().name() + ")";
  c.generators.push_back({detail::integral_z("Z[w0]")});
  std::vector<Generator> deg1;
  for (int i = 0; i < r; ++i) deg1.push_back(detail::kmw(1, "KMW1[w0 s" + std::to_string(i + 1) + "]"));
  c.generators.push_back(deg1);
  std::vector<Generator> deg2;
  for (const auto &cell : cells) deg2.push_back(detail::kmw(2, "KMW2[" + cell.name() + "]"));
  c.generators.push_back(deg2);
  MWMatrix d2(r, cells.size());
  for (std::size_t col = 0; col < cells.size(); ++col) {
    const int i = cells[col].i();
    const int j = cells[col].j();
    d2(j, col) = n_epsilon(datum.cartan_integer(j, i)) * MWScalar::eta();
  }
  c.differentials = {MWMatrix(), MWMatrix(1, r), d2};
  c.metadata["type"] = datum.type().name();
  c.metadata["symplectic"] = symplectic_type(datum).symplectic ? "true" : "false";
  return c;
}

inline GradedComplex build_flag_low_degrees(const RootDatum &datum) {
  return build_flag_low_degrees(WeylGroup(datum));
}

/// Row of the degree-1 presentation: (K^MW_2, i) or (K^M_2, {i,j}).
struct Pi1Row {
  bool milnor = false;
  int i = 0;
  int j = -1;

  [[nodiscard]] std::string label() const {
    if (milnor) return "KM2{" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "}";
    return "KMW2(" + std::to_string(i + 1) + ")";
  }
  [[nodiscard]] std::string variable() const {
    if (milnor) return "y" + std::to_string(i + 1) + "," + std::to_string(j + 1);
    return "x" + std::to_string(i + 1);
  }
};

/// The map C2(G) (x) Z -> Z1(G) (x) Z modulo the torus, in weight 2.
struct Pi1Presentation {
  DynkinType type;
  int rank = 0;
  std::vector<Pi1Row> rows;
  std::vector<CellLabel> columns;
  MWMatrix entries; // rows x columns
  std::vector<std::string> tau_symbols;

  [[nodiscard]] std::size_t mw_row(int i) const { return static_cast<std::size_t>(i); }
  [[nodiscard]] std::size_t milnor_row(int i, int j) const {
    if (i > j) std::swap(i, j);
    for (std::size_t k = 0; k < rows.size(); ++k)
      if (rows[k].milnor && rows[k].i == i && rows[k].j == j) return k;
    throw InvalidInput("no Milnor row for the given pair");
  }
};

inline std::string tau_symbol(int i, int j) {
  return "tau." + std::to_string(i + 1) + "." + std::to_string(j + 1);
}

inline Pi1Presentation build_pi1_presentation(const WeylGroup &weyl) {
  const RootDatum &datum = weyl.datum();
  const int r = datum.rank();
  Pi1Presentation p;
  p.type = datum.type();
  p.rank = r;
  for (int i = 0; i < r; ++i) p.rows.push_back({false, i, -1});
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) p.rows.push_back({true, i, j});
  if (r >= 2) p.columns = weyl.codim2_cells(weyl.longest_word());
  p.entries = MWMatrix(p.rows.size(), p.columns.size());
  const MWScalar eps = MWScalar::epsilon();
  for (std::size_t col = 0; col < p.columns.size(); ++col) {
    const CellLabel &cell = p.columns[col];
    const AttachedPair &pair = cell.pairs.front();
    const int i = pair.i;
    const int j = pair.j;
    p.entries(p.milnor_row(i, j), col) = eps;
    if (!cell.adjacent) continue;
    const int n = datum.cartan_integer(j, i);
    if (n == 2) {
      p.entries(p.mw_row(j), col) = MWScalar::h() * eps;
    } else if (pair.lambda_i_greater) {
      p.entries(p.mw_row(j), col) = n_epsilon(n) * eps;
    } else {
      const std::string tau = tau_symbol(i, j);
      p.tau_symbols.push_back(tau);
      p.entries(p.mw_row(j), col) = n_epsilon(n) * MWScalar::unit(tau) * eps;
    }
  }
  return p;
}

inline Pi1Presentation build_pi1_presentation(const RootDatum &datum) {
  return build_pi1_presentation(WeylGroup(datum));
}

/// The presentation as a complex concentrated in degrees 1 (rows) and 2
/// (cells), so that H_1 is its cokernel. Degree 0 is empty.
inline GradedComplex to_graded_complex(const Pi1Presentation &p) {
  GradedComplex c;
  c.kind = ComplexKind::Pi1Presentation;
  c.name = "pi1(" + p.type.name() + ")";
  std::vector<Generator> rows;
  for (const auto &row : p.rows) rows.push_back({row.label(), 2, row.milnor, false});
  std::vector<Generator> cells;
  for (const auto &cell : p.columns) cells.push_back(detail::kmw(2, "KMW2[" + cell.name() + "]"));
  c.generators = {{}, rows, cells};
  c.differentials = {MWMatrix(), MWMatrix(0, rows.size()), p.entries};
  c.metadata["type"] = p.type.name();
  return c;
}

/// Y^(2) -> Y (x) Y -> Lambda^2 Y. Rows of `left` index m * r + k, the
/// coroot basis vector e_k placed over the cell of the simple root m; rows
/// of `right` index pairs a < b of e_a ^ e_b.
struct Pi3Complex {
  DynkinType type;
  int rank = 0;
  std::vector<CellLabel> cells;
  IntMatrix left;
  IntMatrix right;
  std::vector<int> relative_signs; // sign of the alpha_j^vee over cell-root i term, per cell

  [[nodiscard]] std::size_t tensor_index(int m, int k) const {
    return static_cast<std::size_t>(m * rank + k);
  }
};

inline IntMatrix wedge_map(int r) {
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b) pairs.emplace_back(a, b);
  IntMatrix w(pairs.size(), static_cast<std::size_t>(r * r), 0);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [a, b] = pairs[p];
    w(p, static_cast<std::size_t>(a * r + b)) = 1;  // alpha_a ^ e_b
    w(p, static_cast<std::size_t>(b * r + a)) = -1; // alpha_b ^ e_a
  }
  return w;
}

inline Pi3Complex build_pi3_complex(const WeylGroup &weyl) {
  const RootDatum &datum = weyl.datum();
  const int r = datum.rank();
  if (r < 2) throw InvalidInput("pi3 complex requires rank >= 2");
  Pi3Complex c;
  c.type = datum.type();
  c.rank = r;
  c.cells = weyl.codim2_cells(weyl.longest_word());
  c.right = wedge_map(r);
  c.left = IntMatrix(static_cast<std::size_t>(r * r), c.cells.size(), 0);
  for (std::size_t col = 0; col < c.cells.size(); ++col) {
    const int i = c.cells[col].i();
    const int j = c.cells[col].j();
    std::vector<long long> alpha_i(r, 0);
    alpha_i[i] = 1;
    const auto sj_alpha_i = weyl.act_on_coroot(j, alpha_i);
    bool placed = false;
    // The literal formula carries -1 on the second term; keep it when it composes to zero.
    for (int sign : {-1, 1}) {
      std::vector<long long> column(static_cast<std::size_t>(r * r), 0);
      for (int k = 0; k < r; ++k) column[c.tensor_index(j, k)] += sj_alpha_i[k];
      column[c.tensor_index(i, j)] += sign;
      const auto image = c.right * column;
      if (std::all_of(image.begin(), image.end(), [](long long x) { return x == 0; })) {
        for (std::size_t row = 0; row < column.size(); ++row) c.left(row, col) = column[row];
        c.relative_signs.push_back(sign);
        placed = true;
        break;
      }
    }
    if (!placed)
      throw InvariantViolation("no sign choice makes the d2 column of " + c.cells[col].name() +
                               " compose to zero with the wedge map");
  }
  if (!(c.right * c.left).is_zero()) throw InvariantViolation("pi3 complex: right o left != 0");
  return c;
}

inline Pi3Complex build_pi3_complex(const RootDatum &datum) { return build_pi3_complex(WeylGroup(datum)); }

/// Coordinates of a column of `left` in the basis of ker(wedge) = symmetric
/// tensors: e_m (x) e_m for each m, then e_m (x) e_k + e_k (x) e_m for m < k.
inline std::vector<long long> symmetric_coordinates(const Pi3Complex &c, std::size_t col) {
  const int r = c.rank;
  std::vector<long long> out;
  for (int m = 0; m < r; ++m) out.push_back(c.left(c.tensor_index(m, m), col));
  for (int m = 0; m < r; ++m)
    for (int k = m + 1; k < r; ++k) {
      const long long a = c.left(c.tensor_index(m, k), col);
      if (a != c.left(c.tensor_index(k, m), col))
        throw InvariantViolation("pi3 column is not a symmetric tensor");
      out.push_back(a);
    }
  return out;
}

} // namespace a1cell
