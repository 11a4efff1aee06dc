#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "a1cell/errors.hpp"
#include "a1cell/matrix.hpp"
#include "a1cell/rootdata.hpp"

namespace a1cell {

/// A word in the simple reflections, stored as written left to right:
/// letters = {a_l, ..., a_1} stands for s_{a_l} ... s_{a_1}. Positions are
/// numbered from the right, so position p is letters[size - p].
struct WeylWord {
  std::vector<int> letters;

  [[nodiscard]] int length() const { return static_cast<int>(letters.size()); }

  [[nodiscard]] int letter_at(int position) const {
    check_position(position);
    return letters[letters.size() - static_cast<std::size_t>(position)];
  }

  [[nodiscard]] WeylWord without(int position) const {
    check_position(position);
    WeylWord out = *this;
    out.letters.erase(out.letters.end() - position);
    return out;
  }

  [[nodiscard]] std::string to_string() const {
    if (letters.empty()) return "e";
    std::string s;
    for (int l : letters) s += "s" + std::to_string(l + 1);
    return s;
  }

  friend bool operator==(const WeylWord &, const WeylWord &) = default;

private:
  void check_position(int position) const {
    if (position < 1 || position > length())
      throw InvalidInput("word position " + std::to_string(position) + " out of range");
  }
};

/// A Weyl group element: its action on the coroot lattice plus one word
/// representing it. Equality ignores the word.
struct WeylElement {
  IntMatrix matrix;
  WeylWord word;

  friend bool operator==(const WeylElement &a, const WeylElement &b) { return a.matrix == b.matrix; }
};

struct Inversions {
  std::vector<Root> roots;
  int length = 0;
};

/// The ordered pair (i, j) labelling w0 s_i s_j, with whether lambda_i > lambda_j.
struct AttachedPair {
  int i = 0;
  int j = 0;
  bool lambda_i_greater = false;
};

/// A codimension-2 Bruhat cell w0 s_i s_j.
struct CellLabel {
  WeylElement element;
  std::vector<AttachedPair> pairs; // pairs.front() is canonical
  bool adjacent = false;

  [[nodiscard]] int i() const { return pairs.front().i; }
  [[nodiscard]] int j() const { return pairs.front().j; }
  [[nodiscard]] std::string name() const {
    return "w0 s" + std::to_string(i() + 1) + " s" + std::to_string(j() + 1);
  }
};

/// Reduced-word engine over a fixed root datum. Generator matrices and the
/// positive roots are computed once in the constructor.
class WeylGroup {
public:
  explicit WeylGroup(RootDatum datum) : datum_(std::move(datum)) {
    const int r = datum_.rank();
    for (int i = 0; i < r; ++i) {
      IntMatrix coroot = IntMatrix::identity(r);
      IntMatrix root = IntMatrix::identity(r);
      for (int k = 0; k < r; ++k) {
        coroot(i, k) -= datum_.cartan(i, k);
        root(i, k) -= datum_.cartan(k, i);
      }
      coroot_gens_.push_back(std::move(coroot));
      root_gens_.push_back(std::move(root));
    }
    positive_ = positive_roots(datum_);
  }

  [[nodiscard]] const RootDatum &datum() const { return datum_; }
  [[nodiscard]] int rank() const { return datum_.rank(); }
  [[nodiscard]] const std::vector<Root> &positive() const { return positive_; }
  [[nodiscard]] const IntMatrix &coroot_generator(int i) const { return coroot_gens_.at(i); }

  /// s_i(v) for v in coroot coordinates.
  [[nodiscard]] std::vector<long long> act_on_coroot(int i, const std::vector<long long> &v) const {
    datum_.check_index(i);
    if (static_cast<int>(v.size()) != rank()) throw InvalidInput("coroot vector has wrong dimension");
    return coroot_gens_[i] * v;
  }

  [[nodiscard]] IntMatrix coroot_matrix(const WeylWord &w) const { return product(w, coroot_gens_); }
  [[nodiscard]] IntMatrix root_matrix(const WeylWord &w) const { return product(w, root_gens_); }

  [[nodiscard]] WeylElement element(const WeylWord &w) const { return {coroot_matrix(w), w}; }

  [[nodiscard]] Inversions inversions(const WeylWord &w) const {
    const IntMatrix m = root_matrix(w);
    Inversions inv;
    for (const Root &alpha : positive_) {
      std::vector<long long> image(rank(), 0);
      for (int a = 0; a < rank(); ++a)
        for (int b = 0; b < rank(); ++b) image[a] += m(a, b) * alpha.coords[b];
      bool negative = false;
      for (long long c : image) negative = negative || c < 0;
      if (negative) inv.roots.push_back(alpha);
    }
    inv.length = static_cast<int>(inv.roots.size());
    return inv;
  }

  [[nodiscard]] int length(const WeylWord &w) const { return inversions(w).length; }
  [[nodiscard]] bool is_reduced(const WeylWord &w) const { return length(w) == w.length(); }

  /// Greedy canonical reduced word of w0: append on the right the smallest
  /// generator that increases the length, until no generator does.
  [[nodiscard]] WeylWord longest_word() const {
    WeylWord w;
    IntMatrix m = IntMatrix::identity(rank());
    const int target = static_cast<int>(positive_.size());
    while (w.length() < target) {
      bool extended = false;
      for (int i = 0; i < rank(); ++i) {
        // l(w s_i) > l(w) iff w(alpha_i) > 0, i.e. column i of the root matrix is positive.
        bool positive = true;
        for (int a = 0; a < rank(); ++a) positive = positive && m(a, i) >= 0;
        if (positive) {
          w.letters.push_back(i);
          m = m * root_gens_[i];
          extended = true;
          break;
        }
      }
      if (!extended) throw InvariantViolation("greedy longest word stalled before |Phi+|");
    }
    return w;
  }

  /// lambda_i: the unique position whose deletion from w0 gives a reduced
  /// word for w0 s_i. Uniqueness is checked exhaustively.
  [[nodiscard]] int deletion_index(const WeylWord &w0, int i) const {
    require_longest(w0);
    datum_.check_index(i);
    const IntMatrix target = coroot_matrix(w0) * coroot_gens_[i];
    const int k = unique_deletion(w0, target, "w0 s" + std::to_string(i + 1));
    return w0.length() - k;
  }

  [[nodiscard]] std::vector<int> deletion_indices(const WeylWord &w0) const {
    std::vector<int> out;
    for (int i = 0; i < rank(); ++i) out.push_back(deletion_index(w0, i));
    return out;
  }

  /// mu_j: with lambda_i removed from w0, the unique further position (in the
  /// original right-to-left numbering) whose deletion gives w0 s_i s_j.
  [[nodiscard]] int second_deletion_index(const WeylWord &w0, int i, int j) const {
    if (i == j) throw InvalidInput("second_deletion_index requires i != j");
    const int lambda_i = deletion_index(w0, i);
    const WeylWord wi = w0.without(lambda_i);
    const IntMatrix target = coroot_matrix(w0) * coroot_gens_[i] * coroot_gens_[j];
    const int k = unique_deletion(wi, target,
                                  "w0 s" + std::to_string(i + 1) + " s" + std::to_string(j + 1));
    const int removed = w0.length() - lambda_i; // letter index of lambda_i in w0
    const int original = k < removed ? k : k + 1;
    return w0.length() - original;
  }

  /// Reduced word for w0 s_i s_j obtained by deleting lambda_i, then mu_j.
  [[nodiscard]] WeylWord cell_word(const WeylWord &w0, int lambda_i, int i, int j) const {
    WeylWord wi = w0.without(lambda_i);
    const IntMatrix target = coroot_matrix(w0) * coroot_gens_[i] * coroot_gens_[j];
    const int k = unique_deletion(wi, target,
                                  "w0 s" + std::to_string(i + 1) + " s" + std::to_string(j + 1));
    wi.letters.erase(wi.letters.begin() + k);
    return wi;
  }

  /// All elements w0 s_i s_j (i != j); commuting pairs collapse onto (min, max).
  [[nodiscard]] std::vector<CellLabel> codim2_cells(const WeylWord &w0) const {
    require_longest(w0);
    std::vector<CellLabel> cells;
    if (rank() < 2) return cells;
    const auto lambda = deletion_indices(w0);
    const IntMatrix m0 = coroot_matrix(w0);
    for (int i = 0; i < rank(); ++i)
      for (int j = 0; j < rank(); ++j) {
        if (i == j) continue;
        const bool adj = datum_.adjacent(i, j);
        if (!adj && j < i) continue;
        CellLabel cell;
        cell.adjacent = adj;
        cell.element = {m0 * coroot_gens_[i] * coroot_gens_[j], cell_word(w0, lambda[i], i, j)};
        cell.pairs.push_back({i, j, lambda[i] > lambda[j]});
        if (!adj) cell.pairs.push_back({j, i, lambda[j] > lambda[i]});
        cells.push_back(std::move(cell));
      }
    for (std::size_t a = 0; a < cells.size(); ++a) {
      if (length(cells[a].element.word) != w0.length() - 2)
        throw InvariantViolation("codimension-2 cell " + cells[a].name() + " has wrong length");
      for (std::size_t b = a + 1; b < cells.size(); ++b)
        if (cells[a].element == cells[b].element)
          throw InvariantViolation("codimension-2 cells " + cells[a].name() + " and " +
                                   cells[b].name() + " coincide");
    }
    return cells;
  }

  /// Deletes letters until reduced (exchange/deletion condition); returns a
  /// reduced word for the same element.
  [[nodiscard]] WeylWord reduce(WeylWord w) const {
    while (!is_reduced(w)) {
      const IntMatrix m = coroot_matrix(w);
      bool done = false;
      for (int a = 0; a < w.length() && !done; ++a)
        for (int b = a + 1; b < w.length() && !done; ++b) {
          WeylWord shorter = w;
          shorter.letters.erase(shorter.letters.begin() + b);
          shorter.letters.erase(shorter.letters.begin() + a);
          if (coroot_matrix(shorter) == m) {
            w = std::move(shorter);
            done = true;
          }
        }
      if (!done) throw InvariantViolation("deletion condition failed for " + w.to_string());
    }
    return w;
  }

private:
  static IntMatrix product(const WeylWord &w, const std::vector<IntMatrix> &gens) {
    const std::size_t r = gens.empty() ? 0 : gens.front().rows();
    IntMatrix m = IntMatrix::identity(r);
    for (int l : w.letters) m = m * gens.at(l);
    return m;
  }

  void require_longest(const WeylWord &w0) const {
    for (int l : w0.letters)
      if (l < 0 || l >= rank()) throw InvalidInput("w0 contains an invalid letter");
    if (w0.length() != static_cast<int>(positive_.size()) || !is_reduced(w0))
      throw InvalidInput("malformed w0: not a reduced word of length |Phi+| = " +
                         std::to_string(positive_.size()));
  }

  // Index k into w.letters whose deletion realizes target; must be unique.
  int unique_deletion(const WeylWord &w, const IntMatrix &target, const std::string &what) const {
    const int n = w.length();
    std::vector<IntMatrix> prefix{IntMatrix::identity(rank())};
    for (int k = 0; k < n; ++k) prefix.push_back(prefix.back() * coroot_gens_[w.letters[k]]);
    std::vector<IntMatrix> suffix(n + 1, IntMatrix::identity(rank()));
    for (int k = n - 1; k >= 0; --k) suffix[k] = coroot_gens_[w.letters[k]] * suffix[k + 1];
    std::optional<int> found;
    for (int k = 0; k < n; ++k) {
      if (prefix[k] * suffix[k + 1] == target) {
        if (found) throw InvariantViolation("deletion index for " + what + " is not unique");
        found = k;
      }
    }
    if (!found) throw InvariantViolation("no deletion of " + w.to_string() + " yields " + what);
    return *found;
  }

  RootDatum datum_;
  std::vector<IntMatrix> coroot_gens_;
  std::vector<IntMatrix> root_gens_;
  std::vector<Root> positive_;
};

} // namespace a1cell
