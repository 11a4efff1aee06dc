#pragma once

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "a1cell/errors.hpp"
#include "a1cell/matrix.hpp"

namespace a1cell {

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

inline char family_letter(Family f) { return static_cast<char>(f); }

inline Family parse_family(const std::string &s) {
  if (s.size() == 1) {
    switch (std::toupper(static_cast<unsigned char>(s[0]))) {
    case 'A': return Family::A;
    case 'B': return Family::B;
    case 'C': return Family::C;
    case 'D': return Family::D;
    case 'E': return Family::E;
    case 'F': return Family::F;
    case 'G': return Family::G;
    default: break;
    }
  }
  throw InvalidInput("unknown Dynkin family '" + s + "' (expected one of A,B,C,D,E,F,G)");
}

struct DynkinType {
  Family family = Family::A;
  int rank = 1;

  [[nodiscard]] std::string name() const {
    return std::string(1, family_letter(family)) + std::to_string(rank);
  }
  friend bool operator==(const DynkinType &, const DynkinType &) = default;
};

/// Empty when (family, rank) is admissible before normalization, else the
/// violated constraint.
inline std::optional<std::string> admissibility_error(DynkinType t) {
  const int r = t.rank;
  auto bad = [&](const std::string &constraint) {
    return std::optional<std::string>("inadmissible Dynkin type " + t.name() + ": " +
                                      constraint);
  };
  if (r < 1) return bad("rank must be positive");
  switch (t.family) {
  case Family::A: return std::nullopt;
  case Family::B: return r >= 2 ? std::nullopt : bad("family B requires rank >= 2");
  case Family::C: return std::nullopt; // C1 is normalized to A1
  case Family::D: return r >= 3 ? std::nullopt : bad("family D requires rank >= 3 (D3 = A3)");
  case Family::E:
    return (r >= 6 && r <= 8) ? std::nullopt : bad("family E requires rank 6, 7 or 8");
  case Family::F: return r == 4 ? std::nullopt : bad("family F requires rank 4");
  case Family::G: return r == 2 ? std::nullopt : bad("family G requires rank 2");
  }
  return bad("unknown family");
}

/// B2 -> C2, C1 -> A1, D3 -> A3. Throws InvalidInput on inadmissible types.
inline DynkinType normalize(DynkinType t) {
  if (auto err = admissibility_error(t)) throw InvalidInput(*err);
  if (t.family == Family::B && t.rank == 2) return {Family::C, 2};
  if (t.family == Family::C && t.rank == 1) return {Family::A, 1};
  if (t.family == Family::D && t.rank == 3) return {Family::A, 3};
  return t;
}

enum class RootLength { Long, Short };

/// A root in simple-root coordinates.
struct Root {
  std::vector<int> coords;

  [[nodiscard]] bool positive() const {
    return std::all_of(coords.begin(), coords.end(), [](int c) { return c >= 0; });
  }
  [[nodiscard]] int height() const { return std::accumulate(coords.begin(), coords.end(), 0); }
  friend bool operator==(const Root &, const Root &) = default;
  friend auto operator<=>(const Root &, const Root &) = default;
};

namespace detail {

// Simple roots as integer Euclidean vectors (Bourbaki planches, scaled by 2
// where half-integers occur). Only ratios of inner products are used.
inline std::vector<std::vector<long long>> simple_root_model(DynkinType t) {
  const int r = t.rank;
  std::vector<std::vector<long long>> roots;
  auto unit_diff = [](int dim, int a, int b) {
    std::vector<long long> v(dim, 0);
    v[a] = 1;
    v[b] = -1;
    return v;
  };
  switch (t.family) {
  case Family::A:
    for (int i = 0; i < r; ++i) roots.push_back(unit_diff(r + 1, i, i + 1));
    break;
  case Family::B:
  case Family::C:
    for (int i = 0; i + 1 < r; ++i) roots.push_back(unit_diff(r, i, i + 1));
    {
      std::vector<long long> last(r, 0);
      last[r - 1] = t.family == Family::B ? 1 : 2;
      roots.push_back(last);
    }
    break;
  case Family::D:
    for (int i = 0; i + 1 < r; ++i) roots.push_back(unit_diff(r, i, i + 1));
    {
      std::vector<long long> last(r, 0);
      last[r - 2] = 1;
      last[r - 1] = 1;
      roots.push_back(last);
    }
    break;
  case Family::E: {
    // E8 in R^8 (doubled); E7 and E6 are the first 7 and 6 simple roots.
    std::vector<std::vector<long long>> e8;
    e8.push_back({1, -1, -1, -1, -1, -1, -1, 1});
    e8.push_back({2, 2, 0, 0, 0, 0, 0, 0});
    for (int i = 0; i < 6; ++i) {
      std::vector<long long> v(8, 0);
      v[i + 1] = 2;
      v[i] = -2;
      e8.push_back(v);
    }
    roots.assign(e8.begin(), e8.begin() + r);
    break;
  }
  case Family::F:
    // doubled: e2-e3, e3-e4, e4, (e1-e2-e3-e4)/2
    roots = {{0, 2, -2, 0}, {0, 0, 2, -2}, {0, 0, 0, 2}, {1, -1, -1, -1}};
    break;
  case Family::G:
    // in the plane x+y+z = 0: alpha1 = e1-e2 (short), alpha2 = -2e1+e2+e3 (long)
    roots = {{1, -1, 0}, {-2, 1, 1}};
    break;
  }
  return roots;
}

inline long long dot(const std::vector<long long> &a, const std::vector<long long> &b) {
  long long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

} // namespace detail

/// Root datum of a simply connected, almost simple split group of a given
/// irreducible type. Indices are 0-based; Bourbaki label k is index k-1.
class RootDatum {
public:
  static RootDatum make(DynkinType requested) {
    RootDatum d;
    d.requested_ = requested;
    d.type_ = normalize(requested);
    const auto model = detail::simple_root_model(d.type_);
    const int r = d.type_.rank;
    d.cartan_ = IntMatrix(r, r, 0);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        const long long num = 2 * detail::dot(model[i], model[j]);
        const long long den = detail::dot(model[j], model[j]);
        if (num % den != 0) throw InvariantViolation("non-integral Cartan entry");
        d.cartan_(i, j) = num / den;
      }
    long long max_norm = 0;
    for (const auto &v : model) max_norm = std::max(max_norm, detail::dot(v, v));
    for (const auto &v : model)
      d.lengths_.push_back(detail::dot(v, v) == max_norm ? RootLength::Long : RootLength::Short);
    d.validate();
    return d;
  }

  [[nodiscard]] const DynkinType &type() const { return type_; }
  [[nodiscard]] const DynkinType &requested_type() const { return requested_; }
  [[nodiscard]] int rank() const { return type_.rank; }

  /// a[i][j] = <alpha_i, alpha_j^vee>.
  [[nodiscard]] const IntMatrix &cartan() const { return cartan_; }
  [[nodiscard]] long long cartan(int i, int j) const { return cartan_(i, j); }

  /// n_{ji} = -<alpha_j, alpha_i^vee>, so that s_j(alpha_i^vee) = alpha_i^vee + n_{ji} alpha_j^vee.
  [[nodiscard]] int cartan_integer(int j, int i) const {
    check_index(i);
    check_index(j);
    if (i == j) throw InvalidInput("cartan_integer requires distinct indices");
    return static_cast<int>(-cartan_(j, i));
  }

  [[nodiscard]] bool adjacent(int i, int j) const { return i != j && cartan_(i, j) != 0; }

  [[nodiscard]] RootLength length_class(int i) const { return lengths_.at(i); }
  [[nodiscard]] const std::vector<RootLength> &length_classes() const { return lengths_; }

  [[nodiscard]] bool simply_laced() const {
    return std::all_of(lengths_.begin(), lengths_.end(),
                       [](RootLength l) { return l == RootLength::Long; });
  }

  [[nodiscard]] std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < rank(); ++i)
      for (int j = i + 1; j < rank(); ++j)
        if (adjacent(i, j)) out.emplace_back(i, j);
    return out;
  }

  void check_index(int i) const {
    if (i < 0 || i >= rank())
      throw InvalidInput("root index " + std::to_string(i + 1) + " out of range 1.." +
                         std::to_string(rank()));
  }

private:
  RootDatum() = default;

  void validate() const {
    const int r = rank();
    for (int i = 0; i < r; ++i) {
      if (cartan_(i, i) != 2) throw InvariantViolation("Cartan diagonal must be 2");
      for (int j = 0; j < r; ++j) {
        if (i == j) continue;
        if (cartan_(i, j) > 0) throw InvariantViolation("positive off-diagonal Cartan entry");
        if ((cartan_(i, j) == 0) != (cartan_(j, i) == 0))
          throw InvariantViolation("Cartan zero pattern not symmetric");
        if (-cartan_(i, j) > 3) throw InvariantViolation("Cartan integer outside {0,1,2,3}");
      }
    }
    // tree: r-1 edges and connected
    const auto e = edges();
    if (static_cast<int>(e.size()) != r - 1) throw InvariantViolation("Dynkin diagram is not a tree");
    std::vector<int> seen{0};
    std::set<int> visited{0};
    while (!seen.empty()) {
      int v = seen.back();
      seen.pop_back();
      for (int w = 0; w < r; ++w)
        if (adjacent(v, w) && visited.insert(w).second) seen.push_back(w);
    }
    if (static_cast<int>(visited.size()) != r) throw InvariantViolation("Dynkin diagram is disconnected");
    if (type_.family == Family::C && r >= 2) {
      int longs = 0;
      for (int i = 0; i < r; ++i)
        if (lengths_[i] == RootLength::Long) {
          ++longs;
          int degree = 0;
          for (int j = 0; j < r; ++j) degree += adjacent(i, j) ? 1 : 0;
          if (degree != 1) throw InvariantViolation("long root of type C must be a leaf");
        }
      if (longs != 1) throw InvariantViolation("type C must have exactly one long simple root");
    }
  }

  DynkinType requested_;
  DynkinType type_;
  IntMatrix cartan_;
  std::vector<RootLength> lengths_;
};

inline RootDatum make_root_datum(DynkinType t) { return RootDatum::make(t); }

inline int cartan_integer(const RootDatum &d, int j, int i) { return d.cartan_integer(j, i); }

/// s_i on a root given in simple-root coordinates.
inline Root reflect_root(const RootDatum &d, int i, const Root &beta) {
  Root out = beta;
  long long pairing = 0; // <beta, alpha_i^vee>
  for (int k = 0; k < d.rank(); ++k) pairing += beta.coords[k] * d.cartan(k, i);
  out.coords[i] -= static_cast<int>(pairing);
  return out;
}

/// Positive roots by closure under simple reflections, sorted by height then
/// coordinates.
inline std::vector<Root> positive_roots(const RootDatum &d) {
  const int r = d.rank();
  std::set<Root> found;
  std::vector<Root> frontier;
  for (int i = 0; i < r; ++i) {
    Root a{std::vector<int>(r, 0)};
    a.coords[i] = 1;
    found.insert(a);
    frontier.push_back(a);
  }
  while (!frontier.empty()) {
    Root beta = frontier.back();
    frontier.pop_back();
    for (int i = 0; i < r; ++i) {
      Root gamma = reflect_root(d, i, beta);
      if (gamma.positive() && found.insert(gamma).second) frontier.push_back(gamma);
    }
  }
  std::vector<Root> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const Root &a, const Root &b) { return a.height() < b.height(); });
  return out;
}

struct SymplecticInfo {
  bool symplectic = false;
  std::optional<int> long_root; // unique long root when symplectic, else smallest long index
};

inline SymplecticInfo symplectic_type(const RootDatum &d) {
  SymplecticInfo info;
  info.symplectic = d.type().family == Family::C || (d.type().family == Family::A && d.rank() == 1);
  for (int i = 0; i < d.rank(); ++i)
    if (d.length_class(i) == RootLength::Long) {
      info.long_root = i;
      break;
    }
  return info;
}

} // namespace a1cell
