#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <iterator>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "a1cell/errors.hpp"

namespace a1cell {

inline const std::string kMinusOne = "-1";

/// Element of the F2-vector space on named unit symbols: the square class of
/// a product of units. Stored as a sorted set of symbols.
class SquareClass {
public:
  SquareClass() = default;
  explicit SquareClass(const std::string &symbol) : symbols_{symbol} {}

  static SquareClass minus_one() { return SquareClass(kMinusOne); }

  [[nodiscard]] const std::vector<std::string> &symbols() const { return symbols_; }
  [[nodiscard]] bool trivial() const { return symbols_.empty(); }
  [[nodiscard]] bool contains(const std::string &s) const {
    return std::binary_search(symbols_.begin(), symbols_.end(), s);
  }

  /// d * d' : symmetric difference, since squares are trivial.
  friend SquareClass operator*(const SquareClass &a, const SquareClass &b) {
    SquareClass out;
    std::set_symmetric_difference(a.symbols_.begin(), a.symbols_.end(), b.symbols_.begin(),
                                  b.symbols_.end(), std::back_inserter(out.symbols_));
    return out;
  }

  [[nodiscard]] SquareClass without(const std::string &s) const {
    SquareClass out = *this;
    out.symbols_.erase(std::remove(out.symbols_.begin(), out.symbols_.end(), s), out.symbols_.end());
    return out;
  }

  [[nodiscard]] std::string to_string() const {
    std::string s = "<";
    for (std::size_t i = 0; i < symbols_.size(); ++i) s += (i ? "," : "") + symbols_[i];
    return s + ">";
  }

  friend bool operator==(const SquareClass &, const SquareClass &) = default;
  friend auto operator<=>(const SquareClass &, const SquareClass &) = default;

private:
  std::vector<std::string> symbols_;
};

/// <d> eta^e
struct Atom {
  int eta = 0;
  SquareClass d;

  friend bool operator==(const Atom &, const Atom &) = default;
  friend auto operator<=>(const Atom &, const Atom &) = default;
};

/// Formal Z-linear combination of atoms <d> eta^e, kept in normal form:
/// no zero coefficients and no atom with e >= 1 whose class contains -1
/// (eta<-1> = -eta, from eta h = 0).
class MWScalar {
public:
  MWScalar() = default;
  MWScalar(long long n) { // NOLINT(google-explicit-constructor): integers embed as n<1>
    if (n != 0) terms_[Atom{}] = n;
  }

  static MWScalar atom(long long coeff, int eta_power, SquareClass d = {}) {
    if (eta_power < 0) throw InvalidInput("negative eta exponent");
    MWScalar s;
    s.add_term(Atom{eta_power, std::move(d)}, coeff);
    s.normalize();
    return s;
  }
  static MWScalar eta() { return atom(1, 1); }
  static MWScalar unit(const SquareClass &d) { return atom(1, 0, d); }
  static MWScalar unit(const std::string &symbol) { return unit(SquareClass(symbol)); }
  static MWScalar minus_one_form() { return unit(SquareClass::minus_one()); }
  /// h = 1 + <-1>
  static MWScalar h() { return MWScalar(1) + minus_one_form(); }
  /// epsilon = -<-1>
  static MWScalar epsilon() { return -minus_one_form(); }

  [[nodiscard]] const std::map<Atom, long long> &terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }

  /// +-<d> with no eta: the units used for chain-level cancellation.
  [[nodiscard]] bool is_unit() const {
    if (terms_.size() != 1) return false;
    const auto &[a, c] = *terms_.begin();
    return a.eta == 0 && (c == 1 || c == -1);
  }
  /// +-<d> eta
  [[nodiscard]] bool is_eta_unit() const {
    if (terms_.size() != 1) return false;
    const auto &[a, c] = *terms_.begin();
    return a.eta == 1 && (c == 1 || c == -1);
  }
  /// Inverse of a unit +-<d> (itself).
  [[nodiscard]] MWScalar unit_inverse() const {
    if (!is_unit()) throw InvariantViolation("unit_inverse of non-unit " + to_string());
    return *this;
  }

  /// Every atom has the given eta exponent (vacuous for zero).
  [[nodiscard]] bool homogeneous_of_eta_degree(int e) const {
    return std::all_of(terms_.begin(), terms_.end(), [e](const auto &t) { return t.first.eta == e; });
  }

  /// Unit symbols occurring in this scalar, excluding -1.
  [[nodiscard]] std::vector<std::string> free_symbols() const {
    std::vector<std::string> out;
    for (const auto &[a, c] : terms_)
      for (const auto &s : a.d.symbols())
        if (s != kMinusOne && std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    std::sort(out.begin(), out.end());
    return out;
  }

  friend MWScalar operator+(MWScalar a, const MWScalar &b) {
    for (const auto &[atom, c] : b.terms_) a.add_term(atom, c);
    a.normalize();
    return a;
  }
  friend MWScalar operator-(const MWScalar &a) {
    MWScalar out = a;
    for (auto &[atom, c] : out.terms_) c = -c;
    return out;
  }
  friend MWScalar operator-(const MWScalar &a, const MWScalar &b) { return a + (-b); }
  friend MWScalar operator*(const MWScalar &a, const MWScalar &b) {
    MWScalar out;
    for (const auto &[x, cx] : a.terms_)
      for (const auto &[y, cy] : b.terms_) out.add_term(Atom{x.eta + y.eta, x.d * y.d}, cx * cy);
    out.normalize();
    return out;
  }
  MWScalar &operator+=(const MWScalar &b) { return *this = *this + b; }
  MWScalar &operator*=(const MWScalar &b) { return *this = *this * b; }

  friend bool operator==(const MWScalar &, const MWScalar &) = default;

  [[nodiscard]] std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto &[a, c] : terms_) {
      std::string body;
      if (!a.d.trivial()) body += a.d.to_string();
      if (a.eta == 1) body += "eta";
      else if (a.eta > 1) body += "eta^" + std::to_string(a.eta);
      long long mag = c < 0 ? -c : c;
      std::string term = body.empty() ? std::to_string(mag)
                                      : (mag == 1 ? body : std::to_string(mag) + body);
      if (first) out += (c < 0 ? "-" : "") + term;
      else out += (c < 0 ? " - " : " + ") + term;
      first = false;
    }
    return out;
  }

private:
  void add_term(const Atom &a, long long c) {
    if (c == 0) return;
    auto &slot = terms_[a];
    slot += c;
    if (slot == 0) terms_.erase(a);
  }

  void normalize() {
    std::map<Atom, long long> out;
    for (const auto &[atom, coeff] : terms_) {
      Atom a = atom;
      long long c = coeff;
      if (a.eta >= 1 && a.d.contains(kMinusOne)) {
        a.d = a.d.without(kMinusOne);
        c = -c;
      }
      out[a] += c;
    }
    std::erase_if(out, [](const auto &t) { return t.second == 0; });
    terms_ = std::move(out);
  }

  std::map<Atom, long long> terms_;
};

enum class CombineMode { Add, Mul };

inline MWScalar combine(const MWScalar &a, const MWScalar &b, CombineMode mode) {
  return mode == CombineMode::Add ? a + b : a * b;
}

/// n_eps = sum_{i=1}^{n} <(-1)^{i-1}>: k h for n = 2k, k h + 1 for n = 2k + 1.
inline MWScalar n_epsilon(int n) {
  if (n < 0) throw InvalidInput("n_epsilon requires n >= 0");
  MWScalar s;
  for (int i = 1; i <= n; ++i) s += (i % 2 == 1) ? MWScalar(1) : MWScalar::minus_one_form();
  return s;
}

enum class RealizationKind { Real, ComplexTop, Milnor };

using SignAssignment = std::map<std::string, int>;

/// Ring-homomorphic specialization of scalars and weight groups to Z.
struct Realization {
  RealizationKind kind = RealizationKind::Real;

  static Realization real() { return {RealizationKind::Real}; }
  static Realization complex_top() { return {RealizationKind::ComplexTop}; }
  static Realization milnor() { return {RealizationKind::Milnor}; }

  [[nodiscard]] std::string name() const {
    switch (kind) {
    case RealizationKind::Real: return "real";
    case RealizationKind::ComplexTop: return "complexTop";
    case RealizationKind::Milnor: return "milnor";
    }
    return "?";
  }
  [[nodiscard]] long long eta_value() const { return kind == RealizationKind::Real ? 2 : 0; }
  /// Whether weight-n groups realize to Z (otherwise to 0).
  [[nodiscard]] bool weight_group_nonzero(int weight) const {
    return kind != RealizationKind::ComplexTop || weight == 0;
  }
  /// Only the real realization consults the sign assignment; -1 is fixed to -1 there.
  [[nodiscard]] int sign(const std::string &symbol, const SignAssignment &signs) const {
    if (kind != RealizationKind::Real) return 1;
    if (symbol == kMinusOne) return -1;
    auto it = signs.find(symbol);
    if (it == signs.end()) throw InvalidInput("no sign assigned to unit symbol '" + symbol + "'");
    return it->second;
  }
};

inline long long realize(const MWScalar &s, const Realization &r, const SignAssignment &signs = {}) {
  long long total = 0;
  for (const auto &[a, c] : s.terms()) {
    long long v = c;
    for (const auto &sym : a.d.symbols()) v *= r.sign(sym, signs);
    for (int e = 0; e < a.eta; ++e) v *= r.eta_value();
    total += v;
  }
  return total;
}

/// The integer by which s acts on an eta-torsion element: <d> acts as 1 and
/// any atom carrying eta acts as 0.
inline long long reduce_on_torsion(const MWScalar &s) {
  long long total = 0;
  for (const auto &[a, c] : s.terms())
    if (a.eta == 0) total += c;
  return total;
}

} // namespace a1cell
