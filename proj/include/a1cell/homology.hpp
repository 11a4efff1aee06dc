#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "a1cell/complexes.hpp"
#include "a1cell/errors.hpp"
#include "a1cell/matrix.hpp"
#include "a1cell/mwscalar.hpp"
#include "a1cell/smith.hpp"

namespace a1cell {

/// Finitely generated abelian group Z^free + Z/t_1 + ... with t_1 | t_2 | ... and t_i >= 2.
struct AbGroupDescriptor {
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion;

  static AbGroupDescriptor zero() { return {}; }
  static AbGroupDescriptor free(std::size_t rank) { return {rank, {}}; }
  /// Z/n, with Z/0 = Z and Z/1 = 0.
  static AbGroupDescriptor cyclic(long long n) {
    if (n < 0) n = -n;
    if (n == 0) return free(1);
    if (n == 1) return zero();
    return {0, {BigInt(n)}};
  }

  [[nodiscard]] bool is_zero() const { return free_rank == 0 && torsion.empty(); }

  [[nodiscard]] std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    if (free_rank == 1) out = "Z";
    else if (free_rank > 1) out = "Z^" + std::to_string(free_rank);
    for (const auto &t : torsion) out += (out.empty() ? "" : " + ") + std::string("Z/") + t.str();
    return out;
  }

  friend bool operator==(const AbGroupDescriptor &, const AbGroupDescriptor &) = default;
};

namespace lattice {

/// Columns form a Z-basis of {x : m x = 0}.
inline BigMatrix kernel_basis(const BigMatrix &m) {
  const auto s = smith_normal_form(m);
  BigMatrix out(m.cols(), m.cols() - s.rank);
  for (std::size_t t = s.rank; t < m.cols(); ++t)
    for (std::size_t row = 0; row < m.cols(); ++row) out(row, t - s.rank) = s.V(row, t);
  return out;
}

inline std::size_t rank(const BigMatrix &m) { return smith_normal_form(m).rank; }

/// span(z) / span(b) for column sets with span(b) inside span(z).
inline AbGroupDescriptor subquotient(const BigMatrix &z, const BigMatrix &b) {
  const auto s = smith_normal_form(z);
  const std::size_t k = s.rank;
  // Basis of span(z): columns t < k of Uinv * D. Coordinates of b: (U b)_t / d_t.
  BigMatrix coeff(k, b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    const auto ub = s.U * b.column(c);
    for (std::size_t t = 0; t < ub.size(); ++t) {
      if (t >= k) {
        if (ub[t] != 0) throw InvariantViolation("subquotient: boundary leaves the cycle lattice");
        continue;
      }
      if (ub[t] % s.D(t, t) != 0)
        throw InvariantViolation("subquotient: boundary leaves the cycle lattice");
      coeff(t, c) = ub[t] / s.D(t, t);
    }
  }
  const auto q = smith_normal_form(coeff);
  AbGroupDescriptor g;
  g.free_rank = k - q.rank;
  for (std::size_t t = 0; t < q.rank; ++t)
    if (q.D(t, t) > 1) g.torsion.push_back(q.D(t, t));
  return g;
}

} // namespace lattice

/// Order of the relation imposed on a generator's realized group: 0 for a
/// free Z, 1 when the group realizes to 0, eta's value for K^M quotients.
inline BigInt generator_relation(const Generator &g, const Realization &r) {
  if (!g.integral && !r.weight_group_nonzero(g.weight)) return 1;
  if (g.milnor && r.eta_value() != 0) return r.eta_value() < 0 ? -r.eta_value() : r.eta_value();
  return 0;
}

/// Integer complex of quotient groups Z/rel per generator.
struct RealizedComplex {
  std::vector<BigMatrix> differentials;
  std::vector<std::vector<BigInt>> relations;

  [[nodiscard]] int top_degree() const { return static_cast<int>(relations.size()) - 1; }
  [[nodiscard]] std::size_t count(int degree) const {
    if (degree < 0 || degree > top_degree()) return 0;
    return relations[degree].size();
  }
  [[nodiscard]] BigMatrix differential(int degree) const {
    if (degree >= 1 && degree <= top_degree()) return differentials[degree];
    return BigMatrix(count(degree - 1), count(degree));
  }
  /// One column rel * e_g per generator with a nonzero relation.
  [[nodiscard]] BigMatrix relation_matrix(int degree) const {
    const std::size_t n = count(degree);
    std::vector<std::size_t> gens;
    for (std::size_t g = 0; g < n; ++g)
      if (relations[degree][g] != 0) gens.push_back(g);
    BigMatrix m(n, gens.size());
    for (std::size_t c = 0; c < gens.size(); ++c) m(gens[c], c) = relations[degree][gens[c]];
    return m;
  }
};

namespace detail {
inline bool in_relation_lattice(const BigInt &value, const BigInt &rel) {
  return rel == 0 ? value == 0 : value % rel == 0;
}
} // namespace detail

/// Realizes entries and relations; checks that each differential is well
/// defined on the quotient groups and that consecutive differentials compose to 0.
inline RealizedComplex realize_complex(const GradedComplex &c, const Realization &r,
                                       const SignAssignment &signs = {}) {
  RealizedComplex out;
  for (int d = 0; d <= c.top_degree(); ++d) {
    std::vector<BigInt> rel;
    for (const auto &g : c.generators[d]) rel.push_back(generator_relation(g, r));
    out.relations.push_back(std::move(rel));
  }
  out.differentials.emplace_back();
  for (int d = 1; d <= c.top_degree(); ++d)
    out.differentials.push_back(
        c.differential(d).map([&](const MWScalar &s) { return BigInt(realize(s, r, signs)); }));

  for (int d = 1; d <= c.top_degree(); ++d) {
    const BigMatrix &m = out.differentials[d];
    for (std::size_t g = 0; g < m.cols(); ++g) {
      const BigInt &rg = out.relations[d][g];
      if (rg == 0) continue;
      for (std::size_t v = 0; v < m.rows(); ++v)
        if (!detail::in_relation_lattice(rg * m(v, g), out.relations[d - 1][v]))
          throw InvariantViolation(c.name + ": realized differential in degree " + std::to_string(d) +
                                   " is not well defined on quotient groups");
    }
    if (d + 1 > c.top_degree()) continue;
    const BigMatrix composite = m * out.differentials[d + 1];
    for (std::size_t v = 0; v < composite.rows(); ++v)
      for (std::size_t w = 0; w < composite.cols(); ++w)
        if (!detail::in_relation_lattice(composite(v, w), out.relations[d - 1][v]))
          throw InvariantViolation(c.name + ": d o d != 0 in degree " + std::to_string(d + 1) +
                                   " under the " + r.name() + " realization");
  }
  return out;
}

inline AbGroupDescriptor homology_of(const RealizedComplex &rc, int degree) {
  if (degree < 0) throw InvalidInput("homology degree must be >= 0");
  const std::size_t n = rc.count(degree);
  if (n == 0) return AbGroupDescriptor::zero();
  // Cycles: x with d x in the relation lattice of degree - 1.
  const BigMatrix a = rc.differential(degree).hconcat(rc.relation_matrix(degree - 1));
  const BigMatrix ker = lattice::kernel_basis(a);
  BigMatrix cycles(n, ker.cols());
  for (std::size_t row = 0; row < n; ++row)
    for (std::size_t col = 0; col < ker.cols(); ++col) cycles(row, col) = ker(row, col);
  const BigMatrix boundaries = rc.differential(degree + 1).hconcat(rc.relation_matrix(degree));
  return lattice::subquotient(cycles, boundaries);
}

inline AbGroupDescriptor homology_over_realization(const GradedComplex &c, const Realization &r,
                                                   const SignAssignment &signs, int degree) {
  return homology_of(realize_complex(c, r, signs), degree);
}

/// Realized H_1 of the presentation, i.e. its cokernel.
inline AbGroupDescriptor pi1_cokernel(const Pi1Presentation &p, const Realization &r,
                                      const SignAssignment &signs = {}) {
  return homology_over_realization(to_graded_complex(p), r, signs, 1);
}

// ---------------------------------------------------------------------------
// Sign assignments for the free unit symbols.

inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct SignSweep {
  std::vector<std::string> symbols;
  std::vector<SignAssignment> assignments;
  bool exhaustive = true;
};

/// All 2^k assignments when k <= exhaustive_limit, otherwise `samples` seeded draws.
inline SignSweep sign_assignments(const std::vector<std::string> &symbols, std::uint64_t seed = kDefaultSeed,
                                  std::size_t exhaustive_limit = 12, std::size_t samples = 256) {
  SignSweep sweep;
  sweep.symbols = symbols;
  const std::size_t k = symbols.size();
  if (k <= exhaustive_limit) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      SignAssignment a;
      for (std::size_t b = 0; b < k; ++b) a[symbols[b]] = (mask >> b) & 1U ? -1 : 1;
      sweep.assignments.push_back(std::move(a));
    }
    return sweep;
  }
  sweep.exhaustive = false;
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    SignAssignment a;
    for (const auto &sym : symbols) a[sym] = (rng() & 1U) ? -1 : 1;
    sweep.assignments.push_back(std::move(a));
  }
  return sweep;
}

struct SweepSummary {
  std::size_t assignments = 0;
  bool exhaustive = true;
  bool invariant = true;
  std::set<std::string> values;
};

/// Evaluates f on every assignment of the sweep and records whether the result is constant.
template <typename F>
SweepSummary sweep_invariance(const std::vector<std::string> &symbols, std::uint64_t seed, F &&f) {
  const SignSweep sweep = sign_assignments(symbols, seed);
  SweepSummary out;
  out.exhaustive = sweep.exhaustive;
  for (const auto &a : sweep.assignments) {
    out.values.insert(f(a));
    ++out.assignments;
  }
  out.invariant = out.values.size() <= 1;
  return out;
}

// ---------------------------------------------------------------------------
// Symbolic pi_1 solver on the Hom side.

struct Pi1Variable {
  std::string name;
  bool torsion = false;  // eta-torsion sort
  MWScalar factor;       // value = factor * witness
  std::string reason;
};

struct Pi1Result {
  std::string classification; // "KMW2" or "KM2"
  int witness = 0;
  std::string h1_formula;
  std::vector<Pi1Variable> trace;

  [[nodiscard]] std::string witness_variable() const { return "x" + std::to_string(witness + 1); }

  [[nodiscard]] std::string describe(const Pi1Variable &v) const {
    const std::string w = witness_variable();
    std::string value;
    if (v.factor.is_zero()) value = "0";
    else if (v.factor == MWScalar(1)) value = w;
    else if (v.factor == MWScalar(-1)) value = "-" + w;
    else value = "(" + v.factor.to_string() + ") " + w;
    return v.name + " = " + value + (v.torsion ? "  [eta-torsion]" : "  [generic]") + "  (" + v.reason + ")";
  }
};

namespace detail {

struct Pi1System {
  const Pi1Presentation *p = nullptr;
  std::vector<bool> torsion;
  std::vector<std::string> torsion_reason;
  std::vector<bool> zero;

  [[nodiscard]] MWScalar effective(std::size_t row, std::size_t col) const {
    const MWScalar &e = p->entries(row, col);
    return torsion[row] ? MWScalar(reduce_on_torsion(e)) : e;
  }
  [[nodiscard]] std::vector<std::size_t> support(std::size_t col) const {
    std::vector<std::size_t> out;
    for (std::size_t row = 0; row < p->rows.size(); ++row)
      if (!p->entries(row, col).is_zero()) out.push_back(row);
    return out;
  }
};

inline Pi1System pi1_sorts(const Pi1Presentation &p) {
  Pi1System sys;
  sys.p = &p;
  const std::size_t n = p.rows.size();
  sys.torsion.assign(n, false);
  sys.torsion_reason.assign(n, "");
  sys.zero.assign(n, false);
  for (std::size_t row = 0; row < n; ++row)
    if (p.rows[row].milnor) {
      sys.torsion[row] = true;
      sys.torsion_reason[row] = "K^M_2 summand";
    }
  for (std::size_t col = 0; col < p.columns.size(); ++col) {
    const auto rows = sys.support(col);
    if (rows.size() == 1) {
      if (!p.entries(rows[0], col).is_unit())
        throw InvariantViolation("pi1 solver: single-entry column is not a unit");
      sys.zero[rows[0]] = true;
      continue;
    }
    // c x = (unit) y with y eta-torsion: eta c x = 0; if eta c is a unit multiple of eta, x is eta-torsion.
    for (std::size_t row : rows) {
      if (sys.torsion[row]) continue;
      const MWScalar eta_c = MWScalar::eta() * p.entries(row, col);
      if (eta_c.is_zero()) continue;
      if (!eta_c.is_eta_unit())
        throw InvariantViolation("pi1 solver: unsupported coefficient " + p.entries(row, col).to_string());
      sys.torsion[row] = true;
      sys.torsion_reason[row] = "forced by " + p.columns[col].name();
    }
  }
  return sys;
}

/// Propagates values from the witness through the column relations; nullopt
/// when a required division is impossible for this witness.
inline std::optional<std::vector<MWScalar>> propagate(const Pi1System &sys, std::size_t witness,
                                                      std::vector<std::string> &reasons) {
  const Pi1Presentation &p = *sys.p;
  const std::size_t n = p.rows.size();
  std::vector<std::optional<MWScalar>> value(n);
  reasons.assign(n, "");
  value[witness] = MWScalar(1);
  reasons[witness] = "witness";
  for (std::size_t row = 0; row < n; ++row)
    if (sys.zero[row] && row != witness) {
      value[row] = MWScalar(0);
      reasons[row] = "non-adjacent cell";
    }
  if (sys.zero[witness]) return std::nullopt;
  const bool witness_torsion = sys.torsion[witness];
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t col = 0; col < p.columns.size(); ++col) {
      const auto rows = sys.support(col);
      std::optional<std::size_t> unknown;
      std::size_t unknowns = 0;
      for (std::size_t row : rows)
        if (!value[row]) {
          unknown = row;
          ++unknowns;
        }
      if (unknowns != 1) continue;
      MWScalar known;
      for (std::size_t row : rows)
        if (row != *unknown) known += sys.effective(row, col) * *value[row];
      const MWScalar c = sys.effective(*unknown, col);
      if (!c.is_unit()) return std::nullopt;
      if (!sys.torsion[*unknown] && witness_torsion) return std::nullopt;
      MWScalar v = -(known * c.unit_inverse());
      if (witness_torsion) v = MWScalar(reduce_on_torsion(v));
      if (sys.torsion[*unknown] && !witness_torsion && !(MWScalar::eta() * v).is_zero())
        throw InvariantViolation("pi1 solver: eta-torsion variable " + p.rows[*unknown].variable() +
                                 " receives a non-torsion value");
      value[*unknown] = v;
      reasons[*unknown] = "from " + p.columns[col].name();
      progress = true;
    }
  }
  std::vector<MWScalar> out;
  for (const auto &v : value) {
    if (!v) return std::nullopt;
    out.push_back(*v);
  }
  return out;
}

} // namespace detail

inline Pi1Result solve_pi1_symbolic(const Pi1Presentation &p) {
  const detail::Pi1System sys = detail::pi1_sorts(p);
  const std::size_t r = static_cast<std::size_t>(p.rank);

  // Witness order: unforced x_i, then x_j carrying a non-unit coefficient on torsion, then the rest.
  std::vector<std::size_t> candidates;
  auto push = [&](std::size_t row) {
    if (std::find(candidates.begin(), candidates.end(), row) == candidates.end()) candidates.push_back(row);
  };
  for (std::size_t i = 0; i < r; ++i)
    if (!sys.torsion[i]) push(i);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t col = 0; col < p.columns.size(); ++col) {
      const long long k = reduce_on_torsion(p.entries(i, col));
      if (!p.entries(i, col).is_zero() && k != 1 && k != -1) push(i);
    }
  for (std::size_t i = 0; i < r; ++i) push(i);

  for (std::size_t w : candidates) {
    std::vector<std::string> reasons;
    const auto values = detail::propagate(sys, w, reasons);
    if (!values) continue;

    // Every relation must hold, reduced on torsion where the witness is torsion.
    for (std::size_t col = 0; col < p.columns.size(); ++col) {
      MWScalar sum;
      for (std::size_t row = 0; row < p.rows.size(); ++row) sum += sys.effective(row, col) * (*values)[row];
      if (sys.torsion[w] ? reduce_on_torsion(sum) != 0 : !sum.is_zero())
        throw InvariantViolation("pi1 solver: inconsistent relation at " + p.columns[col].name());
    }
    Pi1Result res;
    res.witness = static_cast<int>(w);
    res.classification = sys.torsion[w] ? "KM2" : "KMW2";
    res.h1_formula = sys.torsion[w] ? "_eta M_{-2}(k)" : "M_{-2}(k)";
    for (std::size_t row = 0; row < p.rows.size(); ++row) {
      const MWScalar &f = (*values)[row];
      if (!f.free_symbols().empty())
        throw InvariantViolation("pi1 solver: solution depends on unit symbols via " + f.to_string());
      std::string reason = reasons[row];
      if (sys.torsion[row] && !p.rows[row].milnor) reason += "; eta-torsion " + sys.torsion_reason[row];
      res.trace.push_back({p.rows[row].variable(), sys.torsion[row], f, reason});
    }
    return res;
  }
  throw InvariantViolation("pi1 solver: no witness generates the solution space");
}

// ---------------------------------------------------------------------------
// pi_3

struct Pi3Result {
  AbGroupDescriptor middle;
  bool left_injective = false;
  std::size_t left_rank = 0;
  std::size_t cells = 0;
};

inline Pi3Result pi3_homology(const Pi3Complex &c) {
  if (!(c.right * c.left).is_zero()) throw InvariantViolation("pi3 complex: right o left != 0");
  const BigMatrix left = to_big(c.left);
  const BigMatrix right = to_big(c.right);
  Pi3Result res;
  res.cells = c.left.cols();
  res.middle = lattice::subquotient(lattice::kernel_basis(right), left);
  res.left_rank = lattice::rank(left);
  res.left_injective = res.left_rank == c.left.cols();
  return res;
}

// ---------------------------------------------------------------------------
// Symbolic descriptors by cancellation of unit entries.

/// Formal sum of named sheaves, compared as a multiset.
struct SheafDescriptor {
  std::map<std::string, int> summands;

  void add(const std::string &name, int multiplicity = 1) {
    if (multiplicity > 0) summands[name] += multiplicity;
  }
  [[nodiscard]] bool is_zero() const { return summands.empty(); }
  [[nodiscard]] std::string to_string() const {
    if (summands.empty()) return "0";
    std::string out;
    for (const auto &[name, k] : summands) {
      if (!out.empty()) out += " + ";
      out += name;
      if (k > 1) out += "^" + std::to_string(k);
    }
    return out;
  }
  friend bool operator==(const SheafDescriptor &, const SheafDescriptor &) = default;
};

namespace detail {

inline bool is_h_like(const MWScalar &s) { return s == MWScalar::h() || s == -MWScalar::h(); }

class UnitReducer {
public:
  explicit UnitReducer(const GradedComplex &c) : c_(c) {
    for (int d = 0; d <= c.top_degree(); ++d) alive_.emplace_back(c.count(d), true);
    for (int d = 0; d <= c.top_degree(); ++d) diffs_.push_back(c.differential(d));
    run();
  }

  [[nodiscard]] SheafDescriptor describe(int degree) const {
    SheafDescriptor out;
    if (degree < 0 || degree > c_.top_degree()) return out;
    for (std::size_t g = 0; g < c_.count(degree); ++g) {
      if (!alive_[degree][g]) continue;
      out.add(classify(degree, g));
    }
    return out;
  }

private:
  void run() {
    bool again = true;
    while (again) {
      again = false;
      for (int d = 1; d <= c_.top_degree() && !again; ++d) {
        const MWMatrix &m = diffs_[d];
        for (std::size_t x = 0; x < m.cols() && !again; ++x) {
          if (!alive_[d][x]) continue;
          for (std::size_t y = 0; y < m.rows(); ++y)
            if (alive_[d - 1][y] && m(y, x).is_unit()) {
              cancel(d, y, x);
              again = true;
              break;
            }
        }
      }
    }
  }

  // Removes x (degree d) and y (degree d-1) joined by the unit u = d(y, x).
  void cancel(int d, std::size_t y, std::size_t x) {
    MWMatrix &m = diffs_[d];
    const MWScalar u_inv = m(y, x).unit_inverse();
    for (std::size_t w = 0; w < m.cols(); ++w) {
      if (w == x || !alive_[d][w] || m(y, w).is_zero()) continue;
      const MWScalar a = u_inv * m(y, w);
      for (std::size_t v = 0; v < m.rows(); ++v) {
        if (v == y || !alive_[d - 1][v] || m(v, x).is_zero()) continue;
        m(v, w) = m(v, w) - m(v, x) * a;
      }
    }
    alive_[d][x] = false;
    alive_[d - 1][y] = false;
  }

  [[nodiscard]] std::string classify(int degree, std::size_t g) const {
    const Generator &gen = c_.generators[degree][g];
    const std::string base = gen.integral ? "Z" : "KMW" + std::to_string(gen.weight);
    std::vector<MWScalar> out_entries;
    if (degree >= 1) {
      const MWMatrix &m = diffs_[degree];
      for (std::size_t v = 0; v < m.rows(); ++v) {
        if (!alive_[degree - 1][v] || m(v, g).is_zero()) continue;
        // Kernel reading needs v to be hit by g alone.
        for (std::size_t w = 0; w < m.cols(); ++w)
          if (w != g && alive_[degree][w] && !m(v, w).is_zero()) unrecognized(degree, gen);
        out_entries.push_back(m(v, g));
      }
    }
    std::vector<MWScalar> in_entries;
    if (degree + 1 <= c_.top_degree()) {
      const MWMatrix &m = diffs_[degree + 1];
      for (std::size_t w = 0; w < m.cols(); ++w) {
        if (!alive_[degree + 1][w] || m(g, w).is_zero()) continue;
        // Quotient reading needs w to hit g alone.
        for (std::size_t v = 0; v < m.rows(); ++v)
          if (v != g && alive_[degree][v] && !m(v, w).is_zero()) unrecognized(degree, gen);
        in_entries.push_back(m(g, w));
      }
    }
    auto all = [](const std::vector<MWScalar> &v, auto pred) { return std::all_of(v.begin(), v.end(), pred); };
    const auto eta_like = [](const MWScalar &s) { return s.is_eta_unit(); };
    if (out_entries.empty() && in_entries.empty()) return base;
    if (in_entries.empty() && all(out_entries, eta_like)) return "etaTorsion(" + base + ")";
    if (in_entries.empty() && all(out_entries, is_h_like)) return "hTorsion(" + base + ")";
    if (out_entries.empty() && all(in_entries, eta_like) && !gen.integral) {
      if (c_.kind == ComplexKind::Flag && gen.weight == 1) return "Gm";
      return "KM" + std::to_string(gen.weight);
    }
    if (out_entries.empty() && all(in_entries, is_h_like)) return "hQuotient(" + base + ")";
    unrecognized(degree, gen);
    return {};
  }

  [[noreturn]] void unrecognized(int degree, const Generator &gen) const {
    throw InvalidInput("unrecognized complex shape: " + c_.name + " degree " + std::to_string(degree) +
                       " generator " + gen.label);
  }

  const GradedComplex &c_;
  std::vector<std::vector<bool>> alive_;
  std::vector<MWMatrix> diffs_;
};

} // namespace detail

/// Symbolic homology of a builder output in one degree.
inline SheafDescriptor symbolic_descriptors(const GradedComplex &c, int degree) {
  if (degree < 0) throw InvalidInput("homology degree must be >= 0");
  switch (c.kind) {
  case ComplexKind::Flag:
    if (degree >= c.top_degree())
      throw InvalidInput("flag complex is truncated; descriptors exist in degrees 0 and 1 only");
    break;
  case ComplexKind::Pi1Presentation:
    throw InvalidInput("unrecognized complex shape: use solve_pi1_symbolic for the pi1 presentation");
  default: break;
  }
  return detail::UnitReducer(c).describe(degree);
}

} // namespace a1cell
