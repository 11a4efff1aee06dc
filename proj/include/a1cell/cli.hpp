#pragma once

// Report builders and entry point for the a1cell command-line tool.
// Requires the vendored CLI11.hpp and json.hpp on the include path.

#include <cstdint>
#include <future>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "a1cell/complexes.hpp"
#include "a1cell/errors.hpp"
#include "a1cell/homology.hpp"
#include "a1cell/rootdata.hpp"
#include "a1cell/weyl.hpp"

namespace a1cell::cli {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char *kToolVersion = "1.0.0";
inline constexpr int kMaxTableRank = 8;

enum ExitCode : int { kSuccess = 0, kInvariantFailure = 1, kUsageError = 2 };

struct GlobalOptions {
  bool json = false;
  std::uint64_t seed = kDefaultSeed;
  std::string signs;
};

// ---------------------------------------------------------------------------
// Input parsing

/// "tau.1.2=-1,tau.2.3=1" -> map. Overriding -1 or a value other than +-1 is rejected.
inline SignAssignment parse_signs(const std::string &text) {
  SignAssignment out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw InvalidInput("malformed sign assignment '" + item + "'");
    const std::string sym = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    if (sym == kMinusOne) throw InvalidInput("the sign of -1 is fixed and cannot be assigned");
    int v = 0;
    if (val == "1" || val == "+1") v = 1;
    else if (val == "-1") v = -1;
    else throw InvalidInput("sign for '" + sym + "' must be 1 or -1, got '" + val + "'");
    if (!out.emplace(sym, v).second) throw InvalidInput("symbol '" + sym + "' assigned twice");
  }
  return out;
}

/// Checks that every fixed symbol occurs; returns the symbols left free.
inline std::vector<std::string> free_after_fixing(const std::vector<std::string> &symbols,
                                                  const SignAssignment &fixed) {
  for (const auto &[sym, v] : fixed)
    if (std::find(symbols.begin(), symbols.end(), sym) == symbols.end())
      throw InvalidInput("unknown unit symbol '" + sym + "' in --signs");
  std::vector<std::string> rest;
  for (const auto &s : symbols)
    if (!fixed.count(s)) rest.push_back(s);
  return rest;
}

inline SignAssignment merge(SignAssignment a, const SignAssignment &b) {
  for (const auto &[k, v] : b) a[k] = v;
  return a;
}

inline RootDatum datum_for(const std::string &family, int rank) {
  return make_root_datum({parse_family(family), rank});
}

inline Realization parse_realization(const std::string &name) {
  if (name == "real") return Realization::real();
  if (name == "complex" || name == "complexTop") return Realization::complex_top();
  if (name == "milnor") return Realization::milnor();
  throw InvalidInput("unknown realization '" + name + "'");
}

// ---------------------------------------------------------------------------
// JSON helpers

inline json group_json(const AbGroupDescriptor &g) {
  json t = json::array();
  for (const auto &x : g.torsion) t.push_back(x.convert_to<long long>());
  return {{"group", g.to_string()}, {"freeRank", g.free_rank}, {"torsion", t}};
}

inline json type_inputs(const RootDatum &d) {
  return {{"type", d.type().name()},
          {"requestedType", d.requested_type().name()},
          {"family", std::string(1, family_letter(d.type().family))},
          {"rank", d.rank()}};
}

inline json sweep_json(const SweepSummary &s) {
  return {{"assignments", s.assignments}, {"exhaustive", s.exhaustive}, {"invariant", s.invariant}};
}

inline json make_report(const std::string &command, json inputs, json results, json provenance,
                        const GlobalOptions &opts) {
  inputs["seed"] = opts.seed;
  provenance["toolVersion"] = kToolVersion;
  return {{"schemaVersion", kSchemaVersion},
          {"command", command},
          {"inputs", std::move(inputs)},
          {"results", std::move(results)},
          {"provenance", std::move(provenance)}};
}

inline json scalar_matrix_json(const MWMatrix &m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
    rows.push_back(row);
  }
  return rows;
}

inline json int_matrix_json(const BigMatrix &m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).convert_to<long long>());
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Commands

inline json cmd_classify(const GlobalOptions &opts, const std::string &family, int rank) {
  const RootDatum d = datum_for(family, rank);
  const WeylGroup w(d);
  const Pi1Presentation p = build_pi1_presentation(w);
  free_after_fixing(p.tau_symbols, parse_signs(opts.signs));
  const Pi1Result res = solve_pi1_symbolic(p);
  const auto info = symplectic_type(d);
  json trace = json::array();
  for (const auto &v : res.trace) trace.push_back(res.describe(v));
  json results = {{"classification", res.classification},
                  {"witnessRoot", res.witness + 1},
                  {"witnessVariable", res.witness_variable()},
                  {"h1Formula", res.h1_formula},
                  {"symplectic", info.symplectic},
                  {"codim2Cells", p.columns.size()},
                  {"tauSymbols", p.tau_symbols},
                  {"trace", trace}};
  json prov = {{"classification", "pi1^A1(G) is KMW2 exactly for symplectic G, KM2 otherwise"},
               {"h1Formula", "H^1(G; M) = M_{-2}(k) for symplectic G, the eta-torsion of M_{-2}(k) otherwise"},
               {"trace", "Hom-dual kernel computation over the degree-2 presentation modulo the torus"}};
  return make_report("classify", type_inputs(d), results, prov, opts);
}

struct HomologyRequest {
  std::string space; // pn | punctured | flag | group | sl2 | pgl2
  int n = 0;
  std::string family;
  int rank = 0;
  std::string realization = "real";
  std::optional<int> from;
  std::optional<int> to;
  bool matrices = false;
};

inline json cmd_homology(const GlobalOptions &opts, const HomologyRequest &req) {
  const Realization real = parse_realization(req.realization);
  const SignAssignment fixed = parse_signs(opts.signs);
  json inputs = {{"space", req.space}, {"realization", real.name()}};

  GradedComplex c;
  int lo = 0;
  int hi = 0;
  std::optional<Pi1Presentation> pres;
  if (req.space == "pn") {
    c = build_projective_space(req.n);
    hi = req.n;
    inputs["n"] = req.n;
  } else if (req.space == "punctured") {
    c = build_punctured_affine(req.n);
    hi = req.n;
    inputs["n"] = req.n;
  } else if (req.space == "sl2" || req.space == "pgl2") {
    c = build_rank_one(req.space == "sl2");
    hi = 1;
  } else if (req.space == "flag" || req.space == "group") {
    const RootDatum d = datum_for(req.family, req.rank);
    inputs.update(type_inputs(d));
    const WeylGroup w(d);
    if (req.space == "flag") {
      c = build_flag_low_degrees(w);
      hi = 1;
    } else {
      pres = build_pi1_presentation(w);
      c = to_graded_complex(*pres);
      lo = hi = 1;
    }
  } else {
    throw InvalidInput("unknown space '" + req.space + "'");
  }
  const int from = req.from.value_or(lo);
  const int to = req.to.value_or(hi);
  if (from < lo || to > hi || from > to)
    throw InvalidInput("degree range [" + std::to_string(from) + ", " + std::to_string(to) +
                       "] outside the computed range [" + std::to_string(lo) + ", " + std::to_string(hi) +
                       "] for " + req.space);
  inputs["from"] = from;
  inputs["to"] = to;

  const auto symbols = free_after_fixing(c.free_symbols(), fixed);
  std::optional<Pi1Result> solved;
  if (pres) solved = solve_pi1_symbolic(*pres);

  json degrees = json::array();
  json sweeps = json::object();
  for (int deg = from; deg <= to; ++deg) {
    AbGroupDescriptor group;
    const auto summary = sweep_invariance(symbols, opts.seed, [&](const SignAssignment &a) {
      group = homology_over_realization(c, real, merge(a, fixed), deg);
      return group.to_string();
    });
    if (!summary.invariant)
      throw InvariantViolation("realized H_" + std::to_string(deg) + " depends on the unit-symbol signs");
    json row = group_json(group);
    row["degree"] = deg;
    if (solved) row["symbolic"] = solved->classification;
    else row["symbolic"] = symbolic_descriptors(c, deg).to_string();
    degrees.push_back(row);
    sweeps[std::to_string(deg)] = sweep_json(summary);
  }
  json results = {{"complex", c.name}, {"degrees", degrees}, {"tauSymbols", symbols}};
  if (req.space == "flag" || req.space == "group") results["tauSweep"] = sweeps;
  if (req.matrices) {
    json mats = json::array();
    const auto first = sign_assignments(symbols, opts.seed).assignments.front();
    const RealizedComplex rc = realize_complex(c, real, merge(first, fixed));
    for (int deg = 1; deg <= c.top_degree(); ++deg) {
      json labels_src = json::array();
      json labels_tgt = json::array();
      for (const auto &g : c.generators[deg]) labels_src.push_back(g.label);
      for (const auto &g : c.generators[deg - 1]) labels_tgt.push_back(g.label);
      mats.push_back({{"degree", deg},
                      {"rows", labels_tgt},
                      {"columns", labels_src},
                      {"symbolic", scalar_matrix_json(c.differential(deg))},
                      {"realized", int_matrix_json(rc.differential(deg))}});
    }
    results["matrices"] = mats;
  }
  json prov = json::object();
  if (req.space == "pn") prov["complex"] = "cellular complex of P^n: d_i = 0 for odd i, eta for even i";
  if (req.space == "punctured") prov["complex"] = "cellular complex of A^{n+1} - 0 with alternating 2x2 differentials";
  if (req.space == "sl2") prov["complex"] = "rank-one complex: the differential is eta plus the identity";
  if (req.space == "pgl2") prov["complex"] = "rank-one complex: the differential is multiplication by h";
  if (req.space == "flag") prov["complex"] = "G/B in degrees <= 2: cell (i,j) maps to root j by n_eps(n_ji) eta";
  if (req.space == "group")
    prov["complex"] = "degree-2 differential of G modulo the torus onto Z_1(G) (x) Z";
  prov["realization"] = "real points send eta to 2; complex points and Milnor/Suslin send eta to 0";
  return make_report("homology", inputs, results, prov, opts);
}

inline json cmd_pi3(const GlobalOptions &opts, const std::string &family, int rank) {
  const RootDatum d = datum_for(family, rank);
  if (!parse_signs(opts.signs).empty()) throw InvalidInput("--signs does not apply to pi3");
  const Pi3Complex c = build_pi3_complex(d);
  const Pi3Result res = pi3_homology(c);
  json cols = json::array();
  for (std::size_t col = 0; col < c.cells.size(); ++col)
    cols.push_back({{"cell", c.cells[col].name()}, {"symmetricCoordinates", symmetric_coordinates(c, col)}});
  const bool uniform_plus = std::all_of(c.relative_signs.begin(), c.relative_signs.end(), [](int s) { return s == 1; });
  json results = group_json(res.middle);
  results["leftInjective"] = res.left_injective;
  results["leftRank"] = res.left_rank;
  results["expectedRank"] = d.rank() * (d.rank() + 1) / 2 - 1;
  results["compositeZero"] = true;
  results["columns"] = cols;
  results["signConvention"] = uniform_plus ? "+1 (fixed by composite-zero)" : "mixed (fixed by composite-zero)";
  json prov = {{"group", "pi_3(G(C)) is free abelian of rank one"},
               {"leftRank", "the left map is injective of rank one less than rank S^2(Y)"}};
  return make_report("pi3", type_inputs(d), results, prov, opts);
}

/// Irreducible types of rank <= max_rank after normalization, in a fixed order.
inline std::vector<DynkinType> table_types(int max_rank) {
  std::vector<DynkinType> out;
  for (int r = 1; r <= max_rank; ++r) out.push_back({Family::A, r});
  for (int r = 3; r <= max_rank; ++r) out.push_back({Family::B, r});
  for (int r = 2; r <= max_rank; ++r) out.push_back({Family::C, r});
  for (int r = 4; r <= max_rank; ++r) out.push_back({Family::D, r});
  for (int r = 6; r <= std::min(8, max_rank); ++r) out.push_back({Family::E, r});
  if (max_rank >= 4) out.push_back({Family::F, 4});
  if (max_rank >= 2) out.push_back({Family::G, 2});
  return out;
}

inline json table_row(const DynkinType &t) {
  const RootDatum d = make_root_datum(t);
  const WeylGroup w(d);
  const Pi1Presentation p = build_pi1_presentation(w);
  const Pi1Result res = solve_pi1_symbolic(p);
  const auto real_sweep = sweep_invariance(p.tau_symbols, kDefaultSeed, [&](const SignAssignment &a) {
    return pi1_cokernel(p, Realization::real(), a).to_string();
  });
  if (!real_sweep.invariant) throw InvariantViolation(t.name() + ": real pi1 depends on unit-symbol signs");
  SignAssignment plus;
  for (const auto &s : p.tau_symbols) plus[s] = 1;
  const AbGroupDescriptor suslin = pi1_cokernel(p, Realization::milnor(), plus);
  json row = {{"type", t.name()},
              {"rank", t.rank},
              {"classification", res.classification},
              {"witnessRoot", res.witness + 1},
              {"realPi1", *real_sweep.values.begin()},
              {"suslinH1Rank", suslin.free_rank},
              {"codim2Cells", p.columns.size()},
              {"symplectic", symplectic_type(d).symplectic}};
  if (t.rank >= 2) row["pi3"] = pi3_homology(build_pi3_complex(w)).middle.to_string();
  else row["pi3"] = "Z";
  return row;
}

inline json cmd_table(const GlobalOptions &opts, int max_rank) {
  if (max_rank < 1 || max_rank > kMaxTableRank)
    throw InvalidInput("--max-rank must be between 1 and " + std::to_string(kMaxTableRank));
  if (!parse_signs(opts.signs).empty()) throw InvalidInput("--signs applies to a single type, not to table");
  const auto types = table_types(max_rank);
  std::vector<std::future<json>> jobs;
  for (const auto &t : types) jobs.push_back(std::async(std::launch::async, [t] { return table_row(t); }));
  json rows = json::array();
  for (auto &j : jobs) rows.push_back(j.get());
  json prov = {{"classification", "pi1^A1(G) is KMW2 exactly for symplectic G, KM2 otherwise"},
               {"realPi1", "pi_1(G(R)) is Z for symplectic G and Z/2 otherwise"},
               {"suslinH1Rank", "K^M_2 is isomorphic to the first Suslin homology of G"},
               {"pi3", "pi_3(G(C)) is free abelian of rank one (G(C) is 2-connected)"},
               {"codim2Cells", "r(r+1)/2 - 1 cells of codimension 2"}};
  return make_report("table", {{"maxRank", max_rank}}, {{"rows", rows}}, prov, opts);
}

// ---------------------------------------------------------------------------
// Text rendering

inline std::string render_text(const json &report) {
  std::ostringstream out;
  const std::string cmd = report.at("command");
  const json &in = report.at("inputs");
  const json &res = report.at("results");
  if (cmd == "classify") {
    out << "type            " << in.at("type").get<std::string>();
    if (in.at("requestedType") != in.at("type")) out << " (requested " << in.at("requestedType").get<std::string>() << ")";
    out << "\nclassification  " << res.at("classification").get<std::string>() << "\n"
        << "witness         " << res.at("witnessVariable").get<std::string>() << "\n"
        << "H^1(G, M)       " << res.at("h1Formula").get<std::string>() << "\n"
        << "trace:\n";
    for (const auto &t : res.at("trace")) out << "  " << t.get<std::string>() << "\n";
  } else if (cmd == "homology") {
    out << res.at("complex").get<std::string>() << " (" << in.at("realization").get<std::string>() << ")\n";
    for (const auto &d : res.at("degrees"))
      out << "  H_" << d.at("degree").get<int>() << " = " << std::left << std::setw(12)
          << d.at("group").get<std::string>() << " symbolic: " << d.at("symbolic").get<std::string>() << "\n";
    if (res.contains("matrices"))
      for (const auto &m : res.at("matrices")) {
        out << "  d_" << m.at("degree").get<int>() << " (rows: targets, columns: sources)\n";
        for (const auto &row : m.at("symbolic")) {
          out << "   ";
          for (const auto &e : row) out << " [" << e.get<std::string>() << "]";
          out << "\n";
        }
      }
  } else if (cmd == "pi3") {
    out << "type            " << in.at("type").get<std::string>() << "\n"
        << "H(Y (x) Y)      " << res.at("group").get<std::string>() << "\n"
        << "left injective  " << (res.at("leftInjective").get<bool>() ? "yes" : "no") << "\n"
        << "left rank       " << res.at("leftRank").get<std::size_t>() << " (expected "
        << res.at("expectedRank").get<int>() << ")\n"
        << "sign convention " << res.at("signConvention").get<std::string>() << "\n";
  } else if (cmd == "table") {
    out << std::left << std::setw(6) << "type" << std::setw(16) << "pi1^A1" << std::setw(10) << "pi1(R)"
        << std::setw(10) << "H1^S" << std::setw(8) << "pi3" << "cells\n";
    for (const auto &r : res.at("rows"))
      out << std::left << std::setw(6) << r.at("type").get<std::string>() << std::setw(16)
          << r.at("classification").get<std::string>() << std::setw(10) << r.at("realPi1").get<std::string>()
          << std::setw(10) << AbGroupDescriptor::free(r.at("suslinH1Rank").get<std::size_t>()).to_string()
          << std::setw(8) << r.at("pi3").get<std::string>() << r.at("codim2Cells").get<std::size_t>() << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Entry point

/// Runs body and maps failures to exit codes: 2 for invalid input, 1 for violated invariants.
template <typename F> int run_guarded(F &&body, std::ostream &err) {
  try {
    return body();
  } catch (const InvalidInput &e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const InvariantViolation &e) {
    err << "internal invariant violated: " << e.what() << "\n";
    return kInvariantFailure;
  } catch (const std::exception &e) {
    err << "internal error: " << e.what() << "\n";
    return kInvariantFailure;
  }
}

inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Cellular A1-chain complexes of split semisimple groups"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions opts;
  app.add_flag("--json", opts.json, "Emit the JSON report");
  app.add_option("--seed", opts.seed, "Seed for sampled sign assignments");
  app.add_option("--signs", opts.signs, "Fixed unit-symbol signs, e.g. tau.1.2=-1,tau.2.3=1");

  std::string family;
  int rank = 0;
  auto *classify = app.add_subcommand("classify", "pi1 classification of a simply connected type");
  classify->add_option("family", family)->required();
  classify->add_option("rank", rank)->required();

  auto *pi3 = app.add_subcommand("pi3", "Homology of the pi3 complex");
  pi3->add_option("family", family)->required();
  pi3->add_option("rank", rank)->required();

  int max_rank = 4;
  auto *table = app.add_subcommand("table", "Classification table over all irreducible types");
  table->add_option("--max-rank", max_rank, "Largest rank (<= 8)")->required();

  HomologyRequest req;
  auto *homology = app.add_subcommand("homology", "Realized and symbolic homology of a complex");
  homology->require_subcommand(1);
  auto *real_flag = homology->add_flag("--real", "Real-points realization (default)");
  auto *complex_flag = homology->add_flag("--complex", "Complex-points realization");
  auto *milnor_flag = homology->add_flag("--milnor", "Milnor/Suslin realization");
  real_flag->excludes(complex_flag)->excludes(milnor_flag);
  complex_flag->excludes(milnor_flag);
  homology->add_option("--from", req.from, "Lowest degree");
  homology->add_option("--to", req.to, "Highest degree");
  homology->add_flag("--matrices", req.matrices, "Include the differentials");
  homology->fallthrough();
  for (const char *space : {"pn", "punctured"}) {
    auto *s = homology->add_subcommand(space, space == std::string("pn") ? "Projective space P^n"
                                                                         : "Punctured affine space A^{n+1} - 0");
    s->add_option("n", req.n)->required();
  }
  for (const char *space : {"flag", "group"}) {
    auto *s = homology->add_subcommand(space, space == std::string("flag") ? "Flag variety G/B (degrees <= 1)"
                                                                           : "Group G: H_1 of the presentation");
    s->add_option("family", req.family)->required();
    s->add_option("rank", req.rank)->required();
  }
  homology->add_subcommand("sl2", "Rank-one complex of SL2");
  homology->add_subcommand("pgl2", "Rank-one complex of PGL2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  return run_guarded(
      [&]() {
        json report;
        if (classify->parsed()) report = cmd_classify(opts, family, rank);
        else if (pi3->parsed()) report = cmd_pi3(opts, family, rank);
        else if (table->parsed()) report = cmd_table(opts, max_rank);
        else {
          for (auto *sub : homology->get_subcommands())
            if (sub->parsed()) req.space = sub->get_name();
          if (complex_flag->count()) req.realization = "complexTop";
          else if (milnor_flag->count()) req.realization = "milnor";
          report = cmd_homology(opts, req);
        }
        if (opts.json) out << report.dump(2) << "\n";
        else out << render_text(report);
        return static_cast<int>(kSuccess);
      },
      err);
}

} // namespace a1cell::cli
