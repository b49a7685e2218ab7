/*
 * Copyright 2026 The llsym Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LLSYM_CLI_REPORT_HPP
#define LLSYM_CLI_REPORT_HPP

#include <gmp.h>

#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "algebra_catalog.hpp"
#include "graded_algebra.hpp"
#include "model_catalog.hpp"
#include "parallel.hpp"
#include "symmetry_engine.hpp"

namespace llsym {

enum class CheckStatus { pass, fail, absent_as_expected };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    case CheckStatus::absent_as_expected:
      return "absent-as-expected";
  }
  return "?";
}

struct CheckOutcome {
  CheckStatus status = CheckStatus::pass;
  std::string detail;
};

struct CheckResult {
  std::string id;
  CheckStatus status = CheckStatus::pass;
  std::string detail;
  double ms = 0;
};

struct VerificationReport {
  std::string suite;
  std::vector<CheckResult> checks;
  std::map<std::string, std::string> environment;

  bool passed() const {
    for (const auto& c : checks)
      if (c.status == CheckStatus::fail) return false;
    return true;
  }
  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.status == CheckStatus::fail;
    return n;
  }

  std::string text(bool timings = false) const {
    std::ostringstream os;
    os << "suite " << suite << "\n";
    for (const auto& c : checks) {
      os << "  " << to_string(c.status) << "  " << c.id;
      if (!c.detail.empty()) os << "  " << c.detail;
      if (timings) os << "  [" << static_cast<long>(c.ms) << " ms]";
      os << "\n";
    }
    os << "overall " << (passed() ? "pass" : "fail") << " (" << checks.size() << " checks, " << failures()
       << " failed)\n";
    return os.str();
  }

  nlohmann::ordered_json json(bool timings = false) const {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["status"] = passed() ? "pass" : "fail";
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
      nlohmann::ordered_json e;
      e["id"] = c.id;
      e["status"] = to_string(c.status);
      e["detail"] = c.detail;
      if (timings) e["ms"] = static_cast<long>(c.ms);
      arr.push_back(e);
    }
    j["checks"] = arr;
    j["environment"] = environment;
    return j;
  }
};

struct SuiteOptions {
  std::optional<Rational> lambda;
  std::optional<int> max_degree;
  std::optional<std::vector<Rational>> exp_rates;
  bool size8 = false;
  std::optional<std::string> golden_dir;
  unsigned workers = 0;
};

struct CheckSpec {
  std::string id;
  std::function<CheckOutcome(const SuiteOptions&)> run;
};

inline std::map<std::string, std::string> environment_fingerprint() {
  return {{"arithmetic", std::string("gmp ") + gmp_version},
          {"compiler", __VERSION__},
          {"cxx", std::to_string(__cplusplus)},
          {"library", "llsym 0.1.0"}};
}

namespace checks {

inline CheckOutcome verdict(bool ok, std::string detail = {}) {
  return {ok ? CheckStatus::pass : CheckStatus::fail, std::move(detail)};
}

inline CheckOutcome expected_absence(bool absent, std::string detail = {}) {
  return {absent ? CheckStatus::absent_as_expected : CheckStatus::fail, std::move(detail)};
}

inline std::string join(const std::vector<std::string>& v, const char* sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

inline const CoeffExpr& lam() { return detail::clam(); }
inline const CoeffExpr& xv() { return detail::cx(); }
inline const CoeffExpr& tv() { return detail::ct(); }
inline DiffOp sq(const DiffOp& a) { return compose(a, a); }
inline DiffOp M(const char* s, DerivIndex d = kNoDeriv) { return DiffOp(MatExpr::parse(s), d); }

/// Documented readings used when a printed operator is not a symmetry.
inline const std::map<std::string, std::string>& printed_variants() {
  static const std::map<std::string, std::string> v{{"free2.L5", "free2.L5v"},
                                                    {"free4.L5", "free4.L5v"},
                                                    {"harm.S4", "harm.S4v"},
                                                    {"harm.S13", "harm.S13v"},
                                                    {"harm.S17", "harm.S17v"}};
  return v;
}

inline bool is_variant(const std::string& id) {
  for (const auto& [p, v] : printed_variants())
    if (v == id) return true;
  return false;
}

inline std::vector<CoeffExpr> family_slots() { return {CoeffExpr(1), xv(), tv(), xv() * tv()}; }

/// Operators built from a designated catalog entry: one, or four family members.
inline std::vector<DiffOp> entry_instances(const CatalogEntry& e) {
  std::vector<DiffOp> out;
  if (!e.family) {
    out.push_back(e.make({}));
    return out;
  }
  for (const auto& z : family_slots()) {
    ModelParams p;
    p.z = z;
    out.push_back(e.make(p));
  }
  return out;
}

inline bool verified_witness(const DiffOp& om, const DiffOp& z, BracketKind k) {
  auto w = is_symmetry(om, z, k);
  return w && compose(DiffOp(w->phi), om) == bracket(k, om, z);
}

/// Every designated operator of one Omega has a witness; printed failures fall back to their variant.
inline CheckOutcome witnesses(const std::string& omega_id) {
  DiffOp om = build(omega_id);
  std::size_t n = 0;
  std::vector<std::string> bad, used;
  for (const auto& e : catalog()) {
    if (e.omega_id != omega_id || !e.kind || e.id == omega_id || is_variant(e.id)) continue;
    bool ok = true;
    for (const auto& z : entry_instances(e)) {
      ++n;
      ok = ok && verified_witness(om, z, *e.kind);
    }
    if (!ok) {
      auto v = printed_variants().find(e.id);
      if (v != printed_variants().end() && verified_witness(om, build(v->second), *e.kind)) {
        used.push_back(e.id + " -> " + v->second);
        continue;
      }
      bad.push_back(e.id);
    }
  }
  std::string d = std::to_string(n) + " operators";
  if (!used.empty()) d += "; printed form fails, variant used: " + join(used);
  if (!bad.empty()) d += "; no witness: " + join(bad);
  return verdict(bad.empty(), d);
}

inline CheckOutcome squares_heat() {
  std::vector<std::string> bad;
  if (sq(heat_free_2x2()) != -lam() * M("I", kDt) + M("I", DerivIndex{0, 2, 0})) bad.push_back("heat2");
  if (sq(heat_free_4x4()) != lam() * M("II", kDt) - M("II", DerivIndex{0, 2, 0})) bad.push_back("heat4");
  for (const CoeffExpr& f : {xv(), xv() * xv() + CoeffExpr(1), CoeffExpr(3) * xv()})
    if (sq(heat_potential_4x4(f)) != lam() * M("II", kDt) - M("II", DerivIndex{0, 2, 0}) + f * f * M("II") +
                                          f.derive(Var::x) * M("XX"))
      bad.push_back("heatpot4(" + f.str() + ")");
  for (const auto& g : {gammas_2x2(), gammas_4x4()}) {
    FreeModel m(g);
    std::size_t n = m.omega().size();
    DiffOp id = DiffOp(CoeffMatrix::identity(n), kDt);
    if (sq(m.omega()) != lam() * id + DiffOp(CoeffMatrix::identity(n), DerivIndex{0, 2, 0}))
      bad.push_back("free" + std::to_string(n));
  }
  return verdict(bad.empty(), bad.empty() ? "heat2, heat4, heatpot4 (3 prepotentials), free2, free4"
                                          : "mismatch: " + join(bad));
}

inline CheckOutcome squares_schrodinger() {
  std::vector<std::string> bad;
  if (sq(sch_free_4x4()) != lam() * M("AI", kDt) - M("II", DerivIndex{0, 2, 0})) bad.push_back("sch4");
  for (const CoeffExpr& f : {xv(), xv() * xv() + CoeffExpr(1), CoeffExpr(3) * xv()})
    if (sq(sch_potential_8x8(f)) != -lam() * M("AII", kDt) - M("III", DerivIndex{0, 2, 0}) + f * f * M("III") +
                                         f.derive(Var::x) * M("IXX"))
      bad.push_back("sch8(" + f.str() + ")");
  FreeModel m(gammas_4x4());
  MatExpr J = *m.gammas().J;
  if (sq(schrodinger_transform(m.omega(), J)) != lam() * DiffOp(J, kDt) + M("II", DerivIndex{0, 2, 0}))
    bad.push_back("Omegabar");
  return verdict(bad.empty(), bad.empty() ? "sch4, sch8 (3 prepotentials), Omegabar" : "mismatch: " + join(bad));
}

inline CheckOutcome squares_harmonic() {
  DiffOp expect = DiffOp(CoeffMatrix::identity(4), kDt) - DiffOp(CoeffMatrix::identity(4), DerivIndex{0, 2, 0}) +
                  xv() * xv() * DiffOp::identity(4) + detail::E(detail::e(11)) + detail::E(detail::e(44)) -
                  detail::E(detail::e(22)) - detail::E(detail::e(33));
  return verdict(sq(harmonic::omega()) == expect, "Omega-tilde squared");
}

inline CheckOutcome squares_d2() {
  Free2dModel m;
  DiffOp I = DiffOp::identity(4);
  DiffOp expect = lam() * DiffOp(CoeffMatrix::identity(4), kDt) +
                  DiffOp(CoeffMatrix::identity(4), DerivIndex{0, 2, 0}) +
                  DiffOp(CoeffMatrix::identity(4), DerivIndex{0, 0, 2});
  bool cl = is_clifford_set(m.gammas(), 3, 2);
  return verdict(sq(m.omega()) == expect && cl, std::string("1+2 Omega squared; gammas ") + m.gamma_choice() +
                                                    (cl ? "" : " (Clifford relations fail)"));
}

inline CheckOutcome sqm_algebra() {
  std::vector<std::string> bad;
  for (const CoeffExpr& f : {CoeffExpr(0), CoeffExpr(5) * xv(), xv() * xv()}) {
    DiffOp q1 = sqm_q1(f), q2 = sqm_q2(f), h = sqm_h(f);
    bool ok = anticommutator(q1, q1) == CoeffExpr(2) * h && anticommutator(q2, q2) == CoeffExpr(2) * h &&
              anticommutator(q1, q2).is_zero() && commutator(h, q1).is_zero() && commutator(h, q2).is_zero();
    if (!ok) bad.push_back(f.str());
  }
  return verdict(bad.empty(), bad.empty() ? "f in {0, 5*x, x^2}" : "fails for f = " + join(bad));
}

inline AnsatzSpec search_spec(const SuiteOptions& o, BracketKind k, int degree, std::vector<Rational> rates) {
  AnsatzSpec s;
  s.kind = k;
  s.max_poly_degree = o.max_degree.value_or(degree);
  s.exp_rates = o.exp_rates.value_or(std::move(rates));
  return s;
}

inline DiffOp at_lambda(const DiffOp& op, const SuiteOptions& o) {
  return o.lambda ? op.evaluate_lambda(*o.lambda) : op;
}

/// Free 2x2 exhaustive search: quotient by the family ideal and membership of the printed list.
inline CheckOutcome search_free2(const SuiteOptions& o, BracketKind k) {
  const bool comm = k == BracketKind::commutator;
  AnsatzSpec spec = search_spec(o, k, 2, {Rational(0)});
  DiffOp om = at_lambda(build("free2.Omega"), o);
  auto res = ansatz_search(om, spec, o.workers);
  FreeModel m(gammas_2x2());
  DiffOp family = at_lambda(comm ? m.omega() : m.lambda_w(1), o);
  std::size_t q = quotient_dimension(res, spec, {family});
  std::vector<std::string> ids = comm ? std::vector<std::string>{"H", "D", "K", "P+", "P-", "C"}
                                      : std::vector<std::string>{"L1", "L2", "L3", "L4", "L5v", "L6"};
  std::vector<std::string> missing;
  for (const auto& id : ids)
    if (!span_contains(res.basis, at_lambda(build("free2." + id), o))) missing.push_back(id);
  bool ok = q == 6 && missing.empty();
  std::string d = "basis " + std::to_string(res.basis.size()) + ", quotient " + std::to_string(q) + ", printed " +
                  std::to_string(ids.size() - missing.size()) + "/" + std::to_string(ids.size()) + " in span";
  if (!comm) d += " (L5 as L5v)";
  if (!missing.empty()) d += "; missing " + join(missing);
  return verdict(ok, d);
}

inline CheckOutcome j_doubling() {
  FreeModel m(gammas_4x4());
  DiffOp om = m.omega();
  DiffOp J(*m.gammas().J);
  std::size_t n = 0;
  std::vector<std::string> bad;
  for (const auto& e : catalog()) {
    if (e.omega_id != "free4.Omega" || !e.kind || e.id == "free4.Omega" || printed_variants().count(e.id)) continue;
    for (const auto& z : entry_instances(e)) {
      ++n;
      if (!verified_witness(om, compose(J, z), *e.kind)) bad.push_back(e.id);
    }
  }
  return verdict(bad.empty(), std::to_string(n) + " products J*Z" + (bad.empty() ? "" : "; fails: " + join(bad)));
}

inline std::string golden_file(const SuiteOptions& o, const std::string& name) {
  std::string dir = o.golden_dir.value_or(std::string(LLSYM_DATA_DIR) + "/golden");
  std::ifstream f(dir + "/" + name);
  if (!f) throw std::runtime_error("missing golden file " + dir + "/" + name);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

/// Closure table rendered canonically and compared byte for byte with the golden table.
inline CheckOutcome golden_table(const SuiteOptions& o, const RealizedAlgebra& a, const std::string& file,
                                 std::optional<Rational> lambda = std::nullopt) {
  auto r = closure_check(a.gens, a.kind, o.workers);
  if (!r.closed) {
    std::string d = "not closed: " + r.reason;
    if (r.failing_pair) d += " at (" + r.failing_pair->first + "," + r.failing_pair->second + ")";
    return verdict(false, d);
  }
  StructureTable g = StructureTable::parse(golden_file(o, file));
  if (lambda) g = with_lambda(g, *lambda);
  std::string got = r.table.render(), want = g.render();
  if (got != want) {
    std::istringstream a1(got), b1(want);
    std::string la, lb;
    std::size_t line = 0;
    while (true) {
      ++line;
      bool ea = !std::getline(a1, la), eb = !std::getline(b1, lb);
      if (ea && eb) break;
      if (ea || eb || la != lb)
        return verdict(false, "differs from " + file + " at line " + std::to_string(line) + ": '" + (ea ? "" : la) +
                                  "' vs '" + (eb ? "" : lb) + "'");
    }
  }
  auto j = jacobi_check(a.gens, a.kind, o.workers);
  return verdict(j.passed, std::to_string(r.table.relation_count()) + " relations match " + file +
                               (j.passed ? "" : "; Jacobi fails"));
}

inline CheckOutcome z2z2_13_algebra(const SuiteOptions& o) {
  FreeModel m(gammas_2x2());
  auto a = algebras::z2z2_13(m);
  auto r = closure_check(a.gens, a.kind, o.workers);
  auto j = jacobi_check(a.gens, a.kind, o.workers);
  DiffOp om = m.omega();
  bool ann = anticommutator(om, m.X()).is_zero() && anticommutator(om, m.X_half(1)).is_zero() &&
             anticommutator(om, m.X_half(-1)).is_zero();
  std::string d = std::string("closure ") + (r.closed ? "ok" : "fails") + ", Jacobi " +
                  (j.passed ? "ok" : "fails") + " over " + std::to_string(j.triples) +
                  " rotation classes, {Omega,X} = {Omega,X(+-1/2)} = 0 " + (ann ? "ok" : "fails");
  return verdict(r.closed && j.passed && ann, d);
}

inline CheckOutcome first_z2z2(const SuiteOptions& o) {
  FreeModel m(gammas_2x2());
  auto a = algebras::first_z2z2(m);
  auto r = closure_check(a.gens, a.kind, o.workers);
  bool zero = true;
  for (int s = -2; s <= 2; ++s)
    for (int u = -2; u <= 2; ++u) zero = zero && commutator(m.P(s), m.Omega(u)).is_zero();
  bool j = jacobi_check(a.gens, a.kind, o.workers).passed;
  return verdict(r.closed && zero && j, std::string("closure ") + (r.closed ? "ok" : "fails") + ", [P_s,Omega_u] = 0 " +
                                            (zero ? "ok" : "fails") + ", empty 11 sector");
}

inline CheckOutcome omega_gamma_obstruction() {
  FreeModel m(gammas_2x2());
  DiffOp om = m.omega();
  DiffOp r = commutator(om, compose(DiffOp(m.gammas().gp), om));
  bool absent = !factor_through(om, r).has_value();
  return expected_absence(absent, absent ? "[Omega, g+ Omega] does not factor through Omega"
                                         : "[Omega, g+ Omega] factors through Omega");
}

inline CheckOutcome mixed_system(const SuiteOptions& o) {
  FreeModel m(gammas_2x2());
  auto d = algebras::q_omega_mixed(m, true);
  auto rd = generated_algebra(d.gens, d.kind, 2, 4);
  auto s = algebras::q_omega_mixed(m, false);
  auto rs = generated_algebra(s.gens, s.kind, 2, 4);
  (void)o;
  std::string det = "Q, Omega in sectors 10, 01: order " + std::to_string(rd.max_order) + " at round " +
                    std::to_string(rd.rounds) + " via " + rd.witness + "; both odd in a Z2 grading: " +
                    (rs.closed ? "closes, dimension " + std::to_string(rs.dimension) + ", order <= " +
                                     std::to_string(rs.max_order)
                               : "does not close");
  return verdict(rd.exceeded && rd.max_order >= 3, det);
}

inline CheckOutcome alternative_grading_growth() {
  FreeModel m(gammas_2x2());
  auto a = algebras::alt_grading(m);
  auto g = generated_algebra(a.gens, a.kind, 2, 4);
  auto og = order_growth(m.Q_plus(), commutator(m.Q_plus(), m.Q_minus()), BracketKind::commutator, 2, 4);
  std::vector<std::string> ords;
  for (int k : og.orders) ords.push_back(std::to_string(k));
  std::string d = "generated algebra reaches order " + std::to_string(g.max_order) + " at round " +
                  std::to_string(g.rounds) + " via " + g.witness + "; [Q+, .] iterated on [Q+,Q-]: orders " +
                  join(ords, " ");
  return verdict(g.exceeded && g.rounds <= 4 && og.exceeded && og.iterations <= 4, d);
}

/// apply(Omega, apply(Z, Psi)) = 0 for generated solutions and every verified free symmetry.
inline CheckOutcome solution_mapping(std::size_t size) {
  std::string pre = "free" + std::to_string(size) + ".";
  DiffOp om = build(pre + "Omega");
  std::vector<std::pair<std::string, DiffOp>> ops;
  for (const auto& e : catalog()) {
    if (e.omega_id != pre + "Omega" || !e.kind || printed_variants().count(e.id)) continue;
    for (const auto& z : entry_instances(e)) ops.emplace_back(e.id, z);
  }
  std::vector<std::string> bad;
  for (int n = 0; n < 10; ++n) {
    Spinor psi = heat_polynomial_spinor(n, size);
    if (!is_zero(llsym::apply(om, psi))) bad.push_back("psi" + std::to_string(n));
    for (const auto& [id, z] : ops)
      if (!is_zero(llsym::apply(om, llsym::apply(z, psi)))) bad.push_back(id + "(psi" + std::to_string(n) + ")");
  }
  return verdict(bad.empty(), "10 solutions x " + std::to_string(ops.size()) + " operators" +
                                  (bad.empty() ? "" : "; fails: " + join(bad)));
}

inline CheckOutcome schrodinger_duals() {
  FreeModel m(gammas_4x4());
  MatExpr J = *m.gammas().J;
  DiffOp bar = schrodinger_transform(m.omega(), J);
  std::size_t n = 0, skipped = 0;
  std::vector<std::string> bad;
  for (const auto& e : catalog()) {
    if (e.omega_id != "free4.Omega" || e.kind != BracketKind::commutator || e.id == "free4.Omega") continue;
    for (const auto& z : entry_instances(e)) {
      DiffOp zt;
      try {
        zt = schrodinger_transform(z, J);
      } catch (const std::invalid_argument&) {
        ++skipped;
        continue;
      }
      ++n;
      if (!is_symmetry(bar, zt)) bad.push_back(e.id);
    }
  }
  return verdict(bad.empty() && n > 0, std::to_string(n) + " transformed commutator symmetries of Omegabar, " +
                                           std::to_string(skipped) + " not J-compatible" +
                                           (bad.empty() ? "" : "; fails: " + join(bad)));
}

inline CheckOutcome sch8_search(const SuiteOptions& o) {
  DiffOp om = sch_potential_8x8(xv()).evaluate_lambda(o.lambda.value_or(Rational(1)));
  AnsatzSpec spec = search_spec(o, BracketKind::commutator, 0, {Rational(0)});
  auto res = ansatz_search(om, spec, o.workers);
  bool ok = true;
  for (const auto& z : res.basis) ok = ok && is_symmetry(om, z, BracketKind::commutator).has_value();
  return verdict(ok, "8x8 f = x: basis " + std::to_string(res.basis.size()) + " at degree " +
                         std::to_string(spec.max_poly_degree));
}

inline CheckOutcome harmonic_search(const SuiteOptions& o) {
  DiffOp om = harmonic::omega();
  std::vector<Rational> rates{0, 2, -2, 4, -4, 6, -6};
  AnsatzSpec spec = search_spec(o, BracketKind::commutator, 3, rates);
  auto res = ansatz_search(om, spec, o.workers);
  std::vector<std::string> missing, used;
  int diag = 0, anti = 0;
  for (int k = 1; k <= 24; ++k) {
    std::string id = "harm.S" + std::to_string(k);
    bool v = printed_variants().count(id) > 0;
    if (v) used.push_back("S" + std::to_string(k) + "v");
    if (span_contains(res.basis, harmonic::sigma(k, v)))
      (k <= 12 ? diag : anti) += 1;
    else
      missing.push_back(id);
  }
  std::string d = "basis " + std::to_string(res.basis.size()) + ", block-diagonal " + std::to_string(diag) +
                  "/12, block-antidiagonal " + std::to_string(anti) + "/12 in span (variants " + join(used) + ")";
  if (!missing.empty()) d += "; missing " + join(missing);
  return verdict(missing.empty(), d);
}

inline CheckOutcome harmonic_nogo() {
  DiffOp om = harmonic::omega();
  std::vector<std::string> found;
  std::size_t points = 0;
  for (int r1 : {-2, -1, 1, 2})
    for (int r2 : {-2, -1, 1, 2})
      for (int r3 : {-1, 0, 1, 2}) {
        ++points;
        DiffOp q = harmonic::Q(r1, r2, r3);
        for (auto k : {BracketKind::commutator, BracketKind::anticommutator})
          if (verified_witness(om, q, k))
            found.push_back("(" + std::to_string(r1) + "," + std::to_string(r2) + "," + std::to_string(r3) + ") " +
                            (k == BracketKind::commutator ? "comm" : "anti"));
      }
  if (found.empty()) return expected_absence(true, std::to_string(points) + " grid points, no witness");
  return verdict(false, std::to_string(points) + " grid points; witness exists at " + join(found));
}

inline CheckOutcome harmonic_sch1(const SuiteOptions& o) {
  auto printed = algebras::harmonic_printed();
  std::vector<GradedGenerator> six(printed.gens.begin(), printed.gens.begin() + 6);
  auto rp = closure_check(six, GradingKind::lie, o.workers);
  auto t = golden_table(o, algebras::harmonic_sch1(), "sch1.table", Rational(1));
  DiffOp om = harmonic::omega();
  DiffOp D = harmonic::D();
  bool grades = grade_of(D, harmonic::H()) == Rational(1) && grade_of(D, harmonic::K()) == Rational(-1) &&
                grade_of(D, harmonic::P_plus()) == Rational(1, 2) &&
                grade_of(D, harmonic::P_minus()) == Rational(-1, 2) && grade_of(D, harmonic::C()) == Rational(0);
  bool zero = commutator(D, om).is_zero();
  bool ps = commutator(om, harmonic::P_plus()).is_zero() && commutator(om, harmonic::P_minus()).is_zero() &&
            commutator(om, sq(harmonic::P_plus())).is_zero() && commutator(om, sq(harmonic::P_minus())).is_zero() &&
            commutator(om, anticommutator(harmonic::P_plus(), harmonic::P_minus())).is_zero();
  std::string d = std::string("degree ladder ") + (grades ? "ok" : "fails") + ", [D,Omega-tilde] = 0 " +
                  (zero ? "ok" : "fails") + ", [Omega-tilde,P_s] = 0 " + (ps ? "ok" : "fails") +
                  ", sch(1) at lambda=1 with D - N_f/4, -K/16, -4 P+, -16 C: " + t.detail;
  if (!rp.closed && rp.failing_pair)
    d += "; printed generators need N_f ([" + rp.failing_pair->first + "," + rp.failing_pair->second + "])";
  return verdict(grades && zero && ps && t.status == CheckStatus::pass, d);
}

inline CheckOutcome ssch2_check(const SuiteOptions& o) {
  Free2dModel m;
  auto a = algebras::ssch2(m);
  auto r = closure_check(a.gens, a.kind, o.workers);
  auto j = jacobi_check(a.gens, a.kind, o.workers);
  return verdict(r.closed && j.passed, std::string("Z2 closure ") + (r.closed ? "ok" : "fails: " + r.reason) +
                                           ", " + std::to_string(r.table.relation_count()) + " relations, Jacobi " +
                                           (j.passed ? "ok" : "fails"));
}

inline CheckOutcome z2z2_d2_check(const SuiteOptions& o) {
  Free2dModel m;
  auto a = algebras::z2z2_d2(m);
  auto r = closure_check(a.gens, a.kind, o.workers);
  auto j = jacobi_check(a.gens, a.kind, o.workers);
  return verdict(r.closed && j.passed, std::to_string(a.gens.size()) + " generators, closure " +
                                           (r.closed ? "ok" : "fails: " + r.reason) + ", Jacobi " +
                                           (j.passed ? "ok" : "fails"));
}

inline CheckOutcome d2_relations() {
  Free2dModel m;
  std::vector<std::string> bad;
  for (int i : {1, 2})
    for (int j : {1, 2}) {
      int eps = i == j ? 0 : (i == 1 ? 1 : -1);
      if (commutator(m.X(i), m.X(j)) != CoeffExpr(eps) * lam() * m.X_tilde())
        bad.push_back("[X" + std::to_string(i) + ",X" + std::to_string(j) + "]");
      DiffOp want = i == j ? CoeffExpr(Rational(1, 2)) * lam() * lam() * m.C() : DiffOp::zero(4);
      if (anticommutator(m.X(i), m.X(j)) != want)
        bad.push_back("{X" + std::to_string(i) + ",X" + std::to_string(j) + "}");
    }
  if (commutator(m.Q_plus(), m.X_tilde()) != m.printed_q_xtilde()) bad.push_back("[Q+,Xt]");
  return verdict(bad.empty(), bad.empty() ? "[Xi,Xj] = lam eps_ij Xt, {Xi,Xj} = lam^2/2 delta_ij C, [Q+,Xt] = "
                                            "lam(g2 d1 - g1 d2) with " + m.gamma_choice()
                                          : "fails: " + join(bad));
}

inline CheckOutcome abstract_jacobi(const SuiteOptions& o) {
  auto t = algebras::alt_abstract_table();
  auto g = StructureTable::parse(golden_file(o, "alt_abstract.table"));
  auto j = table_jacobi(t, o.workers);
  bool same = g.render() == t.render();
  return verdict(j.passed && same, std::to_string(t.size()) + " generators, " + std::to_string(t.relation_count()) +
                                       " relations, " + std::to_string(j.triples) + " rotation classes" +
                                       (same ? "" : "; differs from alt_abstract.table") +
                                       (j.passed ? "" : "; fails at " + j.residual));
}

inline std::string witness_str(const JacobiResult& j) {
  if (!j.witness) return "none";
  return "(" + (*j.witness)[0] + "," + (*j.witness)[1] + "," + (*j.witness)[2] + ") residual " + j.residual;
}

inline CheckOutcome abstract_perturbation(const SuiteOptions& o) {
  auto t = algebras::alt_abstract_table();
  t.erase(t.at("H"), t.at("K"));
  auto j = table_jacobi(t, o.workers);
  return expected_absence(!j.passed, "without [H,K] = 2D: witness " + witness_str(j));
}

inline CheckOutcome abstract_lambda_terms(const SuiteOptions& o) {
  auto j = table_jacobi(algebras::alt_abstract_table(true), o.workers);
  return expected_absence(!j.passed, "with the lambda terms of the P sector: witness " + witness_str(j));
}

inline CheckOutcome composition_scan(const CompositionAlgebra& alg) {
  std::vector<std::string> parts, bad;
  const char* tag[] = {"i", "ii", "iii", "iv"};
  int idx = 0;
  for (auto k : {GradingKind::lie, GradingKind::z2_super, GradingKind::color_algebra,
                 GradingKind::color_superalgebra}) {
    auto as = grading_assignment_scan(alg, k);
    std::size_t orb = relabeling_orbits(as, alg, k);
    parts.push_back(std::string(tag[idx]) + " " + to_string(k) + ": " + std::to_string(as.size()) + " valid, " +
                    std::to_string(orb) + (orb == 1 ? " class" : " classes"));
    if (as.empty()) bad.push_back(tag[idx]);
    ++idx;
  }
  bool assoc = alg.associative();
  return verdict(bad.empty() && assoc, alg.name + (assoc ? "" : " (not associative)") + "; " + join(parts, "; "));
}

inline CheckOutcome theta_family(const CompositionAlgebra& alg) {
  std::vector<std::string> parts;
  bool ok = true;
  for (auto k : {GradingKind::z2_super, GradingKind::color_algebra, GradingKind::color_superalgebra}) {
    auto printed = theta_family_check(alg, k, -1);
    std::string p = std::string(to_string(k)) + ": printed " + printed.describe();
    bool good = printed.jacobi && printed.closure && printed.closure_at_theta0;
    if (!good) {
      auto v = theta_family_check(alg, k, 1);
      p += "; variant c e1 + s e3: " + v.describe();
      good = v.jacobi && v.closure;
    }
    ok = ok && good && printed.closure_at_theta0;
    parts.push_back(p);
  }
  return verdict(ok, alg.name + "; " + join(parts, "; "));
}

}  // namespace checks

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> n{"free-1d", "schrodinger-1d", "harmonic", "free-2d", "graded-abstract", "all"};
  return n;
}

/// Checks of a named suite, in report order.
inline std::vector<CheckSpec> suite_checks(const std::string& name, const SuiteOptions& opts = {}) {
  using namespace checks;
  using O = const SuiteOptions&;
  std::vector<CheckSpec> c;
  auto add = [&](std::string id, std::function<CheckOutcome(O)> f) { c.push_back({std::move(id), std::move(f)}); };
  auto table = [&](std::string id, std::function<RealizedAlgebra(const FreeModel&)> a, std::string file) {
    add(std::move(id), [a, file](O o) { return golden_table(o, a(FreeModel(gammas_2x2())), file); });
  };
  if (name == "free-1d" || name == "all") {
    add("squares.heat", [](O) { return squares_heat(); });
    add("sqm.algebra", [](O) { return sqm_algebra(); });
    add("witness.free2", [](O) { return witnesses("free2.Omega"); });
    add("witness.free4", [](O) { return witnesses("free4.Omega"); });
    add("search.free2.commutator", [](O o) { return search_free2(o, BracketKind::commutator); });
    add("search.free2.anticommutator", [](O o) { return search_free2(o, BracketKind::anticommutator); });
    add("doubling.free4", [](O) { return j_doubling(); });
    table("table.sch1", algebras::sch1, "sch1.table");
    table("table.osp_P", algebras::osp_p, "osp_P.table");
    table("table.osp_Omega", algebras::osp_omega, "osp_Omega.table");
    table("table.osp_Q", algebras::osp_q, "osp_Q.table");
    table("table.ssch1", algebras::ssch1, "ssch1.table");
    table("table.z2z2_13", algebras::z2z2_13, "z2z2_13.table");
    add("algebra.z2z2_13", [](O o) { return z2z2_13_algebra(o); });
    add("algebra.z2z2_first", [](O o) { return first_z2z2(o); });
    add("obstruction.omega_gamma", [](O) { return omega_gamma_obstruction(); });
    add("obstruction.mixed_q_omega", [](O o) { return mixed_system(o); });
    add("obstruction.alternative_grading", [](O) { return alternative_grading_growth(); });
    add("solutions.free2", [](O) { return solution_mapping(2); });
    add("solutions.free4", [](O) { return solution_mapping(4); });
  }
  if (name == "schrodinger-1d" || name == "all") {
    add("squares.schrodinger", [](O) { return squares_schrodinger(); });
    add("dual.free4", [](O) { return schrodinger_duals(); });
    if (opts.size8) add("search.sch8", [](O o) { return sch8_search(o); });
  }
  if (name == "harmonic" || name == "all") {
    add("squares.harmonic", [](O) { return squares_harmonic(); });
    add("witness.harmonic", [](O) { return witnesses("harm.Omega"); });
    add("search.harmonic", [](O o) { return harmonic_search(o); });
    add("harmonic.sch1", [](O o) { return harmonic_sch1(o); });
    add("harmonic.nogo", [](O) { return harmonic_nogo(); });
  }
  if (name == "free-2d" || name == "all") {
    add("squares.d2", [](O) { return squares_d2(); });
    add("witness.d2", [](O) { return witnesses("d2.Omega"); });
    add("algebra.ssch2", [](O o) { return ssch2_check(o); });
    add("algebra.z2z2_d2", [](O o) { return z2z2_d2_check(o); });
    add("relations.d2", [](O) { return d2_relations(); });
  }
  if (name == "graded-abstract" || name == "all") {
    add("abstract.jacobi", [](O o) { return abstract_jacobi(o); });
    add("abstract.perturbation", [](O o) { return abstract_perturbation(o); });
    add("abstract.lambda_terms", [](O o) { return abstract_lambda_terms(o); });
    add("composition.quaternions", [](O) { return composition_scan(CompositionAlgebra::quaternions()); });
    add("composition.split", [](O) { return composition_scan(CompositionAlgebra::split_quaternions_realized()); });
    add("theta.quaternions", [](O) { return theta_family(CompositionAlgebra::quaternions()); });
    add("theta.split", [](O) { return theta_family(CompositionAlgebra::split_quaternions_realized()); });
  }
  bool known = false;
  for (const auto& n : suite_names()) known = known || n == name;
  if (!known) throw std::invalid_argument("unknown suite: " + name);
  return c;
}

inline CheckResult run_check(const CheckSpec& spec, const SuiteOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  CheckResult r{spec.id, CheckStatus::fail, {}, 0};
  try {
    auto out = spec.run(opts);
    r.status = out.status;
    r.detail = out.detail;
  } catch (const std::exception& e) {
    r.status = CheckStatus::fail;
    r.detail = std::string("error: ") + e.what();
  }
  r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

/// Runs checks on a bounded worker pool; results keep the declared order.
inline VerificationReport run_checks(const std::string& suite, const std::vector<CheckSpec>& specs,
                                     const SuiteOptions& opts) {
  VerificationReport rep;
  rep.suite = suite;
  rep.environment = environment_fingerprint();
  SuiteOptions inner = opts;
  inner.workers = 1;
  rep.checks = parallel_map<CheckResult>(
      specs.size(), [&](std::size_t i) { return run_check(specs[i], inner); }, opts.workers);
  return rep;
}

inline VerificationReport run_suite(const std::string& name, const SuiteOptions& opts = {}) {
  return run_checks(name, suite_checks(name, opts), opts);
}

/// Search configuration read from a key = value file.
struct SearchConfig {
  std::string name;
  std::optional<std::string> omega;
  AnsatzSpec spec;
  std::optional<Rational> lambda;
  std::vector<std::string> families;
  std::vector<std::string> expect;
  std::optional<std::size_t> expect_dimension;
  std::optional<std::size_t> expect_quotient;
};

namespace detail {

inline Rational parse_rational_field(const std::string& s, std::size_t line) {
  try {
    return parse_rational(s);
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line) + ": not a rational number '" + s + "'");
  }
}

inline std::size_t parse_count(const std::string& s, std::size_t line) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("line " + std::to_string(line) + ": not a non-negative integer '" + s + "'");
  return std::stoul(s);
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',' || ch == ' ' || ch == '\t') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace detail

inline SearchConfig parse_search_config(const std::string& text) {
  SearchConfig c;
  c.spec.max_poly_degree = 2;
  std::istringstream is(text);
  std::string raw;
  std::size_t line = 0, need_omega = 0;
  auto fail = [&](const std::string& m) { throw ParseError("line " + std::to_string(line) + ": " + m); };
  auto known = [](const std::string& id) {
    for (const auto& e : catalog())
      if (e.id == id) return true;
    return false;
  };
  while (std::getline(is, raw)) {
    ++line;
    auto hash = raw.find('#');
    std::string body = detail::trim(raw.substr(0, hash));
    if (body.empty()) continue;
    auto eq = body.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'");
    std::string key = detail::trim(body.substr(0, eq)), val = detail::trim(body.substr(eq + 1));
    if (val.empty()) fail("empty value for '" + key + "'");
    if (key == "name") {
      c.name = val;
    } else if (key == "omega") {
      if (!known(val)) fail("unknown catalog identifier '" + val + "'");
      c.omega = val;
    } else if (key == "bracket") {
      if (val == "commutator")
        c.spec.kind = BracketKind::commutator;
      else if (val == "anticommutator")
        c.spec.kind = BracketKind::anticommutator;
      else
        fail("bracket must be commutator or anticommutator");
    } else if (key == "max_order") {
      c.spec.max_deriv_order = static_cast<int>(detail::parse_count(val, line));
    } else if (key == "max_degree") {
      c.spec.max_poly_degree = static_cast<int>(detail::parse_count(val, line));
    } else if (key == "exp_rates") {
      c.spec.exp_rates.clear();
      for (const auto& r : detail::split_list(val)) c.spec.exp_rates.push_back(detail::parse_rational_field(r, line));
    } else if (key == "lambda") {
      if (val == "symbolic")
        c.lambda.reset();
      else
        c.lambda = detail::parse_rational_field(val, line);
    } else if (key == "family") {
      if (!need_omega) need_omega = line;
      for (const auto& f : detail::split_list(val)) {
        if (!known(f)) fail("unknown catalog identifier '" + f + "'");
        c.families.push_back(f);
      }
    } else if (key == "expect") {
      if (!need_omega) need_omega = line;
      for (const auto& f : detail::split_list(val)) {
        if (!known(f)) fail("unknown catalog identifier '" + f + "'");
        c.expect.push_back(f);
      }
    } else if (key == "expect_dimension") {
      c.expect_dimension = detail::parse_count(val, line);
    } else if (key == "expect_quotient") {
      c.expect_quotient = detail::parse_count(val, line);
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  if (!c.omega && need_omega) {
    line = need_omega;
    fail("'expect' and 'family' need 'omega'");
  }
  return c;
}

struct SearchOutput {
  VerificationReport report;
  std::vector<DiffOp> basis;
};

inline SearchOutput run_search(const SearchConfig& cfg, const SuiteOptions& opts) {
  SearchOutput out;
  out.report.suite = cfg.name.empty() ? "search" : "search " + cfg.name;
  out.report.environment = environment_fingerprint();
  if (!cfg.omega) return out;
  AnsatzSpec spec = cfg.spec;
  if (opts.max_degree) spec.max_poly_degree = *opts.max_degree;
  if (opts.exp_rates) spec.exp_rates = *opts.exp_rates;
  std::optional<Rational> lv = opts.lambda ? opts.lambda : cfg.lambda;
  auto at = [&](const DiffOp& op) { return lv ? op.evaluate_lambda(*lv) : op; };
  auto t0 = std::chrono::steady_clock::now();
  auto ms = [&] { return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count(); };
  DiffOp om = at(build(*cfg.omega));
  SearchResult res;
  try {
    res = ansatz_search(om, spec, opts.workers);
  } catch (const std::exception& e) {
    out.report.checks.push_back({"search", CheckStatus::fail, std::string("error: ") + e.what(), ms()});
    return out;
  }
  out.basis = res.basis;
  std::string d = "omega " + *cfg.omega + ", " + to_string(spec.kind) + ", order <= " +
                  std::to_string(spec.max_deriv_order) + ", degree <= " + std::to_string(spec.max_poly_degree) +
                  ", lambda " + (lv ? lv->get_str() : std::string("symbolic")) + ": basis " +
                  std::to_string(res.basis.size());
  bool ok = !cfg.expect_dimension || *cfg.expect_dimension == res.basis.size();
  if (cfg.expect_dimension) d += " (expected " + std::to_string(*cfg.expect_dimension) + ")";
  out.report.checks.push_back({"search", ok ? CheckStatus::pass : CheckStatus::fail, d, ms()});
  if (!cfg.families.empty()) {
    std::vector<DiffOp> fams;
    for (const auto& f : cfg.families) fams.push_back(at(build(f)));
    std::size_t q = quotient_dimension(res, spec, fams);
    bool qok = !cfg.expect_quotient || *cfg.expect_quotient == q;
    std::string qd = "modulo " + checks::join(cfg.families) + ": " + std::to_string(q);
    if (cfg.expect_quotient) qd += " (expected " + std::to_string(*cfg.expect_quotient) + ")";
    out.report.checks.push_back({"quotient", qok ? CheckStatus::pass : CheckStatus::fail, qd, ms()});
  }
  for (const auto& id : cfg.expect) {
    bool in = span_contains(res.basis, at(build(id)));
    out.report.checks.push_back(
        {"span." + id, in ? CheckStatus::pass : CheckStatus::fail, in ? "in span" : "not in span", ms()});
  }
  return out;
}

/// Catalog entry metadata together with the operator in the JSON operator format.
inline nlohmann::ordered_json catalog_entry_json(const CatalogEntry& e, bool with_operator) {
  nlohmann::ordered_json j;
  j["id"] = e.id;
  j["omega"] = e.omega_id;
  j["bracket"] = e.kind ? to_string(*e.kind) : "none";
  j["family"] = e.family;
  j["description"] = e.description;
  if (with_operator) j["operator"] = e.make({}).to_json();
  return j;
}

}  // namespace llsym

#endif  // LLSYM_CLI_REPORT_HPP
