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

#ifndef LLSYM_ALGEBRA_CATALOG_HPP
#define LLSYM_ALGEBRA_CATALOG_HPP

#include <string>
#include <utility>
#include <vector>

#include "graded_algebra.hpp"
#include "model_catalog.hpp"

namespace llsym {

/// Named generator sets of the free models, with their gradings.
struct RealizedAlgebra {
  std::string id;
  GradingKind kind;
  std::vector<GradedGenerator> gens;
};

namespace algebras {

inline constexpr Degree k00{0, 0}, k01{0, 1}, k10{1, 0}, k11{1, 1};

inline RealizedAlgebra sch1(const FreeModel& m) {
  return {"sch1",
          GradingKind::lie,
          {{"H", k00, m.H()},
           {"D", k00, m.D()},
           {"K", k00, m.K()},
           {"Pp", k00, m.P_plus()},
           {"Pm", k00, m.P_minus()},
           {"C", k00, m.C()}}};
}

inline RealizedAlgebra osp_p(const FreeModel& m) {
  return {"osp_P",
          GradingKind::z2_super,
          {{"P1", k00, m.P(2)},
           {"P0", k00, m.P(0)},
           {"Pm1", k00, m.P(-2)},
           {"Ph", k10, m.P(1)},
           {"Pmh", k10, m.P(-1)}}};
}

inline RealizedAlgebra osp_omega(const FreeModel& m) {
  return {"osp_Omega",
          GradingKind::z2_super,
          {{"Om1", k00, m.Omega(2)},
           {"Om0", k00, m.Omega(0)},
           {"Omm1", k00, m.Omega(-2)},
           {"Omh", k10, m.Omega(1)},
           {"Ommh", k10, m.Omega(-1)}}};
}

inline RealizedAlgebra osp_q(const FreeModel& m) {
  return {"osp_Q",
          GradingKind::z2_super,
          {{"H", k00, m.H()}, {"D", k00, m.D()}, {"K", k00, m.K()}, {"Qh", k10, m.Q_plus()}, {"Qmh", k10, m.Q_minus()}}};
}

inline RealizedAlgebra ssch1(const FreeModel& m) {
  return {"ssch1",
          GradingKind::z2_super,
          {{"H", k00, m.H()},
           {"D", k00, m.D()},
           {"K", k00, m.K()},
           {"C", k00, m.C()},
           {"Ph", k00, m.P_plus()},
           {"Pmh", k00, m.P_minus()},
           {"Qh", k10, m.Q_plus()},
           {"Qmh", k10, m.Q_minus()},
           {"X", k10, m.X()}}};
}

/// P_s and Omega_s with an empty 11 sector.
inline RealizedAlgebra first_z2z2(const FreeModel& m) {
  return {"z2z2_first",
          GradingKind::color_superalgebra,
          {{"P1", k00, m.P(2)},
           {"P0", k00, m.P(0)},
           {"Pm1", k00, m.P(-2)},
           {"Om1", k00, m.Omega(2)},
           {"Om0", k00, m.Omega(0)},
           {"Omm1", k00, m.Omega(-2)},
           {"Ph", k01, m.P(1)},
           {"Pmh", k01, m.P(-1)},
           {"Omh", k10, m.Omega(1)},
           {"Ommh", k10, m.Omega(-1)}}};
}

/// The 13 generators H, D, K, P_s, Q, X_(+-1/2), X.
inline RealizedAlgebra z2z2_13(const FreeModel& m) {
  return {"z2z2_13",
          GradingKind::color_superalgebra,
          {{"H", k00, m.H()},
           {"D", k00, m.D()},
           {"K", k00, m.K()},
           {"P1", k00, m.P(2)},
           {"P0", k00, m.P(0)},
           {"Pm1", k00, m.P(-2)},
           {"Ph", k01, m.P(1)},
           {"Pmh", k01, m.P(-1)},
           {"Qh", k10, m.Q_plus()},
           {"Qmh", k10, m.Q_minus()},
           {"Xh", k10, m.X_half(1)},
           {"Xmh", k10, m.X_half(-1)},
           {"X", k11, m.X()}}};
}

/// Omega_(+-1/2) and Q_(+-1/2) together: in distinct sectors 01 and 10, or both odd in a Z2 grading.
inline RealizedAlgebra q_omega_mixed(const FreeModel& m, bool distinct_sectors = true) {
  Degree dom = distinct_sectors ? k01 : k10;
  return {"q_omega_mixed",
          distinct_sectors ? GradingKind::color_superalgebra : GradingKind::z2_super,
          {{"Omh", dom, m.Omega(1)}, {"Ommh", dom, m.Omega(-1)}, {"Qh", k10, m.Q_plus()}, {"Qmh", k10, m.Q_minus()}}};
}

/// Alternative assignment: P_(+-1/2) in 01, Q_(+-1/2) in 11.
inline RealizedAlgebra alt_grading(const FreeModel& m) {
  return {"alt_grading",
          GradingKind::color_superalgebra,
          {{"Ph", k01, m.P(1)}, {"Pmh", k01, m.P(-1)}, {"Qh", k11, m.Q_plus()}, {"Qmh", k11, m.Q_minus()}}};
}

/// sch(1) inside the harmonic symmetries: H, D - N_f/4, -K/16, -4 P_(1/2), P_(-1/2), -16 C.
inline RealizedAlgebra harmonic_sch1() {
  const DiffOp nf = harmonic::N_f();
  return {"harm_sch1",
          GradingKind::lie,
          {{"H", k00, harmonic::H()},
           {"D", k00, harmonic::D() - CoeffExpr(Rational(1, 4)) * nf},
           {"K", k00, CoeffExpr(Rational(-1, 16)) * harmonic::K()},
           {"Pp", k00, CoeffExpr(Rational(-4)) * harmonic::P_plus()},
           {"Pm", k00, harmonic::P_minus()},
           {"C", k00, CoeffExpr(Rational(-16)) * harmonic::C()}}};
}

/// Harmonic H, D, K, P_(+-1/2), C as printed, with N_f.
inline RealizedAlgebra harmonic_printed() {
  return {"harm_printed",
          GradingKind::lie,
          {{"H", k00, harmonic::H()},
           {"D", k00, harmonic::D()},
           {"K", k00, harmonic::K()},
           {"Pp", k00, harmonic::P_plus()},
           {"Pm", k00, harmonic::P_minus()},
           {"C", k00, harmonic::C()},
           {"Nf", k00, harmonic::N_f()}}};
}

inline RealizedAlgebra ssch2(const Free2dModel& m) {
  return {"ssch2",
          GradingKind::z2_super,
          {{"H", k00, m.H()},
           {"D", k00, m.D()},
           {"K", k00, m.K()},
           {"Pp1", k00, m.P_plus(1)},
           {"Pp2", k00, m.P_plus(2)},
           {"Pn1", k00, m.P_minus(1)},
           {"Pn2", k00, m.P_minus(2)},
           {"C", k00, m.C()},
           {"J", k00, m.J()},
           {"Qp", k10, m.Q_plus()},
           {"Qm", k10, m.Q_minus()},
           {"X1", k10, m.X(1)},
           {"X2", k10, m.X(2)}}};
}

/// The Z2 x Z2 graded superalgebra of the 1+2 dimensional equation.
inline RealizedAlgebra z2z2_d2(const Free2dModel& m, bool with_center = false) {
  RealizedAlgebra a{"z2z2_d2", GradingKind::color_superalgebra, {}};
  auto& g = a.gens;
  g.push_back({"H", k00, m.H()});
  g.push_back({"D", k00, m.D()});
  g.push_back({"K", k00, m.K()});
  g.push_back({"J", k00, m.J()});
  g.push_back({"Xt", k00, m.X_tilde()});
  auto ij = [](int i, int j) { return std::to_string(i) + std::to_string(j); };
  for (int i = 1; i <= 2; ++i)
    for (int j = i; j <= 2; ++j) g.push_back({"P1_" + ij(i, j), k00, anticommutator(m.P_plus(i), m.P_plus(j))});
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) g.push_back({"P0_" + ij(i, j), k00, anticommutator(m.P_plus(i), m.P_minus(j))});
  for (int i = 1; i <= 2; ++i)
    for (int j = i; j <= 2; ++j) g.push_back({"Pm1_" + ij(i, j), k00, anticommutator(m.P_minus(i), m.P_minus(j))});
  if (with_center) g.push_back({"C", k00, m.C()});
  for (int i = 1; i <= 2; ++i) g.push_back({"Pp" + std::to_string(i), k01, m.P_plus(i)});
  for (int i = 1; i <= 2; ++i) g.push_back({"Pn" + std::to_string(i), k01, m.P_minus(i)});
  g.push_back({"Qp", k10, m.Q_plus()});
  g.push_back({"Qm", k10, m.Q_minus()});
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) g.push_back({"Xbp_" + ij(i, j), k10, anticommutator(m.P_plus(i), m.X(j))});
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) g.push_back({"Xbm_" + ij(i, j), k10, anticommutator(m.P_minus(i), m.X(j))});
  for (int i = 1; i <= 2; ++i) g.push_back({"X" + std::to_string(i), k11, m.X(i)});
  return a;
}

/// Abstract 17-generator table with Q in the 11 sector.
inline StructureTable alt_abstract_table(bool with_p_lambda_terms = false) {
  StructureTable t(GradingKind::color_superalgebra);
  for (const char* n : {"H", "D", "K", "P1", "P0", "Pm1", "R0", "C"}) t.add_generator(n, k00);
  for (const char* n : {"Ph", "Pmh"}) t.add_generator(n, k01);
  for (const char* n : {"X", "R1", "Rm1", "Y", "Z"}) t.add_generator(n, k10);
  for (const char* n : {"Qh", "Qmh"}) t.add_generator(n, k11);
  auto R = [&t](const char* a, const char* b, std::map<std::string, CoeffExpr> rhs) { t.set(a, b, rhs); };
  const CoeffExpr half(make_rational(1, 2));
  const CoeffExpr lam = CoeffExpr::lambda();
  R("D", "H", {{"H", 1}});
  R("D", "K", {{"K", -1}});
  R("H", "K", {{"D", 2}});
  R("D", "Ph", {{"Ph", half}});
  R("D", "Pmh", {{"Pmh", -half}});
  R("H", "Pmh", {{"Ph", 1}});
  R("K", "Ph", {{"Pmh", 1}});
  R("Ph", "Ph", {{"P1", 1}});
  R("Pmh", "Pmh", {{"Pm1", 1}});
  R("Ph", "Pmh", {{"P0", 1}});
  R("D", "P1", {{"P1", 1}});
  R("D", "Pm1", {{"Pm1", -1}});
  R("H", "P0", {{"P1", 1}});
  R("H", "Pm1", {{"P0", 2}});
  R("K", "P0", {{"Pm1", 1}});
  R("K", "P1", {{"P0", 2}});
  if (with_p_lambda_terms) {
    R("P1", "Pm1", {{"P0", -4 * lam}});
    R("P1", "Pmh", {{"Ph", -2 * lam}});
    R("Pm1", "Ph", {{"Pmh", 2 * lam}});
    R("P0", "P1", {{"P1", 2 * lam}});
    R("P0", "Pm1", {{"Pm1", -2 * lam}});
    R("P0", "Ph", {{"Ph", lam}});
    R("P0", "Pmh", {{"Pmh", -lam}});
  }
  R("D", "Qh", {{"Qh", half}});
  R("D", "Qmh", {{"Qmh", -half}});
  R("H", "Qmh", {{"Qh", 1}});
  R("K", "Qh", {{"Qmh", 1}});
  R("Qh", "Qmh", {{"R0", 1}});
  R("Qh", "Ph", {{"R1", 1}});
  R("Qmh", "Pmh", {{"Rm1", 1}});
  R("Qmh", "Ph", {{"Y", 1}});
  R("Qh", "Pmh", {{"Z", 1}});
  R("H", "Y", {{"R1", 1}});
  R("H", "Z", {{"R1", 1}});
  R("H", "Rm1", {{"Y", 1}, {"Z", 1}});
  R("D", "R1", {{"R1", 1}});
  R("D", "Rm1", {{"Rm1", -1}});
  R("K", "R1", {{"Y", 1}, {"Z", 1}});
  R("K", "Y", {{"Rm1", 1}});
  R("K", "Z", {{"Rm1", 1}});
  R("R0", "X", {{"Y", 1}, {"Z", -1}});
  R("X", "X", {{"C", 1}});
  R("X", "R1", {{"P1", -1}});
  R("X", "Rm1", {{"Pm1", -1}});
  R("X", "Y", {{"P0", -1}});
  R("X", "Z", {{"P0", -1}});
  R("X", "Qh", {{"Ph", -1}});
  R("X", "Qmh", {{"Pmh", -1}});
  return t;
}

}  // namespace algebras

}  // namespace llsym

#endif  // LLSYM_ALGEBRA_CATALOG_HPP
