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

#ifndef LLSYM_MODEL_CATALOG_HPP
#define LLSYM_MODEL_CATALOG_HPP

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "diff_op.hpp"
#include "symmetry_engine.hpp"

namespace llsym {

/// Parameters for families and potentials.
struct ModelParams {
  CoeffExpr f = CoeffExpr::var(Var::x);  // prepotential f(x)
  CoeffExpr z = CoeffExpr(1);            // unconstrained function slot
  Rational r1 = 1, r2 = 1, r3 = 0;       // harmonic root parameters
};

/// gamma_+, gamma_-, gamma_3 realizing the free-case relations.
struct FreeGammas {
  MatExpr I, gp, gm, g3;
  std::optional<MatExpr> J;
  std::size_t size() const { return I.dense().size(); }
};

inline FreeGammas gammas_2x2() {
  return {MatExpr::parse("I"), MatExpr::parse("1/2*Y + 1/2*A"), MatExpr::parse("1/2*Y - 1/2*A"), MatExpr::parse("X"),
          std::nullopt};
}

inline FreeGammas gammas_4x4() {
  MatExpr J = -MatExpr::parse("AI");
  Rational h(1, 2);
  return {MatExpr::parse("II"), h * (J * MatExpr::parse("AA + AY")), -h * (J * MatExpr::parse("AA - AY")),
          J * MatExpr::parse("AX"), J};
}

namespace detail {

inline const CoeffExpr& cx() {
  static const CoeffExpr v = CoeffExpr::var(Var::x);
  return v;
}
inline const CoeffExpr& ct() {
  static const CoeffExpr v = CoeffExpr::var(Var::t);
  return v;
}
inline const CoeffExpr& cx2() {
  static const CoeffExpr v = CoeffExpr::var(Var::x2);
  return v;
}
inline const CoeffExpr& clam() {
  static const CoeffExpr v = CoeffExpr::lambda();
  return v;
}
inline CoeffExpr q(long n, long d = 1) { return CoeffExpr(make_rational(n, d)); }
inline DiffOp W(const char* s, DerivIndex d = kNoDeriv) { return DiffOp(MatExpr::parse(s), d); }
inline DiffOp W(const MatExpr& m, DerivIndex d = kNoDeriv) { return DiffOp(m, d); }

// e_ij of size n, 1-based two-digit index.
inline CoeffMatrix e(int ij, std::size_t n = 4) {
  return CoeffMatrix::unit(n, static_cast<std::size_t>(ij / 10 - 1), static_cast<std::size_t>(ij % 10 - 1));
}
inline DiffOp E(const CoeffMatrix& m, DerivIndex d = kNoDeriv) { return DiffOp(m, d); }

}  // namespace detail

// Section 2 operators.

inline DiffOp sqm_q1(const CoeffExpr& f) { return detail::W("AI", kDx) + f * detail::W("YI"); }
inline DiffOp sqm_q2(const CoeffExpr& f) { return detail::W("YA", kDx) + f * detail::W("AA"); }
inline DiffOp sqm_h(const CoeffExpr& f) {
  using namespace detail;
  return -W("II", DerivIndex{0, 2, 0}) + f * f * W("II") + f.derive(Var::x) * W("XI");
}

inline DiffOp heat_free_2x2() {
  using namespace detail;
  return W("1/2*A + 1/2*Y", kDt) + clam() * W("1/2*A - 1/2*Y") + W("X", kDx);
}

inline DiffOp heat_free_4x4() {
  using namespace detail;
  return W("1/2*AA + 1/2*AY", kDt) + clam() * W("1/2*AA - 1/2*AY") + W("AX", kDx);
}

inline DiffOp heat_potential_4x4(const CoeffExpr& f) { return heat_free_4x4() + f * detail::W("YI"); }

inline DiffOp sch_free_4x4() {
  using namespace detail;
  return W(MatExpr::parse("1/2*AA + 1/2*AY") * MatExpr::parse("AI"), kDt) + clam() * W("1/2*AA - 1/2*AY") +
         W("AX", kDx);
}

inline DiffOp sch_potential_8x8(const CoeffExpr& f) {
  using namespace detail;
  return W(MatExpr::parse("1/2*AAA + 1/2*AAY") * MatExpr::parse("AII"), kDt) + clam() * W("1/2*AAA - 1/2*AAY") +
         W("AYI", kDx) + f * W("AAX");
}

/// Free 1+1 operator and its symmetry operators in a given gamma realization.
class FreeModel {
 public:
  explicit FreeModel(FreeGammas g) : g_(std::move(g)) {}

  const FreeGammas& gammas() const { return g_; }
  std::size_t size() const { return g_.size(); }

  DiffOp omega() const { return m(g_.gp, kDt) + lam() * m(g_.gm) + m(g_.g3, kDx); }

  DiffOp H() const { return m(g_.I, kDt); }
  DiffOp D() const { return -(t() * m(g_.I, kDt) + h() * x() * m(g_.I, kDx) + h() * m(g_.I) + detail::q(1, 4) * m(g_.g3)); }
  DiffOp K() const {
    return -(t() * t() * m(g_.I, kDt) + t() * x() * m(g_.I, kDx) - detail::q(1, 4) * lam() * x() * x() * m(g_.I) +
             t() * m(g_.I) - h() * x() * m(g_.gp) + h() * t() * m(g_.g3));
  }
  DiffOp P_plus() const { return m(g_.I, kDx); }
  DiffOp P_minus() const { return t() * m(g_.I, kDx) - h() * lam() * x() * m(g_.I) - h() * m(g_.gp); }
  DiffOp C() const { return m(g_.I); }
  DiffOp omega_z(const CoeffExpr& z) const { return z * omega(); }

  DiffOp L1() const { return m(g_.I); }
  DiffOp L2() const { return m(g_.gp, kDt) - lam() * m(g_.gm); }
  DiffOp L3() const { return t() * m(g_.gp, kDt) + h() * m(g_.gp) - lam() * t() * m(g_.gm) + h() * lam() * x() * m(g_.I); }
  DiffOp L4() const { return m(g_.g3, kDt) - detail::q(2) * m(g_.gm, kDx); }
  /// variant=true reads the last two terms as gamma_- lam x / 2 and -gamma_+ (x/2) d_t.
  DiffOp L5(bool variant = false) const {
    DiffOp tail = variant ? h() * lam() * x() * m(g_.gm) - h() * x() * m(g_.gp, kDt)
                          : h() * lam() * m(g_.gm) - h() * x() * m(g_.gp);
    return t() * m(g_.g3, kDt) + detail::q(1, 4) * m(g_.g3) - detail::q(2) * t() * m(g_.gm, kDx) + tail +
           h() * m(g_.I);
  }
  DiffOp L5_variant() const { return L5(true); }
  DiffOp L5_printed() const { return L5(false); }
  DiffOp L6() const {
    return h() * t() * t() * m(g_.g3, kDt) + detail::q(1, 4) * t() * m(g_.g3) - t() * t() * m(g_.gm, kDx) +
           h() * lam() * t() * x() * m(g_.gm) - h() * t() * x() * m(g_.gp, kDt) - detail::q(1, 4) * x() * m(g_.gp) +
           (h() * t() - detail::q(1, 8) * lam() * x() * x()) * m(g_.I);
  }
  DiffOp lambda_w(const CoeffExpr& w) const { return w * (m(g_.gp, kDx) - h() * lam() * (m(g_.I) + m(g_.g3))); }

  DiffOp Q_plus() const { return sinv() * L2(); }
  DiffOp Q_minus() const {
    return sinv() * (t() * m(g_.gp, kDt) + x() * m(g_.gp, kDx) + h() * m(g_.gp) - lam() * t() * m(g_.gm) -
                     h() * lam() * x() * m(g_.g3));
  }
  DiffOp X() const { return sinv() * (m(g_.gp, kDx) - h() * lam() * m(g_.g3)); }

  DiffOp P(int twice_s) const {
    switch (twice_s) {
      case 1: return P_plus();
      case -1: return P_minus();
      case 2: return anticommutator(P_plus(), P_plus());
      case 0: return anticommutator(P_plus(), P_minus());
      case -2: return anticommutator(P_minus(), P_minus());
    }
    throw std::invalid_argument("P index");
  }
  DiffOp Omega(int twice_s) const {
    DiffOp a = omega(), b = t() * omega();
    switch (twice_s) {
      case 1: return a;
      case -1: return b;
      case 2: return anticommutator(a, a);
      case 0: return anticommutator(a, b);
      case -2: return anticommutator(b, b);
    }
    throw std::invalid_argument("Omega index");
  }
  DiffOp X_half(int sign) const { return anticommutator(X(), sign > 0 ? P_plus() : P_minus()); }

  DiffOp R0() const { return commutator(Q_plus(), Q_minus()); }
  DiffOp R1() const { return anticommutator(Q_plus(), P_plus()); }
  DiffOp Rm1() const { return anticommutator(Q_minus(), P_minus()); }
  DiffOp Yop() const { return anticommutator(Q_minus(), P_plus()); }
  DiffOp Zop() const { return anticommutator(Q_plus(), P_minus()); }

  DiffOp T() const { return -lam() * m(g_.g3) + detail::q(2) * m(g_.gp, kDx); }

 private:
  DiffOp m(const MatExpr& e, DerivIndex d = kNoDeriv) const { return DiffOp(e, d); }
  static const CoeffExpr& x() { return detail::cx(); }
  static const CoeffExpr& t() { return detail::ct(); }
  static const CoeffExpr& lam() { return detail::clam(); }
  static CoeffExpr h() { return detail::q(1, 2); }
  static CoeffExpr sinv() { return CoeffExpr::lambda_half(-1); }

  FreeGammas g_;
};

/// Lambda -> beta J: each lam^k becomes beta^k J^k (beta kept in the lam slot).
inline DiffOp schrodinger_transform(const DiffOp& op, const MatExpr& J) {
  std::size_t n = op.size();
  CoeffMatrix Jm = CoeffMatrix::from(J);
  if (Jm.size() != n) throw std::invalid_argument("J size does not match operator");
  if (!(Jm * Jm == CoeffExpr(-1) * CoeffMatrix::identity(n))) throw std::invalid_argument("J does not square to -1");
  for (const auto& [d, c] : op.terms())
    if (!(Jm * c == c * Jm)) throw std::invalid_argument("J does not commute with the coefficient of " + d.str());
  std::map<int, std::map<OpCoord, Rational>> by_power;
  for (const auto& [k, c] : op.coordinates()) {
    if (k.mono.lam_half % 2 != 0) throw std::invalid_argument("odd power of sqrt(lam) has no J image");
    by_power[k.mono.lam_half / 2][k] = c;
  }
  DiffOp out(n);
  for (const auto& [k, coords] : by_power) {
    CoeffMatrix Jk = CoeffMatrix::identity(n);
    CoeffMatrix step = k >= 0 ? Jm : CoeffExpr(-1) * Jm;
    for (int i = 0; i < (k >= 0 ? k : -k); ++i) Jk = Jk * step;
    out += Jk * DiffOp::from_coordinates(n, coords);
  }
  return out;
}

// Harmonic 4x4 operator and its symmetry operators, lambda = omega = 1.
namespace harmonic {

using detail::e;
using detail::E;

inline DiffOp omega() {
  const CoeffExpr& x = detail::cx();
  return E(e(14) - e(32), kDt) + E(e(13) - e(24) - e(31) + e(42), kDx) + x * E(e(13) + e(24) + e(31) + e(42)) +
         E(e(41) - e(23));
}

inline DiffOp exp_times(int rate, const DiffOp& op) { return CoeffExpr::exp_t(rate) * op; }

/// Sigma_1 .. Sigma_24 as printed. variant=true selects the corrected reading of k = 4 (e34 -> e43 in the
/// d_x term), k = 13 (e41 -> e42 in the d_t term) and k = 17 (e23 -> e23 + e41 in the d_x term).
inline DiffOp sigma(int k, bool variant = false) {
  const CoeffExpr& x = detail::cx();
  CoeffExpr x2 = x * x, x3 = x2 * x;
  auto c = [](long n) { return CoeffExpr(n); };
  switch (k) {
    case 1:
      return exp_times(4, E(e(22) + e(33) - c(2) * x * e(34), kDt) + E(e(21) - e(43) + c(2) * x * (e(22) + e(44)), kDx) +
                              E(x * e(21) + c(2) * x2 * e(22) + c(4) * e(33) - c(8) * x * e(34) - x * e(43) +
                                c(2) * (x2 + 1) * e(44)));
    case 2:
      return exp_times(4, E(e(11) + e(44) + c(2) * x * e(34), kDt) + E(e(43) - e(21) + c(2) * x * (e(11) + e(33)), kDx) +
                              E((c(2) + c(2) * x2) * e(11) - x * e(21) + c(2) * x2 * e(33) + x * e(43)));
    case 3:
      return exp_times(-4, E(e(22) + e(33) + c(2) * x * e(34), kDt) +
                               E(e(21) - e(43) - c(2) * x * (e(22) + e(44)), kDx) +
                               E(c(-3) * x * e(21) - c(2) * x2 * e(22) + (c(4) * x2 - 2) * e(33) - x * e(43) +
                                 c(2) * x2 * e(44)));
    case 4:
      return exp_times(-4, E(e(11) + e(44) - c(2) * x * e(34), kDt) +
                               E((variant ? e(43) : e(34)) - e(21) - c(2) * x * (e(11) + e(33)), kDx) +
                               E((c(2) * x2 - 4) * e(11) - c(8) * x * e(12) + c(3) * x * e(21) +
                                 (c(4) * x2 - 2) * e(22) - c(2) * x2 * e(33) + x * e(43)));
    case 5: return exp_times(2, E(CoeffMatrix::identity(4), kDx) + x * E(CoeffMatrix::identity(4)) - c(2) * E(e(34)));
    case 6: return exp_times(-2, E(CoeffMatrix::identity(4), kDx) - x * E(CoeffMatrix::identity(4)) + c(2) * E(e(12)));
    case 7: return E(e(11) + e(44), kDt) + E(e(43) - e(21), kDx) + x * E(e(21) + e(43));
    case 8: return E(e(22) + e(33), kDt) + E(e(21) - e(43), kDx) - x * E(e(21) + e(43));
    case 9: return E(e(11) + e(22));
    case 10: return E(e(33) + e(44));
    case 11:
      return exp_times(2, E(e(34), kDt) - E(e(22) + e(44), kDx) - E(e(21)) + c(2) * E(e(34)) - x * E(e(22) + e(44)));
    case 12:
      return exp_times(-2, E(e(34), kDt) - E(e(22) + e(44), kDx) - E(e(21)) + x * E(e(44) + c(2) * e(33) - e(22)));
    case 13:
      return exp_times(6, E(e(13) - (variant ? e(42) : e(41)) - c(4) * x * e(32), kDt) +
                              E(c(4) * x * (e(13) - e(31)) - (e(23) + e(41)), kDx) +
                              E((c(8) * x2 + 4) * e(13) - (c(12) * x + c(8) * x3) * e(14) - c(3) * x * e(23) +
                                (c(4) * x2 + 2) * e(24) + c(4) * x2 * e(31) + x * e(41)));
    case 14:
      return exp_times(-6, E(e(24) - e(31) - c(4) * x * e(32), kDt) +
                               E(e(23) + e(41) + c(4) * x * (e(42) - e(24)), kDx) +
                               E(c(-3) * x * e(23) + c(4) * x2 * e(24) + c(4) * (c(1) - x2) * e(31) +
                                 (c(12) * x - c(8) * x3) * e(32) + x * e(41) + c(2) * e(42)));
    case 15:
      return exp_times(4, -E(e(32), kDt) + E(e(13) - e(31), kDx) +
                              E(c(3) * x * e(13) - (c(4) * x2 + 2) * e(14) - e(23) + c(2) * x * e(24) + x * e(31)));
    case 16:
      return exp_times(-4, E(e(32), kDt) + E(e(24) - e(42), kDx) +
                               E(e(23) - x * e(24) + c(2) * x * e(31) + (c(4) * x2 - 2) * e(32) + x * e(42)));
    case 17:
      return exp_times(2, E(e(24) - e(31), kDt) + E(variant ? e(23) + e(41) : e(23), kDx) + x * E(e(23) + e(41)) -
                              c(2) * E(e(31)));
    case 18:
      return exp_times(2, E(e(13) - e(42) - c(2) * x * e(32), kDt) -
                              E(e(23) + e(41) + c(2) * x * (e(31) - e(13)), kDx) + x * E(e(41) - e(23)) +
                              c(2) * x2 * E(e(13) + e(31)));
    case 19: return exp_times(2, E(e(13) + e(24) - c(2) * x * e(14)));
    case 20:
      return exp_times(-2, E(e(13) - e(42), kDt) - E(e(23) + e(41), kDx) - c(2) * E(e(13)) + x * E(e(23) + e(41)));
    case 21:
      return exp_times(-2, E(e(24) - e(31) - c(2) * x * e(32), kDt) +
                               E(c(-2) * x * (e(24) - e(42)) + e(23) + e(41), kDx) + c(2) * x2 * E(e(24) + e(42)) +
                               x * E(e(41) - e(23)));
    case 22: return exp_times(-2, E(e(31) + e(42) + c(2) * x * e(32)));
    case 23: return E(e(13) + e(24) - e(31) - e(42), kDx) + x * E(e(13) - e(24) + e(31) - e(42));
    case 24: return E(e(32), kDt) + E(e(24) - e(42), kDx) + E(e(23)) - x * E(e(24) + e(42));
  }
  throw std::invalid_argument("Sigma index out of range: " + std::to_string(k));
}

/// Sigma-tilde families 1..4 with function slot z.
inline DiffOp sigma_tilde(int k, const CoeffExpr& z) {
  const CoeffExpr& x = detail::cx();
  switch (k) {
    case 1:
      return z * (E(e(12) + e(34), kDt) + E(e(11) - e(22) + e(33) - e(44), kDx) - E(e(21) + e(43)) -
                  x * E(e(11) + e(22) - e(33) - e(44)));
    case 2: return z * (E(e(12) - e(34), kDx) + E(e(11) - e(33)) + x * E(e(12) + e(34)));
    case 3: return z * omega();
    case 4: return z * (E(e(14) + e(32), kDx) + E(e(13) + e(31)) + x * E(e(32) - e(14)));
  }
  throw std::invalid_argument("Sigma-tilde index out of range: " + std::to_string(k));
}

/// Sigma-tilde_3 with its printed expansion, for comparison with omega().
inline DiffOp sigma_tilde3_printed(const CoeffExpr& z) {
  const CoeffExpr& x = detail::cx();
  return z * (E(e(14) - e(32), kDt) + E(e(13) - e(24) - e(31) + e(42), kDx) - E(e(23)) + E(e(41)) +
              x * E(e(13) + e(24) + e(31) + e(42)));
}

inline DiffOp H() { return sigma(1) + sigma(2); }
inline DiffOp K(bool variant = true) { return sigma(3) + sigma(4, variant); }
inline DiffOp D() { return detail::q(1, 4) * (sigma(7) + sigma(8)); }
inline DiffOp C() { return sigma(9) + sigma(10); }
inline DiffOp N_f() { return sigma(9) - sigma(10); }
inline DiffOp P_plus() { return sigma(5); }
inline DiffOp P_minus() { return sigma(6); }

/// Candidate supersymmetric root with parameters r1, r2, r3.
inline DiffOp Q(const Rational& r1, const Rational& r2, const Rational& r3) {
  const CoeffExpr& x = detail::cx();
  CoeffExpr x2 = x * x;
  CoeffExpr R1(r1), R2(r2), R3(r3);
  DiffOp op = E(e(12), kDt) + detail::q(2) * x * E(e(12), kDx) + detail::q(2) * x2 * E(e(12)) + R3 * E(e(13)) -
              detail::q(2) * R3 * x * E(e(14)) + R1 * R2 * E(e(21)) - R1 * R3 * E(e(24)) +
              detail::q(2) * R2 * x * E(e(33)) + R1 * E(e(34), kDt) + detail::q(2) * R1 * x * E(e(34), kDx) +
              ((detail::q(2) * R1 - detail::q(4) * R2) * x2 + detail::q(2) * R1) * E(e(34)) + R2 * E(e(43)) -
              detail::q(2) * R2 * x * E(e(44));
  return exp_times(2, op);
}

}  // namespace harmonic

/// Free 1+2 operator on 4x4 matrices and its symmetry operators.
class Free2dModel {
 public:
  Free2dModel()
      : g1_(MatExpr::parse("YX")),
        g2_(MatExpr::parse("YY")),
        g3_(MatExpr::parse("XI")),
        g4_(MatExpr::parse("AI")),
        g5_(MatExpr::parse("YA")),
        I_(MatExpr::parse("II")) {
    gp_ = Rational(1, 2) * (g3_ + g4_);
    gm_ = Rational(1, 2) * (g3_ - g4_);
  }

  std::vector<MatExpr> gammas() const { return {g1_, g2_, g3_, g4_, g5_}; }
  std::string gamma_choice() const { return "g1=YX g2=YY g3=XI g4=AI g5=YA"; }
  const MatExpr& gamma(int i) const { return i == 1 ? g1_ : g2_; }

  static DerivIndex d(int i) { return i == 1 ? kDx : DerivIndex{0, 0, 1}; }
  static const CoeffExpr& xi(int i) { return i == 1 ? detail::cx() : detail::cx2(); }

  DiffOp omega() const { return m(gp_, kDt) + lam() * m(gm_) + m(g1_, d(1)) + m(g2_, d(2)); }
  DiffOp H() const { return m(I_, kDt); }
  DiffOp D() const {
    return -(t() * m(I_, kDt) + h() * xi(1) * m(I_, d(1)) + h() * xi(2) * m(I_, d(2)) + h() * m(I_)) -
           h() * m(gp_ * gm_);
  }
  DiffOp K() const {
    DiffOp scalar = t() * t() * m(I_, kDt) + t() * xi(1) * m(I_, d(1)) + t() * xi(2) * m(I_, d(2)) -
                    detail::q(1, 4) * lam() * (xi(1) * xi(1) + xi(2) * xi(2)) * m(I_) + t() * m(I_);
    return -scalar - h() * (xi(1) * m(gp_ * g1_) + xi(2) * m(gp_ * g2_)) - t() * m(gp_ * gm_);
  }
  DiffOp P_plus(int i) const { return m(I_, d(i)); }
  DiffOp P_minus(int i) const { return t() * m(I_, d(i)) - h() * lam() * xi(i) * m(I_) + h() * m(gp_ * gamma(i)); }
  DiffOp J() const {
    return xi(1) * m(I_, d(2)) - xi(2) * m(I_, d(1)) + detail::q(1, 4) * m(g1_ * g2_ - g2_ * g1_);
  }
  DiffOp X_tilde() const {
    return m(gp_ * g1_, d(2)) - m(gp_ * g2_, d(1)) + detail::q(1, 4) * lam() * m(g1_ * g2_ - g2_ * g1_);
  }
  DiffOp C() const { return m(I_); }
  DiffOp Q_plus() const { return m(gp_, kDt) - lam() * m(gm_); }
  DiffOp Q_minus() const {
    return t() * m(gp_, kDt) + xi(1) * m(gp_, d(1)) + xi(2) * m(gp_, d(2)) + m(gp_) -
           h() * lam() * (xi(1) * m(g1_) + xi(2) * m(g2_)) - lam() * t() * m(gm_);
  }
  DiffOp X(int i) const { return m(gp_, d(i)) - h() * lam() * m(gamma(i)); }
  DiffOp gamma_plus() const { return m(gp_); }
  /// lam (g2 d1 - g1 d2)
  DiffOp printed_q_xtilde() const { return lam() * (m(g2_, d(1)) - m(g1_, d(2))); }

 private:
  static DiffOp m(const MatExpr& e, DerivIndex dd = kNoDeriv) { return DiffOp(e, dd); }
  static const CoeffExpr& t() { return detail::ct(); }
  static const CoeffExpr& lam() { return detail::clam(); }
  static CoeffExpr h() { return detail::q(1, 2); }

  MatExpr g1_, g2_, g3_, g4_, g5_, I_, gp_, gm_;
};

/// p_n with lam d_t p + d_x^2 p = 0.
inline CoeffExpr heat_polynomial(int n) {
  if (n < 0) throw std::invalid_argument("heat polynomial degree must be non-negative");
  CoeffExpr p;
  mpz_class nf;
  mpz_fac_ui(nf.get_mpz_t(), static_cast<unsigned long>(n));
  for (int k = 0; 2 * k <= n; ++k) {
    mpz_class kf, rf;
    mpz_fac_ui(kf.get_mpz_t(), static_cast<unsigned long>(k));
    mpz_fac_ui(rf.get_mpz_t(), static_cast<unsigned long>(n - 2 * k));
    Rational c(nf, kf * rf);
    c.canonicalize();
    if (k % 2) c = -c;
    Monomial m;
    m.lam_half = 2 * (n / 2 - k);
    m.x = n - 2 * k;
    m.t = k;
    p.add_term(m, c);
  }
  return p;
}

/// omega * psi0 with heat-polynomial components p_n, p_{n-1}, ...; requires omega^2 = I(lam d_t + d_x^2).
inline Spinor heat_polynomial_spinor(const DiffOp& omega, int n) {
  Spinor psi0(omega.size());
  for (std::size_t i = 0; i < psi0.size(); ++i)
    psi0[i] = heat_polynomial(std::max(0, n - static_cast<int>(i)));
  return llsym::apply(omega, psi0);
}

inline Spinor heat_polynomial_spinor(int n, std::size_t size) {
  if (size == 2) return heat_polynomial_spinor(FreeModel(gammas_2x2()).omega(), n);
  if (size == 4) return heat_polynomial_spinor(FreeModel(gammas_4x4()).omega(), n);
  throw std::invalid_argument("heat polynomial spinors are available for sizes 2 and 4");
}

/// Registry entry: identifier, designated operator, bracket kind, family flag.
struct CatalogEntry {
  std::string id;
  std::string omega_id;
  std::optional<BracketKind> kind;
  bool family = false;
  std::string description;
  std::function<DiffOp(const ModelParams&)> make;
};

namespace detail {

inline std::vector<CatalogEntry> make_catalog() {
  std::vector<CatalogEntry> c;
  auto add = [&](std::string id, std::string om, std::optional<BracketKind> k, bool fam, std::string desc,
                 std::function<DiffOp(const ModelParams&)> f) {
    c.push_back({std::move(id), std::move(om), k, fam, std::move(desc), std::move(f)});
  };
  const auto comm = BracketKind::commutator;
  const auto anti = BracketKind::anticommutator;
  const std::nullopt_t none = std::nullopt;

  add("sqm.Q1", "", none, false, "SQM supercharge Q1(f)", [](const ModelParams& p) { return sqm_q1(p.f); });
  add("sqm.Q2", "", none, false, "SQM supercharge Q2(f)", [](const ModelParams& p) { return sqm_q2(p.f); });
  add("sqm.H", "", none, false, "SQM Hamiltonian H(f)", [](const ModelParams& p) { return sqm_h(p.f); });
  add("heat2.Omega", "", none, false, "2x2 free heat root", [](const ModelParams&) { return heat_free_2x2(); });
  add("heat4.Omega", "", none, false, "4x4 free heat root", [](const ModelParams&) { return heat_free_4x4(); });
  add("heatpot4.Omega", "", none, false, "4x4 heat root with prepotential f",
      [](const ModelParams& p) { return heat_potential_4x4(p.f); });
  add("sch4.Omega", "", none, false, "4x4 free Schrodinger root", [](const ModelParams&) { return sch_free_4x4(); });
  add("sch8.Omega", "", none, false, "8x8 Schrodinger root with prepotential f",
      [](const ModelParams& p) { return sch_potential_8x8(p.f); });

  for (int rep : {2, 4}) {
    std::string pre = "free" + std::to_string(rep) + ".";
    std::string om = pre + "Omega";
    auto model = std::make_shared<FreeModel>(rep == 2 ? gammas_2x2() : gammas_4x4());
    auto fixed = [&](const std::string& name, std::optional<BracketKind> k, std::string desc, DiffOp (FreeModel::*fn)() const) {
      add(pre + name, om, k, false, std::move(desc), [model, fn](const ModelParams&) { return ((*model).*fn)(); });
    };
    add(om, om, comm, false, "free heat root", [model](const ModelParams&) { return model->omega(); });
    fixed("H", comm, "time translation", &FreeModel::H);
    fixed("D", comm, "dilation", &FreeModel::D);
    fixed("K", comm, "special conformal", &FreeModel::K);
    fixed("P+", comm, "space translation", &FreeModel::P_plus);
    fixed("P-", comm, "Galilei boost", &FreeModel::P_minus);
    fixed("C", comm, "central charge", &FreeModel::C);
    add(pre + "Omega_z", om, comm, true, "z(x,t) Omega",
        [model](const ModelParams& p) { return model->omega_z(p.z); });
    fixed("L1", anti, "Lambda_1", &FreeModel::L1);
    fixed("L2", anti, "Lambda_2", &FreeModel::L2);
    fixed("L3", anti, "Lambda_3", &FreeModel::L3);
    fixed("L4", anti, "Lambda_4", &FreeModel::L4);
    fixed("L5", anti, "Lambda_5 as printed", &FreeModel::L5_printed);
    fixed("L5v", anti, "Lambda_5 corrected reading", &FreeModel::L5_variant);
    fixed("L6", anti, "Lambda_6", &FreeModel::L6);
    add(pre + "Lw", om, anti, true, "w(x,t) Lambda-tilde",
        [model](const ModelParams& p) { return model->lambda_w(p.z); });
    fixed("Q+", anti, "supersymmetric root of -H", &FreeModel::Q_plus);
    fixed("Q-", anti, "supersymmetric root of K", &FreeModel::Q_minus);
    fixed("X", anti, "odd generator X", &FreeModel::X);
    const char* ps[] = {"P-1", "P-1/2", "P0", "P1/2", "P1"};
    const char* os[] = {"Omega-1", "Omega-1/2", "Omega0", "Omega1/2", "Omega1"};
    for (int s = -2; s <= 2; ++s) {
      if (s != 1 && s != -1)
        add(pre + ps[s + 2], om, comm, false, "osp(1|2) generator P_s",
            [model, s](const ModelParams&) { return model->P(s); });
      add(pre + os[s + 2], om, s % 2 ? std::optional<BracketKind>(comm) : std::nullopt, false,
          "osp(1|2) generator Omega_s", [model, s](const ModelParams&) { return model->Omega(s); });
    }
    add(pre + "X+1/2", om, anti, false, "{X, P+}", [model](const ModelParams&) { return model->X_half(1); });
    add(pre + "X-1/2", om, anti, false, "{X, P-}", [model](const ModelParams&) { return model->X_half(-1); });
    fixed("R0", none, "[Q+, Q-]", &FreeModel::R0);
    fixed("R1", none, "{Q+, P+}", &FreeModel::R1);
    fixed("R-1", none, "{Q-, P-}", &FreeModel::Rm1);
    fixed("Y", none, "{Q-, P+}", &FreeModel::Yop);
    fixed("Z", none, "{Q+, P-}", &FreeModel::Zop);
    if (rep == 4) {
      add(pre + "J", om, comm, false, "complex structure", [model](const ModelParams&) { return DiffOp(*model->gammas().J); });
      add(pre + "Omegabar", "", none, false, "free Schrodinger root via lam -> beta J",
          [model](const ModelParams&) { return schrodinger_transform(model->omega(), *model->gammas().J); });
    }
  }

  add("harm.Omega", "harm.Omega", comm, false, "harmonic heat root", [](const ModelParams&) { return harmonic::omega(); });
  for (int k = 1; k <= 24; ++k)
    add("harm.S" + std::to_string(k), "harm.Omega", comm, false, "Sigma_" + std::to_string(k),
        [k](const ModelParams&) { return harmonic::sigma(k); });
  for (int k : {4, 13, 17})
    add("harm.S" + std::to_string(k) + "v", "harm.Omega", comm, false, "Sigma_" + std::to_string(k) + " corrected reading",
        [k](const ModelParams&) { return harmonic::sigma(k, true); });
  for (int k = 1; k <= 4; ++k)
    add("harm.St" + std::to_string(k), "harm.Omega", comm, true, "Sigma-tilde_" + std::to_string(k) + " family",
        [k](const ModelParams& p) { return harmonic::sigma_tilde(k, p.z); });
  add("harm.H", "harm.Omega", comm, false, "Sigma_1 + Sigma_2", [](const ModelParams&) { return harmonic::H(); });
  add("harm.D", "harm.Omega", comm, false, "(Sigma_7 + Sigma_8)/4", [](const ModelParams&) { return harmonic::D(); });
  add("harm.K", "harm.Omega", comm, false, "Sigma_3 + Sigma_4 (corrected reading)",
      [](const ModelParams&) { return harmonic::K(); });
  add("harm.C", "harm.Omega", comm, false, "Sigma_9 + Sigma_10", [](const ModelParams&) { return harmonic::C(); });
  add("harm.Nf", "harm.Omega", comm, false, "Sigma_9 - Sigma_10", [](const ModelParams&) { return harmonic::N_f(); });
  add("harm.P+", "harm.Omega", comm, false, "creation operator", [](const ModelParams&) { return harmonic::P_plus(); });
  add("harm.P-", "harm.Omega", comm, false, "annihilation operator", [](const ModelParams&) { return harmonic::P_minus(); });
  add("harm.Q", "harm.Omega", none, false, "candidate root Q(r1, r2, r3)",
      [](const ModelParams& p) { return harmonic::Q(p.r1, p.r2, p.r3); });

  auto d2 = std::make_shared<Free2dModel>();
  auto fixed2 = [&](const std::string& name, std::optional<BracketKind> k, std::string desc,
                    std::function<DiffOp(const Free2dModel&)> fn) {
    add("d2." + name, "d2.Omega", k, false, std::move(desc), [d2, fn](const ModelParams&) { return fn(*d2); });
  };
  fixed2("Omega", comm, "1+2 free heat root", [](const Free2dModel& m) { return m.omega(); });
  fixed2("H", comm, "time translation", [](const Free2dModel& m) { return m.H(); });
  fixed2("D", comm, "dilation", [](const Free2dModel& m) { return m.D(); });
  fixed2("K", comm, "special conformal", [](const Free2dModel& m) { return m.K(); });
  for (int i : {1, 2}) {
    std::string s = std::to_string(i);
    fixed2("P+" + s, comm, "space translation", [i](const Free2dModel& m) { return m.P_plus(i); });
    fixed2("P-" + s, comm, "Galilei boost", [i](const Free2dModel& m) { return m.P_minus(i); });
  }
  fixed2("J", comm, "rotation", [](const Free2dModel& m) { return m.J(); });
  fixed2("Xt", comm, "X-tilde", [](const Free2dModel& m) { return m.X_tilde(); });
  fixed2("C", comm, "central charge", [](const Free2dModel& m) { return m.C(); });
  fixed2("Q+", anti, "odd generator Q+", [](const Free2dModel& m) { return m.Q_plus(); });
  fixed2("Q-", anti, "odd generator Q-", [](const Free2dModel& m) { return m.Q_minus(); });
  fixed2("X1", anti, "odd generator X1", [](const Free2dModel& m) { return m.X(1); });
  fixed2("X2", anti, "odd generator X2", [](const Free2dModel& m) { return m.X(2); });
  return c;
}

}  // namespace detail

inline const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> c = detail::make_catalog();
  return c;
}

inline const CatalogEntry& catalog_entry(const std::string& id) {
  for (const auto& e : catalog())
    if (e.id == id) return e;
  throw std::out_of_range("unknown catalog identifier: " + id);
}

inline DiffOp build(const std::string& id, const ModelParams& params = {}) {
  const auto& e = catalog_entry(id);
  if (!e.family && !(params.z == CoeffExpr(1)) && e.id.find("harm.Q") == std::string::npos)
    throw std::invalid_argument(id + " has no function slot");
  return e.make(params);
}

}  // namespace llsym

#endif  // LLSYM_MODEL_CATALOG_HPP
