// Copyright 2026 The alg2d Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Commutativity, the commutative Jordan identity, and the division property,
// plus the commutative and Jordan sublists of the canonical families.

#ifndef ALG2D_PROPERTIES_HPP_
#define ALG2D_PROPERTIES_HPP_

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "alg2d/classifier.hpp"
#include "alg2d/msc.hpp"

namespace alg2d {

class NotCommutativeError : public std::invalid_argument {
 public:
  NotCommutativeError()
      : std::invalid_argument("jordan condition needs a commutative algebra") {}
};

// Columns 2 and 3 agree.
inline bool is_commutative(const Msc& a, const Tolerances& tol = {}) {
  const double s = a.scale();
  return near_zero(max_abs(a.matrix().col(1) - a.matrix().col(2)), s,
                   tol.zero);
}

// (u.v).u^2 - u.(v.u^2)
inline Vec2 jordan_residual(const Msc& a, const Vec2& u, const Vec2& v) {
  const Vec2 uu = multiply(a, u, u);
  const Vec2 lhs = multiply(a, multiply(a, u, v), uu);
  const Vec2 rhs = multiply(a, u, multiply(a, v, uu));
  return lhs - rhs;
}

// Polynomial form of the Jordan identity for a commutative MSC
// [[a1, a2, a2, a4], [b1, b2, b2, b4]]: either
//   b1 = a4 = 2 b2 - a1 = 2 a2 - b4 = 0, or
//   b1 a4 - b2 a2 = b2^2 - b1 b4 + a2 b1 - a1 b2
//                 = a2^2 - a1 a4 + a4 b2 - a2 b4 = 0.
inline bool jordan_condition(const Msc& a, const Tolerances& tol = {}) {
  if (!is_commutative(a, tol)) throw NotCommutativeError();
  const double s = a.scale();
  const double a1 = a.alpha(1), a2 = a.alpha(2), a4 = a.alpha(4);
  const double b1 = a.beta(1), b2 = a.beta(2), b4 = a.beta(4);
  auto lin = [&](double x) { return near_zero(x, s, tol.zero); };
  auto quad = [&](double x) { return near_zero(x, s * s, tol.zero); };
  const bool first = lin(b1) && lin(a4) && lin(2 * b2 - a1) &&
                     lin(2 * a2 - b4);
  const bool second = quad(b1 * a4 - b2 * a2) &&
                      quad(b2 * b2 - b1 * b4 + a2 * b1 - a1 * b2) &&
                      quad(a2 * a2 - a1 * a4 + a4 * b2 - a2 * b4);
  return first || second;
}

// Jordan flag that is false (rather than an error) on noncommutative input.
inline bool is_commutative_jordan(const Msc& a, const Tolerances& tol = {}) {
  return is_commutative(a, tol) && jordan_condition(a, tol);
}

// u.v = 0 for some nonzero u iff det of the 2x2 matrix v -> (u -> u.v)
// vanishes, a binary quadratic form delta_l z^2 + delta_m z w + delta_r w^2
// in v = (z, w).
struct DivisionData {
  double delta_l = 0.0;
  double delta_m = 0.0;
  double delta_r = 0.0;
  double discriminant = 0.0;
};

inline DivisionData division_data(const Msc& a) {
  auto det = [&](int i, int j) {
    return a(0, i) * a(1, j) - a(0, j) * a(1, i);
  };
  DivisionData d;
  d.delta_l = det(0, 2);
  d.delta_m = det(0, 3) + det(1, 2);
  d.delta_r = det(1, 3);
  d.discriminant = d.delta_m * d.delta_m - 4 * d.delta_l * d.delta_r;
  return d;
}

inline double division_margin(const DivisionData& d) {
  return 1e-9 * (1 + d.delta_m * d.delta_m + std::abs(d.delta_l * d.delta_r));
}

inline bool is_division(const DivisionData& d) {
  return d.discriminant < -division_margin(d);
}

inline bool is_division(const Msc& a) { return is_division(division_data(a)); }

// Names of the commutative canonical forms.
//
//   C1 (a1, b1) = A2(a1, b1, 1-a1)     C2 (a1, b1) = A3(a1, b1, 1-a1)
//   C3 (b1)     = A4(b1, 1)            C4 (a1)     = A5(a1, 1-a1)
//   C5          = A6(2/3)              C6 = A12, C7 = A13, C8 = A14, C9 = A15
enum class CommutativeFamily { C1 = 1, C2, C3, C4, C5, C6, C7, C8, C9 };

struct CommutativeLabel {
  CommutativeFamily family;
  std::vector<double> params;
};

inline std::string to_string(CommutativeFamily f) {
  return "A" + std::to_string(static_cast<int>(f)) + ",c";
}

inline std::optional<CommutativeLabel> commutative_label(
    const CanonicalForm& cf, const Tolerances& tol = {}) {
  if (!is_commutative(cf.representative(), tol)) return std::nullopt;
  const auto& p = cf.params;
  switch (cf.label) {
    case Family::A2: return CommutativeLabel{CommutativeFamily::C1, {p[0], p[1]}};
    case Family::A3: return CommutativeLabel{CommutativeFamily::C2, {p[0], p[1]}};
    case Family::A4: return CommutativeLabel{CommutativeFamily::C3, {p[0]}};
    case Family::A5: return CommutativeLabel{CommutativeFamily::C4, {p[0]}};
    case Family::A6: return CommutativeLabel{CommutativeFamily::C5, {}};
    case Family::A12: return CommutativeLabel{CommutativeFamily::C6, {}};
    case Family::A13: return CommutativeLabel{CommutativeFamily::C7, {}};
    case Family::A14: return CommutativeLabel{CommutativeFamily::C8, {}};
    case Family::A15: return CommutativeLabel{CommutativeFamily::C9, {}};
    default: return std::nullopt;
  }
}

// The six commutative Jordan classes, as canonical forms.
struct JordanMember {
  Family family;
  std::vector<double> params;
  std::string name;
};

inline const std::array<JordanMember, 6>& jordan_members() {
  static const std::array<JordanMember, 6> members = {{
      {Family::A2, {0.5, 0.0, 0.5}, "A2(1/2,0,1/2)"},
      {Family::A3, {0.5, 0.0, 0.5}, "A3(1/2,0,1/2)"},
      {Family::A5, {2.0 / 3, 1.0 / 3}, "A5(2/3,1/3)"},
      {Family::A5, {0.5, 0.5}, "A5(1/2,1/2)"},
      {Family::A5, {1.0, 0.0}, "A5(1,0)"},
      {Family::A15, {}, "A15"},
  }};
  return members;
}

inline std::optional<JordanMember> jordan_label(const CanonicalForm& cf,
                                                const Tolerances& tol = {}) {
  for (const auto& m : jordan_members()) {
    if (same_class(cf, CanonicalForm{m.family, m.params, {}}, tol.match)) {
      return m;
    }
  }
  return std::nullopt;
}

struct PropertyFlags {
  bool commutative = false;
  bool jordan = false;
  bool division = false;
  bool evolution = false;
};

}  // namespace alg2d

#endif  // ALG2D_PROPERTIES_HPP_
