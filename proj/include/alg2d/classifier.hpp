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

// Canonical forms of nontrivial two-dimensional real algebras.
//
// The space of MSCs splits into five GL(2,R)-stable subsets by the linear
// dependence pattern of the trace vectors Tr1, Tr2. Inside each subset a
// constructive normalization reaches exactly one member of the fifteen
// families A1..A15 below; two algebras are isomorphic iff they reach the
// same family with the same parameters.
//
//   A1 (a1,a2,a4,b1)  | a1  a2  a2+1  a4 |    A2 (a1,b1,b2)  | a1  0   0    1 |
//                     | b1 -a1  1-a1 -a2 |    b1 >= 0        | b1  b2  1-a1 0 |
//   A3 (a1,b1,b2)     | a1  0   0   -1 |      A4 (b1,b2)     | 0   1   1    0 |
//   b1 >= 0           | b1  b2  1-a1 0 |                     | b1  b2  1   -1 |
//   A5 (a1,b2)        | a1  0   0    0 |      A6 (a1)        | a1  0     0    0 |
//                     | 0   b2  1-a1 0 |                     | 1   2a1-1 1-a1 0 |
//   A7 (a1,b1)        | a1  0    0   1 |      A8 (a1,b1)     | a1  0    0  -1 |
//   b1 >= 0           | b1  1-a1 -a1 0 |      b1 >= 0        | b1  1-a1 -a1 0 |
//   A9 (b1)           | 0   1  1   0 |        A10 (a1)       | a1  0    0   0 |
//                     | b1  1  0  -1 |                       | 0   1-a1 -a1 0 |
//   A11 | 1/3 0   0    0 |  A12 | 0 1 1  0 |  A13 | 0  1 1  0 |
//       | 1   2/3 -1/3 0 |       | 1 0 0 -1 |       | -1 0 0 -1 |
//   A14 | 0 1 1  0 |  A15 | 0 0 0 0 |
//       | 0 0 0 -1 |       | 1 0 0 0 |

#ifndef ALG2D_CLASSIFIER_HPP_
#define ALG2D_CLASSIFIER_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "alg2d/msc.hpp"
#include "alg2d/poly.hpp"

namespace alg2d {

enum class TraceSubset {
  kIndependent = 1,     // {Tr1, Tr2} linearly independent
  kDependent = 2,       // dependent, both nonzero
  kSecondZero = 3,      // Tr1 != 0, Tr2 = 0
  kFirstZero = 4,       // Tr1 = 0, Tr2 != 0
  kBothZero = 5,
};

inline int to_int(TraceSubset s) { return static_cast<int>(s); }

enum class Family {
  A1 = 1, A2, A3, A4, A5, A6, A7, A8, A9, A10, A11, A12, A13, A14, A15
};

inline constexpr std::array<Family, 15> kAllFamilies = {
    Family::A1,  Family::A2,  Family::A3,  Family::A4,  Family::A5,
    Family::A6,  Family::A7,  Family::A8,  Family::A9,  Family::A10,
    Family::A11, Family::A12, Family::A13, Family::A14, Family::A15};

inline std::string to_string(Family f) {
  return "A" + std::to_string(static_cast<int>(f));
}

inline std::optional<Family> family_from_string(std::string_view s) {
  for (Family f : kAllFamilies)
    if (to_string(f) == s) return f;
  return std::nullopt;
}

inline std::size_t param_count(Family f) {
  switch (f) {
    case Family::A1: return 4;
    case Family::A2:
    case Family::A3: return 3;
    case Family::A4:
    case Family::A5:
    case Family::A7:
    case Family::A8: return 2;
    case Family::A6:
    case Family::A9:
    case Family::A10: return 1;
    default: return 0;
  }
}

// True for the families whose b1 parameter is normalized to be >= 0.
inline bool has_nonnegative_b1(Family f) {
  return f == Family::A2 || f == Family::A3 || f == Family::A7 ||
         f == Family::A8;
}

// The listed representative of a family. Throws std::invalid_argument on a
// parameter count mismatch.
inline Msc representative(Family f, std::span<const double> p) {
  if (p.size() != param_count(f)) {
    throw std::invalid_argument("wrong parameter count for " + to_string(f));
  }
  switch (f) {
    case Family::A1:
      return Msc::from_rows({p[0], p[1], p[1] + 1, p[2]},
                            {p[3], -p[0], 1 - p[0], -p[1]});
    case Family::A2:
      return Msc::from_rows({p[0], 0, 0, 1}, {p[1], p[2], 1 - p[0], 0});
    case Family::A3:
      return Msc::from_rows({p[0], 0, 0, -1}, {p[1], p[2], 1 - p[0], 0});
    case Family::A4:
      return Msc::from_rows({0, 1, 1, 0}, {p[0], p[1], 1, -1});
    case Family::A5:
      return Msc::from_rows({p[0], 0, 0, 0}, {0, p[1], 1 - p[0], 0});
    case Family::A6:
      return Msc::from_rows({p[0], 0, 0, 0}, {1, 2 * p[0] - 1, 1 - p[0], 0});
    case Family::A7:
      return Msc::from_rows({p[0], 0, 0, 1}, {p[1], 1 - p[0], -p[0], 0});
    case Family::A8:
      return Msc::from_rows({p[0], 0, 0, -1}, {p[1], 1 - p[0], -p[0], 0});
    case Family::A9:
      return Msc::from_rows({0, 1, 1, 0}, {p[0], 1, 0, -1});
    case Family::A10:
      return Msc::from_rows({p[0], 0, 0, 0}, {0, 1 - p[0], -p[0], 0});
    case Family::A11:
      return Msc::from_rows({1.0 / 3, 0, 0, 0}, {1, 2.0 / 3, -1.0 / 3, 0});
    case Family::A12:
      return Msc::from_rows({0, 1, 1, 0}, {1, 0, 0, -1});
    case Family::A13:
      return Msc::from_rows({0, 1, 1, 0}, {-1, 0, 0, -1});
    case Family::A14:
      return Msc::from_rows({0, 1, 1, 0}, {0, 0, 0, -1});
    case Family::A15:
      return Msc::from_rows({0, 0, 0, 0}, {1, 0, 0, 0});
  }
  throw std::invalid_argument("unknown family");
}

struct CanonicalForm {
  Family label = Family::A15;
  std::vector<double> params;
  // act(witness, input) == representative()
  Gl2 witness;

  Msc representative() const { return alg2d::representative(label, params); }
};

// Same family and all parameters within `match_tol` (absolute).
inline bool same_class(const CanonicalForm& a, const CanonicalForm& b,
                       double match_tol = Tolerances{}.match) {
  if (a.label != b.label || a.params.size() != b.params.size()) return false;
  for (std::size_t i = 0; i < a.params.size(); ++i)
    if (std::abs(a.params[i] - b.params[i]) > match_tol) return false;
  return true;
}

// P(A): rows Tr1(A), Tr2(A). P(act(g, A)) = P(A) g^-1.
inline Mat2 p_matrix(const Msc& a) {
  const TracePair t = traces(a);
  Mat2 p;
  p.row(0) = t.tr1;
  p.row(1) = t.tr2;
  return p;
}

// How close an input sits to a subset boundary.
struct BoundaryMargins {
  double det_p = 0.0;
  double tr1_norm = 0.0;
  double tr2_norm = 0.0;
};

inline BoundaryMargins boundary_margins(const Msc& a) {
  const TracePair t = traces(a);
  return {p_matrix(a).determinant(), t.tr1.norm(), t.tr2.norm()};
}

inline TraceSubset subset_of(const Msc& a, const Tolerances& tol = {}) {
  if (a.is_trivial()) throw TrivialAlgebraError();
  const double s = a.scale();
  const TracePair t = traces(a);
  const double n1 = t.tr1.norm(), n2 = t.tr2.norm();
  const bool zero1 = near_zero(n1, s, tol.zero);
  const bool zero2 = near_zero(n2, s, tol.zero);
  if (zero1 && zero2) return TraceSubset::kBothZero;
  if (zero1) return TraceSubset::kFirstZero;
  if (zero2) return TraceSubset::kSecondZero;
  const double det = t.tr1(0) * t.tr2(1) - t.tr1(1) * t.tr2(0);
  return near_zero(det, n1 * n2, tol.zero) ? TraceSubset::kDependent
                                           : TraceSubset::kIndependent;
}

namespace detail {

inline std::vector<double> read_params(const Msc& m, Family f) {
  switch (f) {
    case Family::A1: return {m.alpha(1), m.alpha(2), m.alpha(4), m.beta(1)};
    case Family::A2:
    case Family::A3: return {m.alpha(1), m.beta(1), m.beta(2)};
    case Family::A4: return {m.beta(1), m.beta(2)};
    case Family::A5: return {m.alpha(1), m.beta(2)};
    case Family::A6:
    case Family::A10: return {m.alpha(1)};
    case Family::A7:
    case Family::A8: return {m.alpha(1), m.beta(1)};
    case Family::A9: return {m.beta(1)};
    default: return {};
  }
}

inline CanonicalForm finish(const BasisChange& r, Family f) {
  return {f, read_params(r.current(), f), r.witness()};
}

inline CanonicalForm canonicalize_first(const Msc& a) {
  BasisChange r(a);
  r.apply(Gl2(p_matrix(a), 0.0));
  return finish(r, Family::A1);
}

// Subsets 2 and 3: bring Tr1 to (1,0), then use the residual freedom
// g^-1 = [[1, 0], [x, y]] which fixes Tr1 and Tr2 = (lambda, 0).
inline CanonicalForm canonicalize_dependent(const Msc& a, bool lambda_is_zero,
                                            const Tolerances& tol) {
  BasisChange r(a);
  const Row2 t = traces(a).tr1;
  Mat2 q;
  if (std::abs(t(0)) >= std::abs(t(1))) {
    q << t(0), t(1), 0, 1;
  } else {
    q << t(0), t(1), 1, 0;
  }
  r.apply(Gl2(q, 0.0));  // Tr1 * q^-1 = (1, 0)

  const Msc& m = r.current();
  const double lambda = lambda_is_zero ? 0.0 : traces(m).tr2(0);
  const double s = std::max(1.0, m.scale());
  const double a1 = m.alpha(1), a2 = m.alpha(2), a4 = m.alpha(4);
  const double b1 = m.beta(1);
  auto restricted = [&](double x, double y) {
    Mat2 gi;
    gi << 1, 0, x, y;
    r.apply_inverse(gi);
  };

  if (!near_zero(a4, s, tol.zero)) {
    // a2' = 0, a4' = sign(a4); flip y so that b1' >= 0.
    restricted(-a2 / a4, 1.0 / std::sqrt(std::abs(a4)));
    if (r.current().beta(1) < 0) restricted(0.0, -1.0);
    return finish(r, a4 > 0 ? Family::A2 : Family::A3);
  }
  if (!near_zero(a2, s, tol.zero)) {
    // a1' = 0, a2' = 1.
    restricted(-a1 / (2 * a2), 1.0 / a2);
    return finish(r, Family::A4);
  }
  const double c = 1 + lambda - 3 * a1;
  if (!near_zero(c, std::max(s, 3 * std::abs(a1) + std::abs(lambda) + 1),
                 tol.zero)) {
    restricted(-b1 / c, 1.0);  // b1' = 0
    return finish(r, Family::A5);
  }
  if (!near_zero(b1, s, tol.zero)) {
    restricted(0.0, b1);  // b1' = 1
    return finish(r, Family::A6);
  }
  return finish(r, Family::A5);
}

// Subset 4 is mapped onto subset 3 by the opposite multiplication, which
// commutes with the action, so the witness carries over unchanged.
inline CanonicalForm canonicalize_fourth(const Msc& a, const Tolerances& tol) {
  CanonicalForm c = canonicalize_dependent(opposite(a), true, tol);
  switch (c.label) {
    case Family::A2:
      return {Family::A7, {c.params[0], c.params[1]}, c.witness};
    case Family::A3:
      return {Family::A8, {c.params[0], c.params[1]}, c.witness};
    case Family::A4:
      return {Family::A9, {c.params[0]}, c.witness};
    case Family::A5:
      return {Family::A10, {c.params[0]}, c.witness};
    case Family::A6:
      return {Family::A11, {}, c.witness};
    default:
      throw std::logic_error("unexpected family in fourth subset");
  }
}

// Subset 5: A = [[a1, a2, a2, a4], [b1, -a1, -a1, -a2]].
//
// The label comes from the invariant binary form
// (det(c1,c3), det(c1,c4) + det(c2,c3), det(c2,c4)) of the columns: its
// discriminant is negative on A12, positive on A13 and zero on A14, and the
// form vanishes on A15. Deciding this up front keeps rounding in the
// reduction steps from pushing a boundary point into an open class.
inline Family fifth_label(const Msc& a, const Tolerances& tol) {
  auto det = [&](int i, int j) { return a(0, i) * a(1, j) - a(0, j) * a(1, i); };
  const double l = det(0, 2), m = det(0, 3) + det(1, 2), r = det(1, 3);
  const double s2 = a.scale() * a.scale();
  const double form2 = l * l + m * m + r * r;
  if (form2 <= tol.zero * tol.zero * s2 * s2) return Family::A15;
  // Relative to the size of the form the discriminant stays well away from
  // zero on the open classes even for badly conditioned bases.
  const double disc = (m * m - 4 * l * r) / form2;
  if (disc < -tol.zero) return Family::A12;
  if (disc > tol.zero) return Family::A13;
  return Family::A14;
}

// A15 in any basis is u.v = phi(u) phi(v) w with phi(w) = 0, so A = w q
// for the rank one form q = +-phi phi^T. Reading phi and w off directly
// avoids the triple root the general reduction would have to resolve.
inline CanonicalForm canonicalize_a15(const Msc& a) {
  Eigen::JacobiSVD<Mat24> svd(a.matrix(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Matrix<double, 4, 1> v = svd.matrixV().col(0);
  Mat2 q;
  q << v(0), v(1), v(2), v(3);
  const int k = std::abs(q(0, 0)) >= std::abs(q(1, 1)) ? 0 : 1;
  const double sign = q(k, k) < 0 ? -1.0 : 1.0;
  const Vec2 phi = q.col(k) / std::sqrt(std::abs(q(k, k)));
  const Vec2 w = sign * svd.singularValues()(0) * svd.matrixU().col(0);
  // Rows c phi and c^2 w / |w|^2 work for any c != 0; c = |phi| |w| makes
  // them orthogonal of equal length.
  const double c = phi.norm() * w.norm();
  Mat2 g;
  g.row(0) = c * phi.transpose();
  g.row(1) = c * c * w.transpose() / w.squaredNorm();
  BasisChange r(a);
  r.apply(Gl2(g, 0.0));
  return finish(r, Family::A15);
}

inline CanonicalForm canonicalize_fifth(const Msc& a, const Tolerances& tol) {
  const Family label = fifth_label(a, tol);
  if (label == Family::A15) return canonicalize_a15(a);
  BasisChange r(a);
  const double s = a.scale();

  if (!near_zero(a.alpha(4), s, tol.zero)) {
    // New second basis vector (1, t) with t a root of
    // b1 - 3 a1 t - 3 a2 t^2 - a4 t^3 kills a4'. The first one is the
    // orthogonal complement, keeping the step orthogonal.
    const std::array<double, 4> cubic = {a.beta(1), -3 * a.alpha(1),
                                         -3 * a.alpha(2), -a.alpha(4)};
    const double t = real_roots(cubic).front();
    const double n = std::sqrt(1 + t * t);
    Mat2 gi;
    gi << -t / n, 1 / n, 1 / n, t / n;
    r.apply_inverse(gi);
  }

  const Msc& m = r.current();
  const double s2 = m.scale();
  const double a1 = m.alpha(1), a2 = m.alpha(2), b1 = m.beta(1);
  // On A14 either a2 or a1 survives; take whichever is clearly present.
  if (label != Family::A14 || std::abs(a2) > 1e-4 * s2) {
    Mat2 gi;
    gi << 1, 0, -a1 / (2 * a2), 1 / a2;
    r.apply_inverse(gi);  // a1' = 0, a2' = 1, b1' = (3 a1^2 + 4 a2 b1) / 4
    if (label == Family::A14) return finish(r, Family::A14);
    const double q = r.current().beta(1);
    Mat2 scale_first;
    scale_first << 1 / std::sqrt(std::abs(q)), 0, 0, 1;
    r.apply_inverse(scale_first);
    return finish(r, label);
  }
  Mat2 gi;
  gi << 1 / a1, 0, b1 / (3 * a1 * a1), 1;
  r.apply_inverse(gi);  // [[1,0,0,0],[0,-1,-1,0]]
  Mat2 to_a14;
  to_a14 << 0, 1, -1, 0;
  r.apply(Gl2(to_a14));
  return finish(r, Family::A14);
}

}  // namespace detail

// The unique listed representative isomorphic to `a`, together with a
// change of basis reaching it. Throws TrivialAlgebraError on the zero
// algebra.
inline CanonicalForm canonicalize(const Msc& a, const Tolerances& tol = {}) {
  switch (subset_of(a, tol)) {
    case TraceSubset::kIndependent: return detail::canonicalize_first(a);
    case TraceSubset::kDependent:
      return detail::canonicalize_dependent(a, false, tol);
    case TraceSubset::kSecondZero:
      return detail::canonicalize_dependent(a, true, tol);
    case TraceSubset::kFirstZero: return detail::canonicalize_fourth(a, tol);
    case TraceSubset::kBothZero: return detail::canonicalize_fifth(a, tol);
  }
  throw std::logic_error("unreachable");
}

inline bool isomorphic(const Msc& a, const Msc& b, const Tolerances& tol = {}) {
  return same_class(canonicalize(a, tol), canonicalize(b, tol), tol.match);
}

}  // namespace alg2d

#endif  // ALG2D_CLASSIFIER_HPP_
