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

// Evolution algebras: algebras with a natural basis, e_1 e_2 = e_2 e_1 = 0.
// In such a basis the MSC is [[a, 0, 0, b], [c, 0, 0, d]], and every
// nontrivial one is isomorphic to exactly one of
//
//   E1(b,c) = | 1 0 0 b |, bc != 1, b <= c    E2(b) = | 1 0 0 b |
//             | c 0 0 1 |                             | 1 0 0 0 |
//   E3 = | 0 0 0 1 |   E4 = | 1 0 0 1 |   E5 = | 1 0 0 -1 |
//        | 1 0 0 0 |        | 0 0 0 0 |        | 0 0 0  0 |
//   E6 = | 1  0 0 -1 |   E7 = | 0 0 0 1 |
//        | -1 0 0  1 |        | 0 0 0 0 |
//
// Also here: automorphism groups of the E-classes (table driven, verified on
// emission) and derivation algebras of arbitrary MSCs.

#ifndef ALG2D_EVOLUTION_HPP_
#define ALG2D_EVOLUTION_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

#include "alg2d/classifier.hpp"
#include "alg2d/msc.hpp"
#include "alg2d/poly.hpp"

namespace alg2d {

struct EvolutionMsc {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;

  Msc to_msc() const { return Msc::from_rows({a, 0, 0, b}, {c, 0, 0, d}); }

  // The corner entries; the middle columns are ignored.
  static EvolutionMsc corners(const Msc& m) {
    return {m(0, 0), m(0, 3), m(1, 0), m(1, 3)};
  }
};

enum class EvolutionFamily { E1 = 1, E2, E3, E4, E5, E6, E7 };

inline constexpr std::array<EvolutionFamily, 7> kAllEvolutionFamilies = {
    EvolutionFamily::E1, EvolutionFamily::E2, EvolutionFamily::E3,
    EvolutionFamily::E4, EvolutionFamily::E5, EvolutionFamily::E6,
    EvolutionFamily::E7};

inline std::string to_string(EvolutionFamily f) {
  return "E" + std::to_string(static_cast<int>(f));
}

inline std::optional<EvolutionFamily> evolution_family_from_string(
    std::string_view s) {
  for (auto f : kAllEvolutionFamilies)
    if (to_string(f) == s) return f;
  return std::nullopt;
}

inline std::size_t param_count(EvolutionFamily f) {
  return f == EvolutionFamily::E1 ? 2 : f == EvolutionFamily::E2 ? 1 : 0;
}

inline Msc representative(EvolutionFamily f, std::span<const double> p) {
  if (p.size() != param_count(f)) {
    throw std::invalid_argument("wrong parameter count for " + to_string(f));
  }
  switch (f) {
    case EvolutionFamily::E1: return EvolutionMsc{1, p[0], p[1], 1}.to_msc();
    case EvolutionFamily::E2: return EvolutionMsc{1, p[0], 1, 0}.to_msc();
    case EvolutionFamily::E3: return EvolutionMsc{0, 1, 1, 0}.to_msc();
    case EvolutionFamily::E4: return EvolutionMsc{1, 1, 0, 0}.to_msc();
    case EvolutionFamily::E5: return EvolutionMsc{1, -1, 0, 0}.to_msc();
    case EvolutionFamily::E6: return EvolutionMsc{1, -1, -1, 1}.to_msc();
    case EvolutionFamily::E7: return EvolutionMsc{0, 1, 0, 0}.to_msc();
  }
  throw std::invalid_argument("unknown evolution family");
}

struct EvolutionClass {
  EvolutionFamily label = EvolutionFamily::E7;
  std::vector<double> params;
  // act(witness, input) == representative()
  Gl2 witness;

  Msc representative() const { return alg2d::representative(label, params); }
};

inline bool same_class(const EvolutionClass& x, const EvolutionClass& y,
                       double match_tol = Tolerances{}.match) {
  if (x.label != y.label || x.params.size() != y.params.size()) return false;
  for (std::size_t i = 0; i < x.params.size(); ++i)
    if (std::abs(x.params[i] - y.params[i]) > match_tol) return false;
  return true;
}

namespace detail {

inline Mat2 swap_matrix() {
  Mat2 s;
  s << 0, 1, 1, 0;
  return s;
}

inline EvolutionFamily reduce_evolution(BasisChange& r, const Tolerances& tol,
                                        int depth = 0) {
  if (depth > 4) throw std::logic_error("evolution reduction did not settle");
  const auto [a, b, c, d] = EvolutionMsc::corners(r.current());
  const double s = std::max({std::abs(a), std::abs(b), std::abs(c),
                             std::abs(d)});
  if (s == 0.0) throw TrivialAlgebraError();
  auto zero = [&](double x) { return near_zero(x, s, tol.zero); };
  auto diag = [&](double x, double y) {
    Mat2 gi;
    gi << x, 0, 0, y;
    r.apply_inverse(gi);
  };

  if (!near_zero(a * d - b * c, s * s, tol.zero)) {
    if (!zero(a) && !zero(d)) {
      diag(1 / a, 1 / d);
      if (r.current()(0, 3) > r.current()(1, 0)) r.apply(Gl2(swap_matrix()));
      return EvolutionFamily::E1;
    }
    if (!zero(a)) {
      diag(1 / a, c / (a * a));
      return EvolutionFamily::E2;
    }
    if (!zero(d)) {
      r.apply(Gl2(swap_matrix()));
      return reduce_evolution(r, tol, depth + 1);
    }
    const double x = std::cbrt(1 / (b * c * c));
    diag(x, c * x * x);
    return EvolutionFamily::E3;
  }

  const bool first_row_zero = zero(std::hypot(a, b));
  const bool second_row_zero = zero(std::hypot(c, d));
  if (second_row_zero) {
    if (zero(a)) {
      diag(b, 1);
      return EvolutionFamily::E7;
    }
    if (zero(b)) {
      diag(1 / a, 1);  // [[1,0,0,0],[0,0,0,0]]
      Mat2 g;
      g << 1, 0, 1, 1;
      r.apply(Gl2(g));
      return EvolutionFamily::E2;
    }
    diag(1 / a, 1 / std::sqrt(std::abs(a * b)));
    return a * b > 0 ? EvolutionFamily::E4 : EvolutionFamily::E5;
  }
  if (first_row_zero) {
    r.apply(Gl2(swap_matrix()));
    return reduce_evolution(r, tol, depth + 1);
  }

  // (c, d) = lambda (a, b), lambda != 0.
  const double lambda = (a * c + b * d) / (a * a + b * b);
  const double k = a + b * lambda * lambda;
  if (!near_zero(k, std::max(s, std::abs(b) * lambda * lambda), tol.zero)) {
    // Move to a basis where the second row vanishes.
    Mat2 gi;
    if (zero(b)) {
      gi << 1, 0, lambda, 1;
    } else {
      gi << 1, 1, lambda, -a / (b * lambda);
    }
    r.apply_inverse(gi);
    return reduce_evolution(r, tol, depth + 1);
  }
  diag(1 / a, 1 / (b * lambda));
  return EvolutionFamily::E6;
}

inline std::vector<double> read_evolution_params(const Msc& m,
                                                 EvolutionFamily f) {
  if (f == EvolutionFamily::E1) return {m(0, 3), m(1, 0)};
  if (f == EvolutionFamily::E2) return {m(0, 3)};
  return {};
}

// Rows 0-1: v -> u.v, rows 2-3: v -> v.u.
inline Eigen::Matrix<double, 4, 2> annihilator_system(const Msc& a,
                                                      const Vec2& u) {
  const Mat24& m = a.matrix();
  Eigen::Matrix<double, 4, 2> s;
  s.topRows<2>() = u(0) * m.leftCols<2>() + u(1) * m.rightCols<2>();
  s.block<2, 1>(2, 0) = u(0) * m.col(0) + u(1) * m.col(1);
  s.block<2, 1>(2, 1) = u(0) * m.col(2) + u(1) * m.col(3);
  return s;
}

struct NaturalPair {
  Vec2 u, v;
  double independence = 0.0;  // |sin angle(u, v)|
};

inline std::optional<NaturalPair> natural_pair(const Msc& a, Vec2 u,
                                               double rank_tol) {
  u.normalize();
  const Eigen::Matrix<double, 4, 2> sys = annihilator_system(a, u);
  Eigen::JacobiSVD<Eigen::Matrix<double, 4, 2>> svd(sys, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double s = std::max(a.scale(), 1e-300);
  if (sv(1) > rank_tol * s) return std::nullopt;
  Vec2 v = sv(0) <= rank_tol * s ? Vec2(-u(1), u(0))
                                 : Vec2(svd.matrixV().col(1));
  v.normalize();
  const double indep = std::abs(u(0) * v(1) - u(1) * v(0));
  if (indep < 1e-6) return std::nullopt;
  return NaturalPair{u, v, indep};
}

}  // namespace detail

// A change of basis g such that act(g, a) has zero middle columns, if one
// exists.
//
// Natural basis vectors u are those whose annihilator system (u.v = v.u = 0,
// four equations in v) has rank <= 1 with a null vector independent of u.
// For u = (1, t) all 2x2 minors of that system are at most quadratic in t,
// so the candidates are their real roots; u = (0, 1) is checked apart.
inline std::optional<Gl2> find_natural_basis(const Msc& a,
                                             const Tolerances& tol = {}) {
  if (a.is_trivial()) throw TrivialAlgebraError();
  const double s = a.scale();
  if (near_zero(max_abs(a.matrix().middleCols<2>(1)), s, tol.zero)) {
    return Gl2::identity();
  }
  // The nilpotent rank one algebra makes every minor a perfect square;
  // its natural basis is read off directly instead.
  if (subset_of(a, tol) == TraceSubset::kBothZero &&
      detail::fifth_label(a, tol) == Family::A15) {
    return detail::canonicalize_a15(a).witness;
  }
  const auto s0 = detail::annihilator_system(a, Vec2(1, 0));
  const auto s1 = detail::annihilator_system(a, Vec2(0, 1));
  auto cross = [](const Row2& x, const Row2& y) {
    return x(0) * y(1) - x(1) * y(0);
  };

  std::vector<double> candidates;
  bool all_vanish = true;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const std::array<double, 3> minor = {
          cross(s0.row(i), s0.row(j)),
          cross(s0.row(i), s1.row(j)) + cross(s1.row(i), s0.row(j)),
          cross(s1.row(i), s1.row(j))};
      const double m = std::max({std::abs(minor[0]), std::abs(minor[1]),
                                 std::abs(minor[2])});
      if (near_zero(m, s * s, tol.zero)) continue;
      all_vanish = false;
      for (double t : real_roots(minor, tol.zero)) candidates.push_back(t);
    }
  }
  if (all_vanish) candidates = {0.0, 1.0, -1.0, 0.5, -0.5, 2.0, -2.0};

  // The roots come from noisy coefficients; accept rank-1 systems at a
  // looser level and let the final check on act(g, a) decide.
  constexpr double kRankTol = 1e-6;
  std::optional<detail::NaturalPair> best;
  auto consider = [&](const Vec2& u) {
    auto p = detail::natural_pair(a, u, kRankTol);
    if (p && (!best || p->independence > best->independence + 1e-12)) best = p;
  };
  for (double t : candidates) consider(Vec2(1, t));
  consider(Vec2(0, 1));
  if (!best) return std::nullopt;

  Mat2 gi;
  gi.col(0) = best->u;
  gi.col(1) = best->v;
  const Gl2 g = Gl2(gi, 0.0).inverse();
  const Msc e = act(g, a);
  const double middle = max_abs(e.matrix().middleCols<2>(1));
  if (!near_zero(middle, e.scale(), 1e3 * tol.zero)) return std::nullopt;
  return g;
}

// Canonical evolution class of an MSC already in natural form.
inline EvolutionClass classify_evolution(const EvolutionMsc& e,
                                         const Tolerances& tol = {}) {
  BasisChange r(e.to_msc());
  const EvolutionFamily f = detail::reduce_evolution(r, tol);
  return {f, detail::read_evolution_params(r.current(), f), r.witness()};
}

// Natural-basis detection followed by classification; the witness maps the
// input itself to the representative.
inline std::optional<EvolutionClass> evolution_class(const Msc& a,
                                                     const Tolerances& tol = {}) {
  const auto g = find_natural_basis(a, tol);
  if (!g) return std::nullopt;
  EvolutionClass cls =
      classify_evolution(EvolutionMsc::corners(act(*g, a)), tol);
  cls.witness = cls.witness * *g;
  return cls;
}

// g E = E (g (x) g), equivalently act(g, E) == E.
inline bool is_automorphism(const Gl2& g, const Msc& a, double tol = 1e-10) {
  const Mat2& m = g.matrix();
  const double residual = max_abs(m * a.matrix() - a.matrix() * kron2(m));
  const double gs = std::max(1.0, max_abs(m));
  return residual <= tol * std::max(a.scale(), 1e-300) * gs * gs;
}

// A set of 2x2 matrices described by a base point, generators with
// monomial coefficients in named parameters, and exclusions.
//
//   finite-set:      the generators themselves are the elements
//   linear-subspace: sum_k p_k G_k
//   group-family:    base + sum_k (prod_j p_j^exponents[k][j]) G_k
enum class FamilyKind { kGroupFamily, kLinearSubspace, kFiniteSet };

inline std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::kGroupFamily: return "group-family";
    case FamilyKind::kLinearSubspace: return "linear-subspace";
    case FamilyKind::kFiniteSet: return "finite-set";
  }
  return "";
}

struct Exclusion {
  std::size_t param = 0;
  double value = 0.0;  // parameter must differ from this
};

struct LinearFamily {
  FamilyKind kind = FamilyKind::kFiniteSet;
  std::vector<std::string> parameters;
  Mat2 base = Mat2::Zero();
  std::vector<Mat2> generators;
  std::vector<std::vector<int>> exponents;
  std::vector<Exclusion> constraints;

  // Number of free parameters (elements for a finite set).
  std::size_t dimension() const {
    return kind == FamilyKind::kFiniteSet ? 0 : parameters.size();
  }

  bool admissible(std::span<const double> values) const {
    for (const auto& c : constraints)
      if (values[c.param] == c.value) return false;
    return true;
  }

  Mat2 element(std::span<const double> values) const {
    if (kind == FamilyKind::kFiniteSet) {
      throw std::logic_error("finite sets are enumerated, not parametrized");
    }
    if (values.size() != parameters.size()) {
      throw std::invalid_argument("wrong number of family parameters");
    }
    Mat2 m = base;
    for (std::size_t k = 0; k < generators.size(); ++k) {
      double coeff = 1.0;
      for (std::size_t j = 0; j < values.size(); ++j)
        coeff *= std::pow(values[j], exponents[k][j]);
      m += coeff * generators[k];
    }
    return m;
  }

  std::vector<std::string> constraint_text() const {
    std::vector<std::string> out;
    for (const auto& c : constraints) {
      std::ostringstream os;
      os.precision(17);
      os << parameters[c.param] << " != " << c.value;
      out.push_back(os.str());
    }
    return out;
  }
};

namespace detail {

inline Mat2 mat2(double a, double b, double c, double d) {
  Mat2 m;
  m << a, b, c, d;
  return m;
}

inline LinearFamily finite_family(std::vector<Mat2> elements) {
  LinearFamily f;
  f.kind = FamilyKind::kFiniteSet;
  f.generators = std::move(elements);
  return f;
}

// Deterministic admissible parameter points used to verify a family.
inline std::vector<std::vector<double>> probe_points(const LinearFamily& f,
                                                     std::size_t count) {
  static constexpr std::array<double, 8> kValues = {-1.75, -0.6, 0.35, 0.9,
                                                    1.3,   2.2,  -2.9, 3.7};
  std::vector<std::vector<double>> pts;
  for (std::size_t i = 0; pts.size() < count && i < 64; ++i) {
    std::vector<double> p(f.parameters.size());
    for (std::size_t j = 0; j < p.size(); ++j)
      p[j] = kValues[(i + 3 * j) % kValues.size()] * (1 + 0.1 * double(i / 8));
    if (f.admissible(p)) pts.push_back(p);
  }
  return pts;
}

}  // namespace detail

// Automorphism group of a canonical evolution class. Every element (or, for
// continuous families, a deterministic set of parameter samples) is checked
// against g E = E (g (x) g) before returning; a mismatch throws
// std::logic_error.
inline LinearFamily automorphism_family(const EvolutionClass& cls,
                                        const Tolerances& tol = {}) {
  using detail::mat2;
  const Mat2 id = Mat2::Identity();
  LinearFamily f;
  switch (cls.label) {
    case EvolutionFamily::E1:
      f = std::abs(cls.params[0] - cls.params[1]) <= tol.match
              ? detail::finite_family({id, detail::swap_matrix()})
              : detail::finite_family({id});
      break;
    case EvolutionFamily::E2:
      if (std::abs(cls.params[0]) > tol.match) {
        f = detail::finite_family({id});
      } else {
        f.kind = FamilyKind::kGroupFamily;
        f.parameters = {"t"};
        f.base = id;
        f.generators = {mat2(0, 0, 1, -1)};
        f.exponents = {{1}};
        f.constraints = {{0, 1.0}};
      }
      break;
    case EvolutionFamily::E3:
      f = detail::finite_family({id, detail::swap_matrix()});
      break;
    case EvolutionFamily::E4:
    case EvolutionFamily::E5:
      f = detail::finite_family({id, mat2(1, 0, 0, -1)});
      break;
    case EvolutionFamily::E6:
      f.kind = FamilyKind::kGroupFamily;
      f.parameters = {"t"};
      f.base = detail::swap_matrix();
      f.generators = {mat2(1, -1, -1, 1)};
      f.exponents = {{1}};
      f.constraints = {{0, 0.5}};
      break;
    case EvolutionFamily::E7:
      f.kind = FamilyKind::kGroupFamily;
      f.parameters = {"t", "s"};
      f.generators = {mat2(1, 0, 0, 0), mat2(0, 1, 0, 0), mat2(0, 0, 0, 1)};
      f.exponents = {{2, 0}, {0, 1}, {1, 0}};
      f.constraints = {{0, 0.0}};
      break;
  }

  const Msc e = cls.representative();
  auto verify = [&](const Mat2& g) {
    if (!is_automorphism(Gl2(g), e)) {
      throw std::logic_error("automorphism table entry fails for " +
                             to_string(cls.label));
    }
  };
  if (f.kind == FamilyKind::kFiniteSet) {
    for (const auto& g : f.generators) verify(g);
  } else {
    for (const auto& p : detail::probe_points(f, 6)) verify(f.element(p));
  }
  return f;
}

namespace detail {

// Reduced row echelon form of the rows of `m`, entries below 1e-12 cleared.
inline Eigen::MatrixXd rref(Eigen::MatrixXd m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Eigen::Index lead = 0;
  for (Eigen::Index c = 0; c < cols && lead < rows; ++c) {
    Eigen::Index piv;
    const double best = m.col(c).tail(rows - lead).cwiseAbs().maxCoeff(&piv);
    if (best < 1e-10) continue;
    piv += lead;
    m.row(piv).swap(m.row(lead));
    m.row(lead) /= m(lead, c);
    for (Eigen::Index r = 0; r < rows; ++r)
      if (r != lead) m.row(r) -= m(r, c) * m.row(lead);
    ++lead;
  }
  return m.unaryExpr([](double x) { return std::abs(x) < 1e-12 ? 0.0 : x; });
}

}  // namespace detail

// The 8x4 matrix of D -> A (D (x) I + I (x) D) - D A over the entries of D
// in row-major order.
inline Eigen::Matrix<double, 8, 4> derivation_system(const Msc& a) {
  Eigen::Matrix<double, 8, 4> sys;
  const Mat2 id = Mat2::Identity();
  for (int k = 0; k < 4; ++k) {
    Mat2 d = Mat2::Zero();
    d(k / 2, k % 2) = 1.0;
    Mat4 leibniz = Eigen::kroneckerProduct(d, id);
    leibniz += Eigen::kroneckerProduct(id, d);
    const Mat24 r = a.matrix() * leibniz - d * a.matrix();
    for (int i = 0; i < 8; ++i) sys(i, k) = r(i / 4, i % 4);
  }
  return sys;
}

// Basis (in reduced echelon form) of the derivation algebra of `a`.
inline LinearFamily derivations(const Msc& a, const Tolerances& tol = {}) {
  const auto sys = derivation_system(a);
  Eigen::JacobiSVD<Eigen::Matrix<double, 8, 4>> svd(sys, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = tol.zero * std::max(sv(0), a.scale());
  int rank = 0;
  while (rank < 4 && sv(rank) > cutoff) ++rank;

  LinearFamily f;
  f.kind = FamilyKind::kLinearSubspace;
  if (rank == 4) return f;
  const Eigen::MatrixXd null = svd.matrixV().rightCols(4 - rank).transpose();
  const Eigen::MatrixXd basis = detail::rref(null);
  for (Eigen::Index r = 0; r < basis.rows(); ++r) {
    Mat2 d;
    d << basis(r, 0), basis(r, 1), basis(r, 2), basis(r, 3);
    f.generators.push_back(d);
    f.parameters.push_back("t" + std::to_string(r + 1));
    std::vector<int> e(std::size_t(basis.rows()), 0);
    e[std::size_t(r)] = 1;
    f.exponents.push_back(e);
  }
  return f;
}

}  // namespace alg2d

#endif  // ALG2D_EVOLUTION_HPP_
