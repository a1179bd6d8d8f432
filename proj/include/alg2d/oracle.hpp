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

// Randomized checks that do not go through the classifier: orbit sampling,
// multi-start isomorphism search, automorphism discovery, and sampling
// tests for the Jordan identity and for zero divisors.
//
// Random numbers come from std::mt19937_64 (whose output sequence is fixed
// by the C++ standard), mapped to [0, 1) as (x >> 11) * 2^-53. No standard
// distribution classes are used, since their output is implementation
// defined.

#ifndef ALG2D_ORACLE_HPP_
#define ALG2D_ORACLE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/NonLinearOptimization>

#include "alg2d/classifier.hpp"
#include "alg2d/msc.hpp"

namespace alg2d {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1).
  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  Mat2 matrix(double lo, double hi) {
    Mat2 m;
    m << uniform(lo, hi), uniform(lo, hi), uniform(lo, hi), uniform(lo, hi);
    return m;
  }

  Vec2 vector(double lo, double hi) {
    const double x = uniform(lo, hi);
    return Vec2(x, uniform(lo, hi));
  }

  Msc msc(double lo, double hi) {
    Mat24 m;
    for (int i = 0; i < 8; ++i) m(i / 4, i % 4) = uniform(lo, hi);
    return Msc(m);
  }

  // Entries uniform in [-2, 2], resampled until cond(g) <= bound.
  Gl2 gl2(double condition_bound) {
    for (;;) {
      const Mat2 m = matrix(-2.0, 2.0);
      if (!Gl2::is_invertible(m)) continue;
      Gl2 g(m);
      if (g.condition() <= condition_bound) return g;
    }
  }

 private:
  std::mt19937_64 engine_;
};

struct OrbitSampler {
  std::uint64_t seed = 42;
  double condition_bound = 100.0;
  std::size_t count = 100;

  std::vector<Gl2> group_elements() const {
    Rng rng(seed);
    std::vector<Gl2> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
      out.push_back(rng.gl2(condition_bound));
    return out;
  }
};

inline std::vector<Msc> orbit_sample(const Msc& a, const OrbitSampler& s) {
  if (a.is_trivial()) throw TrivialAlgebraError();
  std::vector<Msc> out;
  for (const auto& g : s.group_elements()) out.push_back(act(g, a));
  return out;
}

struct IsoWitness {
  Gl2 g;
  double residual = 0.0;  // max |act(g, a) - b| / scale(b)
};

inline double iso_residual(const Gl2& g, const Msc& a, const Msc& b) {
  return max_abs(act(g, a).matrix() - b.matrix()) /
         std::max(b.scale(), 1e-300);
}

struct SearchOptions {
  std::uint64_t seed = 42;
  double start_condition_bound = 100.0;
  // Witnesses must be reasonably conditioned. Otherwise a degenerating g can
  // push act(g, a) arbitrarily close to a boundary orbit it does not lie on.
  double witness_condition_bound = 300.0;
  double accept = 1e-6;
};

namespace detail {

// vec(act(g, a) - b) / scale(b) as a function of the four entries of g.
struct IsoFunctor {
  using Scalar = double;
  enum {
    InputsAtCompileTime = Eigen::Dynamic,
    ValuesAtCompileTime = Eigen::Dynamic
  };
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;

  Mat24 a;
  Mat24 b;
  double inv_scale = 1.0;

  int inputs() const { return 4; }
  int values() const { return 8; }

  static Mat2 unpack(const Eigen::VectorXd& x) {
    Mat2 g;
    g << x(0), x(1), x(2), x(3);
    return g;
  }

  static bool usable(const Mat2& g) {
    return Gl2::is_invertible(g, 1e-14);
  }

  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
    const Mat2 g = unpack(x);
    if (!usable(g)) return -1;
    const Mat24 r = (g * a * kron2(g.inverse()) - b) * inv_scale;
    for (int i = 0; i < 8; ++i) f(i) = r(i / 4, i % 4);
    return 0;
  }

  int df(const Eigen::VectorXd& x, Eigen::MatrixXd& jac) const {
    const Mat2 g = unpack(x);
    if (!usable(g)) return -1;
    const Mat2 h = g.inverse();
    const Mat4 k = kron2(h);
    for (int e = 0; e < 4; ++e) {
      Mat2 unit = Mat2::Zero();
      unit(e / 2, e % 2) = 1.0;
      const Mat2 dh = -h * unit * h;
      Mat4 dk = Eigen::kroneckerProduct(dh, h);
      dk += Eigen::kroneckerProduct(h, dh);
      const Mat24 d = (unit * a * k + g * a * dk) * inv_scale;
      for (int i = 0; i < 8; ++i) jac(i, e) = d(i / 4, i % 4);
    }
    return 0;
  }
};

// One Levenberg-Marquardt descent from `start`.
inline std::optional<IsoWitness> iso_descent(const IsoFunctor& f,
                                             const Msc& a, const Msc& b,
                                             const Mat2& start,
                                             const SearchOptions& opt) {
  // act(c g, a) = act(g, a) / c: start from the best multiple of `start`.
  Mat2 g0 = start;
  const Mat24 img = act(Gl2(start, 0.0), a).matrix();
  const double dot = (img.array() * b.matrix().array()).sum();
  if (std::abs(dot) > 1e-12 * img.norm() * b.matrix().norm()) {
    g0 *= img.squaredNorm() / dot;
  }
  Eigen::VectorXd x(4);
  x << g0(0, 0), g0(0, 1), g0(1, 0), g0(1, 1);
  IsoFunctor functor = f;
  Eigen::LevenbergMarquardt<IsoFunctor> lm(functor);
  lm.parameters.xtol = 1e-12;
  lm.parameters.ftol = 1e-20;
  lm.parameters.maxfev = 400;
  lm.minimize(x);
  const Mat2 g = IsoFunctor::unpack(x);
  if (!x.allFinite() || !Gl2::is_invertible(g)) return std::nullopt;
  const Gl2 w(g);
  if (w.condition() > opt.witness_condition_bound) return std::nullopt;
  const double r = iso_residual(w, a, b);
  if (!(r < opt.accept)) return std::nullopt;
  return IsoWitness{w, r};
}

inline IsoFunctor make_iso_functor(const Msc& a, const Msc& b) {
  if (a.is_trivial() || b.is_trivial()) throw TrivialAlgebraError();
  return IsoFunctor{a.matrix(), b.matrix(), 1.0 / b.scale()};
}

}  // namespace detail

// Multi-start local minimization of |act(g, a) - b|^2. A result is a
// checked isomorphism; no result proves nothing.
inline std::optional<IsoWitness> brute_iso_search(const Msc& a, const Msc& b,
                                                  std::size_t budget,
                                                  const SearchOptions& opt = {}) {
  const auto f = detail::make_iso_functor(a, b);
  Rng rng(opt.seed);
  for (std::size_t i = 0; i < budget; ++i) {
    const Mat2 start = rng.gl2(opt.start_condition_bound).matrix();
    if (auto w = detail::iso_descent(f, a, b, start, opt)) return w;
  }
  return std::nullopt;
}

struct AutomorphismScan {
  std::vector<Gl2> clusters;  // one representative per cluster
  std::size_t converged = 0;  // restarts that produced an automorphism
  // Dimension of the solution set near the converged points: 4 minus the
  // rank of the residual Jacobian there.
  int local_dimension = 0;
  bool continuous() const { return local_dimension >= 1; }
};

// Collects the distinct automorphisms found by `budget` restarts of the
// search for act(g, a) = a. Witnesses closer than `cluster_radius` (max
// entry distance) are merged.
inline AutomorphismScan random_automorphisms(const Msc& a, std::size_t budget,
                                             const SearchOptions& opt = {},
                                             double cluster_radius = 1e-4) {
  const auto f = detail::make_iso_functor(a, a);
  Rng rng(opt.seed);
  AutomorphismScan scan;
  Eigen::MatrixXd jac(8, 4);
  for (std::size_t i = 0; i < budget; ++i) {
    const Mat2 start = rng.gl2(opt.start_condition_bound).matrix();
    const auto w = detail::iso_descent(f, a, a, start, opt);
    if (!w) continue;
    ++scan.converged;

    Eigen::VectorXd x(4);
    x << w->g(0, 0), w->g(0, 1), w->g(1, 0), w->g(1, 1);
    f.df(x, jac);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k)
      if (sv(k) > 1e-6 * sv(0)) ++rank;
    scan.local_dimension = std::max(scan.local_dimension, 4 - rank);

    const bool seen = std::any_of(
        scan.clusters.begin(), scan.clusters.end(), [&](const Gl2& c) {
          return max_abs(c.matrix() - w->g.matrix()) < cluster_radius;
        });
    if (!seen) scan.clusters.push_back(w->g);
  }
  return scan;
}

// max over `samples` random (u, v) of |jordan residual| / (|A|^3 |u|^4 |v|).
inline double max_jordan_residual(const Msc& a, std::size_t samples,
                                  std::uint64_t seed = 42) {
  Rng rng(seed);
  const double s = std::max(a.scale(), 1e-300);
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const Vec2 u = rng.vector(-1, 1), v = rng.vector(-1, 1);
    const Vec2 uu = multiply(a, u, u);
    const Vec2 r = multiply(a, multiply(a, u, v), uu) -
                   multiply(a, u, multiply(a, v, uu));
    const double norm = s * s * s * std::pow(u.norm(), 4) * v.norm();
    if (norm > 0) worst = std::max(worst, r.norm() / norm);
  }
  return worst;
}

struct ZeroDivisorScan {
  double min_norm = std::numeric_limits<double>::infinity();  // / |A|
  Vec2 u = Vec2::Zero(), v = Vec2::Zero();
  bool found(double threshold = 1e-6) const { return min_norm < threshold; }
};

namespace detail {

struct AngleFunctor {
  using Scalar = double;
  enum {
    InputsAtCompileTime = Eigen::Dynamic,
    ValuesAtCompileTime = Eigen::Dynamic
  };
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;

  Msc a;
  int inputs() const { return 2; }
  int values() const { return 2; }

  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
    f = multiply(a, Vec2(std::cos(x(0)), std::sin(x(0))),
                 Vec2(std::cos(x(1)), std::sin(x(1))));
    return 0;
  }
  int df(const Eigen::VectorXd& x, Eigen::MatrixXd& jac) const {
    const Vec2 u(std::cos(x(0)), std::sin(x(0)));
    const Vec2 v(std::cos(x(1)), std::sin(x(1)));
    jac.col(0) = multiply(a, Vec2(-u(1), u(0)), v);
    jac.col(1) = multiply(a, u, Vec2(-v(1), v(0)));
    return 0;
  }
};

}  // namespace detail

// Smallest |u.v| over unit u, v: a steps x steps grid of direction angles in
// [0, pi), followed by local refinement of the best grid points.
inline ZeroDivisorScan zero_divisor_scan(const Msc& a, int steps = 50,
                                         int refine = 8) {
  const double s = a.scale();
  ZeroDivisorScan scan;
  if (s == 0.0) {
    scan.min_norm = 0.0;
    scan.u = Vec2(1, 0);
    scan.v = Vec2(1, 0);
    return scan;
  }
  struct Point {
    double norm, theta, phi;
  };
  std::vector<Point> grid;
  for (int i = 0; i < steps; ++i) {
    for (int j = 0; j < steps; ++j) {
      const double th = M_PI * i / steps, ph = M_PI * j / steps;
      const double n = multiply(a, Vec2(std::cos(th), std::sin(th)),
                                Vec2(std::cos(ph), std::sin(ph)))
                           .norm();
      grid.push_back({n / s, th, ph});
    }
  }
  const auto k = std::min<std::size_t>(std::size_t(refine), grid.size());
  std::partial_sort(grid.begin(), grid.begin() + std::ptrdiff_t(k), grid.end(),
                    [](const Point& x, const Point& y) { return x.norm < y.norm; });

  detail::AngleFunctor f{a};
  for (std::size_t i = 0; i < k; ++i) {
    Eigen::VectorXd x(2);
    x << grid[i].theta, grid[i].phi;
    Eigen::LevenbergMarquardt<detail::AngleFunctor> lm(f);
    lm.parameters.xtol = 1e-14;
    lm.parameters.maxfev = 200;
    lm.minimize(x);
    const Vec2 u(std::cos(x(0)), std::sin(x(0)));
    const Vec2 v(std::cos(x(1)), std::sin(x(1)));
    const double n = multiply(a, u, v).norm() / s;
    const double best = std::min(n, grid[i].norm);
    if (best < scan.min_norm) {
      scan.min_norm = best;
      scan.u = u;
      scan.v = v;
    }
  }
  return scan;
}

struct OrbitTestResult {
  CanonicalForm expected;
  std::size_t samples = 0;
  std::size_t failures = 0;
  std::optional<std::size_t> first_failure;
  bool pass() const { return failures == 0; }
};

// Canonicalizes every orbit sample of `a` with `canon` and compares against
// the canonical form of `a` itself. The canonicalizer is a parameter so
// tests can check that a broken one is caught.
template <typename Canonicalizer>
OrbitTestResult orbit_test(const Msc& a, const OrbitSampler& sampler,
                           Canonicalizer&& canon,
                           double match_tol = Tolerances{}.match) {
  OrbitTestResult res;
  res.expected = canon(a);
  const auto orbit = orbit_sample(a, sampler);
  res.samples = orbit.size();
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    bool ok = false;
    try {
      ok = same_class(canon(orbit[i]), res.expected, match_tol);
    } catch (const std::exception&) {
      ok = false;
    }
    if (!ok) {
      ++res.failures;
      if (!res.first_failure) res.first_failure = i;
    }
  }
  return res;
}

inline OrbitTestResult orbit_test(const Msc& a, const OrbitSampler& sampler,
                                  const Tolerances& tol = {}) {
  return orbit_test(
      a, sampler, [&](const Msc& m) { return canonicalize(m, tol); },
      tol.match);
}

}  // namespace alg2d

#endif  // ALG2D_ORACLE_HPP_
