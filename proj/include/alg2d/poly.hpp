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

// Real roots of low-degree polynomials.

#ifndef ALG2D_POLY_HPP_
#define ALG2D_POLY_HPP_

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include <unsupported/Eigen/Polynomials>

namespace alg2d {

// Coefficients are in increasing degree: c[0] + c[1] t + c[2] t^2 + ...
inline double poly_eval(std::span<const double> c, double t) {
  double r = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * t + *it;
  return r;
}

namespace detail {

inline double poly_derivative_eval(std::span<const double> c, double t) {
  double r = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) r = r * t + double(k) * c[k];
  return r;
}

// A few Newton steps; keeps the original when a step makes things worse.
inline double polish_root(std::span<const double> c, double t) {
  for (int it = 0; it < 4; ++it) {
    const double f = poly_eval(c, t);
    const double df = detail::poly_derivative_eval(c, t);
    if (df == 0.0) break;
    const double next = t - f / df;
    if (!std::isfinite(next) ||
        std::abs(poly_eval(c, next)) >= std::abs(f)) {
      break;
    }
    t = next;
  }
  return t;
}

}  // namespace detail

// Real roots in ascending order. Leading coefficients below
// `tol * max|c|` are dropped, so a numerically vanishing t^2 term turns a
// quadratic into a linear equation. An identically zero polynomial has no
// isolated roots and yields an empty result; check for it separately.
inline std::vector<double> real_roots(std::span<const double> coeffs,
                                      double tol = 1e-12) {
  double scale = 0.0;
  for (double c : coeffs) scale = std::max(scale, std::abs(c));
  std::size_t n = coeffs.size();
  while (n > 0 && std::abs(coeffs[n - 1]) <= tol * scale) --n;
  std::vector<double> roots;
  if (n <= 1) return roots;
  const auto c = coeffs.first(n);

  if (n == 2) {
    roots.push_back(-c[0] / c[1]);
  } else if (n == 3) {
    // Cancellation-free quadratic formula.
    const double a = c[2], b = c[1], k = c[0];
    double disc = b * b - 4.0 * a * k;
    if (disc < 0.0) {
      if (disc < -tol * (b * b + std::abs(4.0 * a * k))) return roots;
      disc = 0.0;
    }
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    if (q == 0.0) {
      roots.push_back(0.0);
    } else {
      roots.push_back(q / a);
      roots.push_back(k / q);
    }
  } else {
    Eigen::VectorXd poly(n);
    for (std::size_t i = 0; i < n; ++i) poly(Eigen::Index(i)) = c[i];
    Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(poly);
    const auto& all = solver.roots();
    for (const auto& z : all) {
      if (std::abs(z.imag()) <= 1e-7 * std::max(1.0, std::abs(z.real()))) {
        roots.push_back(z.real());
      }
    }
    // Odd degree always has a real root, even if the eigensolver smeared it.
    if (roots.empty() && n % 2 == 0) {
      auto best = std::min_element(all.begin(), all.end(), [](auto x, auto y) {
        return std::abs(x.imag()) < std::abs(y.imag());
      });
      roots.push_back(best->real());
    }
  }
  for (double& r : roots) r = detail::polish_root(c, r);
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace alg2d

#endif  // ALG2D_POLY_HPP_
