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

// Two-dimensional real algebras presented by their matrix of structure
// constants (MSC), and the GL(2,R) change-of-basis action on them.
//
// An algebra with basis e = (e_1, e_2) is stored as the 2x4 matrix
//
//   A = | a1 a2 a3 a4 |      e_i . e_j = A(0, 2i+j) e_1 + A(1, 2i+j) e_2
//       | b1 b2 b3 b4 |      (0-based i, j)
//
// so that u . v = A (u (x) v) with u (x) v = (u1 v1, u1 v2, u2 v1, u2 v2).
// A change of basis g acts by A -> g A (g^-1 (x) g^-1).

#ifndef ALG2D_MSC_HPP_
#define ALG2D_MSC_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace alg2d {

using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;
using Mat24 = Eigen::Matrix<double, 2, 4, Eigen::RowMajor>;
using Vec2 = Eigen::Vector2d;
using Row2 = Eigen::RowVector2d;

// Numerical thresholds. The classification branches on exact zero tests, so
// every zero test goes through `zero`, scaled by the magnitude of the matrix
// the tested quantity comes from.
struct Tolerances {
  double zero = 1e-9;       // relative zero test
  double match = 1e-6;      // absolute agreement of canonical parameters
  double singular = 1e-12;  // |det g| > singular * |g|_F^2
};

class TrivialAlgebraError : public std::invalid_argument {
 public:
  TrivialAlgebraError() : std::invalid_argument("trivial algebra") {}
};

class SingularMatrixError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// |x| <= tol * scale. A zero scale means only an exact zero passes.
inline bool near_zero(double x, double scale, double tol) {
  return std::abs(x) <= tol * scale;
}

inline double max_abs(const auto& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

class Msc {
 public:
  Msc() : m_(Mat24::Zero()) {}

  explicit Msc(const Mat24& m) : m_(m) {
    if (!m_.allFinite()) {
      throw std::invalid_argument("structure constants must be finite");
    }
  }

  // alpha = first row, beta = second row, in the column order
  // (1,1), (1,2), (2,1), (2,2).
  static Msc from_rows(const std::array<double, 4>& alpha,
                       const std::array<double, 4>& beta) {
    Mat24 m;
    m << alpha[0], alpha[1], alpha[2], alpha[3],
         beta[0], beta[1], beta[2], beta[3];
    return Msc(m);
  }

  const Mat24& matrix() const { return m_; }

  // 1-based accessors matching the usual alpha_k / beta_k notation.
  double alpha(int k) const { return m_(0, k - 1); }
  double beta(int k) const { return m_(1, k - 1); }
  double operator()(int row, int col) const { return m_(row, col); }

  double scale() const { return max_abs(m_); }
  bool is_trivial() const { return scale() == 0.0; }

  friend bool operator==(const Msc& a, const Msc& b) { return a.m_ == b.m_; }

 private:
  Mat24 m_;
};

// An invertible 2x2 matrix. Construction rejects matrices whose determinant
// is negligible relative to |g|_F^2.
class Gl2 {
 public:
  Gl2() : m_(Mat2::Identity()) {}

  explicit Gl2(const Mat2& m, double singular_tol = Tolerances{}.singular)
      : m_(m) {
    if (!m_.allFinite()) throw SingularMatrixError("non-finite matrix");
    if (!(std::abs(m_.determinant()) > singular_tol * m_.squaredNorm())) {
      throw SingularMatrixError("singular change of basis");
    }
  }

  static Gl2 identity() { return Gl2(); }

  static bool is_invertible(const Mat2& m,
                            double singular_tol = Tolerances{}.singular) {
    return m.allFinite() &&
           std::abs(m.determinant()) > singular_tol * m.squaredNorm();
  }

  const Mat2& matrix() const { return m_; }
  double operator()(int row, int col) const { return m_(row, col); }
  double det() const { return m_.determinant(); }
  Gl2 inverse() const { return Gl2(m_.inverse(), 0.0); }

  // 2-norm condition number.
  double condition() const {
    Eigen::JacobiSVD<Mat2> svd(m_);
    const auto& s = svd.singularValues();
    return s(0) / s(1);
  }

  friend Gl2 operator*(const Gl2& a, const Gl2& b) {
    return Gl2(a.m_ * b.m_, 0.0);
  }

 private:
  Mat2 m_;
};

struct TracePair {
  Row2 tr1;
  Row2 tr2;
};

// u . v = A (u (x) v)
inline Vec2 multiply(const Msc& a, const Vec2& u, const Vec2& v) {
  Eigen::Vector4d uv(u(0) * v(0), u(0) * v(1), u(1) * v(0), u(1) * v(1));
  return a.matrix() * uv;
}

// g (x) g, laid out with rows/columns in the order (1,1), (1,2), (2,1), (2,2).
inline Mat4 kron2(const Mat2& g) {
  Mat4 k;
  for (int i = 0; i < 2; ++i)
    for (int k1 = 0; k1 < 2; ++k1)
      for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l)
          k(2 * i + k1, 2 * j + l) = g(i, j) * g(k1, l);
  return k;
}

// B = g A (g^-1 (x) g^-1). act(g, act(h, A)) == act(g h, A).
inline Msc act(const Gl2& g, const Msc& a) {
  const Mat2 inv = g.matrix().inverse();
  return Msc(g.matrix() * a.matrix() * kron2(inv));
}

// Tr1(A) = (A^1_11 + A^2_21, A^1_12 + A^2_22)
// Tr2(A) = (A^1_11 + A^2_12, A^1_21 + A^2_22)
// Both transform as Tr(act(g, A)) = Tr(A) g^-1.
inline TracePair traces(const Msc& a) {
  TracePair t;
  t.tr1 << a.alpha(1) + a.beta(3), a.alpha(2) + a.beta(4);
  t.tr2 << a.alpha(1) + a.beta(2), a.alpha(3) + a.beta(4);
  return t;
}

// The opposite multiplication u o v = v . u (columns 2 and 3 swapped).
inline Msc opposite(const Msc& a) {
  Mat24 m = a.matrix();
  m.col(1).swap(m.col(2));
  return Msc(m);
}

// Largest entrywise deviation relative to the larger of the two scales.
inline double relative_distance(const Msc& a, const Msc& b) {
  const double s = std::max({a.scale(), b.scale(), 1e-300});
  return max_abs(a.matrix() - b.matrix()) / s;
}

// Tracks a sequence of basis changes applied to an algebra, keeping the
// composed g with act(witness(), original) == current().
class BasisChange {
 public:
  explicit BasisChange(const Msc& a) : current_(a) {}

  void apply(const Gl2& g) {
    current_ = act(g, current_);
    witness_ = g * witness_;
  }

  // Applies the change of basis whose inverse is `g_inv`, i.e. the new basis
  // vectors are the columns of `g_inv` in the current coordinates.
  void apply_inverse(const Mat2& g_inv) { apply(Gl2(g_inv, 0.0).inverse()); }

  const Msc& current() const { return current_; }
  const Gl2& witness() const { return witness_; }

 private:
  Msc current_;
  Gl2 witness_;
};

inline std::string to_string(const Mat24& m) {
  std::string s = "[";
  for (int r = 0; r < 2; ++r) {
    s += r ? ", [" : "[";
    for (int c = 0; c < 4; ++c) {
      if (c) s += ", ";
      s += std::to_string(m(r, c));
    }
    s += "]";
  }
  return s + "]";
}

}  // namespace alg2d

#endif  // ALG2D_MSC_HPP_
