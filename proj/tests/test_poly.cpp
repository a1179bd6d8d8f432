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

#include <gtest/gtest.h>

#include <vector>

#include "alg2d/oracle.hpp"
#include "alg2d/poly.hpp"

namespace alg2d {
namespace {

TEST(RealRoots, Linear) {
  const std::vector<double> c = {-3, 2};
  const auto r = real_roots(c);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_DOUBLE_EQ(r[0], 1.5);
}

TEST(RealRoots, QuadraticOrderedAscending) {
  const std::vector<double> c = {6, -5, 1};  // (t-2)(t-3)
  const auto r = real_roots(c);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(r[0], 2, 1e-14);
  EXPECT_NEAR(r[1], 3, 1e-14);
}

TEST(RealRoots, QuadraticWithoutRealRoots) {
  const std::vector<double> c = {1, 0, 1};
  EXPECT_TRUE(real_roots(c).empty());
}

TEST(RealRoots, NegligibleLeadingTermDropsDegree) {
  const std::vector<double> c = {-1, 1, 1e-20};
  const auto r = real_roots(c);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_NEAR(r[0], 1, 1e-14);
}

TEST(RealRoots, ZeroPolynomialHasNoIsolatedRoots) {
  const std::vector<double> c = {0, 0, 0};
  EXPECT_TRUE(real_roots(c).empty());
}

TEST(RealRoots, CubicWithOneRealRoot) {
  const std::vector<double> c = {-2, 0, 0, 1};  // t^3 = 2
  const auto r = real_roots(c);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_NEAR(r[0], std::cbrt(2.0), 1e-13);
}

TEST(RealRoots, CubicRootsSatisfyThePolynomial) {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> c = {rng.uniform(-2, 2), rng.uniform(-2, 2),
                             rng.uniform(-2, 2), rng.uniform(-2, 2)};
    const auto r = real_roots(c);
    ASSERT_FALSE(r.empty());  // odd degree
    for (double t : r) {
      const double scale = 1 + std::abs(c[1] * t) + std::abs(c[2] * t * t) +
                           std::abs(c[3] * t * t * t) + std::abs(c[0]);
      EXPECT_LT(std::abs(poly_eval(c, t)), 1e-9 * scale);
    }
  }
}

}  // namespace
}  // namespace alg2d
