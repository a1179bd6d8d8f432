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

#include <cmath>
#include <vector>

#include "alg2d/classifier.hpp"
#include "alg2d/oracle.hpp"
#include "test_util.hpp"

namespace alg2d {
namespace {

using testing::mat2;

Msc rep(Family f, std::vector<double> p) { return representative(f, p); }

void expect_params_near(const std::vector<double>& got,
                        const std::vector<double>& want, double tol) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], tol);
}

TEST(SubsetOf, IndependentTraces) {
  EXPECT_EQ(subset_of(rep(Family::A1, {0, 0, 0, 0})), TraceSubset::kIndependent);
}

TEST(SubsetOf, DependentAndSecondZero) {
  EXPECT_EQ(subset_of(rep(Family::A2, {0.3, 1, 0.2})), TraceSubset::kDependent);
  EXPECT_EQ(subset_of(rep(Family::A2, {0.3, 1, -0.3})), TraceSubset::kSecondZero);
}

TEST(SubsetOf, FirstZeroAndBothZero) {
  EXPECT_EQ(subset_of(rep(Family::A9, {0.5})), TraceSubset::kFirstZero);
  EXPECT_EQ(subset_of(testing::a15()), TraceSubset::kBothZero);
}

TEST(SubsetOf, RejectsTrivialAlgebra) {
  EXPECT_THROW(subset_of(Msc()), TrivialAlgebraError);
  EXPECT_THROW(canonicalize(Msc()), TrivialAlgebraError);
}

TEST(SubsetOf, InvariantUnderTheAction) {
  Rng rng(21);
  for (Family f : kAllFamilies) {
    for (int k = 0; k < 5; ++k) {
      const Msc c = representative(f, testing::random_params(f, rng));
      const TraceSubset s = subset_of(c);
      for (int i = 0; i < 20; ++i) EXPECT_EQ(subset_of(act(rng.gl2(100), c)), s);
    }
  }
}

TEST(Representative, ChecksParameterCount) {
  EXPECT_THROW(rep(Family::A4, {1}), std::invalid_argument);
  EXPECT_THROW(rep(Family::A12, {1}), std::invalid_argument);
}

TEST(FamilyNames, RoundTrip) {
  for (Family f : kAllFamilies) EXPECT_EQ(family_from_string(to_string(f)), f);
  EXPECT_FALSE(family_from_string("A16").has_value());
}

TEST(Canonicalize, RepresentativeIsAFixedPoint) {
  const CanonicalForm c = canonicalize(testing::a12());
  EXPECT_EQ(c.label, Family::A12);
  EXPECT_TRUE(c.params.empty());
  EXPECT_LT(max_abs(c.witness.matrix() - Mat2::Identity()), 1e-12);
}

TEST(Canonicalize, EveryListedRepresentativeIsRecognized) {
  Rng rng(22);
  for (Family f : kAllFamilies) {
    for (int k = 0; k < 10; ++k) {
      const auto p = testing::random_params(f, rng);
      const CanonicalForm c = canonicalize(representative(f, p));
      EXPECT_EQ(c.label, f) << to_string(f);
      expect_params_near(c.params, p, 1e-9);
    }
  }
}

TEST(Canonicalize, JordanAlgebraJ1) {
  const CanonicalForm c = canonicalize(testing::j1());
  EXPECT_EQ(c.label, Family::A2);
  expect_params_near(c.params, {0.5, 0, 0.5}, 1e-9);
}

TEST(Canonicalize, OrbitOfA4) {
  const Msc a = rep(Family::A4, {3, -2});
  Rng rng(42);
  for (int i = 0; i < 100; ++i) {
    const CanonicalForm c = canonicalize(act(rng.gl2(100), a));
    EXPECT_EQ(c.label, Family::A4);
    expect_params_near(c.params, {3, -2}, 1e-6);
  }
}

TEST(Canonicalize, OrbitInvarianceAllFamilies) {
  Rng rng(23);
  for (Family f : kAllFamilies) {
    for (int k = 0; k < 4; ++k) {
      const auto p = testing::random_params(f, rng);
      const Msc c = representative(f, p);
      for (int i = 0; i < 25; ++i) {
        const CanonicalForm got = canonicalize(act(rng.gl2(100), c));
        EXPECT_EQ(got.label, f) << to_string(f);
        expect_params_near(got.params, p, 1e-6);
      }
    }
  }
}

TEST(Canonicalize, WitnessReachesTheRepresentative) {
  Rng rng(24);
  for (int i = 0; i < 500; ++i) {
    const Msc a = rng.msc(-2, 2);
    const CanonicalForm c = canonicalize(a);
    EXPECT_LT(relative_distance(act(c.witness, a), c.representative()), 1e-8);
  }
  for (Family f : kAllFamilies) {
    const Msc a = act(rng.gl2(100), representative(f, testing::random_params(f, rng)));
    const CanonicalForm c = canonicalize(a);
    EXPECT_LT(relative_distance(act(c.witness, a), c.representative()), 1e-8)
        << to_string(f);
  }
}

TEST(Canonicalize, NormalizesB1Sign) {
  Rng rng(25);
  for (Family f : {Family::A2, Family::A3, Family::A7, Family::A8}) {
    auto p = testing::random_params(f, rng);
    p[1] = -std::abs(p[1]) - 0.1;  // the "-b1" representative
    const CanonicalForm c = canonicalize(representative(f, p));
    EXPECT_EQ(c.label, f);
    EXPECT_GE(c.params[1], 0.0);
    EXPECT_NEAR(c.params[1], -p[1], 1e-9);
  }
}

TEST(Canonicalize, SubsetFiveSignSelectsLabel) {
  // a4 = 0, a2 != 0: the label follows the sign of 3 a1^2 + 4 a2 b1.
  auto fifth = [](double a1, double a2, double b1) {
    return Msc::from_rows({a1, a2, a2, 0}, {b1, -a1, -a1, -a2});
  };
  EXPECT_EQ(canonicalize(fifth(1, 1, 1)).label, Family::A12);
  EXPECT_EQ(canonicalize(fifth(1, 1, -2)).label, Family::A13);
  EXPECT_EQ(canonicalize(fifth(2, 1, -3)).label, Family::A14);
  EXPECT_EQ(canonicalize(fifth(1, 0, 5)).label, Family::A14);
  EXPECT_EQ(canonicalize(fifth(0, 0, 5)).label, Family::A15);
}

TEST(Canonicalize, AlphaOneOnlyFifthSubsetFormMatchesA14) {
  const Msc a = Msc::from_rows({1, 0, 0, 0}, {0, -1, -1, 0});
  const Gl2 g(mat2(0, 1, -1, 0));
  EXPECT_LT(relative_distance(act(g, a), testing::a14()), 1e-15);
}

TEST(Isomorphic, OrbitMembers) {
  Rng rng(26);
  for (int i = 0; i < 50; ++i) {
    const Msc a = rng.msc(-2, 2);
    EXPECT_TRUE(isomorphic(a, act(rng.gl2(100), a)));
  }
}

TEST(Isomorphic, JordanPair) {
  EXPECT_TRUE(isomorphic(testing::j1(), testing::j2()));
  // This partner is not commutative, so it cannot match J1.
  EXPECT_FALSE(isomorphic(testing::j1(), testing::j2_noncommutative()));
}

TEST(Isomorphic, DistinctFifthSubsetClasses) {
  EXPECT_FALSE(isomorphic(testing::a12(), testing::a13()));
  EXPECT_FALSE(isomorphic(testing::a12(), testing::a14()));
  EXPECT_FALSE(isomorphic(testing::a13(), testing::a14()));
}

TEST(Isomorphic, MutualExclusion) {
  Rng rng(27);
  std::vector<std::pair<Family, std::vector<double>>> reps;
  for (Family f : kAllFamilies)
    for (int k = 0; k < 3; ++k) reps.emplace_back(f, testing::random_params(f, rng));
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      const auto& [fi, pi] = reps[i];
      const auto& [fj, pj] = reps[j];
      if (fi == fj) {
        double d = 0;
        for (std::size_t k = 0; k < pi.size(); ++k) d = std::max(d, std::abs(pi[k] - pj[k]));
        if (d <= 1e-3) continue;
      }
      EXPECT_FALSE(isomorphic(representative(fi, pi), representative(fj, pj)))
          << to_string(fi) << " vs " << to_string(fj);
    }
  }
}

TEST(Isomorphic, NearbyParametersStaySeparate) {
  EXPECT_FALSE(isomorphic(rep(Family::A4, {3, -2}), rep(Family::A4, {3.002, -2})));
  EXPECT_FALSE(isomorphic(rep(Family::A9, {0.25}), rep(Family::A9, {0.252})));
}

// Independent oracle: the closed-form entries of the subset-1 normal form in
// terms of g^-1 = P(A)^-1 = [[x1, e1], [x2, e2]] and d = det(g^-1).
TEST(FirstSubset, ClosedFormParameters) {
  Rng rng(28);
  for (int i = 0; i < 200; ++i) {
    const Msc a = rng.msc(-2, 2);
    if (subset_of(a) != TraceSubset::kIndependent) continue;
    const double a1 = a.alpha(1), a4 = a.alpha(4), b1 = a.beta(1), b4 = a.beta(4);
    const Mat2 gi = p_matrix(a).inverse();
    const double x1 = gi(0, 0), e1 = gi(0, 1), x2 = gi(1, 0), e2 = gi(1, 1);
    const double d = gi.determinant(), d2 = d * d;
    const double na1 = -b1 * e1 * x1 * x1 / d + a1 * e2 * x1 * x1 / d +
                       2 * a1 * e1 * x1 * x2 / d - 2 * b4 * e2 * x1 * x2 / d -
                       2 * e1 * e2 * x1 * x2 / d2 + e2 * x1 * x1 * x2 / d2 -
                       b4 * e1 * x2 * x2 / d + a4 * e2 * x2 * x2 / d +
                       e1 * x1 * x2 * x2 / d2;
    const double nb1 = b1 * x1 * x1 * x1 / d - 3 * a1 * x1 * x1 * x2 / d +
                       e2 * x1 * x1 * x2 / d2 + 3 * b4 * x1 * x2 * x2 / d +
                       e1 * x1 * x2 * x2 / d2 - 2 * x1 * x1 * x2 * x2 / d2 -
                       a4 * x2 * x2 * x2 / d;
    const double na2 = -b1 * e1 * e1 * x1 / d + 2 * a1 * e1 * e2 * x1 / d -
                       b4 * e2 * e2 * x1 / d - e1 * e2 * e2 * x1 / d2 +
                       a1 * e1 * e1 * x2 / d - 2 * b4 * e1 * e2 * x2 / d -
                       e1 * e1 * e2 * x2 / d2 + a4 * e2 * e2 * x2 / d +
                       2 * e1 * e2 * x1 * x2 / d2;
    const double na4 = -b1 * e1 * e1 * e1 / d + 3 * a1 * e1 * e1 * e2 / d -
                       3 * b4 * e1 * e2 * e2 / d - 2 * e1 * e1 * e2 * e2 / d2 +
                       a4 * e2 * e2 * e2 / d + e1 * e2 * e2 * x1 / d2 +
                       e1 * e1 * e2 * x2 / d2;
    const CanonicalForm c = canonicalize(a);
    ASSERT_EQ(c.label, Family::A1);
    const double tol = 1e-8 * (1 + std::abs(na1) + std::abs(nb1) +
                               std::abs(na2) + std::abs(na4));
    EXPECT_NEAR(c.params[0], na1, tol);
    EXPECT_NEAR(c.params[1], na2, tol);
    EXPECT_NEAR(c.params[2], na4, tol);
    EXPECT_NEAR(c.params[3], nb1, tol);
  }
}

// The restricted change g^-1 = [[1, 0], [x, y]] on the normalized form
// [[a1, a2, a2, a4], [b1, l - a1, 1 - a1, -a2]].
TEST(DependentSubsets, RestrictedUpdateRules) {
  Rng rng(29);
  for (int i = 0; i < 200; ++i) {
    const double a1 = rng.uniform(-2, 2), a2 = rng.uniform(-2, 2),
                 a4 = rng.uniform(-2, 2), b1 = rng.uniform(-2, 2),
                 l = rng.uniform(-2, 2);
    const double x = rng.uniform(-2, 2), y = rng.uniform(0.2, 2);
    const Msc a = Msc::from_rows({a1, a2, a2, a4}, {b1, l - a1, 1 - a1, -a2});
    const Msc b = act(Gl2(mat2(1, 0, x, y)).inverse(), a);
    EXPECT_NEAR(b.alpha(1), a1 + 2 * a2 * x + a4 * x * x, 1e-10);
    EXPECT_NEAR(b.alpha(2), (a2 + a4 * x) * y, 1e-10);
    EXPECT_NEAR(b.alpha(4), a4 * y * y, 1e-10);
    EXPECT_NEAR(b.beta(1),
                (b1 + (1 + l - 3 * a1) * x - 3 * a2 * x * x - a4 * x * x * x) / y,
                1e-9);
    // The shape and lambda are preserved.
    EXPECT_NEAR(b.alpha(3), b.alpha(2), 1e-10);
    EXPECT_NEAR(b.beta(2), l - b.alpha(1), 1e-10);
    EXPECT_NEAR(b.beta(3), 1 - b.alpha(1), 1e-10);
    EXPECT_NEAR(b.beta(4), -b.alpha(2), 1e-10);
  }
}

TEST(DependentSubsets, A4BranchCoefficient) {
  // a4 = 0, a2 != 0: b1' = a2 b1 - (2 + 2 l - 3 a1) a1 / 4.
  Rng rng(30);
  for (int i = 0; i < 50; ++i) {
    const double a1 = rng.uniform(-2, 2), a2 = rng.uniform(0.3, 2),
                 b1 = rng.uniform(-2, 2), l = rng.uniform(-2, 2);
    const Msc a = Msc::from_rows({a1, a2, a2, 0}, {b1, l - a1, 1 - a1, -a2});
    const CanonicalForm c = canonicalize(a);
    ASSERT_EQ(c.label, Family::A4);
    EXPECT_NEAR(c.params[0], a2 * b1 - (2 + 2 * l - 3 * a1) * a1 / 4, 1e-9);
    EXPECT_NEAR(c.params[1], l, 1e-9);
  }
}

// Closed-form entries for a general change in the fifth subset, with
// d = det(g^-1).
TEST(FifthSubset, GeneralUpdateRules) {
  Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    const double a1 = rng.uniform(-2, 2), a2 = rng.uniform(-2, 2),
                 a4 = rng.uniform(-2, 2), b1 = rng.uniform(-2, 2);
    const Msc a = Msc::from_rows({a1, a2, a2, a4}, {b1, -a1, -a1, -a2});
    const Gl2 gi = rng.gl2(50);
    const double x1 = gi(0, 0), e1 = gi(0, 1), x2 = gi(1, 0), e2 = gi(1, 1);
    const double d = gi.det();
    const Msc b = act(gi.inverse(), a);
    const double s = 1e-9 * (1 + b.scale());
    EXPECT_NEAR(b.alpha(1),
                (-b1 * e1 * x1 * x1 + a1 * e2 * x1 * x1 + 2 * a1 * e1 * x1 * x2 +
                 2 * a2 * e2 * x1 * x2 + a2 * e1 * x2 * x2 + a4 * e2 * x2 * x2) / d,
                s);
    EXPECT_NEAR(b.alpha(2),
                -(b1 * e1 * e1 * x1 - 2 * a1 * e1 * e2 * x1 - a2 * e2 * e2 * x1 -
                  a1 * e1 * e1 * x2 - 2 * a2 * e1 * e2 * x2 - a4 * e2 * e2 * x2) / d,
                s);
    EXPECT_NEAR(b.alpha(4),
                -(b1 * e1 * e1 * e1 - 3 * a1 * e1 * e1 * e2 - 3 * a2 * e1 * e2 * e2 -
                  a4 * e2 * e2 * e2) / d,
                s);
    EXPECT_NEAR(b.beta(1),
                (b1 * x1 * x1 * x1 - 3 * a1 * x1 * x1 * x2 - 3 * a2 * x1 * x2 * x2 -
                 a4 * x2 * x2 * x2) / d,
                s);
  }
}

TEST(FifthSubset, ScaleFactorAfterClearingAlpha1) {
  // x2 / x1 = -a1 / (2 a2), e1 = 0, e2 = 1 / a2 gives
  // b1' = x1^2 (3 a1^2 + 4 a2 b1) / 4.
  Rng rng(32);
  for (int i = 0; i < 100; ++i) {
    const double a1 = rng.uniform(-2, 2), a2 = rng.uniform(0.3, 2) *
                                               (rng.uniform() < 0.5 ? -1 : 1),
                 b1 = rng.uniform(-2, 2), x1 = rng.uniform(0.3, 2);
    const Msc a = Msc::from_rows({a1, a2, a2, 0}, {b1, -a1, -a1, -a2});
    const Mat2 gi = mat2(x1, 0, -a1 / (2 * a2) * x1, 1 / a2);
    const Msc b = act(Gl2(gi).inverse(), a);
    EXPECT_NEAR(b.alpha(1), 0, 1e-10);
    EXPECT_NEAR(b.alpha(2), 1, 1e-10);
    EXPECT_NEAR(b.beta(1), x1 * x1 * (3 * a1 * a1 + 4 * a2 * b1) / 4, 1e-9);
  }
}

TEST(FifthSubset, CubicRootChoiceIsOrbitStable) {
  Rng rng(33);
  for (int i = 0; i < 100; ++i) {
    const double a1 = rng.uniform(-2, 2), a2 = rng.uniform(-2, 2),
                 a4 = rng.uniform(-2, 2), b1 = rng.uniform(-2, 2);
    const Msc a = Msc::from_rows({a1, a2, a2, a4}, {b1, -a1, -a1, -a2});
    const CanonicalForm c = canonicalize(a);
    for (int k = 0; k < 10; ++k)
      EXPECT_EQ(canonicalize(act(rng.gl2(100), a)).label, c.label);
  }
}

}  // namespace
}  // namespace alg2d
