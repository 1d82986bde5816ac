// Copyright 2026 The sschar Authors
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

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "sschar/lipcurve.hpp"
#include "test_util.hpp"

namespace sschar
{
namespace
{

SampledCurve line_curve(double speed, int n = 11)
{
  std::vector<double> t;
  std::vector<Vec2> x;
  for (int i = 0; i < n; ++i) {
    t.push_back(i / (n - 1.0));
    x.push_back({speed * t.back(), 0.0});
  }
  return SampledCurve(t, x);
}

// Random polyline with Lipschitz constant <= kappa and stalled stretches.
SampledCurve random_stalled_polyline(std::mt19937 & rng, double kappa)
{
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> t{0.0};
  std::vector<Vec2> x{{0.0, 0.0}};
  const int n = 20 + static_cast<int>(u(rng) * 80);
  for (int i = 1; i < n; ++i) {
    const double dt = 0.01 + 0.1 * u(rng);
    t.push_back(t.back() + dt);
    if (u(rng) < 0.3) {
      x.push_back(x.back());
    } else {
      const double th = 2.0 * M_PI * u(rng);
      x.push_back(x.back() + (kappa * dt * u(rng)) * Vec2{std::cos(th), std::sin(th)});
    }
  }
  return SampledCurve(t, x, kappa);
}

TEST(SampledCurve, RejectsBadInput)
{
  EXPECT_THROW(SampledCurve({0.0, 0.0}, {{0.0, 0.0}, {1.0, 0.0}}), Error);
  EXPECT_THROW(SampledCurve({0.0}, {}), Error);
  EXPECT_THROW(SampledCurve({0.0, 1.0}, {{0.0, 0.0}, {3.0, 0.0}}, 2.0), Error);
}

TEST(ArcLength, Examples)
{
  const auto c = line_curve(1.0);
  EXPECT_DOUBLE_EQ(arc_length(c, 0.0, 1.0), 1.0);
  EXPECT_EQ(arc_length(c, 0.37, 0.37), 0.0);
  EXPECT_THROW(arc_length(c, -0.1, 0.5), Error);
}

TEST(ArcLength, QuarterCircle)
{
  const int n = 10000;
  std::vector<double> t;
  std::vector<Vec2> x;
  for (int i = 0; i <= n; ++i) {
    t.push_back(0.5 * M_PI * i / n);
    x.push_back({std::cos(t.back()), std::sin(t.back())});
  }
  const SampledCurve c(t, x);
  EXPECT_NEAR(arc_length(c, 0.0, 0.5 * M_PI), 0.5 * M_PI, 1e-6);
}

TEST(ArcLength, Additive)
{
  std::mt19937 rng(51);
  const auto c = random_stalled_polyline(rng, 2.0);
  std::uniform_real_distribution<double> u(c.t_begin(), c.t_end());
  for (int i = 0; i < 1000; ++i) {
    double a = u(rng);
    double b = u(rng);
    double d = u(rng);
    if (a > b) {std::swap(a, b);}
    if (b > d) {std::swap(b, d);}
    if (a > b) {std::swap(a, b);}
    EXPECT_NEAR(arc_length(c, a, d), arc_length(c, a, b) + arc_length(c, b, d), 1e-12);
  }
}

TEST(StallInterval, Examples)
{
  const auto moving = line_curve(1.0);
  const auto s = stall_interval(moving, 0.5, 1e-12);
  EXPECT_EQ(s.tau1, 0.5);
  EXPECT_EQ(s.tau2, 0.5);

  // constant on [0.3, 0.5]
  std::vector<double> t{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7};
  std::vector<Vec2> x{{0.0, 0.0}, {0.1, 0.0}, {0.2, 0.0}, {0.3, 0.0}, {0.3, 0.0}, {0.3, 0.0},
    {0.4, 0.0}, {0.5, 0.0}};
  const auto st = stall_interval(SampledCurve(t, x), 0.4, 1e-12);
  EXPECT_DOUBLE_EQ(st.tau1, 0.3);
  EXPECT_DOUBLE_EQ(st.tau2, 0.5);

  const SampledCurve flat({0.0, 1.0, 2.0}, {{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}});
  const auto all = stall_interval(flat, 1.5, 1e-12);
  EXPECT_EQ(all.tau1, 0.0);
  EXPECT_EQ(all.tau2, 2.0);
  EXPECT_THROW(stall_interval(flat, 3.0, 1e-12), Error);
}

TEST(StallInterval, ShrinksWithTolerance)
{
  std::mt19937 rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = random_stalled_polyline(rng, 1.0);
    std::uniform_real_distribution<double> u(c.t_begin(), c.t_end());
    for (int i = 0; i < 50; ++i) {
      const double t = u(rng);
      const auto small = stall_interval(c, t, 1e-12);
      const auto big = stall_interval(c, t, 1e-3);
      EXPECT_LE(small.tau1, small.tau2);
      EXPECT_GE(small.tau1, big.tau1);
      EXPECT_LE(small.tau2, big.tau2);
    }
  }
}

TEST(ReparamByLength, SpeedTwoSegment)
{
  const auto g = reparam_by_length(line_curve(2.0), 1e-12);
  EXPECT_DOUBLE_EQ(g.t_end(), 2.0);
  for (std::size_t k = 1; k < g.size(); ++k) {
    const double ratio = distance(g.points()[k], g.points()[k - 1]) / (g.params()[k] - g.params()[k - 1]);
    EXPECT_LE(ratio, 1.0);
    EXPECT_GE(ratio, 1.0 - 1e-9);
  }
}

TEST(ReparamByLength, InteriorStallRemoved)
{
  const SampledCurve c({0.0, 1.0, 2.0, 3.0}, {{0.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, {1.0, 2.0}});
  const auto g = reparam_by_length(c, 1e-12);
  EXPECT_EQ(g.size(), 3u);
  EXPECT_DOUBLE_EQ(g.total_length(), c.total_length());
}

TEST(ReparamByLength, UnitSpeedIsIdentity)
{
  const auto c = line_curve(1.0);
  const auto g = reparam_by_length(c, 1e-12);
  ASSERT_EQ(g.size(), c.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    EXPECT_NEAR(g.params()[k], c.params()[k], 1e-15);
    EXPECT_EQ(g.points()[k], c.points()[k]);
  }
}

TEST(ReparamByLength, ZeroLengthThrows)
{
  const SampledCurve flat({0.0, 1.0}, {{1.0, 1.0}, {1.0, 1.0}});
  try {
    reparam_by_length(flat, 1e-12);
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), Errc::degenerate_curve);
  }
}

TEST(ReparamByLength, RandomPolylinesUnitSpeed)
{
  std::mt19937 rng(57);
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = random_stalled_polyline(rng, 3.0);
    const auto g = reparam_by_length(c, default_eps_stall(c));
    EXPECT_NEAR(g.total_length(), c.total_length(), 1e-12);
    for (std::size_t k = 1; k < g.size(); ++k) {
      const double ratio =
        distance(g.points()[k], g.points()[k - 1]) / (g.params()[k] - g.params()[k - 1]);
      EXPECT_LE(ratio, 1.0);
      EXPECT_GE(ratio, 1.0 - 1e-9);
    }
  }
}

TEST(EulerRightOde, ConstantRateExact)
{
  const auto f = [](double) {return 1.5;};
  for (const long m : {1L, 7L, 64L}) {
    const auto x = euler_right_ode(f, 3.0, 1.0, 2.0, m);
    EXPECT_DOUBLE_EQ(x.t_end(), 1.5);
    for (std::size_t i = 0; i < x.t.size(); ++i) {EXPECT_NEAR(x.x[i], 1.5 * x.t[i], 1e-15);}
  }
}

// f = 2 below 0.5, 1 from 0.5 on: x = 2t up to t = 1/4, then x = 0.5 + (t - 1/4)
double step_solution(double t) {return t <= 0.25 ? 2.0 * t : 0.5 + (t - 0.25);}

TEST(EulerRightOde, PiecewiseConstantRate)
{
  const auto f = [](double y) {return y < 0.5 ? 2.0 : 1.0;};
  for (const long m : {10L, 100L, 1000L, 1001L}) {
    const auto x = euler_right_ode(f, 1.0, 1.0, 2.0, m);
    double err = 0.0;
    for (std::size_t i = 0; i < x.t.size(); ++i) {
      err = std::max(err, std::abs(x.x[i] - step_solution(x.t[i])));
    }
    // between grid points both curves are linear and the exact one has a
    // single kink, so the node error plus one cell bound the sup error
    EXPECT_LE(err, 2.0 * 0.5 / m);
    EXPECT_TRUE(b_increasing_check(x, 1.0));
    EXPECT_TRUE(lipschitz_check(x, 2.0));
  }
}

TEST(EulerRightOde, ExponentialRate)
{
  const auto f = [](double y) {return std::clamp(1.0 + y, 1.0, 2.0);};
  const auto x = euler_right_ode(f, 1.0, 1.0, 2.0, 4000);
  double err = 0.0;
  for (std::size_t i = 0; i < x.t.size(); ++i) {err = std::max(err, std::abs(x.x[i] - std::expm1(x.t[i])));}
  EXPECT_LE(err, 1.0 / 4000);
}

TEST(EulerRightOde, ContractViolation)
{
  const auto f = [](double y) {return y < 0.2 ? 1.0 : 5.0;};
  try {
    euler_right_ode(f, 1.0, 1.0, 2.0, 100);
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), Errc::contract_violation);
  }
  EXPECT_THROW(euler_right_ode(f, 1.0, 2.0, 1.0, 10), Error);
  EXPECT_THROW(euler_right_ode(f, 1.0, 1.0, 2.0, 0), Error);
}

TEST(EulerRightOde, ToArrivalEndsAtA)
{
  const auto f = [](double y) {return y < 0.5 ? 2.0 : 1.0;};
  const auto x = euler_right_ode_to_arrival(f, 1.0, 1.0, 2.0, 1000);
  EXPECT_EQ(x.x.back(), 1.0);
  EXPECT_NEAR(x.t_end(), 0.75, 1e-3);
  EXPECT_TRUE(b_increasing_check(x, 1.0));
  EXPECT_TRUE(lipschitz_check(x, 2.0));
}

TEST(RefineUntilCauchy, ConvergesOnStepRate)
{
  const auto f = [](double y) {return y < 0.5 ? 2.0 : 1.0;};
  const auto r = refine_until_cauchy([&](long m) {return euler_right_ode(f, 1.0, 1.0, 2.0, m);}, 1e-6);
  EXPECT_LT(r.last_change, 1e-6);
  EXPECT_GE(r.m, 32);
  double err = 0.0;
  for (std::size_t i = 0; i < r.solution.t.size(); ++i) {
    err = std::max(err, std::abs(r.solution.x[i] - step_solution(r.solution.t[i])));
  }
  EXPECT_LE(err, 2e-6);
}

TEST(RefineUntilCauchy, FailsLoudly)
{
  // a scheme whose iterates alternate never becomes Cauchy
  const auto scheme = [](long m) {
      SampledFunction s;
      s.t = {0.0, 1.0};
      s.x = {0.0, std::bit_width(static_cast<unsigned long>(m)) % 2 == 0 ? 0.0 : 1.0};
      return s;
    };
  try {
    refine_until_cauchy(scheme, 1e-8, 16, 1024);
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), Errc::nonconvergence);
  }
}

TEST(BIncreasingCheck, Examples)
{
  SampledFunction two{{0.0, 0.5, 1.0}, {0.0, 1.0, 2.0}};
  EXPECT_TRUE(b_increasing_check(two, 1.0));
  SampledFunction one{{0.0, 0.5, 1.0}, {0.0, 0.5, 1.0}};
  EXPECT_FALSE(b_increasing_check(one, 2.0));
  EXPECT_TRUE(lipschitz_check(one, 1.0));
  EXPECT_FALSE(lipschitz_check(two, 1.0));
}

}  // namespace
}  // namespace sschar
