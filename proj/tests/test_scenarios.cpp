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

#include <cmath>
#include <set>
#include <string>

#include "sschar/scenarios.hpp"
#include "test_util.hpp"

namespace sschar
{
namespace
{

TEST(Catalog, ContainsRequiredIds)
{
  std::set<std::string> ids;
  for (const auto & s : catalog()) {
    ids.insert(s.id);
    EXPECT_NO_THROW(s.scene.problem()) << s.id;
  }
  for (const char * id : {"quad2", "eik2", "eik3", "aniso2"}) {EXPECT_EQ(ids.count(id), 1u) << id;}
  EXPECT_FALSE(find_scenario("nope").has_value());
}

TEST(Catalog, StartPointsAreSingular)
{
  for (const auto & s : catalog()) {
    const auto u = s.scene.min_function();
    EXPECT_TRUE(is_singular(u, s.scene.x0, s.scene.trace.diam_tol)) << s.id;
    EXPECT_LE(s.distance_to_singular_set(s.scene.x0), 1e-12) << s.id;
  }
}

TEST(Catalog, KnownSingularSetMatchesSuperdifferential)
{
  for (const auto & s : catalog()) {
    const auto u = s.scene.min_function();
    const auto & d = u.domain();
    const int n = 60;
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n; ++j) {
        const Vec2 x{d.center.x1 - d.radius + 2.0 * d.radius * i / n,
          d.center.x2 - d.radius + 2.0 * d.radius * j / n};
        if (d.distance_to_boundary(x) <= 1e-9) {continue;}
        const bool on_set = s.distance_to_singular_set(x) <= 1e-12;
        EXPECT_EQ(is_singular(u, x, 1e-6), on_set) << s.id << " at " << x.x1 << "," << x.x2;
      }
    }
  }
}

TEST(Catalog, ViscosityResidualOnSmoothParts)
{
  for (const auto & s : catalog()) {
    const auto u = s.scene.min_function();
    const auto h = s.scene.hamiltonian();
    std::mt19937 rng(61);
    for (int trial = 0; trial < 1000; ++trial) {
      const Vec2 x = test::random_in_disk(rng, u.domain());
      const auto act = active_set(u, x);
      if (act.size() != 1) {continue;}
      EXPECT_LE(std::abs(h.value(x, branch_gradient(u.branches()[act[0]], x), eval(u, x))), 1e-9);
    }
  }
}

TEST(Catalog, Quad2ClosedFormSelections)
{
  const auto s = *find_scenario("quad2");
  const auto u = s.scene.min_function();
  const auto h = s.scene.hamiltonian();
  for (int i = 0; i <= 18; ++i) {
    const double y = 0.1 + 0.1 * i;
    const Vec2 x{0.0, y};
    const auto sp = p_sharp(h, x, eval(u, x), superdifferential(u, x), 1e-12);
    EXPECT_LE(distance(sp.p_sharp, {0.0, -y}), 1e-14);
    EXPECT_LE(distance(sp.v_sharp, {0.0, -y}), 1e-14);
    EXPECT_NEAR(sp.h_value, -0.5, 1e-14);
  }
}

TEST(Catalog, Eik2ClosedFormSelections)
{
  const auto s = *find_scenario("eik2");
  const auto u = s.scene.min_function();
  const auto h = s.scene.hamiltonian();
  for (const double y : {0.0, 0.4, 1.0, 1.3}) {
    const Vec2 x{0.0, y};
    const auto k = superdifferential(u, x);
    const double r = std::sqrt(1.0 + y * y);
    for (const Vec2 e : {Vec2{-1.0 / r, -y / r}, Vec2{1.0 / r, -y / r}}) {
      EXPECT_LE(std::min(distance(k.vertex(0), e), distance(k.vertex(1), e)), 1e-15);
    }
    const auto sp = p_sharp(h, x, eval(u, x), k, 1e-12);
    EXPECT_LE(distance(sp.p_sharp, {0.0, -y / r}), 1e-15);
  }
}

TEST(OracleCurve, Quad2Endpoint)
{
  const auto s = *find_scenario("quad2");
  const auto c = oracle_curve(s, {0.0, 1.0}, 1.0);
  EXPECT_NEAR(c.points().back().x2, std::exp(-1.0), 1e-15);
  EXPECT_NEAR(c.points().back().x2, 0.36788, 1e-5);
  const auto flat = oracle_curve(s, {0.0, 0.0}, 1.0);
  for (const auto & p : flat.points()) {EXPECT_EQ(p, (Vec2{0.0, 0.0}));}
}

TEST(OracleCurve, Eik2MatchesIndependentRk4)
{
  const auto s = *find_scenario("eik2");
  const auto c = oracle_curve(s, {0.0, 1.0}, 1.0);
  const double ref = test::rk4([](double y) {return -y / std::sqrt(1.0 + y * y);}, 1.0, 1.0, 1e-4);
  EXPECT_NEAR(c.points().back().x2, ref, 1e-12);
  for (std::size_t k = 0; k < c.size(); k += 1000) {
    EXPECT_LE(s.distance_to_singular_set(c.points()[k]), 1e-10);
  }
}

// arrival time at the junction: integral of sqrt(3/4 + z^2) / z over z in
// [1/2, 1], via the antiderivative sqrt(z^2 + c^2) - c log((c + sqrt(z^2 + c^2)) / z)
TEST(OracleCurve, Eik3ArrivesAtJunction)
{
  const auto s = *find_scenario("eik3");
  const double c = std::sqrt(0.75);
  const auto f = [&](double z) {
      const double r = std::sqrt(z * z + c * c);
      return r - c * std::log((c + r) / z);
    };
  const double t_arrive = f(1.0) - f(0.5);
  const auto curve = oracle_curve(s, {0.0, 0.5}, 1.0);
  std::size_t first_zero = curve.size();
  for (std::size_t k = 0; k < curve.size(); ++k) {
    if (curve.points()[k].x2 == 0.0) {
      first_zero = k;
      break;
    }
  }
  ASSERT_LT(first_zero, curve.size());
  EXPECT_NEAR(curve.params()[first_zero], t_arrive, 2e-6);
  EXPECT_EQ(curve.points().back(), (Vec2{0.0, 0.0}));
}

TEST(OracleCurve, OffSetThrows)
{
  const auto s = *find_scenario("quad2");
  EXPECT_THROW(oracle_curve(s, {0.1, 0.5}, 1.0), Error);
  const auto e3 = *find_scenario("eik3");
  EXPECT_THROW(oracle_curve(e3, {0.0, -0.3}, 1.0), Error);
}

TEST(Eik3, TraceMatchesOracleAndSnapshotsJunction)
{
  const auto s = *find_scenario("eik3");
  const auto np = s.scene.problem();
  const auto tr = build_characteristic(np, s.scene.x0, s.scene.trace);
  EXPECT_EQ(tr.termination, Termination::critical_point);
  const auto ref = oracle_curve(s, s.scene.x0, s.scene.trace.t_max);
  double err = 0.0;
  for (const auto & smp : tr.samples) {err = std::max(err, distance(smp.x, ref.at(smp.t)));}
  EXPECT_LE(err, 1e-3);
  const auto ch = active_set_changes(tr);
  ASSERT_EQ(ch.size(), 2u);
  EXPECT_EQ(ch[0].active, (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(ch[1].active, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Aniso2, TraceMatchesQuad2Oracle)
{
  const auto s = *find_scenario("aniso2");
  const auto np = s.scene.problem();
  const auto tr = build_characteristic(np, s.scene.x0, s.scene.trace);
  EXPECT_EQ(tr.termination, Termination::reached_t_max);
  double err = 0.0;
  for (const auto & smp : tr.samples) {err = std::max(err, distance(smp.x, {0.0, std::exp(-smp.t)}));}
  EXPECT_LE(err, 1e-3);
  // h(p#) = 1/2 y^2 + u with u = -1/4 - y^2/2 on the axis
  for (const auto & smp : tr.samples) {EXPECT_NEAR(smp.h_value, -0.25, 1e-12);}
}

}  // namespace
}  // namespace sschar
