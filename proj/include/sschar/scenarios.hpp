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

/// \file
/// \brief Built-in scenes whose singular sets are unions of rays through a
///        common point, with reference characteristics along them.
///
/// On each ray x = origin + r dir the characteristic stays on the ray and r
/// solves the scalar ODE r' = -rate(r). The reference curve integrates that
/// ODE directly, so it shares nothing with the tracer.

#ifndef SSCHAR__SCENARIOS_HPP_
#define SSCHAR__SCENARIOS_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "sschar/lipcurve.hpp"
#include "sschar/scene.hpp"
#include "sschar/vec2.hpp"

namespace sschar
{

struct Scenario
{
  std::string id;
  std::string description;
  SceneSpec scene;
  std::string oracle;
  std::string known_singular_set;
  /// Rays of the singular set; `full_lines` makes them lines (r of any sign).
  Vec2 ray_origin{};
  std::vector<Vec2> ray_dirs;
  bool full_lines{false};
  /// r' = -rate(r) along a ray.
  std::function<double(double)> rate;
  /// Exact r(t) when available.
  std::function<double(double, double)> closed_form;

  double distance_to_singular_set(const Vec2 & x) const
  {
    double d = std::numeric_limits<double>::infinity();
    for (const auto & e : ray_dirs) {
      double r = dot(x - ray_origin, e);
      if (!full_lines) {r = std::max(r, 0.0);}
      d = std::min(d, distance(x, ray_origin + r * e));
    }
    return d;
  }
};

namespace detail
{

inline SceneSpec quadratic_pair_scene(const std::string & name, const Mat2 & a, const Mat2 & q)
{
  SceneSpec s;
  s.name = name;
  s.a = a;
  s.beta = 1.0;
  s.branches = {QuadraticBranch{q, {1.0, 0.0}, 0.0}, QuadraticBranch{q, {-1.0, 0.0}, 0.0}};
  s.domain = {{0.0, 0.0}, 2.0};
  s.x0 = {0.0, 1.0};
  return s;
}

inline Scenario make_quad2()
{
  Scenario s;
  s.id = "quad2";
  s.description = "H = 1/2 |p|^2 + u, u = min of -1/2 |x - b|^2 over b = (+-1, 0)";
  s.scene = quadratic_pair_scene("quad2", Mat2::identity(), Mat2::identity());
  s.oracle = "closed form gamma(t) = (0, y0 exp(-t))";
  s.known_singular_set = "the x2-axis";
  s.ray_dirs = {{0.0, 1.0}};
  s.full_lines = true;
  s.rate = [](double r) {return r;};
  s.closed_form = [](double r0, double t) {return r0 * std::exp(-t);};
  return s;
}

inline Scenario make_aniso2()
{
  Scenario s = make_quad2();
  s.id = "aniso2";
  s.description = "H = 1/2 <diag(2, 1) p, p> + u, u = min of -1/2 <Q (x - b), x - b>, "
    "Q = diag(1/2, 1), b = (+-1, 0)";
  s.scene = quadratic_pair_scene("aniso2", Mat2::diag(2.0, 1.0), Mat2::diag(0.5, 1.0));
  return s;
}

inline Scenario make_eik2()
{
  Scenario s;
  s.id = "eik2";
  s.description = "H = 1/2 (|p|^2 - 1), u = min of -|x - a| over a = (+-1, 0)";
  s.scene.name = "eik2";
  s.scene.a = Mat2::identity();
  s.scene.beta = 0.0;
  s.scene.g = {-0.5, 0.0, 0.0, 0.0, 0.0, 0.0};
  s.scene.branches = {ConeBranch{{1.0, 0.0}, 1.0, 0.0, 0.1}, ConeBranch{{-1.0, 0.0}, 1.0, 0.0, 0.1}};
  s.scene.domain = {{0.0, 0.5}, 0.9};
  s.scene.x0 = {0.0, 1.0};
  s.oracle = "RK4 at step 1e-6 on y' = -y / sqrt(1 + y^2)";
  s.known_singular_set = "the x2-axis";
  s.ray_dirs = {{0.0, 1.0}};
  s.full_lines = true;
  s.rate = [](double r) {return r / std::sqrt(1.0 + r * r);};
  return s;
}

inline Scenario make_eik3()
{
  Scenario s;
  s.id = "eik3";
  s.description = "H = 1/2 (|p|^2 - 1), u = min of -|x - a_i| over the vertices of an "
    "equilateral triangle at angles 90, 210, 330 degrees on the unit circle";
  s.scene.name = "eik3";
  s.scene.a = Mat2::identity();
  s.scene.beta = 0.0;
  s.scene.g = {-0.5, 0.0, 0.0, 0.0, 0.0, 0.0};
  for (const double deg : {90.0, 210.0, 330.0}) {
    const double th = deg * std::numbers::pi / 180.0;
    const Vec2 dir{std::cos(th), std::sin(th)};
    s.scene.branches.push_back(ConeBranch{dir, 1.0, 0.0, 0.1});
    s.ray_dirs.push_back(dir);
  }
  s.scene.domain = {{0.0, 0.0}, 0.85};
  s.scene.x0 = {0.0, 0.5};
  s.oracle = "RK4 at step 1e-6 on r' = -(r + 1/2) / sqrt(3/4 + (r + 1/2)^2), "
    "held at the junction once r reaches 0";
  s.known_singular_set = "three rays from the origin toward the cone apexes";
  // the two far apexes sit at distance sqrt(3/4 + (r + 1/2)^2); v# is the
  // mean of their unit gradients
  s.rate = [](double r) {return (r + 0.5) / std::sqrt(0.75 + (r + 0.5) * (r + 0.5));};
  return s;
}

}  // namespace detail

inline std::vector<Scenario> catalog()
{
  return {detail::make_quad2(), detail::make_eik2(), detail::make_eik3(), detail::make_aniso2()};
}

inline std::optional<Scenario> find_scenario(const std::string & id)
{
  for (auto & s : catalog()) {
    if (s.id == id) {return s;}
  }
  return std::nullopt;
}

/// Reference characteristic from x0 on [0, t_max] at step 1e-6.
inline SampledCurve oracle_curve(const Scenario & s, const Vec2 & x0, double t_max)
{
  if (!(t_max > 0.0) || !std::isfinite(t_max)) {
    throw Error(Errc::invalid_argument, "oracle_curve needs t_max > 0");
  }
  const Vec2 * ray = nullptr;
  for (const auto & e : s.ray_dirs) {
    const Vec2 rel = x0 - s.ray_origin;
    const double r = dot(rel, e);
    if (distance(rel, r * e) <= 1e-10 && (s.full_lines || r >= -1e-10)) {
      ray = &e;
      break;
    }
  }
  if (ray == nullptr) {
    throw Error(Errc::invalid_argument, "x0 is not on the known singular set of " + s.id);
  }
  const double r0 = s.full_lines ? dot(x0 - s.ray_origin, *ray) :
    std::max(0.0, dot(x0 - s.ray_origin, *ray));

  const long n = static_cast<long>(std::ceil(t_max / 1e-6));
  const double h = t_max / static_cast<double>(n);
  std::vector<double> ts(static_cast<std::size_t>(n) + 1);
  std::vector<double> rs(ts.size());
  rs[0] = r0;
  // lines: rate is odd in r; rays: RK4 stages may overshoot past the
  // junction, where the rate is clamped to its value at r = 0
  const auto f = [&](double r) {
      if (!s.full_lines) {return s.rate(std::max(r, 0.0));}
      if (r == 0.0) {return 0.0;}
      return std::copysign(s.rate(std::abs(r)), r);
    };
  for (long i = 0; i <= n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    ts[k] = h * static_cast<double>(i);
    if (i == 0) {continue;}
    const double r = rs[k - 1];
    if (s.closed_form) {
      rs[k] = s.closed_form(r0, ts[k]);
    } else if (r == 0.0) {
      rs[k] = 0.0;
    } else {
      const double k1 = -f(r);
      const double k2 = -f(r + 0.5 * h * k1);
      const double k3 = -f(r + 0.5 * h * k2);
      const double k4 = -f(r + h * k3);
      double next = r + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      // crossing the origin means arrival at the junction (rays only)
      if (!s.full_lines && next <= 0.0) {next = 0.0;}
      rs[k] = next;
    }
  }
  std::vector<Vec2> pts;
  pts.reserve(rs.size());
  for (const double r : rs) {pts.push_back(s.ray_origin + r * *ray);}
  return SampledCurve(std::move(ts), std::move(pts));
}

}  // namespace sschar

#endif  // SSCHAR__SCENARIOS_HPP_
