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
/// \brief Scene description (JSON schema version 1) and its validation.
///
/// \code{.json}
/// {
///   "version": 1,
///   "name": "quad2",
///   "hamiltonian": {"kind": "quadratic_form", "A": [1, 0, 0, 1], "beta": 1,
///                   "g": [0, 0, 0, 0, 0, 0]},
///   "branches": [
///     {"kind": "quadratic", "Q": [1, 0, 0, 1], "center": [1, 0], "offset": 0},
///     {"kind": "cone", "apex": [-1, 0], "slope": 1, "offset": 0, "exclusion_radius": 0.1},
///     {"kind": "affine", "slope": [0, 1], "offset": 0}
///   ],
///   "domain": {"center": [0, 0], "radius": 2},
///   "x0": [0, 1],
///   "trace": {"p_step": 1e-3, "t_max": 1},
///   "C0": 0,
///   "viscosity_residual_tol": 1e-9
/// }
/// \endcode
///
/// `g` lists (c, c1, c2, c11, c12, c22). `trace`, `C0`, `name` and
/// `viscosity_residual_tol` are optional; unknown keys are rejected.

#ifndef SSCHAR__SCENE_HPP_
#define SSCHAR__SCENE_HPP_

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "sschar/hamiltonian.hpp"
#include "sschar/semiconcave.hpp"
#include "sschar/tracer.hpp"
#include "sschar/vec2.hpp"

namespace sschar
{

struct SceneSpec
{
  int version{1};
  std::string name;
  Mat2 a{Mat2::identity()};
  double beta{0.0};
  QuadPoly g{};
  std::vector<Branch> branches;
  Domain domain{};
  Vec2 x0{};
  TraceConfig trace{};
  std::optional<double> declared_c0;
  double viscosity_residual_tol{1e-9};

  Hamiltonian hamiltonian() const {return Hamiltonian(a, beta, g);}
  MinFunction min_function() const {return MinFunction(branches, domain, declared_c0);}
  /// Validates everything that the schema cannot: A symmetric positive
  /// definite, branch parameters, cone exclusions outside the domain, C0.
  NormalizedProblem problem() const {return normalize(min_function(), hamiltonian());}
};

namespace detail
{

using Json = nlohmann::json;

[[noreturn]] inline void schema_error(const std::string & where, const std::string & what)
{
  throw Error(Errc::schema, "scene " + where + ": " + what);
}

inline void only_keys(const Json & j, const std::string & where, std::initializer_list<const char *> keys)
{
  if (!j.is_object()) {schema_error(where, "expected an object");}
  for (const auto & item : j.items()) {
    bool known = false;
    for (const char * k : keys) {known = known || item.key() == k;}
    if (!known) {schema_error(where, "unknown key \"" + item.key() + "\"");}
  }
}

inline const Json & required(const Json & j, const std::string & where, const char * key)
{
  if (!j.contains(key)) {schema_error(where, std::string("missing key \"") + key + "\"");}
  return j.at(key);
}

inline double number(const Json & j, const std::string & where)
{
  if (!j.is_number()) {schema_error(where, "expected a number");}
  const double v = j.get<double>();
  if (!std::isfinite(v)) {schema_error(where, "expected a finite number");}
  return v;
}

inline std::vector<double> numbers(const Json & j, const std::string & where, std::size_t n)
{
  if (!j.is_array() || j.size() != n) {
    schema_error(where, "expected an array of " + std::to_string(n) + " numbers");
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i) {out.push_back(number(j[i], where));}
  return out;
}

inline Vec2 vec2(const Json & j, const std::string & where)
{
  const auto v = numbers(j, where, 2);
  return {v[0], v[1]};
}

inline Mat2 mat2(const Json & j, const std::string & where)
{
  const auto v = numbers(j, where, 4);
  return {v[0], v[1], v[2], v[3]};
}

inline Branch parse_branch(const Json & j, const std::string & where)
{
  const Json & kind = required(j, where, "kind");
  if (!kind.is_string()) {schema_error(where + ".kind", "expected a string");}
  const auto k = kind.get<std::string>();
  if (k == "quadratic") {
    only_keys(j, where, {"kind", "Q", "center", "offset"});
    return QuadraticBranch{
      mat2(required(j, where, "Q"), where + ".Q"),
      vec2(required(j, where, "center"), where + ".center"),
      number(required(j, where, "offset"), where + ".offset")};
  }
  if (k == "cone") {
    only_keys(j, where, {"kind", "apex", "slope", "offset", "exclusion_radius"});
    return ConeBranch{
      vec2(required(j, where, "apex"), where + ".apex"),
      number(required(j, where, "slope"), where + ".slope"),
      number(required(j, where, "offset"), where + ".offset"),
      number(required(j, where, "exclusion_radius"), where + ".exclusion_radius")};
  }
  if (k == "affine") {
    only_keys(j, where, {"kind", "slope", "offset"});
    return AffineBranch{
      vec2(required(j, where, "slope"), where + ".slope"),
      number(required(j, where, "offset"), where + ".offset")};
  }
  schema_error(where + ".kind", "unknown branch kind \"" + k + "\"");
}

inline int integer(const Json & j, const std::string & where)
{
  if (!j.is_number_integer()) {schema_error(where, "expected an integer");}
  return j.get<int>();
}

inline TraceConfig parse_trace(const Json & j)
{
  only_keys(
    j, "trace", {"p_step", "t_max", "v_min", "reanchor_every", "ode_tol", "membership_tol",
      "diam_tol", "max_restarts", "arrival_time_tol"});
  TraceConfig c;
  const auto opt = [&](const char * key, double & dst) {
      if (j.contains(key)) {dst = number(j.at(key), std::string("trace.") + key);}
    };
  opt("p_step", c.p_step);
  opt("t_max", c.t_max);
  opt("v_min", c.v_min);
  opt("ode_tol", c.ode_tol);
  opt("membership_tol", c.membership_tol);
  opt("diam_tol", c.diam_tol);
  opt("arrival_time_tol", c.arrival_time_tol);
  if (j.contains("reanchor_every")) {c.reanchor_every = integer(j.at("reanchor_every"), "trace.reanchor_every");}
  if (j.contains("max_restarts")) {c.max_restarts = integer(j.at("max_restarts"), "trace.max_restarts");}
  try {
    c.validate();
  } catch (const Error & e) {
    schema_error("trace", e.what());
  }
  return c;
}

}  // namespace detail

/// Parses and schema-checks a scene. Throws Error(schema) on any violation.
inline SceneSpec parse_scene(const nlohmann::json & j)
{
  using detail::required;
  detail::only_keys(
    j, "root", {"version", "name", "hamiltonian", "branches", "domain", "x0", "trace", "C0",
      "viscosity_residual_tol"});
  SceneSpec s;
  s.version = detail::integer(required(j, "root", "version"), "version");
  if (s.version != 1) {detail::schema_error("version", "only version 1 is supported");}
  if (j.contains("name")) {
    if (!j.at("name").is_string()) {detail::schema_error("name", "expected a string");}
    s.name = j.at("name").get<std::string>();
  }

  const auto & h = required(j, "root", "hamiltonian");
  detail::only_keys(h, "hamiltonian", {"kind", "A", "beta", "g"});
  const auto & kind = required(h, "hamiltonian", "kind");
  if (!kind.is_string() || kind.get<std::string>() != "quadratic_form") {
    detail::schema_error("hamiltonian.kind", "only \"quadratic_form\" is supported");
  }
  s.a = detail::mat2(required(h, "hamiltonian", "A"), "hamiltonian.A");
  s.beta = detail::number(required(h, "hamiltonian", "beta"), "hamiltonian.beta");
  if (h.contains("g")) {
    const auto g = detail::numbers(h.at("g"), "hamiltonian.g", 6);
    s.g = {g[0], g[1], g[2], g[3], g[4], g[5]};
  }

  const auto & br = required(j, "root", "branches");
  if (!br.is_array() || br.empty()) {detail::schema_error("branches", "expected a nonempty array");}
  for (std::size_t i = 0; i < br.size(); ++i) {
    s.branches.push_back(detail::parse_branch(br[i], "branches[" + std::to_string(i) + "]"));
  }

  const auto & d = required(j, "root", "domain");
  detail::only_keys(d, "domain", {"center", "radius"});
  s.domain.center = detail::vec2(required(d, "domain", "center"), "domain.center");
  s.domain.radius = detail::number(required(d, "domain", "radius"), "domain.radius");

  s.x0 = detail::vec2(required(j, "root", "x0"), "x0");
  if (j.contains("trace")) {s.trace = detail::parse_trace(j.at("trace"));}
  if (j.contains("C0")) {s.declared_c0 = detail::number(j.at("C0"), "C0");}
  if (j.contains("viscosity_residual_tol")) {
    s.viscosity_residual_tol = detail::number(j.at("viscosity_residual_tol"), "viscosity_residual_tol");
    if (!(s.viscosity_residual_tol > 0.0)) {
      detail::schema_error("viscosity_residual_tol", "must be positive");
    }
  }
  return s;
}

inline SceneSpec parse_scene_text(const std::string & text)
{
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error & e) {
    throw Error(Errc::schema, std::string("scene is not valid JSON: ") + e.what());
  }
  return parse_scene(j);
}

inline SceneSpec load_scene(const std::string & path)
{
  std::ifstream in(path);
  if (!in) {throw Error(Errc::schema, "cannot read scene file " + path);}
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scene_text(ss.str());
}

inline nlohmann::json to_json(const TraceConfig & c)
{
  return {
    {"p_step", c.p_step}, {"t_max", c.t_max}, {"v_min", c.v_min},
    {"reanchor_every", c.reanchor_every}, {"ode_tol", c.ode_tol},
    {"membership_tol", c.membership_tol}, {"diam_tol", c.diam_tol},
    {"max_restarts", c.max_restarts}, {"arrival_time_tol", c.arrival_time_tol}};
}

inline nlohmann::json to_json(const SceneSpec & s)
{
  using J = nlohmann::json;
  J branches = J::array();
  for (const auto & b : s.branches) {
    if (const auto * q = std::get_if<QuadraticBranch>(&b)) {
      branches.push_back(
        {{"kind", "quadratic"}, {"Q", {q->q.a11, q->q.a12, q->q.a21, q->q.a22}},
          {"center", {q->center.x1, q->center.x2}}, {"offset", q->offset}});
    } else if (const auto * c = std::get_if<ConeBranch>(&b)) {
      branches.push_back(
        {{"kind", "cone"}, {"apex", {c->apex.x1, c->apex.x2}}, {"slope", c->slope},
          {"offset", c->offset}, {"exclusion_radius", c->exclusion_radius}});
    } else if (const auto * f = std::get_if<AffineBranch>(&b)) {
      branches.push_back(
        {{"kind", "affine"}, {"slope", {f->slope.x1, f->slope.x2}}, {"offset", f->offset}});
    }
  }
  J j = {
    {"version", s.version},
    {"name", s.name},
    {"hamiltonian", {
        {"kind", "quadratic_form"}, {"A", {s.a.a11, s.a.a12, s.a.a21, s.a.a22}},
        {"beta", s.beta}, {"g", {s.g.c, s.g.c1, s.g.c2, s.g.c11, s.g.c12, s.g.c22}}}},
    {"branches", branches},
    {"domain", {{"center", {s.domain.center.x1, s.domain.center.x2}}, {"radius", s.domain.radius}}},
    {"x0", {s.x0.x1, s.x0.x2}},
    {"trace", to_json(s.trace)},
    {"viscosity_residual_tol", s.viscosity_residual_tol}};
  if (s.declared_c0) {j["C0"] = *s.declared_c0;}
  return j;
}

}  // namespace sschar

#endif  // SSCHAR__SCENE_HPP_
