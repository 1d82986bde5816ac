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

// sschar command line: trace, verify, list-scenarios.
//
// Exit codes: 0 success, 2 config or schema error, 3 numerical failure,
// 4 verification failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sschar/sschar.hpp"

namespace
{

using sschar::Errc;
using sschar::Error;
using sschar::Vec2;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitVerify = 4;

struct Loaded
{
  std::string label;
  sschar::SceneSpec scene;
};

Loaded load(const std::string & arg)
{
  const std::string prefix = "builtin:";
  if (arg.rfind(prefix, 0) == 0) {
    const auto id = arg.substr(prefix.size());
    const auto s = sschar::find_scenario(id);
    if (!s) {throw Error(Errc::schema, "unknown builtin scenario \"" + id + "\"");}
    return {id, s->scene};
  }
  auto scene = sschar::load_scene(arg);
  return {scene.name.empty() ? arg : scene.name, scene};
}

int exit_code_for(const Error & e)
{
  switch (e.code()) {
    case Errc::nonconvergence:
    case Errc::not_in_image:
    case Errc::degenerate_face:
    case Errc::degenerate_curve:
    case Errc::contract_violation:
      return kExitNumerical;
    default:
      return kExitConfig;
  }
}

int run_list()
{
  for (const auto & s : sschar::catalog()) {
    std::cout << s.id << "\t" << s.description << "\n";
  }
  return kExitOk;
}

int run_trace(const std::string & scene_arg, const std::string & out_dir, bool plot)
{
  const Loaded in = load(scene_arg);
  const auto np = in.scene.problem();
  const auto & cfg = in.scene.trace;
  np.base().require_in_domain(in.scene.x0);
  if (!sschar::is_singular(np.base(), in.scene.x0, cfg.diam_tol)) {
    throw Error(Errc::invalid_argument, "x0 is not a singular point of u");
  }

  const auto trace = sschar::build_characteristic(np, in.scene.x0, cfg);
  const auto rep = sschar::verify(trace, np, cfg);
  const json report = sschar::make_report(in.label, in.scene, trace, rep);

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    std::ofstream csv(dir / "trace.csv", std::ios::binary);
    sschar::write_trace_csv(csv, trace);
    std::ofstream(dir / "report.json", std::ios::binary) << report.dump(2) << "\n";
    if (plot) {
      std::ofstream svg(dir / "plot.svg", std::ios::binary);
      sschar::write_plot_svg(svg, np, trace, cfg);
    }
  }
  std::cout << report.dump(2) << "\n";
  if (trace.termination == sschar::Termination::numerical_failure) {
    std::cerr << "numerical failure: " << trace.message << "\n";
    return kExitNumerical;
  }
  if (!rep.passed()) {
    std::cerr << "verification failed\n";
    return kExitVerify;
  }
  return kExitOk;
}

// Points of the image of phi: x uniform in the domain, p drawn from D+w(x)
// (a convex combination of the reachable gradients).
std::vector<Vec2> sample_image(const sschar::NormalizedProblem & np, std::mt19937 & rng, int n)
{
  const auto & d = np.domain();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Vec2> out;
  while (static_cast<int>(out.size()) < n) {
    const Vec2 x{d.center.x1 + d.radius * (2.0 * unit(rng) - 1.0),
      d.center.x2 + d.radius * (2.0 * unit(rng) - 1.0)};
    if (d.distance_to_boundary(x) < 0.05 * d.radius) {continue;}
    const auto k = np.superdifferential_w(x);
    Vec2 p{};
    double sum = 0.0;
    for (const auto & q : k.vertices()) {
      const double wgt = unit(rng) + 1e-3;
      p += wgt * q;
      sum += wgt;
    }
    out.push_back(p / sum);
  }
  return out;
}

int run_verify(const std::string & scene_arg, unsigned seed, int cases)
{
  const Loaded in = load(scene_arg);
  const auto np = in.scene.problem();
  const auto & h = np.hamiltonian();
  const auto & u = np.base();
  const auto & d = np.domain();
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  json out = {{"scenario", in.label}, {"seed", seed}, {"cases", cases}};
  bool ok = true;

  // bilipschitz / monotonicity of x(p)
  {
    const auto pts = sample_image(np, rng, 2 * cases);
    std::vector<std::pair<Vec2, Vec2>> pairs;
    for (int i = 0; i + 1 < 2 * cases; i += 2) {pairs.emplace_back(pts[i], pts[i + 1]);}
    const auto r = sschar::check_bilipschitz(np, pairs);
    out["bilipschitz"] = {{"pairs", r.pairs}, {"max_lipschitz_excess", r.max_lipschitz_excess},
      {"max_graph_ratio", r.max_graph_ratio}, {"pass", r.lipschitz_violations == 0 && r.graph_violations == 0}};
    out["monotonicity"] = {{"max_excess", r.max_monotonicity_excess},
      {"pass", r.monotonicity_violations == 0}};
    ok = ok && r.ok();
  }

  // exposed faces against brute-force minimization over the generators
  {
    std::size_t bad = 0;
    for (int i = 0; i < cases; ++i) {
      std::vector<Vec2> pts;
      const int m = 1 + static_cast<int>(unit(rng) * 8);
      for (int j = 0; j < m; ++j) {pts.push_back({2.0 * unit(rng) - 1.0, 2.0 * unit(rng) - 1.0});}
      const auto k = sschar::hull(pts);
      const double th = 2.0 * 3.141592653589793 * unit(rng);
      const Vec2 dir{std::cos(th), std::sin(th)};
      const auto f = sschar::exposed_face(k, dir, 1e-12);
      // faces are the minimizers of <., dir>
      double best = 1e300;
      for (const auto & q : pts) {best = std::min(best, dot(q, dir));}
      for (const auto & e : f.endpoints) {
        if (std::abs(dot(e, dir) - best) > 1e-12) {++bad;}
      }
    }
    out["exposed_face"] = {{"violations", bad}, {"pass", bad == 0}};
    ok = ok && bad == 0;
  }

  // p# against dense boundary sampling of D+u(x) at singular points
  {
    std::size_t bad = 0;
    std::size_t checked = 0;
    double worst = 0.0;
    for (int i = 0; i < 50 * cases && checked < static_cast<std::size_t>(cases); ++i) {
      const Vec2 x{d.center.x1 + d.radius * (2.0 * unit(rng) - 1.0),
        d.center.x2 + d.radius * (2.0 * unit(rng) - 1.0)};
      if (!d.contains(x)) {continue;}
      // Newton on u_a - u_b = 0 moves x onto the singular set of two branches
      Vec2 y = x;
      const auto & br = u.branches();
      if (br.size() >= 2) {
        const std::size_t a = static_cast<std::size_t>(unit(rng) * br.size()) % br.size();
        const std::size_t b = (a + 1) % br.size();
        for (int it = 0; it < 50; ++it) {
          const double gap = sschar::branch_value(br[a], y) - sschar::branch_value(br[b], y);
          const Vec2 g = sschar::branch_gradient(br[a], y) - sschar::branch_gradient(br[b], y);
          if (sschar::norm2(g) < 1e-14) {break;}
          y = y - (gap / sschar::norm2(g)) * g;
          if (std::abs(gap) < 1e-14) {break;}
        }
      }
      if (!d.contains(y)) {continue;}
      const double uval = sschar::eval(u, y);
      const auto k = sschar::superdifferential(u, y);
      if (k.is_point()) {continue;}
      ++checked;
      const auto sp = sschar::p_sharp(h, y, uval, k, 1e-12);
      double best = sp.h_value;
      for (std::size_t e = 0; e < k.edge_count(); ++e) {
        const auto [q0, q1] = k.edge(e);
        for (int s = 0; s <= 2000; ++s) {
          best = std::min(best, h.value(y, q0 + (s / 2000.0) * (q1 - q0), uval));
        }
      }
      worst = std::max(worst, sp.h_value - best);
      if (sp.h_value > best + 1e-12) {++bad;}
    }
    out["p_sharp"] = {{"points", checked}, {"max_excess", worst}, {"pass", bad == 0}};
    ok = ok && bad == 0;
  }

  // |H(x, Du(x), u(x))| at nonsingular grid points
  {
    const int n = 64;
    double worst = 0.0;
    std::size_t points = 0;
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n; ++j) {
        const Vec2 x{d.center.x1 - d.radius + 2.0 * d.radius * i / n,
          d.center.x2 - d.radius + 2.0 * d.radius * j / n};
        if (!d.contains(x)) {continue;}
        const auto act = sschar::active_set(u, x);
        if (act.size() != 1) {continue;}
        const double uval = sschar::eval(u, x);
        const Vec2 p = sschar::branch_gradient(u.branches()[act[0]], x);
        worst = std::max(worst, std::abs(h.value(x, p, uval)));
        ++points;
      }
    }
    const bool pass = worst <= in.scene.viscosity_residual_tol;
    out["viscosity_residual"] = {{"points", points}, {"max", worst},
      {"tol", in.scene.viscosity_residual_tol}, {"pass", pass}};
    ok = ok && pass;
  }

  out["pass"] = ok;
  std::cout << out.dump(2) << "\n";
  if (!ok) {
    std::cerr << "verification failed\n";
    return kExitVerify;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Strict singular characteristics of 2D Hamilton-Jacobi equations"};
  app.require_subcommand(1);

  std::string scene;
  std::string out_dir;
  bool plot = false;
  auto * trace = app.add_subcommand("trace", "trace a strict singular characteristic");
  trace->add_option("--scene", scene, "scene file or builtin:<id>")->required();
  trace->add_option("--out", out_dir, "output directory for trace.csv and report.json");
  trace->add_flag("--plot", plot, "also write plot.svg");

  unsigned seed = 12345;
  int cases = 200;
  auto * verify = app.add_subcommand("verify", "run the property suites on a scene");
  verify->add_option("--scene", scene, "scene file or builtin:<id>")->required();
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--cases", cases, "random cases per suite")->check(CLI::Range(1, 100000));

  auto * list = app.add_subcommand("list-scenarios", "print the built-in scenario ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (list->parsed()) {return run_list();}
    if (trace->parsed()) {return run_trace(scene, out_dir, plot);}
    if (verify->parsed()) {return run_verify(scene, seed, cases);}
  } catch (const Error & e) {
    std::cerr << "error (" << sschar::to_string(e.code()) << "): " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitConfig;
}
