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
/// \brief trace.csv, report.json and plot.svg writers.

#ifndef SSCHAR__OUTPUT_HPP_
#define SSCHAR__OUTPUT_HPP_

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "sschar/scene.hpp"
#include "sschar/semiconcave.hpp"
#include "sschar/tracer.hpp"

namespace sschar
{

inline const char * kTraceCsvHeader =
  "t,x1,x2,p1,p2,v1,v2,h_value,diam,fd_residual,gc_residual";

/// 17 significant digits, enough to round-trip a double.
inline std::string format_double(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void write_trace_csv(std::ostream & os, const Trace & trace)
{
  os << kTraceCsvHeader << '\n';
  for (const auto & s : trace.samples) {
    const double cols[] = {
      s.t, s.x.x1, s.x.x2, s.p.x1, s.p.x2, s.v.x1, s.v.x2, s.h_value, s.diam, s.fd_residual,
      s.gc_residual};
    bool first = true;
    for (const double c : cols) {
      if (!first) {os << ',';}
      os << format_double(c);
      first = false;
    }
    os << '\n';
  }
}

inline nlohmann::json make_report(
  const std::string & scenario, const SceneSpec & scene, const Trace & trace,
  const VerifyReport & rep)
{
  using J = nlohmann::json;
  J anchors = J::array();
  for (const auto & a : trace.anchors) {
    anchors.push_back(
      {{"time", a.time}, {"x", {a.x.x1, a.x.x2}}, {"p1", {a.p1.x1, a.p1.x2}},
        {"p2", {a.p2.x1, a.p2.x2}}, {"sample_index", a.sample_index}, {"p_step", a.p_step},
        {"critical", a.critical}});
  }
  J changes = J::array();
  for (const auto & c : active_set_changes(trace)) {
    changes.push_back({{"t", c.t}, {"sample_index", c.sample_index}, {"active", c.active}});
  }
  const auto & last = trace.samples.back();
  return {
    {"scenario", scenario},
    {"config", to_json(scene.trace)},
    {"termination", to_string(trace.termination)},
    {"message", trace.message},
    {"samples", trace.samples.size()},
    {"endpoint", {{"t", last.t}, {"x", {last.x.x1, last.x.x2}}}},
    {"anchors", anchors},
    {"active_set_changes", changes},
    {"residuals", {
        {"max_fd", rep.max_fd}, {"max_gc", rep.max_gc}, {"min_diam", rep.min_diam},
        {"max_right_oscillation", rep.max_right_oscillation},
        {"max_argmin_violation", rep.max_argmin_violation}}},
    {"pass", {
        {"right_derivative", rep.right_derivative},
        {"right_continuity", rep.right_continuity},
        {"singular_persistence", rep.singular_persistence},
        {"argmin_selection", rep.argmin_selection},
        {"generalized_characteristic", rep.generalized_characteristic}}}};
}

/// 800 x 800 picture of the domain: singular grid points in light gray, the
/// trace in black, anchors as circles.
inline void write_plot_svg(
  std::ostream & os, const NormalizedProblem & np, const Trace & trace, const TraceConfig & cfg,
  int grid_n = 160)
{
  const Domain & d = np.domain();
  const double size = 800.0;
  const double margin = 20.0;
  const double scale = (size - 2.0 * margin) / (2.0 * d.radius);
  const auto px = [&](const Vec2 & x) {
      return Vec2{margin + (x.x1 - d.center.x1 + d.radius) * scale,
        size - margin - (x.x2 - d.center.x2 + d.radius) * scale};
    };
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
     << "viewBox=\"0 0 800 800\">\n";
  os << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
  const Vec2 c = px(d.center);
  os << "<circle cx=\"" << c.x1 << "\" cy=\"" << c.x2 << "\" r=\"" << d.radius * scale
     << "\" fill=\"none\" stroke=\"#cccccc\"/>\n";
  // a grid cell counts as singular when two branches are within a cell's
  // worth of variation of each other
  const double h = 2.0 * d.radius / grid_n;
  for (int i = 0; i <= grid_n; ++i) {
    for (int j = 0; j <= grid_n; ++j) {
      const Vec2 x{d.center.x1 - d.radius + i * h, d.center.x2 - d.radius + j * h};
      if (!d.contains(x)) {continue;}
      const double uval = eval(np.base(), x);
      double lip = 0.0;
      for (const auto & b : np.base().branches()) {lip = std::max(lip, norm(branch_gradient(b, x)));}
      const double gap = 0.5 * h * (1.0 + lip);
      if (!is_singular(np.base(), x, cfg.diam_tol, gap + default_gap_tol(uval))) {continue;}
      const Vec2 q = px(x);
      os << "<rect x=\"" << q.x1 - 1.5 << "\" y=\"" << q.x2 - 1.5
         << "\" width=\"3\" height=\"3\" fill=\"#c8c8c8\"/>\n";
    }
  }
  os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"2\" points=\"";
  for (const auto & s : trace.samples) {
    const Vec2 q = px(s.x);
    os << q.x1 << ',' << q.x2 << ' ';
  }
  os << "\"/>\n";
  for (const auto & a : trace.anchors) {
    const Vec2 q = px(a.x);
    os << "<circle cx=\"" << q.x1 << "\" cy=\"" << q.x2
       << "\" r=\"4\" fill=\"none\" stroke=\"#d04040\"/>\n";
  }
  os << "</svg>\n";
}

}  // namespace sschar

#endif  // SSCHAR__OUTPUT_HPP_
