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
/// \brief Construction and verification of strict singular characteristics.
///
/// One leg of the construction, starting from a singular anchor x0 with
/// nonzero velocity v#(x0):
///
///  1. walk the line eta(t) = p~(x0) - t v#/|v#| in normalized p-space and
///     pull it back, gamma1(t) = x(eta(t));
///  2. reparameterize gamma1 by arc length (gamma2, unit speed, stalls removed);
///  3. solve tau'+(s) = |v#(gamma2(tau(s)))| with the right-Euler scheme;
///  4. gamma = gamma2 o tau, which moves with velocity v#.
///
/// Legs are chained by re-anchoring at the end point of the previous one. A
/// critical anchor (|v#| <= v_min) is continued by the constant curve.

#ifndef SSCHAR__TRACER_HPP_
#define SSCHAR__TRACER_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sschar/geometry2d.hpp"
#include "sschar/hamiltonian.hpp"
#include "sschar/lipcurve.hpp"
#include "sschar/phimap.hpp"
#include "sschar/semiconcave.hpp"
#include "sschar/vec2.hpp"

namespace sschar
{

struct TraceConfig
{
  /// Step of the eta-line parameter.
  double p_step{1e-3};
  /// Total characteristic time.
  double t_max{1.0};
  /// Velocities at or below this norm are critical.
  double v_min{1e-8};
  /// Maximum eta steps per leg before re-anchoring.
  int reanchor_every{100};
  /// Sup-norm Cauchy tolerance for m-doubling of the time-change ODE.
  double ode_tol{1e-8};
  /// Relative membership tolerance for x(p), scaled by (1 + |p|).
  double membership_tol{1e-7};
  /// D+u(x) with diameter at or below this is a point (x nonsingular).
  double diam_tol{1e-6};
  /// Maximum number of legs.
  int max_restarts{10000};
  /// A step landing on a critical point is accepted as a finite-time arrival
  /// when distance / |v#| from the previous sample is at most this (time units).
  double arrival_time_tol{1e-2};

  void validate() const
  {
    const bool ok = p_step > 0.0 && t_max > 0.0 && v_min > 0.0 && reanchor_every >= 1 &&
      ode_tol > 0.0 && membership_tol > 0.0 && diam_tol > 0.0 && max_restarts >= 1 &&
      arrival_time_tol > 0.0 && std::isfinite(t_max) && std::isfinite(p_step);
    if (!ok) {
      throw Error(Errc::invalid_argument, "trace config: all tolerances and steps must be > 0");
    }
  }
};

struct CharacteristicSample
{
  double t{0.0};
  Vec2 x;
  Vec2 p;
  Vec2 v;
  double h_value{0.0};
  double diam{0.0};
  double fd_residual{0.0};
  double gc_residual{0.0};
  std::vector<std::size_t> active;
};

struct AnchorRecord
{
  double time{0.0};
  Vec2 x;
  Vec2 p1;
  Vec2 p2;
  /// Index of the trace sample at the anchor point.
  std::size_t sample_index{0};
  double p_step{0.0};
  bool critical{false};
};

enum class Termination { reached_t_max, critical_point, left_domain, degenerate_face, numerical_failure };

inline const char * to_string(Termination t)
{
  switch (t) {
    case Termination::reached_t_max: return "reached_t_max";
    case Termination::critical_point: return "critical_point";
    case Termination::left_domain: return "left_domain";
    case Termination::degenerate_face: return "degenerate_face";
    case Termination::numerical_failure: return "numerical_failure";
  }
  return "unknown";
}

struct Trace
{
  std::vector<CharacteristicSample> samples;
  std::vector<AnchorRecord> anchors;
  Termination termination{Termination::numerical_failure};
  std::string message;
};

/// anchor_p - t anchor_v / |anchor_v|
inline Vec2 eta_line(const Vec2 & anchor_p, const Vec2 & anchor_v, double t, double v_min = 0.0)
{
  const double len = norm(anchor_v);
  if (!(len > v_min) || len == 0.0) {
    throw Error(Errc::invalid_argument, "eta_line needs a noncritical anchor velocity");
  }
  return anchor_p - (t / len) * anchor_v;
}

/// Everything the tracer needs to know about a single point.
struct PointState
{
  Vec2 x;
  double u{0.0};
  ConvexPolytope2 k;
  SharpPair sharp;
  double diam{0.0};
  std::vector<std::size_t> active;
};

inline double face_tol(const ConvexPolytope2 & k) {return 1e-9 * (1.0 + k.scale());}

inline PointState evaluate_point(const NormalizedProblem & np, const Vec2 & x)
{
  PointState s{x, eval(np.base(), x), superdifferential(np.base(), x), {}, 0.0, active_set(np.base(), x)};
  s.sharp = p_sharp(np.hamiltonian(), x, s.u, s.k, face_tol(s.k));
  s.diam = diameter(s.k);
  return s;
}

enum class LegStop { reanchor, image_failure, left_domain, lost_singularity, direction_drift, critical };

inline const char * to_string(LegStop s)
{
  switch (s) {
    case LegStop::reanchor: return "reanchor";
    case LegStop::image_failure: return "image_failure";
    case LegStop::left_domain: return "left_domain";
    case LegStop::lost_singularity: return "lost_singularity";
    case LegStop::direction_drift: return "direction_drift";
    case LegStop::critical: return "critical";
  }
  return "unknown";
}

struct PLineSample
{
  double t{0.0};
  Vec2 eta;
  PointState state;
  /// max distance from the reachable gradients of D+w(x) to {p1, p2} of the
  /// anchor face (normalized coordinates).
  double cluster_radius{0.0};
  /// eta lies in the relative interior of E(D+w(x), v#(x)).
  bool eta_in_face{false};
};

struct PLineLeg
{
  Vec2 anchor_p_tilde;
  Vec2 anchor_v;
  /// Endpoints of the anchor face in original coordinates.
  Vec2 p1;
  Vec2 p2;
  double step{0.0};
  std::vector<PLineSample> samples;
  /// Sample that landed on a critical point, kept out of `samples`.
  std::optional<PLineSample> critical;
  LegStop stop{LegStop::reanchor};
  std::string detail;

  SampledCurve curve() const
  {
    std::vector<double> t;
    std::vector<Vec2> x;
    for (const auto & s : samples) {
      t.push_back(s.t);
      x.push_back(s.state.x);
    }
    return SampledCurve(std::move(t), std::move(x));
  }
};

namespace detail
{

inline PLineSample make_pline_sample(
  const NormalizedProblem & np, double t, const Vec2 & eta, PointState st,
  const Vec2 & p1w, const Vec2 & p2w)
{
  PLineSample s;
  s.t = t;
  s.eta = eta;
  const Vec2 df = np.shift_gradient(st.x);
  for (const auto & q : st.k.vertices()) {
    const Vec2 qw = q - df;
    s.cluster_radius = std::max(s.cluster_radius, std::min(distance(qw, p1w), distance(qw, p2w)));
  }
  if (st.sharp.face && st.sharp.face->kind == FaceKind::segment) {
    const Vec2 a = st.sharp.face->endpoints[0] - df;
    const Vec2 b = st.sharp.face->endpoints[1] - df;
    const double tol = 1e-7 * (1.0 + norm(eta));
    s.eta_in_face = distance(project_to_segment(a, b, eta), eta) <= tol &&
      distance(eta, a) > tol && distance(eta, b) > tol;
  }
  s.state = std::move(st);
  return s;
}

}  // namespace detail

/// Samples gamma1(t_k) = x(eta(t_k)), t_k = k p_step, from the singular anchor
/// x0 until reanchor_every steps, a membership or domain failure, loss of
/// singularity, a critical point, or until v# stops pointing along the anchor
/// velocity (<v#(gamma1), v0/|v0|> < |v0|/2).
inline PLineLeg trace_p_line(const NormalizedProblem & np, const Vec2 & x0, const TraceConfig & cfg)
{
  cfg.validate();
  PointState st = evaluate_point(np, x0);
  if (st.diam <= cfg.diam_tol) {
    throw Error(Errc::invalid_argument, "trace anchor is not a singular point");
  }
  const Vec2 v0 = st.sharp.v_sharp;
  const double v0n = norm(v0);
  if (v0n <= cfg.v_min) {
    throw Error(Errc::invalid_argument, "trace anchor is a critical point (v# = 0)");
  }
  PLineLeg leg;
  std::tie(leg.p1, leg.p2) = face_endpoints(st.k, v0, face_tol(st.k));
  leg.anchor_v = v0;
  leg.anchor_p_tilde = st.sharp.p_sharp - np.shift_gradient(x0);
  leg.step = cfg.p_step;
  const Vec2 p1w = leg.p1 - np.shift_gradient(x0);
  const Vec2 p2w = leg.p2 - np.shift_gradient(x0);
  const Vec2 vhat = v0 / v0n;

  leg.samples.push_back(
    detail::make_pline_sample(np, 0.0, leg.anchor_p_tilde, std::move(st), p1w, p2w));
  leg.stop = LegStop::reanchor;
  for (int k = 1; k <= cfg.reanchor_every; ++k) {
    const double t = k * cfg.p_step;
    const Vec2 eta = eta_line(leg.anchor_p_tilde, v0, t);
    XOfPOptions opts;
    opts.hint = leg.samples.back().state.x;
    opts.membership_tol = cfg.membership_tol * (1.0 + norm(eta));
    Vec2 x;
    try {
      x = x_of_p(np, eta, opts).x_of_p;
    } catch (const Error & e) {
      leg.stop = LegStop::image_failure;
      leg.detail = e.what();
      break;
    }
    if (!np.domain().contains(x)) {
      leg.stop = LegStop::left_domain;
      break;
    }
    PointState s = evaluate_point(np, x);
    if (s.diam <= cfg.diam_tol) {
      leg.stop = LegStop::lost_singularity;
      break;
    }
    if (norm(s.sharp.v_sharp) <= cfg.v_min) {
      leg.critical = detail::make_pline_sample(np, t, eta, std::move(s), p1w, p2w);
      leg.stop = LegStop::critical;
      break;
    }
    if (dot(s.sharp.v_sharp, vhat) < 0.5 * v0n) {
      leg.stop = LegStop::direction_drift;
      break;
    }
    leg.samples.push_back(detail::make_pline_sample(np, t, eta, std::move(s), p1w, p2w));
  }
  return leg;
}

namespace detail
{

/// Residual columns of a trace, computed sample by sample.
inline void fill_residuals(Trace & trace, const NormalizedProblem & np)
{
  auto & s = trace.samples;
  const Mat2 & a = np.hamiltonian().a();
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k + 1 == s.size()) {
      s[k].fd_residual = 0.0;
      s[k].gc_residual = 0.0;
      continue;
    }
    const Vec2 fd = (s[k + 1].x - s[k].x) / (s[k + 1].t - s[k].t);
    s[k].fd_residual = distance(fd, s[k].v);
    // H_p = A p is linear, so co H_p(x, D+u(x), u) is the image of D+u(x)
    const ConvexPolytope2 kx = superdifferential(np.base(), s[k].x);
    s[k].gc_residual = distance_to(linear_image(kx, a), fd);
  }
}

inline CharacteristicSample to_sample(double t, const PointState & st)
{
  return {t, st.x, st.sharp.p_sharp, st.sharp.v_sharp, st.sharp.h_value, st.diam, 0.0, 0.0, st.active};
}

struct LegAttempt
{
  PLineLeg leg;
  bool arrival{false};
};

constexpr int kMinLegSteps = 8;
constexpr int kMaxHalvings = 40;

}  // namespace detail

/// Builds gamma on [0, t_max] from x0 by chaining legs. Numerical problems end
/// the trace with a termination code rather than an exception; only invalid
/// inputs (x0 outside the domain or nonsingular) throw.
inline Trace build_characteristic(const NormalizedProblem & np, const Vec2 & x0, const TraceConfig & cfg)
{
  cfg.validate();
  Trace trace;
  Vec2 x = x0;
  double time = 0.0;
  {
    const PointState st0 = evaluate_point(np, x0);
    if (st0.diam <= cfg.diam_tol) {
      throw Error(Errc::invalid_argument, "start point is not in the singular set");
    }
  }
  double h_next = cfg.p_step;
  const double t_eps = 1e-12 * (1.0 + cfg.t_max);

  const auto finish_critical = [&](const PointState & st) {
      const std::size_t idx = trace.samples.empty() ? 0 : trace.samples.size() - 1;
      trace.anchors.push_back({time, st.x, st.sharp.p_sharp, st.sharp.p_sharp, idx, 0.0, true});
      const double remaining = cfg.t_max - time;
      const int n = std::max(1, static_cast<int>(std::min(1000.0, std::ceil(remaining / cfg.p_step))));
      if (trace.samples.empty()) {trace.samples.push_back(detail::to_sample(time, st));}
      for (int i = 1; i <= n && remaining > t_eps; ++i) {
        trace.samples.push_back(detail::to_sample(time + remaining * i / n, st));
      }
      trace.termination = Termination::critical_point;
    };

  for (int restart = 0; ; ++restart) {
    if (time >= cfg.t_max - t_eps) {
      trace.termination = Termination::reached_t_max;
      break;
    }
    if (restart >= cfg.max_restarts) {
      trace.termination = Termination::numerical_failure;
      trace.message = "max_restarts reached at t = " + std::to_string(time);
      break;
    }
    const PointState anchor = evaluate_point(np, x);
    if (norm(anchor.sharp.v_sharp) <= cfg.v_min) {
      finish_critical(anchor);
      break;
    }
    if (anchor.diam <= cfg.diam_tol) {
      trace.termination = Termination::numerical_failure;
      trace.message = "trace left the singular set at t = " + std::to_string(time);
      break;
    }

    // eta walk, halving the step until the leg is long enough
    std::optional<detail::LegAttempt> chosen;
    std::optional<detail::LegAttempt> fallback;
    double h = h_next;
    bool stop_trace = false;
    for (int halving = 0; halving <= detail::kMaxHalvings; ++halving, h *= 0.5) {
      TraceConfig leg_cfg = cfg;
      leg_cfg.p_step = h;
      detail::LegAttempt att;
      try {
        att.leg = trace_p_line(np, x, leg_cfg);
      } catch (const Error & e) {
        if (e.code() == Errc::degenerate_face) {
          trace.termination = Termination::degenerate_face;
        } else {
          trace.termination = Termination::numerical_failure;
        }
        trace.message = e.what();
        stop_trace = true;
        break;
      }
      const auto & leg = att.leg;
      const int steps = static_cast<int>(leg.samples.size()) - 1;
      if (leg.critical) {
        const auto & last = leg.samples.back().state;
        const double gap = distance(leg.critical->state.x, last.x);
        att.arrival = gap / norm(last.sharp.v_sharp) <= cfg.arrival_time_tol;
      }
      if (att.arrival || leg.stop == LegStop::reanchor || steps >= detail::kMinLegSteps) {
        chosen = std::move(att);
        break;
      }
      const bool boundary = leg.stop == LegStop::image_failure || leg.stop == LegStop::left_domain;
      if (boundary && steps >= 1) {
        chosen = std::move(att);
        break;
      }
      if (boundary && steps == 0 && np.domain().distance_to_boundary(x) <= h) {
        trace.termination = Termination::left_domain;
        trace.message = leg.detail;
        stop_trace = true;
        break;
      }
      if (steps >= 1 && (!fallback || steps > static_cast<int>(fallback->leg.samples.size()) - 1)) {
        fallback = std::move(att);
      }
    }
    if (stop_trace) {break;}
    if (!chosen) {chosen = std::move(fallback);}
    if (!chosen) {
      trace.termination = Termination::numerical_failure;
      trace.message = "no admissible eta step from x = (" + std::to_string(x.x1) + ", " +
        std::to_string(x.x2) + ")";
      break;
    }
    const PLineLeg & leg = chosen->leg;
    const bool arrival = chosen->arrival;
    h_next = std::min(cfg.p_step, 2.0 * leg.step);

    // gamma1 -> gamma2 (arc length)
    std::vector<double> g1t;
    std::vector<Vec2> g1x;
    std::vector<double> speed;
    for (const auto & s : leg.samples) {
      g1t.push_back(s.t);
      g1x.push_back(s.state.x);
      speed.push_back(norm(s.state.sharp.v_sharp));
    }
    if (arrival) {
      g1t.push_back(leg.critical->t);
      g1x.push_back(leg.critical->state.x);
      // right-continuous rate: the critical value is only reached at the end
      speed.push_back(speed.back());
    }
    const SampledCurve gamma1(g1t, g1x);
    const auto kept = stall_free_indices(gamma1, default_eps_stall(gamma1));
    if (kept.size() < 2) {
      trace.termination = Termination::numerical_failure;
      trace.message = "eta leg did not move";
      break;
    }
    const SampledCurve gamma2 = reparam_by_length(gamma1, default_eps_stall(gamma1));
    SampledFunction rate;
    rate.t = gamma2.params();
    for (const auto idx : kept) {rate.x.push_back(speed[idx]);}
    const double a = gamma2.t_end();
    const auto [mn, mx] = std::minmax_element(rate.x.begin(), rate.x.end());
    const double b1 = 0.9 * *mn;
    const double b2 = 1.1 * *mx;
    if (b1 <= cfg.v_min) {
      trace.termination = Termination::numerical_failure;
      trace.message = "speed bound b1 collapsed below v_min";
      break;
    }

    // tau'+ = |v#(gamma2(tau))|
    RefinedOde ode;
    try {
      ode = refine_until_cauchy(
        [&](long m) {
          return arrival ? euler_right_ode_to_arrival(rate, a, b1, b2, m) :
                 euler_right_ode(rate, a, b1, b2, m);
        }, cfg.ode_tol);
    } catch (const Error & e) {
      trace.termination = Termination::numerical_failure;
      trace.message = e.what();
      break;
    }
    const SampledFunction & tau = ode.solution;
    const double t_leg = tau.t_end();

    // gamma = gamma2 o tau, sampled on a uniform time grid
    const std::size_t anchor_index = trace.samples.empty() ? 0 : trace.samples.size() - 1;
    trace.anchors.push_back({time, x, leg.p1, leg.p2, anchor_index, leg.step, false});
    const int n_out = std::max(16, static_cast<int>(kept.size()) - 1);
    const double t_stop = std::min(t_leg, cfg.t_max - time);
    const auto point_at = [&](double s) -> Vec2 {
        const double tt = std::min(tau(s), a);
        const std::size_t j = gamma2.segment(tt);
        const double s0 = gamma2.params()[j];
        const double s1 = gamma2.params()[j + 1];
        const double theta = std::clamp((tt - s0) / (s1 - s0), 0.0, 1.0);
        if (theta == 0.0) {return gamma2.points()[j];}
        if (theta == 1.0) {return gamma2.points()[j + 1];}
        const bool last_seg = j + 2 == gamma2.size();
        if (arrival && last_seg) {return gamma2.at(tt);}
        // x(eta(t)) at the eta parameter where the motion of this segment happens
        const double ta = g1t[kept[j + 1] - 1];
        const double tb = g1t[kept[j + 1]];
        const Vec2 eta = eta_line(leg.anchor_p_tilde, leg.anchor_v, ta + theta * (tb - ta));
        XOfPOptions opts;
        opts.hint = gamma2.at(tt);
        opts.membership_tol = cfg.membership_tol * (1.0 + norm(eta));
        try {
          return x_of_p(np, eta, opts).x_of_p;
        } catch (const Error &) {
          return gamma2.at(tt);
        }
      };
    const bool first_leg = trace.samples.empty();
    double last_s = 0.0;
    for (int j = first_leg ? 0 : 1; j <= n_out; ++j) {
      double s = t_leg * j / n_out;
      if (s > t_stop + t_eps) {break;}
      if (j == 0) {
        trace.samples.push_back(detail::to_sample(time, leg.samples.front().state));
        continue;
      }
      trace.samples.push_back(detail::to_sample(time + s, evaluate_point(np, point_at(s))));
      last_s = s;
    }
    if (last_s < t_stop - t_eps) {
      trace.samples.push_back(detail::to_sample(time + t_stop, evaluate_point(np, point_at(t_stop))));
      last_s = t_stop;
    }
    time += last_s;
    x = trace.samples.back().x;
    if (arrival && last_s >= t_leg - t_eps) {
      x = leg.critical->state.x;
      trace.samples.back() = detail::to_sample(time, leg.critical->state);
      finish_critical(leg.critical->state);
      break;
    }
  }
  detail::fill_residuals(trace, np);
  return trace;
}

struct ActiveSetChange
{
  double t{0.0};
  std::size_t sample_index{0};
  std::vector<std::size_t> active;
};

/// The active set at the first sample and at every sample where it differs
/// from its predecessor (branch changes, junction arrivals).
inline std::vector<ActiveSetChange> active_set_changes(const Trace & trace)
{
  std::vector<ActiveSetChange> out;
  for (std::size_t k = 0; k < trace.samples.size(); ++k) {
    const auto & s = trace.samples[k];
    if (out.empty() || out.back().active != s.active) {out.push_back({s.t, k, s.active});}
  }
  return out;
}

struct VerifyTolerances
{
  /// max |forward difference - v#|
  double fd_tol{5e-3};
  /// max forward oscillation of v# over `window` samples
  double osc_tol{1e-2};
  double argmin_tol{1e-8};
  int window{10};
};

struct VerifyReport
{
  double max_fd{0.0};
  double max_gc{0.0};
  double min_diam{std::numeric_limits<double>::infinity()};
  double max_right_oscillation{0.0};
  double max_argmin_violation{-std::numeric_limits<double>::infinity()};
  /// samples with gc_residual > 2 fd_residual
  std::size_t gc_violations{0};
  std::vector<double> right_oscillation;

  bool right_derivative{false};
  bool right_continuity{false};
  bool singular_persistence{false};
  bool argmin_selection{false};
  bool generalized_characteristic{false};

  bool passed() const
  {
    return right_derivative && right_continuity && singular_persistence && argmin_selection &&
           generalized_characteristic;
  }
};

/// Forward oscillation max_{j in (k, k+window]} |v_j - v_k|, skipping windows
/// that contain a re-anchor record. NaN marks skipped samples.
inline std::vector<double> right_oscillation(const Trace & trace, int window)
{
  const auto & s = trace.samples;
  std::vector<double> osc(s.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t k = 0; k < s.size(); ++k) {
    const std::size_t end = std::min(s.size() - 1, k + static_cast<std::size_t>(window));
    if (end == k) {continue;}
    const bool crosses = std::any_of(
      trace.anchors.begin(), trace.anchors.end(), [&](const AnchorRecord & a) {
        return a.sample_index >= k && a.sample_index <= end;
      });
    if (crosses) {continue;}
    double m = 0.0;
    for (std::size_t j = k + 1; j <= end; ++j) {m = std::max(m, distance(s[j].v, s[k].v));}
    osc[k] = m;
  }
  return osc;
}

inline VerifyReport verify(
  const Trace & trace, const NormalizedProblem & np, const TraceConfig & cfg,
  const VerifyTolerances & tol = {})
{
  if (trace.samples.empty()) {
    throw Error(Errc::invalid_argument, "verify needs a nonempty trace");
  }
  VerifyReport rep;
  const auto & s = trace.samples;
  for (std::size_t k = 0; k < s.size(); ++k) {
    rep.max_fd = std::max(rep.max_fd, s[k].fd_residual);
    rep.max_gc = std::max(rep.max_gc, s[k].gc_residual);
    if (s[k].gc_residual > 2.0 * s[k].fd_residual + 1e-12) {++rep.gc_violations;}
    const double uval = eval(np.base(), s[k].x);
    // recomputed at x rather than read from the sample
    const ConvexPolytope2 kx = superdifferential(np.base(), s[k].x);
    const bool terminal_critical = trace.termination == Termination::critical_point &&
      norm(s[k].v) <= cfg.v_min;
    if (!terminal_critical) {rep.min_diam = std::min(rep.min_diam, diameter(kx));}
    for (const auto & q : kx.vertices()) {
      const double excess = s[k].h_value - np.hamiltonian().value(s[k].x, q, uval);
      rep.max_argmin_violation = std::max(rep.max_argmin_violation, excess);
    }
  }
  if (!std::isfinite(rep.min_diam)) {rep.min_diam = s.front().diam;}
  rep.right_oscillation = right_oscillation(trace, tol.window);
  for (const double o : rep.right_oscillation) {
    if (!std::isnan(o)) {rep.max_right_oscillation = std::max(rep.max_right_oscillation, o);}
  }
  rep.right_derivative = rep.max_fd <= tol.fd_tol;
  rep.right_continuity = rep.max_right_oscillation <= tol.osc_tol;
  rep.singular_persistence = rep.min_diam > cfg.diam_tol;
  rep.argmin_selection = rep.max_argmin_violation <= tol.argmin_tol;
  rep.generalized_characteristic = rep.gc_violations == 0;
  return rep;
}

/// co H_p(x, K, u) approximated by M barycentric samples of K (vertex weights
/// from a deterministic low-discrepancy sequence), for Hamiltonians whose
/// p-gradient is not linear. Returns the distance from `w` to that hull.
inline double gc_distance_sampled(
  const Hamiltonian & h, const Vec2 & x, double uval, const ConvexPolytope2 & k, const Vec2 & w,
  int m = 200)
{
  std::vector<Vec2> img;
  const auto verts = k.vertices();
  for (const auto & q : verts) {img.push_back(h.grad_p(x, q, uval));}
  for (int i = 1; i <= m && verts.size() > 1; ++i) {
    std::vector<double> wts(verts.size());
    double sum = 0.0;
    for (std::size_t j = 0; j < verts.size(); ++j) {
      // additive recurrence with irrational steps, one per vertex
      const double g = std::fmod(i * (0.6180339887498949 + 0.4142135623730951 * j), 1.0);
      wts[j] = -std::log(1.0 - g * 0.999999);
      sum += wts[j];
    }
    Vec2 q{};
    for (std::size_t j = 0; j < verts.size(); ++j) {q += (wts[j] / sum) * verts[j];}
    img.push_back(h.grad_p(x, q, uval));
  }
  return distance_to(hull(img), w);
}

}  // namespace sschar

#endif  // SSCHAR__TRACER_HPP_
