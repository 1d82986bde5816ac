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
/// \brief Sampled Lipschitz curves: length, stall intervals, unit-speed
/// reparameterization, and the forward Euler scheme for x'+ = f(x).

#ifndef SSCHAR__LIPCURVE_HPP_
#define SSCHAR__LIPCURVE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "sschar/vec2.hpp"

namespace sschar
{

/// Polyline through `points` at strictly increasing `params`, with the
/// running chord sum in `cumlen`.
class SampledCurve
{
public:
  SampledCurve() = default;

  /// Validates monotone parameters and, when `kappa` is finite, the chord
  /// Lipschitz bound |point_k - point_{k-1}| <= kappa (t_k - t_{k-1}).
  SampledCurve(std::vector<double> params, std::vector<Vec2> points,
    double kappa = std::numeric_limits<double>::infinity())
  : params_(std::move(params)), points_(std::move(points))
  {
    if (params_.empty() || params_.size() != points_.size()) {
      throw Error(Errc::invalid_argument, "curve needs matching, nonempty params and points");
    }
    cumlen_.assign(params_.size(), 0.0);
    for (std::size_t k = 1; k < params_.size(); ++k) {
      const double dt = params_[k] - params_[k - 1];
      if (!(dt > 0.0)) {
        throw Error(Errc::invalid_argument, "curve params must be strictly increasing");
      }
      const double chord = distance(points_[k], points_[k - 1]);
      if (std::isfinite(kappa) && chord > kappa * dt * (1.0 + 1e-9) + 1e-12) {
        throw Error(Errc::invalid_argument, "chord exceeds the declared Lipschitz bound");
      }
      cumlen_[k] = cumlen_[k - 1] + chord;
    }
  }

  const std::vector<double> & params() const {return params_;}
  const std::vector<Vec2> & points() const {return points_;}
  const std::vector<double> & cumlen() const {return cumlen_;}
  std::size_t size() const {return params_.size();}
  double t_begin() const {return params_.front();}
  double t_end() const {return params_.back();}
  double total_length() const {return cumlen_.back();}

  /// Index k with params[k] <= t < params[k+1] (the last segment for t_end).
  std::size_t segment(double t) const
  {
    require_in_range(t);
    if (params_.size() == 1) {return 0;}
    const auto it = std::upper_bound(params_.begin(), params_.end(), t);
    const std::size_t k = static_cast<std::size_t>(it - params_.begin());
    return std::min(k == 0 ? 0 : k - 1, params_.size() - 2);
  }

  Vec2 at(double t) const
  {
    const std::size_t k = segment(t);
    if (params_.size() == 1) {return points_[0];}
    const double s = (t - params_[k]) / (params_[k + 1] - params_[k]);
    return points_[k] + s * (points_[k + 1] - points_[k]);
  }

  double length_at(double t) const
  {
    const std::size_t k = segment(t);
    if (params_.size() == 1) {return 0.0;}
    const double s = (t - params_[k]) / (params_[k + 1] - params_[k]);
    return cumlen_[k] + s * (cumlen_[k + 1] - cumlen_[k]);
  }

  void require_in_range(double t) const
  {
    if (!(t >= params_.front() && t <= params_.back())) {
      throw Error(Errc::out_of_range, "curve parameter " + std::to_string(t) + " out of range");
    }
  }

private:
  std::vector<double> params_;
  std::vector<Vec2> points_;
  std::vector<double> cumlen_;
};

/// Length of the curve restricted to [t1, t2]; chord sums are exact for a
/// polyline, and interior parameters interpolate linearly.
inline double arc_length(const SampledCurve & c, double t1, double t2)
{
  if (t1 > t2) {
    throw Error(Errc::out_of_range, "arc_length needs t1 <= t2");
  }
  return c.length_at(t2) - c.length_at(t1);
}

struct StallInterval
{
  double tau1{0.0};
  double tau2{0.0};
};

/// Maximal parameter interval around t on which every sample stays within
/// eps_stall of c(t).
inline StallInterval stall_interval(const SampledCurve & c, double t, double eps_stall)
{
  c.require_in_range(t);
  const Vec2 at = c.at(t);
  const auto & prm = c.params();
  const auto & pts = c.points();
  StallInterval out{t, t};
  auto lo = std::upper_bound(prm.begin(), prm.end(), t);
  for (std::size_t i = static_cast<std::size_t>(lo - prm.begin()); i-- > 0; ) {
    if (distance(pts[i], at) > eps_stall) {break;}
    out.tau1 = prm[i];
  }
  auto hi = std::lower_bound(prm.begin(), prm.end(), t);
  for (std::size_t i = static_cast<std::size_t>(hi - prm.begin()); i < prm.size(); ++i) {
    if (distance(pts[i], at) > eps_stall) {break;}
    out.tau2 = prm[i];
  }
  return out;
}

inline double default_eps_stall(const SampledCurve & c)
{
  double diam = 0.0;
  const auto & pts = c.points();
  for (const auto & p : pts) {diam = std::max(diam, distance(p, pts.front()));}
  return 1e-10 * diam;
}

/// Sample indices that survive stall collapsing: a sample is dropped when it
/// lies within eps_stall of the last kept one. The final sample is always
/// represented, either by itself or by the kept sample it stalls on.
inline std::vector<std::size_t> stall_free_indices(const SampledCurve & c, double eps_stall)
{
  std::vector<std::size_t> kept{0};
  const auto & pts = c.points();
  for (std::size_t k = 1; k < pts.size(); ++k) {
    if (distance(pts[k], pts[kept.back()]) > eps_stall) {kept.push_back(k);}
  }
  return kept;
}

/// Reindexes the curve by arc length s in [0, l(0, t_end)]. Stalls collapse to
/// one sample, and every chord/delta-s ratio lies in [1 - 1e-9, 1].
inline SampledCurve reparam_by_length(const SampledCurve & c, double eps_stall)
{
  const auto kept = stall_free_indices(c, eps_stall);
  if (kept.size() < 2) {
    throw Error(Errc::degenerate_curve, "zero-length curve cannot be reparameterized by length");
  }
  std::vector<double> s{0.0};
  std::vector<Vec2> pts{c.points()[kept[0]]};
  for (std::size_t j = 1; j < kept.size(); ++j) {
    const Vec2 & p = c.points()[kept[j]];
    const double chord = distance(p, pts.back());
    double next = s.back() + chord;
    // rounding must never make a step shorter than its chord
    while (next - s.back() < chord) {
      next = std::nextafter(next, std::numeric_limits<double>::infinity());
    }
    s.push_back(next);
    pts.push_back(p);
  }
  return SampledCurve(std::move(s), std::move(pts));
}

/// Piecewise linear scalar function through (t_k, x_k).
struct SampledFunction
{
  std::vector<double> t;
  std::vector<double> x;

  double operator()(double tt) const
  {
    if (tt <= t.front()) {return x.front();}
    if (tt >= t.back()) {return x.back();}
    const auto it = std::upper_bound(t.begin(), t.end(), tt);
    const std::size_t k = static_cast<std::size_t>(it - t.begin()) - 1;
    const double s = (tt - t[k]) / (t[k + 1] - t[k]);
    return x[k] + s * (x[k + 1] - x[k]);
  }
  double t_end() const {return t.back();}
};

namespace detail
{

template<class F>
double checked_rate(const F & f, double y, double b1, double b2)
{
  const double v = f(y);
  const double slack = 1e-12 * (1.0 + b2);
  if (!(v >= b1 - slack && v <= b2 + slack)) {
    throw Error(
      Errc::contract_violation,
      "ode rate f(" + std::to_string(y) + ") = " + std::to_string(v) + " outside [b1, b2]");
  }
  return v;
}

inline void check_ode_args(double a, double b1, double b2, long m)
{
  if (!(a > 0.0) || !(b1 > 0.0) || !(b2 >= b1) || !std::isfinite(b2) || m < 1) {
    throw Error(Errc::invalid_argument, "euler scheme needs a > 0, 0 < b1 <= b2 < inf, m >= 1");
  }
}

}  // namespace detail

/// Forward Euler for x'+(t) = f(x(t)), x(0) = 0 on [0, a/b2] with m uniform
/// cells: on each cell the slope is f evaluated at the left grid value. The
/// iterates are b1-increasing and b2-Lipschitz, and stay below a.
template<class F>
SampledFunction euler_right_ode(const F & f, double a, double b1, double b2, long m)
{
  detail::check_ode_args(a, b1, b2, m);
  const double horizon = a / b2;
  SampledFunction out;
  out.t.resize(static_cast<std::size_t>(m) + 1);
  out.x.resize(static_cast<std::size_t>(m) + 1);
  out.t[0] = 0.0;
  out.x[0] = 0.0;
  for (long i = 1; i <= m; ++i) {
    const double t0 = horizon * static_cast<double>(i - 1) / static_cast<double>(m);
    const double t1 = horizon * static_cast<double>(i) / static_cast<double>(m);
    const double y = out.x[static_cast<std::size_t>(i - 1)];
    out.t[static_cast<std::size_t>(i)] = t1;
    out.x[static_cast<std::size_t>(i)] = y + detail::checked_rate(f, y, b1, b2) * (t1 - t0);
  }
  return out;
}

/// Same scheme, continued until x reaches a. The grid uses m cells over
/// [0, a/b1], the latest possible arrival; the final cell is cut at the
/// arrival time so the last sample is exactly (t_arrival, a).
template<class F>
SampledFunction euler_right_ode_to_arrival(const F & f, double a, double b1, double b2, long m)
{
  detail::check_ode_args(a, b1, b2, m);
  const double h = (a / b1) / static_cast<double>(m);
  SampledFunction out;
  out.t.push_back(0.0);
  out.x.push_back(0.0);
  for (long i = 1; out.x.back() < a; ++i) {
    const double y = out.x.back();
    const double rate = detail::checked_rate(f, y, b1, b2);
    const double t0 = out.t.back();
    const double t1 = h * static_cast<double>(i);
    const double y1 = y + rate * (t1 - t0);
    if (y1 >= a || i >= m) {
      out.t.push_back(t0 + (a - y) / rate);
      out.x.push_back(a);
      break;
    }
    out.t.push_back(t1);
    out.x.push_back(y1);
  }
  return out;
}

/// Sup-norm distance between two piecewise linear functions, both held
/// constant past their last sample.
inline double sup_distance(const SampledFunction & u, const SampledFunction & v)
{
  double d = 0.0;
  for (std::size_t i = 0; i < u.t.size(); ++i) {d = std::max(d, std::abs(u.x[i] - v(u.t[i])));}
  for (std::size_t i = 0; i < v.t.size(); ++i) {d = std::max(d, std::abs(v.x[i] - u(v.t[i])));}
  return d;
}

struct RefinedOde
{
  SampledFunction solution;
  long m{0};
  double last_change{0.0};
};

/// Doubles m from m0 until successive iterates differ by less than tol in sup
/// norm. Throws nonconvergence if m would exceed m_max.
template<class Scheme>
RefinedOde refine_until_cauchy(const Scheme & scheme, double tol, long m0 = 16, long m_max = 1L << 24)
{
  RefinedOde r;
  r.m = m0;
  r.solution = scheme(r.m);
  while (true) {
    if (2 * r.m > m_max) {
      throw Error(
        Errc::nonconvergence,
        "euler refinement not Cauchy at m = " + std::to_string(r.m) +
        " (last change " + std::to_string(r.last_change) + ")");
    }
    SampledFunction finer = scheme(2 * r.m);
    r.last_change = sup_distance(r.solution, finer);
    r.m *= 2;
    r.solution = std::move(finer);
    if (r.last_change < tol) {return r;}
  }
}

/// x(t2) >= x(t1) + b (t2 - t1) - 1e-12 for every pair of samples t1 <= t2.
inline bool b_increasing_check(const SampledFunction & x, double b)
{
  // equivalent to g = x - b t never dropping below its running maximum
  double run_max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.t.size(); ++i) {
    const double g = x.x[i] - b * x.t[i];
    if (g < run_max - 1e-12) {return false;}
    run_max = std::max(run_max, g);
  }
  return true;
}

/// |x(t2) - x(t1)| <= L |t2 - t1| + 1e-12 for every pair of samples.
inline bool lipschitz_check(const SampledFunction & x, double lip)
{
  double max_lo = -std::numeric_limits<double>::infinity();
  double min_hi = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.t.size(); ++i) {
    const double lo = x.x[i] + lip * x.t[i];
    const double hi = x.x[i] - lip * x.t[i];
    if (lo < max_lo - 1e-12 || hi > min_hi + 1e-12) {return false;}
    max_lo = std::max(max_lo, lo);
    min_hi = std::min(min_hi, hi);
  }
  return true;
}

}  // namespace sschar

#endif  // SSCHAR__LIPCURVE_HPP_
