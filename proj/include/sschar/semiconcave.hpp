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
/// \brief Semiconcave functions represented as the minimum of smooth branches.
///
/// u(x) = min_i u_i(x) on an open disk. Each branch has closed-form value,
/// gradient and Hessian, so the superdifferential D+u(x) is the exact hull of
/// the active gradients.

#ifndef SSCHAR__SEMICONCAVE_HPP_
#define SSCHAR__SEMICONCAVE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "sschar/geometry2d.hpp"
#include "sschar/hamiltonian.hpp"
#include "sschar/vec2.hpp"

namespace sschar
{

/// u_i(x) = -1/2 <Q (x - b), x - b> + d
struct QuadraticBranch
{
  Mat2 q{Mat2::identity()};
  Vec2 center{};
  double offset{0.0};
};

/// u_i(x) = d - c |x - a|, smooth away from the apex ball of radius r.
struct ConeBranch
{
  Vec2 apex{};
  double slope{1.0};
  double offset{0.0};
  double exclusion_radius{0.1};
};

/// u_i(x) = <g, x> + d
struct AffineBranch
{
  Vec2 slope{};
  double offset{0.0};
};

using Branch = std::variant<QuadraticBranch, ConeBranch, AffineBranch>;

inline double branch_value(const Branch & b, const Vec2 & x)
{
  return std::visit(
    [&](const auto & br) -> double {
      using T = std::decay_t<decltype(br)>;
      if constexpr (std::is_same_v<T, QuadraticBranch>) {
        const Vec2 d = x - br.center;
        return -0.5 * dot(br.q * d, d) + br.offset;
      } else if constexpr (std::is_same_v<T, ConeBranch>) {
        return br.offset - br.slope * distance(x, br.apex);
      } else {
        return dot(br.slope, x) + br.offset;
      }
    }, b);
}

inline Vec2 branch_gradient(const Branch & b, const Vec2 & x)
{
  return std::visit(
    [&](const auto & br) -> Vec2 {
      using T = std::decay_t<decltype(br)>;
      if constexpr (std::is_same_v<T, QuadraticBranch>) {
        return -(br.q * (x - br.center));
      } else if constexpr (std::is_same_v<T, ConeBranch>) {
        const Vec2 d = x - br.apex;
        return (-br.slope / norm(d)) * d;
      } else {
        return br.slope;
      }
    }, b);
}

inline Mat2 branch_hessian(const Branch & b, const Vec2 & x)
{
  return std::visit(
    [&](const auto & br) -> Mat2 {
      using T = std::decay_t<decltype(br)>;
      if constexpr (std::is_same_v<T, QuadraticBranch>) {
        return -1.0 * br.q;
      } else if constexpr (std::is_same_v<T, ConeBranch>) {
        const Vec2 d = x - br.apex;
        const double r = norm(d);
        const Vec2 n = d / r;
        return (-br.slope / r) * (Mat2::identity() - outer(n, n));
      } else {
        return Mat2{};
      }
    }, b);
}

inline const char * branch_kind(const Branch & b)
{
  switch (b.index()) {
    case 0: return "quadratic";
    case 1: return "cone";
    default: return "affine";
  }
}

/// Open disk.
struct Domain
{
  Vec2 center{};
  double radius{1.0};

  bool contains(const Vec2 & x) const {return distance(x, center) < radius;}
  double distance_to_boundary(const Vec2 & x) const {return radius - distance(x, center);}
};

inline double default_gap_tol(double uval) {return 1e-9 * (1.0 + std::abs(uval));}

/// Largest Hessian eigenvalue over a grid_n x grid_n sample of the domain,
/// clamped below at zero.
inline double estimate_C0(
  const std::vector<Branch> & branches, const Domain & dom, int grid_n)
{
  if (grid_n < 2) {
    throw Error(Errc::invalid_argument, "estimate_C0 needs grid_n >= 2");
  }
  double c0 = 0.0;
  for (int i = 0; i < grid_n; ++i) {
    for (int j = 0; j < grid_n; ++j) {
      // nodes of the bounding square shrunk slightly so they stay inside the open disk
      const double s1 = -1.0 + 2.0 * i / (grid_n - 1);
      const double s2 = -1.0 + 2.0 * j / (grid_n - 1);
      const Vec2 x = dom.center + (dom.radius * (1.0 - 1e-9)) * Vec2{s1, s2};
      if (!dom.contains(x)) {continue;}
      for (const auto & b : branches) {
        c0 = std::max(c0, branch_hessian(b, x).sym_eigenvalues().second);
      }
    }
  }
  return c0;
}

class MinFunction
{
public:
  /// Validates the branches against the domain. When `c0` is absent it is
  /// estimated on a 64 x 64 grid; a declared value must not be below the
  /// estimate.
  MinFunction(std::vector<Branch> branches, Domain domain, std::optional<double> c0 = {})
  : branches_(std::move(branches)), domain_(domain)
  {
    if (branches_.empty()) {
      throw Error(Errc::invalid_argument, "MinFunction needs at least one branch");
    }
    if (!(domain_.radius > 0.0) || !is_finite(domain_.center)) {
      throw Error(Errc::invalid_argument, "domain radius must be positive");
    }
    for (std::size_t i = 0; i < branches_.size(); ++i) {
      validate(branches_[i], i);
    }
    const double est = estimate_C0(branches_, domain_, 64);
    if (c0) {
      if (*c0 < est - 1e-12 || !std::isfinite(*c0)) {
        throw Error(
          Errc::invalid_argument,
          "declared C0 is below the Hessian bound " + std::to_string(est));
      }
      c0_ = *c0;
    } else {
      c0_ = est;
    }
  }

  const std::vector<Branch> & branches() const {return branches_;}
  const Domain & domain() const {return domain_;}
  double C0() const {return c0_;}

  void require_in_domain(const Vec2 & x) const
  {
    if (!is_finite(x) || !domain_.contains(x)) {
      throw Error(
        Errc::domain_violation,
        "point (" + std::to_string(x.x1) + ", " + std::to_string(x.x2) + ") is outside the domain");
    }
  }

private:
  void validate(const Branch & b, std::size_t i) const
  {
    const std::string tag = "branch " + std::to_string(i) + ": ";
    if (const auto * q = std::get_if<QuadraticBranch>(&b)) {
      if (!q->q.is_symmetric()) {
        throw Error(Errc::invalid_argument, tag + "Q is not symmetric");
      }
      if (q->q.sym_eigenvalues().first < -1e-12) {
        throw Error(Errc::invalid_argument, tag + "Q is not positive semidefinite");
      }
    } else if (const auto * c = std::get_if<ConeBranch>(&b)) {
      if (!(c->slope > 0.0) || !(c->exclusion_radius > 0.0)) {
        throw Error(Errc::invalid_argument, tag + "cone slope and exclusion radius must be > 0");
      }
      if (distance(c->apex, domain_.center) < domain_.radius + c->exclusion_radius) {
        throw Error(Errc::invalid_argument, tag + "cone exclusion ball intersects the domain");
      }
    }
  }

  std::vector<Branch> branches_;
  Domain domain_;
  double c0_{0.0};
};

inline double eval(const MinFunction & u, const Vec2 & x)
{
  u.require_in_domain(x);
  double v = std::numeric_limits<double>::infinity();
  for (const auto & b : u.branches()) {v = std::min(v, branch_value(b, x));}
  return v;
}

/// Indices of branches within `gap_tol` of the minimum; a negative tolerance
/// selects 1e-9 * (1 + |u(x)|).
inline std::vector<std::size_t> active_set(const MinFunction & u, const Vec2 & x, double gap_tol = -1.0)
{
  const double m = eval(u, x);
  const double gap = gap_tol < 0.0 ? default_gap_tol(m) : gap_tol;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < u.branches().size(); ++i) {
    if (branch_value(u.branches()[i], x) <= m + gap) {idx.push_back(i);}
  }
  return idx;
}

inline ConvexPolytope2 superdifferential(const MinFunction & u, const Vec2 & x, double gap_tol = -1.0)
{
  std::vector<Vec2> grads;
  for (const auto i : active_set(u, x, gap_tol)) {
    grads.push_back(branch_gradient(u.branches()[i], x));
  }
  return hull(grads);
}

inline std::vector<Vec2> reachable_gradients(const MinFunction & u, const Vec2 & x, double gap_tol = -1.0)
{
  return extreme_points(superdifferential(u, x, gap_tol));
}

inline bool is_singular(const MinFunction & u, const Vec2 & x, double diam_tol, double gap_tol = -1.0)
{
  return diameter(superdifferential(u, x, gap_tol)) > diam_tol;
}

inline double estimate_C0(const MinFunction & u, int grid_n)
{
  return estimate_C0(u.branches(), u.domain(), grid_n);
}

/// The shifted problem w = u - f, f(x) = 1/2 (C0 + 1) |x|^2, paired with
/// H~(x, p, w) = H(x, p + Df(x), w + f(x)). Each w_i has all Hessian
/// eigenvalues <= -1 on the domain.
class NormalizedProblem
{
public:
  NormalizedProblem(MinFunction u, Hamiltonian h)
  : u_(std::move(u)), h_(std::move(h)), k_(u_.C0() + 1.0) {}

  const MinFunction & base() const {return u_;}
  const Hamiltonian & hamiltonian() const {return h_;}
  const Domain & domain() const {return u_.domain();}
  std::size_t branch_count() const {return u_.branches().size();}
  /// Curvature of the shift, f(x) = k/2 |x|^2.
  double k() const {return k_;}

  double shift(const Vec2 & x) const {return 0.5 * k_ * norm2(x);}
  Vec2 shift_gradient(const Vec2 & x) const {return k_ * x;}

  double w_branch(std::size_t i, const Vec2 & y) const
  {
    return branch_value(u_.branches()[i], y) - shift(y);
  }
  Vec2 w_branch_gradient(std::size_t i, const Vec2 & y) const
  {
    return branch_gradient(u_.branches()[i], y) - shift_gradient(y);
  }
  Mat2 w_branch_hessian(std::size_t i, const Vec2 & y) const
  {
    return branch_hessian(u_.branches()[i], y) - Mat2::scalar(k_);
  }
  /// min_i w_i(y), evaluated without the domain check.
  double w_raw(const Vec2 & y) const
  {
    double v = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < branch_count(); ++i) {v = std::min(v, w_branch(i, y));}
    return v;
  }
  double w(const Vec2 & x) const {return eval(u_, x) - shift(x);}

  /// D+w(x) = D+u(x) - Df(x), shifted vertex by vertex.
  ConvexPolytope2 superdifferential_w(const Vec2 & x, double gap_tol = -1.0) const
  {
    return translate(superdifferential(u_, x, gap_tol), -shift_gradient(x));
  }

  double h_tilde(const Vec2 & x, const Vec2 & p, double wval) const
  {
    return h_.value(x, p + shift_gradient(x), wval + shift(x));
  }

  /// p~ and v~ computed directly for H~ over D+w(x). H~ is the quadratic
  /// 1/2 <A (p + kx), p + kx> + ..., so its unconstrained minimizer is -kx.
  SharpPair sharp_tilde(const Vec2 & x, double tol, double gap_tol = -1.0) const
  {
    const ConvexPolytope2 kw = superdifferential_w(x, gap_tol);
    const Vec2 df = shift_gradient(x);
    const double wval = w(x);
    SharpPair sp;
    sp.p_sharp = detail::minimize_quadratic(kw, h_.a(), -df);
    sp.v_sharp = h_.grad_p(x, sp.p_sharp + df, wval + shift(x));
    sp.h_value = h_tilde(x, sp.p_sharp, wval);
    if (norm(sp.v_sharp) > tol) {sp.face = exposed_face(kw, sp.v_sharp, tol);}
    return sp;
  }

private:
  MinFunction u_;
  Hamiltonian h_;
  double k_;
};

inline NormalizedProblem normalize(const MinFunction & u, const Hamiltonian & h)
{
  return NormalizedProblem(u, h);
}

}  // namespace sschar

#endif  // SSCHAR__SEMICONCAVE_HPP_
