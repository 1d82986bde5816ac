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
/// \brief Inverse of the superdifferential graph map, p -> x(p).
///
/// For the normalized problem every w_i is uniformly concave, so
/// y -> min_i w_i(y) - <p, y> has a unique maximizer x(p), characterized by
/// p in D+w(x(p)). The maximizer is found by enumerating candidate active sets
/// S (|S| <= 3 in the plane) and solving the KKT system
///
///     sum_{i in S} lambda_i Dw_i(y) = p,  w_i(y) = w_j(y) (i, j in S),
///     sum lambda_i = 1
///
/// with damped Newton. A candidate is admissible when lambda >= 0, no branch
/// outside S lies below the S-branches, and y is in the domain. Because the
/// landscape is concave, an admissible KKT point is the global maximizer.

#ifndef SSCHAR__PHIMAP_HPP_
#define SSCHAR__PHIMAP_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sschar/geometry2d.hpp"
#include "sschar/semiconcave.hpp"
#include "sschar/vec2.hpp"

namespace sschar
{

struct PhiPoint
{
  Vec2 p;
  Vec2 x_of_p;
  std::vector<std::size_t> active;
  bool converged{false};
  /// dist(p, D+w(x(p)))
  double residual{0.0};
};

struct XOfPOptions
{
  /// Starting guess for Newton, typically the previous point on a trace.
  std::optional<Vec2> hint;
  /// Negative selects 1e-7 * (1 + |p|).
  double membership_tol{-1.0};
  int max_newton{80};
};

namespace detail
{

/// Gaussian elimination with partial pivoting on an n x n system, n <= 5.
/// Returns false for a numerically singular matrix.
template<std::size_t N>
bool solve_dense(std::array<std::array<double, N>, N> m, std::array<double, N> rhs,
  std::size_t n, std::array<double, N> & out)
{
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) {piv = r;}
    }
    if (std::abs(m[piv][c]) < 1e-300) {return false;}
    std::swap(m[c], m[piv]);
    std::swap(rhs[c], rhs[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) {m[r][k] -= f * m[c][k];}
      rhs[r] -= f * rhs[c];
    }
  }
  for (std::size_t c = n; c-- > 0; ) {
    double s = rhs[c];
    for (std::size_t k = c + 1; k < n; ++k) {s -= m[c][k] * out[k];}
    out[c] = s / m[c][c];
  }
  for (std::size_t c = 0; c < n; ++c) {
    if (!std::isfinite(out[c])) {return false;}
  }
  return true;
}

struct KktSolution
{
  Vec2 y;
  std::vector<double> lambda;
  bool converged{false};
};

class KktSystem
{
public:
  static constexpr std::size_t kMax = 5;
  using Vecn = std::array<double, kMax>;

  KktSystem(const NormalizedProblem & np, const std::vector<std::size_t> & set, const Vec2 & p)
  : np_(np), set_(set), p_(p), n_(2 + set.size()) {}

  std::size_t dim() const {return n_;}

  bool evaluable(const Vecn & z) const
  {
    const Vec2 y{z[0], z[1]};
    if (!is_finite(y)) {return false;}
    for (const auto i : set_) {
      if (const auto * c = std::get_if<ConeBranch>(&np_.base().branches()[i])) {
        if (distance(y, c->apex) < 1e-6 * c->exclusion_radius) {return false;}
      }
    }
    return true;
  }

  Vecn residual(const Vecn & z) const
  {
    const Vec2 y{z[0], z[1]};
    Vecn r{};
    Vec2 g{};
    double lsum = 0.0;
    for (std::size_t j = 0; j < set_.size(); ++j) {
      g += z[2 + j] * np_.w_branch_gradient(set_[j], y);
      lsum += z[2 + j];
    }
    g -= p_;
    r[0] = g.x1;
    r[1] = g.x2;
    const double w0 = np_.w_branch(set_[0], y);
    for (std::size_t j = 1; j < set_.size(); ++j) {
      r[1 + j] = w0 - np_.w_branch(set_[j], y);
    }
    r[1 + set_.size()] = lsum - 1.0;
    return r;
  }

  bool step(const Vecn & z, const Vecn & r, Vecn & dz) const
  {
    const Vec2 y{z[0], z[1]};
    std::array<std::array<double, kMax>, kMax> jac{};
    Mat2 hsum{};
    for (std::size_t j = 0; j < set_.size(); ++j) {
      hsum = hsum + z[2 + j] * np_.w_branch_hessian(set_[j], y);
      const Vec2 gj = np_.w_branch_gradient(set_[j], y);
      jac[0][2 + j] = gj.x1;
      jac[1][2 + j] = gj.x2;
    }
    jac[0][0] = hsum.a11;
    jac[0][1] = hsum.a12;
    jac[1][0] = hsum.a21;
    jac[1][1] = hsum.a22;
    const Vec2 g0 = np_.w_branch_gradient(set_[0], y);
    for (std::size_t j = 1; j < set_.size(); ++j) {
      const Vec2 d = g0 - np_.w_branch_gradient(set_[j], y);
      jac[1 + j][0] = d.x1;
      jac[1 + j][1] = d.x2;
    }
    for (std::size_t j = 0; j < set_.size(); ++j) {jac[1 + set_.size()][2 + j] = 1.0;}
    Vecn rhs{};
    for (std::size_t i = 0; i < n_; ++i) {rhs[i] = -r[i];}
    return solve_dense<kMax>(jac, rhs, n_, dz);
  }

  double rnorm(const Vecn & r) const
  {
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {s += r[i] * r[i];}
    return std::sqrt(s);
  }

  KktSolution solve(const Vec2 & y0, int max_iter) const
  {
    Vecn z{};
    z[0] = y0.x1;
    z[1] = y0.x2;
    for (std::size_t j = 0; j < set_.size(); ++j) {z[2 + j] = 1.0 / set_.size();}
    KktSolution sol;
    if (!evaluable(z)) {return sol;}
    const double scale = 1.0 + norm(p_) + np_.k() * (1.0 + norm(y0));
    Vecn r = residual(z);
    double rn = rnorm(r);
    for (int it = 0; it < max_iter; ++it) {
      if (rn <= 1e-13 * scale) {
        sol.converged = true;
        break;
      }
      Vecn dz{};
      if (!step(z, r, dz)) {return sol;}
      double alpha = 1.0;
      bool accepted = false;
      while (alpha > 1e-10) {
        Vecn zt = z;
        for (std::size_t i = 0; i < n_; ++i) {zt[i] += alpha * dz[i];}
        if (evaluable(zt)) {
          const Vecn rt = residual(zt);
          const double rtn = rnorm(rt);
          if (rtn < (1.0 - 1e-4 * alpha) * rn) {
            z = zt;
            r = rt;
            rn = rtn;
            accepted = true;
            break;
          }
        }
        alpha *= 0.5;
      }
      if (!accepted) {
        // stalled at roundoff level counts as converged
        sol.converged = rn <= 1e-10 * scale;
        break;
      }
    }
    if (!sol.converged && rn <= 1e-13 * scale) {sol.converged = true;}
    sol.y = {z[0], z[1]};
    for (std::size_t j = 0; j < set_.size(); ++j) {sol.lambda.push_back(z[2 + j]);}
    return sol;
  }

private:
  const NormalizedProblem & np_;
  const std::vector<std::size_t> & set_;
  Vec2 p_;
  std::size_t n_;
};

inline std::vector<std::vector<std::size_t>> candidate_sets(std::size_t n)
{
  std::vector<std::vector<std::size_t>> sets;
  for (std::size_t i = 0; i < n; ++i) {sets.push_back({i});}
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {sets.push_back({i, j});}
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {sets.push_back({i, j, k});}
    }
  }
  return sets;
}

}  // namespace detail

inline double default_membership_tol(const Vec2 & p) {return 1e-7 * (1.0 + norm(p));}

/// x(p): the unique maximizer over the domain of min_i w_i(y) - <p, y>.
///
/// Throws nonconvergence when no active-set candidate converges at all, and
/// not-in-image when candidates exist but none is admissible inside the
/// domain or the best one fails the membership check p in D+w(x(p)).
inline PhiPoint x_of_p(const NormalizedProblem & np, const Vec2 & p, const XOfPOptions & opts = {})
{
  if (!is_finite(p)) {
    throw Error(Errc::invalid_argument, "x_of_p: p is not finite");
  }
  const Domain & dom = np.domain();
  const std::size_t n = np.branch_count();
  const double lam_tol = 1e-9;

  std::vector<Vec2> starts;
  if (opts.hint) {starts.push_back(*opts.hint);}
  starts.push_back(dom.center);

  bool any_converged = false;
  double best_val = -std::numeric_limits<double>::infinity();
  std::optional<Vec2> best;

  for (const auto & set : detail::candidate_sets(n)) {
    detail::KktSystem sys(np, set, p);
    std::optional<detail::KktSolution> sol;
    const auto * quad = std::get_if<QuadraticBranch>(&np.base().branches()[set[0]]);
    if (set.size() == 1 && quad != nullptr) {
      // (Q + kI) y = Q b - p
      const Mat2 m = quad->q + Mat2::scalar(np.k());
      detail::KktSolution s;
      s.y = m.inverse() * (quad->q * quad->center - p);
      s.lambda = {1.0};
      s.converged = true;
      sol = s;
    } else {
      for (const auto & y0 : starts) {
        auto s = sys.solve(y0, opts.max_newton);
        if (s.converged) {
          sol = s;
          break;
        }
      }
    }
    if (!sol) {continue;}
    any_converged = true;
    const Vec2 y = sol->y;
    if (!dom.contains(y)) {continue;}
    if (std::any_of(sol->lambda.begin(), sol->lambda.end(), [&](double l) {return l < -lam_tol;})) {
      continue;
    }
    const double ws = np.w_branch(set[0], y);
    const double gap = default_gap_tol(ws);
    bool below = false;
    for (std::size_t j = 0; j < n && !below; ++j) {
      if (std::find(set.begin(), set.end(), j) != set.end()) {continue;}
      below = np.w_branch(j, y) < ws - gap;
    }
    if (below) {continue;}
    const double val = np.w_raw(y) - dot(p, y);
    if (val > best_val) {
      best_val = val;
      best = y;
    }
  }

  if (!any_converged) {
    throw Error(Errc::nonconvergence, "x_of_p: no active-set candidate converged");
  }
  if (!best) {
    throw Error(
      Errc::not_in_image,
      "x_of_p: maximizer for p = (" + std::to_string(p.x1) + ", " + std::to_string(p.x2) +
      ") is not inside the domain");
  }

  PhiPoint out;
  out.p = p;
  out.x_of_p = *best;
  out.active = active_set(np.base(), *best);
  out.residual = distance_to(np.superdifferential_w(*best), p);
  const double tol = opts.membership_tol < 0.0 ? default_membership_tol(p) : opts.membership_tol;
  out.converged = out.residual <= tol;
  if (!out.converged) {
    throw Error(
      Errc::not_in_image,
      "x_of_p: membership residual " + std::to_string(out.residual) + " exceeds tolerance");
  }
  return out;
}

/// p in A#: p is in the image of phi and H~(x(p), p, w(x(p))) < -tol.
inline bool in_A_sharp(const NormalizedProblem & np, const Vec2 & p, double tol, const XOfPOptions & opts = {})
{
  const PhiPoint pt = x_of_p(np, p, opts);
  return np.h_tilde(pt.x_of_p, p, np.w(pt.x_of_p)) < -tol;
}

struct BilipschitzReport
{
  std::size_t pairs{0};
  std::size_t lipschitz_violations{0};
  std::size_t monotonicity_violations{0};
  std::size_t graph_violations{0};
  /// max over pairs of |x2 - x1| - |p2 - p1|
  double max_lipschitz_excess{-std::numeric_limits<double>::infinity()};
  /// max over pairs of <p2 - p1, x2 - x1> + |x2 - x1|^2
  double max_monotonicity_excess{-std::numeric_limits<double>::infinity()};
  /// max over distinct pairs of |(x2, p2) - (x1, p1)| / |p2 - p1|
  double max_graph_ratio{0.0};

  bool ok() const
  {
    return lipschitz_violations == 0 && monotonicity_violations == 0 && graph_violations == 0;
  }
};

inline BilipschitzReport check_bilipschitz(
  const NormalizedProblem & np, const std::vector<std::pair<Vec2, Vec2>> & pairs,
  double tol = 1e-8)
{
  BilipschitzReport rep;
  for (const auto & [p1, p2] : pairs) {
    const Vec2 x1 = x_of_p(np, p1).x_of_p;
    const Vec2 x2 = x_of_p(np, p2).x_of_p;
    const double dp = distance(p1, p2);
    const double dx = distance(x1, x2);
    const double lip = dx - dp;
    const double mono = dot(p2 - p1, x2 - x1) + dx * dx;
    rep.max_lipschitz_excess = std::max(rep.max_lipschitz_excess, lip);
    rep.max_monotonicity_excess = std::max(rep.max_monotonicity_excess, mono);
    if (lip > tol) {++rep.lipschitz_violations;}
    if (mono > tol) {++rep.monotonicity_violations;}
    if (dp > 0.0) {
      const double ratio = std::sqrt(dx * dx + dp * dp) / dp;
      rep.max_graph_ratio = std::max(rep.max_graph_ratio, ratio);
      if (ratio > 2.0 + tol) {++rep.graph_violations;}
    } else if (dx > tol) {
      ++rep.graph_violations;
    }
    ++rep.pairs;
  }
  return rep;
}

}  // namespace sschar

#endif  // SSCHAR__PHIMAP_HPP_
