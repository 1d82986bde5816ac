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
/// \brief Quadratic-form Hamiltonians and the minimal-energy selection p#.

#ifndef SSCHAR__HAMILTONIAN_HPP_
#define SSCHAR__HAMILTONIAN_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>

#include "sschar/geometry2d.hpp"
#include "sschar/vec2.hpp"

namespace sschar
{

/// g(x) = c + c1 x1 + c2 x2 + c11 x1^2 + c12 x1 x2 + c22 x2^2
struct QuadPoly
{
  double c{0.0};
  double c1{0.0};
  double c2{0.0};
  double c11{0.0};
  double c12{0.0};
  double c22{0.0};

  double operator()(const Vec2 & x) const
  {
    return c + c1 * x.x1 + c2 * x.x2 + c11 * x.x1 * x.x1 + c12 * x.x1 * x.x2 +
           c22 * x.x2 * x.x2;
  }
};

/// H(x, p, u) = 1/2 <A p, p> + beta u + g(x) with A symmetric positive definite.
class Hamiltonian
{
public:
  Hamiltonian() = default;
  Hamiltonian(const Mat2 & a, double beta, const QuadPoly & g)
  : a_(a), beta_(beta), g_(g)
  {
    if (!a.is_symmetric()) {
      throw Error(Errc::invalid_argument, "Hamiltonian matrix A is not symmetric");
    }
    if (a.sym_eigenvalues().first <= 0.0) {
      throw Error(Errc::invalid_argument, "Hamiltonian matrix A is not positive definite");
    }
  }

  const Mat2 & a() const {return a_;}
  double beta() const {return beta_;}
  const QuadPoly & g() const {return g_;}

  double value(const Vec2 & x, const Vec2 & p, double u) const
  {
    return 0.5 * dot(a_ * p, p) + beta_ * u + g_(x);
  }
  Vec2 grad_p(const Vec2 &, const Vec2 & p, double) const {return a_ * p;}

private:
  Mat2 a_{Mat2::identity()};
  double beta_{0.0};
  QuadPoly g_{};
};

inline double h_eval(const Hamiltonian & h, const Vec2 & x, const Vec2 & p, double uval)
{
  return h.value(x, p, uval);
}

struct SharpPair
{
  Vec2 p_sharp;
  Vec2 v_sharp;
  double h_value{0.0};
  /// Exposed face of K in direction v#; absent when |v#| <= tol.
  std::optional<Face> face;
};

namespace detail
{

/// argmin of 1/2 <A (p - c), (p - c)> over K. The unconstrained minimizer c
/// is returned when it lies in K; otherwise every edge is minimized in closed
/// form (an A-metric projection clamped to the edge) and the best is kept.
inline Vec2 minimize_quadratic(const ConvexPolytope2 & k, const Mat2 & a, const Vec2 & c)
{
  if (k.is_point()) {return k.vertex(0);}
  if (polygon_contains(k, c)) {return c;}
  const auto energy = [&](const Vec2 & p) {
      const Vec2 q = p - c;
      return 0.5 * dot(a * q, q);
    };
  Vec2 best = k.vertex(0);
  double best_e = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < k.edge_count(); ++i) {
    const auto [q0, q1] = k.edge(i);
    const Vec2 d = q1 - q0;
    const double dad = dot(a * d, d);
    double s = 0.0;
    if (dad > 0.0) {s = std::clamp(-dot(a * (q0 - c), d) / dad, 0.0, 1.0);}
    const Vec2 p = q0 + s * d;
    const double e = energy(p);
    if (e < best_e) {
      best_e = e;
      best = p;
    }
  }
  return best;
}

}  // namespace detail

/// Unique minimizer of p -> H(x, p, uval) over K together with its velocity
/// v# = H_p(x, p#, uval) and the exposed face of K in direction v#.
inline SharpPair p_sharp(
  const Hamiltonian & h, const Vec2 & x, double uval, const ConvexPolytope2 & k, double tol)
{
  SharpPair sp;
  sp.p_sharp = detail::minimize_quadratic(k, h.a(), Vec2{});
  sp.v_sharp = h.grad_p(x, sp.p_sharp, uval);
  sp.h_value = h.value(x, sp.p_sharp, uval);
  if (norm(sp.v_sharp) > tol) {
    sp.face = exposed_face(k, sp.v_sharp, tol);
  }
  return sp;
}

/// Endpoints (p1, p2) of the segment face E(K, v), ordered so that
/// cross(p2 - p1, v) > 0.
inline std::pair<Vec2, Vec2> face_endpoints(const ConvexPolytope2 & k, const Vec2 & v, double tol)
{
  if (norm(v) <= tol) {
    throw Error(Errc::invalid_argument, "face_endpoints needs a nonzero direction");
  }
  const Face f = exposed_face(k, v, tol);
  if (f.kind != FaceKind::segment) {
    throw Error(Errc::degenerate_face, "exposed face in direction v collapses to a point");
  }
  Vec2 p1 = f.endpoints[0];
  Vec2 p2 = f.endpoints[1];
  if (cross(p2 - p1, v) < 0.0) {std::swap(p1, p2);}
  return {p1, p2};
}

inline bool is_critical(const SharpPair & sp, double v_min)
{
  return norm(sp.v_sharp) <= v_min;
}

}  // namespace sschar

#endif  // SSCHAR__HAMILTONIAN_HPP_
