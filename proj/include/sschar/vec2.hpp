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
/// \brief Planar vectors, 2x2 matrices and the library error type.

#ifndef SSCHAR__VEC2_HPP_
#define SSCHAR__VEC2_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace sschar
{

enum class Errc
{
  invalid_argument,
  domain_violation,
  nonconvergence,
  not_in_image,
  degenerate_face,
  degenerate_curve,
  contract_violation,
  out_of_range,
  schema,
};

inline const char * to_string(Errc e)
{
  switch (e) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::domain_violation: return "domain-violation";
    case Errc::nonconvergence: return "nonconvergence";
    case Errc::not_in_image: return "not-in-image";
    case Errc::degenerate_face: return "degenerate-face";
    case Errc::degenerate_curve: return "degenerate-curve";
    case Errc::contract_violation: return "contract-violation";
    case Errc::out_of_range: return "out-of-range";
    case Errc::schema: return "schema";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the Errc categories so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error
{
public:
  Error(Errc code, const std::string & what)
  : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept {return code_;}

private:
  Errc code_;
};

struct Vec2
{
  double x1{0.0};
  double x2{0.0};

  constexpr Vec2 & operator+=(const Vec2 & o) {x1 += o.x1; x2 += o.x2; return *this;}
  constexpr Vec2 & operator-=(const Vec2 & o) {x1 -= o.x1; x2 -= o.x2; return *this;}
  constexpr Vec2 & operator*=(double s) {x1 *= s; x2 *= s; return *this;}

  friend constexpr Vec2 operator+(Vec2 a, const Vec2 & b) {return a += b;}
  friend constexpr Vec2 operator-(Vec2 a, const Vec2 & b) {return a -= b;}
  friend constexpr Vec2 operator-(const Vec2 & a) {return {-a.x1, -a.x2};}
  friend constexpr Vec2 operator*(Vec2 a, double s) {return a *= s;}
  friend constexpr Vec2 operator*(double s, Vec2 a) {return a *= s;}
  friend constexpr Vec2 operator/(const Vec2 & a, double s) {return {a.x1 / s, a.x2 / s};}
  friend constexpr bool operator==(const Vec2 &, const Vec2 &) = default;
};

constexpr double dot(const Vec2 & a, const Vec2 & b) {return a.x1 * b.x1 + a.x2 * b.x2;}
/// z-component of the 3D cross product; positive when b is counterclockwise of a.
constexpr double cross(const Vec2 & a, const Vec2 & b) {return a.x1 * b.x2 - a.x2 * b.x1;}
inline double norm(const Vec2 & a) {return std::hypot(a.x1, a.x2);}
constexpr double norm2(const Vec2 & a) {return dot(a, a);}
inline double distance(const Vec2 & a, const Vec2 & b) {return norm(a - b);}
/// Counterclockwise rotation by 90 degrees.
constexpr Vec2 perp(const Vec2 & a) {return {-a.x2, a.x1};}
inline bool is_finite(const Vec2 & a) {return std::isfinite(a.x1) && std::isfinite(a.x2);}
inline double max_abs(const Vec2 & a) {return std::max(std::abs(a.x1), std::abs(a.x2));}

/// Row-major 2x2 matrix.
struct Mat2
{
  double a11{0.0};
  double a12{0.0};
  double a21{0.0};
  double a22{0.0};

  static constexpr Mat2 identity() {return {1.0, 0.0, 0.0, 1.0};}
  static constexpr Mat2 diag(double d1, double d2) {return {d1, 0.0, 0.0, d2};}
  static constexpr Mat2 scalar(double s) {return {s, 0.0, 0.0, s};}

  friend constexpr Vec2 operator*(const Mat2 & m, const Vec2 & v)
  {
    return {m.a11 * v.x1 + m.a12 * v.x2, m.a21 * v.x1 + m.a22 * v.x2};
  }
  friend constexpr Mat2 operator+(const Mat2 & a, const Mat2 & b)
  {
    return {a.a11 + b.a11, a.a12 + b.a12, a.a21 + b.a21, a.a22 + b.a22};
  }
  friend constexpr Mat2 operator-(const Mat2 & a, const Mat2 & b)
  {
    return {a.a11 - b.a11, a.a12 - b.a12, a.a21 - b.a21, a.a22 - b.a22};
  }
  friend constexpr Mat2 operator*(double s, const Mat2 & a)
  {
    return {s * a.a11, s * a.a12, s * a.a21, s * a.a22};
  }
  friend constexpr Mat2 operator*(const Mat2 & a, const Mat2 & b)
  {
    return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
      a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
  }
  friend constexpr bool operator==(const Mat2 &, const Mat2 &) = default;

  constexpr double det() const {return a11 * a22 - a12 * a21;}
  constexpr double trace() const {return a11 + a22;}

  bool is_symmetric(double tol = 1e-12) const
  {
    return std::abs(a12 - a21) <= tol * (1.0 + std::max(std::abs(a12), std::abs(a21)));
  }

  /// Eigenvalues of the symmetric part, ascending.
  std::pair<double, double> sym_eigenvalues() const
  {
    const double off = 0.5 * (a12 + a21);
    const double mean = 0.5 * (a11 + a22);
    const double rad = std::hypot(0.5 * (a11 - a22), off);
    return {mean - rad, mean + rad};
  }

  Mat2 inverse() const
  {
    const double d = det();
    if (d == 0.0 || !std::isfinite(d)) {
      throw Error(Errc::invalid_argument, "singular 2x2 matrix");
    }
    return {a22 / d, -a12 / d, -a21 / d, a11 / d};
  }
};

/// Outer product a b^T.
constexpr Mat2 outer(const Vec2 & a, const Vec2 & b)
{
  return {a.x1 * b.x1, a.x1 * b.x2, a.x2 * b.x1, a.x2 * b.x2};
}

}  // namespace sschar

#endif  // SSCHAR__VEC2_HPP_
