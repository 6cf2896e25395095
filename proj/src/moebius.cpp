#include "bergman/moebius.hpp"

#include <cmath>

namespace bergman {

namespace {

double coefficient_scale(const MoebiusMap& m) {
  return std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)});
}

}  // namespace

MoebiusMap make_moebius(Complex a, Complex b, Complex c, Complex d) {
  MoebiusMap m{a, b, c, d};
  const double scale = coefficient_scale(m);
  if (!(scale > 0.0) || std::abs(m.determinant()) <= 1e-14 * scale * scale) {
    throw Error(ErrorCode::InvalidArgument, "degenerate Moebius map: ad - bc = 0");
  }
  return m;
}

Complex moebius_apply(const MoebiusMap& m, Complex z, double pole_tol) {
  const Complex den = m.c * z + m.d;
  if (std::abs(den) <= pole_tol * (std::abs(m.c) * std::abs(z) + std::abs(m.d))) {
    throw Error(ErrorCode::PoleAtPoint, "Moebius map has a pole at the evaluation point");
  }
  return (m.a * z + m.b) / den;
}

ExtendedPoint moebius_apply(const MoebiusMap& m, const ExtendedPoint& z) {
  if (z.infinite) {
    if (m.is_affine()) return ExtendedPoint::infinity();
    return ExtendedPoint::finite(m.a / m.c);
  }
  const Complex den = m.c * z.value + m.d;
  if (den == Complex{0.0}) return ExtendedPoint::infinity();
  return ExtendedPoint::finite((m.a * z.value + m.b) / den);
}

Complex moebius_derivative(const MoebiusMap& m, Complex z, double pole_tol) {
  const Complex den = m.c * z + m.d;
  if (std::abs(den) <= pole_tol * (std::abs(m.c) * std::abs(z) + std::abs(m.d))) {
    throw Error(ErrorCode::PoleAtPoint, "Moebius map has a pole at the evaluation point");
  }
  return m.determinant() / (den * den);
}

MoebiusMap invert(const MoebiusMap& m) { return {m.d, -m.b, -m.c, m.a}; }

MoebiusMap compose(const MoebiusMap& outer, const MoebiusMap& inner) {
  return {outer.a * inner.a + outer.b * inner.c, outer.a * inner.b + outer.b * inner.d,
          outer.c * inner.a + outer.d * inner.c, outer.c * inner.b + outer.d * inner.d};
}

ExtendedPoint pole(const MoebiusMap& m) {
  if (m.is_affine()) return ExtendedPoint::infinity();
  return ExtendedPoint::finite(-m.d / m.c);
}

}  // namespace bergman
