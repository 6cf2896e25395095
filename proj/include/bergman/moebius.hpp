#pragma once

#include "bergman/types.hpp"

namespace bergman {

/// z -> (a z + b) / (c z + d) with a d - b c != 0.
struct MoebiusMap {
  Complex a{1.0}, b{0.0}, c{0.0}, d{1.0};

  static MoebiusMap identity() { return {}; }
  /// w = 1/z
  static MoebiusMap inversion() { return {Complex{0}, Complex{1}, Complex{1}, Complex{0}}; }

  Complex determinant() const { return a * d - b * c; }
  bool is_affine() const { return c == Complex{0.0}; }
};

/// Validating constructor; rejects degenerate coefficient sets.
MoebiusMap make_moebius(Complex a, Complex b, Complex c, Complex d);

/// Throws ErrorCode::PoleAtPoint when |cz + d| is below `pole_tol`.
Complex moebius_apply(const MoebiusMap& m, Complex z, double pole_tol = 1e-14);
ExtendedPoint moebius_apply(const MoebiusMap& m, const ExtendedPoint& z);

/// (ad - bc) / (cz + d)^2
Complex moebius_derivative(const MoebiusMap& m, Complex z, double pole_tol = 1e-14);

MoebiusMap invert(const MoebiusMap& m);

/// outer o inner
MoebiusMap compose(const MoebiusMap& outer, const MoebiusMap& inner);

/// Preimage of infinity, i.e. -d/c, or infinity itself for affine maps.
ExtendedPoint pole(const MoebiusMap& m);

}  // namespace bergman
