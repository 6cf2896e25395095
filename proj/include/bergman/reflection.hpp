#pragma once

#include <cstddef>
#include <cstdint>

#include "bergman/domain.hpp"
#include "bergman/holofun.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/types.hpp"

namespace bergman {

/// Explicit quasiconformal reflection across the boundary of a catalogue
/// domain. Half-planes use the Euclidean mirror, sectors the polar-affine angle
/// map, disks circle inversion and Moebius images the conjugated base rule.
struct Reflection {
  DomainSpec domain;
  /// Bi-Lipschitz constants c1 |a - b| <= |rho a - rho b| <= c2 |a - b|.
  /// Circle inversion has no global constants; both are NaN there.
  double c1 = 1.0;
  double c2 = 1.0;
  bool exact_constants = true;
};

/// Throws ErrorCode::ReflectionUnavailable for the cusp domain.
Reflection make_reflection(const DomainSpec& domain);

/// The sector vertex is a fixed point. Circle centers (and any point a Moebius
/// conjugation sends through infinity) raise ErrorCode::SingularPoint.
Complex reflect(const DomainSpec& domain, Complex xi);
inline Complex reflect(const Reflection& refl, Complex xi) { return reflect(refl.domain, xi); }

struct LipschitzEstimate {
  double c1 = 0.0;
  double c2 = 0.0;
  std::size_t pairs = 0;
};

/// Stratified pair sampling (short pairs anywhere, pairs straddling the
/// boundary, far-field pairs) inside a window. For half-planes and sectors the
/// window is the disk of radius `window` about the boundary anchor; for disks
/// it is the annulus R / window <= |z - c| <= R * window.
LipschitzEstimate bilipschitz_estimate(const Reflection& refl, std::size_t n_pairs, double window,
                                       std::uint64_t seed = 1);

/// (f, g)_1 = integral over the complement of f(rho xi) conj(g(rho xi)).
QuadResult pullback_inner(const Reflection& refl, const HoloFun& f, const HoloFun& g,
                          const QuadConfig& cfg);

}  // namespace bergman
