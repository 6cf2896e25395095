#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bergman/moebius.hpp"
#include "bergman/types.hpp"

namespace bergman {

class DomainSpec;

/// {z : Re(z * conj(normal)) > offset}; the normal is normalized on construction.
struct HalfPlane {
  Complex normal{0.0, 1.0};
  double offset = 0.0;
};

/// {v + r e^{it} : |t - bisector| < opening / 2, r > 0}
struct Sector {
  Complex vertex{};
  double bisector = 0.25 * kPi;
  double opening = 0.5 * kPi;
};

struct DiskInterior {
  Complex center{};
  double radius = 1.0;
};

struct DiskExterior {
  Complex center{};
  double radius = 1.0;
};

/// The image map(base).
struct MoebiusImage {
  std::shared_ptr<const DomainSpec> base;
  MoebiusMap map;
};

/// scale * {r e^{it} : 0 < t < t_m, sin t / cos^2 t < r < 1}: the horn between
/// y = 0 and y = x^2 closed by an arc of the unit circle. Its boundary has a
/// zero-angle cusp at the origin, so it is not a quasidisk. `complement`
/// selects the exterior of that horn.
struct CuspDomain {
  double scale = 1.0;
  bool complement = false;
};

enum class Membership { Interior, Exterior, Boundary };

class DomainSpec {
 public:
  using Shape = std::variant<HalfPlane, Sector, DiskInterior, DiskExterior, MoebiusImage, CuspDomain>;

  DomainSpec();
  explicit DomainSpec(HalfPlane s);
  explicit DomainSpec(Sector s);
  explicit DomainSpec(DiskInterior s);
  explicit DomainSpec(DiskExterior s);
  explicit DomainSpec(MoebiusImage s);
  explicit DomainSpec(CuspDomain s);

  const Shape& shape() const { return shape_; }

  template <typename T>
  const T* as() const {
    return std::get_if<T>(&shape_);
  }

  bool unbounded() const { return unbounded_; }
  bool infinity_on_boundary() const { return infinity_on_boundary_; }
  bool infinity_interior() const { return unbounded_ && !infinity_on_boundary_; }
  bool is_quasidisk() const { return quasidisk_; }

  std::string variant_name() const;

 private:
  void init_flags();

  Shape shape_;
  bool unbounded_ = false;
  bool infinity_on_boundary_ = false;
  bool quasidisk_ = true;
};

// Catalogue presets used by the CLI and the verification battery.
DomainSpec upper_half_plane();
DomainSpec quadrant_sector();  // vertex 0, opening pi/2 along the first quadrant
DomainSpec unit_disk();
DomainSpec unit_disk_exterior();
DomainSpec cusp_domain(double scale = 1.0);

/// Returns the preset of that name ("halfplane", "sector", "disk",
/// "disk-exterior", "cusp") or nullopt.
std::optional<DomainSpec> domain_preset(const std::string& name);

/// The domain C minus closure(G), as a catalogue domain.
DomainSpec complement(const DomainSpec& domain);

/// Default boundary tube half-width at z.
inline double boundary_epsilon(Complex z) { return 1e-9 * (1.0 + std::abs(z)); }

Membership contains(const DomainSpec& domain, Complex z);
Membership contains(const DomainSpec& domain, Complex z, double eps);
/// Membership of the point at infinity.
Membership contains_infinity(const DomainSpec& domain);

/// Approximate Euclidean distance from z to the boundary (first order for
/// Moebius images).
double boundary_distance(const DomainSpec& domain, Complex z);

struct BoundaryPoint {
  double t = 0.0;
  ExtendedPoint point;
};

/// Continuous parameterization of the boundary over t in [0,1). Unbounded
/// domains with infinity on the boundary pass through infinity at t = 0.5.
BoundaryPoint boundary_param(const DomainSpec& domain, double t);

/// Generalized circles under Moebius maps stay generalized circles: rewrite a
/// Moebius image of a half-plane or disk as a plain half-plane or disk.
/// Other domains are returned unchanged.
DomainSpec canonical_form(const DomainSpec& domain);

/// Three-point (Ahlfors) constant estimate: max over sampled boundary pairs of
/// diam(l(z1,z2)) / |z1 - z2|, l being the boundary arc of smaller diameter.
/// Samples are t = k / n_samples; unbounded domains keep only samples with
/// |z| <= window. Nested sample sets give nondecreasing estimates.
double quasidisk_constant(const DomainSpec& domain, std::size_t n_samples, double window = 10.0);

}  // namespace bergman
