#include "bergman/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bergman {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Unit-scale horn geometry: the arc end sits at angle t_m with sin t_m equal to
// the golden-ratio conjugate, where the parabola meets the unit circle.
const double kCuspGolden = 0.5 * (std::sqrt(5.0) - 1.0);
const double kCuspThetaMax = std::asin(kCuspGolden);
const double kCuspXMax = std::sqrt(kCuspGolden);

double wrap_angle(double t) {
  t = std::fmod(t, 2.0 * kPi);
  if (t < 0.0) t += 2.0 * kPi;
  return t;
}

double distance_to_ray(Complex u, Complex dir) {
  const Complex local = u * std::conj(dir);
  if (local.real() >= 0.0) return std::abs(local.imag());
  return std::abs(u);
}

double distance_to_segment(Complex p, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  double s = len2 > 0.0 ? (std::conj(ab) * (p - a)).real() / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return std::abs(p - (a + s * ab));
}

double distance_to_parabola(Complex p, double x_max) {
  // minimize (x - X)^2 + (x^2 - Y)^2 over [0, x_max]
  const double X = p.real();
  const double Y = p.imag();
  auto dist2 = [&](double x) { return (x - X) * (x - X) + (x * x - Y) * (x * x - Y); };
  double best_x = 0.0;
  double best = dist2(0.0);
  constexpr int kSamples = 64;
  for (int k = 1; k <= kSamples; ++k) {
    const double x = x_max * k / kSamples;
    const double d = dist2(x);
    if (d < best) {
      best = d;
      best_x = x;
    }
  }
  double x = best_x;
  for (int it = 0; it < 30; ++it) {
    const double g = 2.0 * (x - X) + 4.0 * x * (x * x - Y);
    const double h = 2.0 + 12.0 * x * x - 4.0 * Y;
    if (h <= 0.0) break;
    const double next = std::clamp(x - g / h, 0.0, x_max);
    if (std::abs(next - x) < 1e-15) {
      x = next;
      break;
    }
    x = next;
  }
  return std::sqrt(std::min(best, dist2(x)));
}

struct Classification {
  bool interior = false;
  double distance = 0.0;
};

Classification classify_cusp_unit(Complex w) {
  const double r = std::abs(w);
  const double t = std::arg(w);
  bool inside = false;
  if (t > 0.0 && t < kCuspThetaMax && r < 1.0) {
    const double ct = std::cos(t);
    inside = r > std::sin(t) / (ct * ct);
  }
  double d = distance_to_segment(w, Complex{0.0}, Complex{1.0});
  const double arc_end_t = kCuspThetaMax;
  if (t >= 0.0 && t <= arc_end_t) {
    d = std::min(d, std::abs(r - 1.0));
  } else {
    d = std::min({d, std::abs(w - 1.0), std::abs(w - std::polar(1.0, arc_end_t))});
  }
  d = std::min(d, distance_to_parabola(w, kCuspXMax));
  return {inside, d};
}

Classification classify(const DomainSpec& domain, Complex z);

struct Classifier {
  Complex z;

  Classification operator()(const HalfPlane& h) const {
    const double s = (z * std::conj(h.normal)).real() - h.offset;
    return {s > 0.0, std::abs(s)};
  }
  Classification operator()(const Sector& s) const {
    const double alpha = s.bisector - 0.5 * s.opening;
    const Complex u = std::polar(1.0, -alpha) * (z - s.vertex);
    const double t = wrap_angle(std::arg(u));
    const bool inside = std::abs(u) > 0.0 && t > 0.0 && t < s.opening;
    const double d =
        std::min(distance_to_ray(u, Complex{1.0}), distance_to_ray(u, std::polar(1.0, s.opening)));
    return {inside, d};
  }
  Classification operator()(const DiskInterior& d) const {
    const double s = d.radius - std::abs(z - d.center);
    return {s > 0.0, std::abs(s)};
  }
  Classification operator()(const DiskExterior& d) const {
    const double s = std::abs(z - d.center) - d.radius;
    return {s > 0.0, std::abs(s)};
  }
  Classification operator()(const MoebiusImage& m) const {
    const ExtendedPoint u = moebius_apply(invert(m.map), ExtendedPoint::finite(z));
    if (u.infinite) {
      const Membership base = contains_infinity(*m.base);
      return {base == Membership::Interior, base == Membership::Boundary ? 0.0 : kInf};
    }
    const Classification base = classify(*m.base, u.value);
    const double stretch = std::abs(moebius_derivative(m.map, u.value));
    return {base.interior, base.distance * stretch};
  }
  Classification operator()(const CuspDomain& c) const {
    Classification unit = classify_cusp_unit(z / c.scale);
    unit.distance *= c.scale;
    if (c.complement) unit.interior = !unit.interior;
    return unit;
  }
};

Classification classify(const DomainSpec& domain, Complex z) {
  return std::visit(Classifier{z}, domain.shape());
}

ExtendedPoint cusp_boundary_unit(double t) {
  const double arc_begin = 1.0 / 3.0;
  const double parabola_begin = 1.0 - kCuspXMax / 3.0;
  if (t < arc_begin) return ExtendedPoint::finite(Complex{3.0 * t, 0.0});
  if (t < parabola_begin) {
    const double phi = kCuspThetaMax * (t - arc_begin) / (parabola_begin - arc_begin);
    return ExtendedPoint::finite(std::polar(1.0, phi));
  }
  const double x = 3.0 * (1.0 - t);
  return ExtendedPoint::finite(Complex{x, x * x});
}

ExtendedPoint tangent_chart(Complex base, Complex dir, double t) {
  if (t == 0.5) return ExtendedPoint::infinity();
  return ExtendedPoint::finite(base + dir * std::tan(kPi * t));
}

struct BoundaryParam {
  double t;

  ExtendedPoint operator()(const HalfPlane& h) const {
    return tangent_chart(h.offset * h.normal, Complex{0.0, -1.0} * h.normal, t);
  }
  ExtendedPoint operator()(const Sector& s) const {
    if (t == 0.5) return ExtendedPoint::infinity();
    const double alpha = s.bisector - 0.5 * s.opening;
    if (t < 0.5) return ExtendedPoint::finite(s.vertex + std::polar(std::tan(kPi * t), alpha));
    return ExtendedPoint::finite(s.vertex +
                                 std::polar(std::tan(kPi * (1.0 - t)), alpha + s.opening));
  }
  ExtendedPoint operator()(const DiskInterior& d) const {
    return ExtendedPoint::finite(d.center + std::polar(d.radius, 2.0 * kPi * t));
  }
  ExtendedPoint operator()(const DiskExterior& d) const {
    return ExtendedPoint::finite(d.center + std::polar(d.radius, -2.0 * kPi * t));
  }
  ExtendedPoint operator()(const MoebiusImage& m) const {
    return moebius_apply(m.map, boundary_param(*m.base, t).point);
  }
  ExtendedPoint operator()(const CuspDomain& c) const {
    const double tt = c.complement ? (t == 0.0 ? 0.0 : 1.0 - t) : t;
    const ExtendedPoint p = cusp_boundary_unit(tt);
    return ExtendedPoint::finite(p.value * c.scale);
  }
};

bool points_collinear(Complex a, Complex b, Complex c) {
  const double cross = ((b - a) * std::conj(c - a)).imag();
  const double scale = std::abs(b - a) * std::abs(c - a);
  return std::abs(cross) <= 1e-12 * scale;
}

std::optional<Complex> interior_probe(const DomainSpec& domain) {
  if (const auto* h = domain.as<HalfPlane>()) return h->offset * h->normal + h->normal;
  if (const auto* d = domain.as<DiskInterior>()) return d->center;
  if (const auto* d = domain.as<DiskExterior>()) return d->center + 2.0 * d->radius;
  return std::nullopt;
}

}  // namespace

DomainSpec::DomainSpec() : DomainSpec(HalfPlane{}) {}
DomainSpec::DomainSpec(HalfPlane s) : shape_(s) { init_flags(); }
DomainSpec::DomainSpec(Sector s) : shape_(s) { init_flags(); }
DomainSpec::DomainSpec(DiskInterior s) : shape_(s) { init_flags(); }
DomainSpec::DomainSpec(DiskExterior s) : shape_(s) { init_flags(); }
DomainSpec::DomainSpec(MoebiusImage s) : shape_(std::move(s)) { init_flags(); }
DomainSpec::DomainSpec(CuspDomain s) : shape_(s) { init_flags(); }

void DomainSpec::init_flags() {
  if (auto* h = std::get_if<HalfPlane>(&shape_)) {
    const double n = std::abs(h->normal);
    if (!(n > 0.0) || !std::isfinite(h->offset)) {
      throw Error(ErrorCode::InvalidArgument, "half-plane needs a nonzero normal");
    }
    h->normal /= n;
    unbounded_ = true;
    infinity_on_boundary_ = true;
  } else if (const auto* s = std::get_if<Sector>(&shape_)) {
    if (!(s->opening > 0.0 && s->opening < 2.0 * kPi)) {
      throw Error(ErrorCode::InvalidArgument, "sector opening must lie in (0, 2pi)");
    }
    unbounded_ = true;
    infinity_on_boundary_ = true;
  } else if (const auto* d = std::get_if<DiskInterior>(&shape_)) {
    if (!(d->radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "disk radius must be positive");
  } else if (const auto* e = std::get_if<DiskExterior>(&shape_)) {
    if (!(e->radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "disk radius must be positive");
    unbounded_ = true;
  } else if (const auto* m = std::get_if<MoebiusImage>(&shape_)) {
    if (!m->base) throw Error(ErrorCode::InvalidArgument, "Moebius image needs a base domain");
    make_moebius(m->map.a, m->map.b, m->map.c, m->map.d);
    // infinity belongs to m(base) exactly where the pole of m sits relative to base
    const ExtendedPoint p = pole(m->map);
    Membership where = p.infinite ? contains_infinity(*m->base) : contains(*m->base, p.value);
    unbounded_ = where != Membership::Exterior;
    infinity_on_boundary_ = where == Membership::Boundary;
    quasidisk_ = m->base->is_quasidisk();
  } else if (const auto* c = std::get_if<CuspDomain>(&shape_)) {
    if (!(c->scale > 0.0)) throw Error(ErrorCode::InvalidArgument, "cusp scale must be positive");
    unbounded_ = c->complement;
    quasidisk_ = false;
  }
}

std::string DomainSpec::variant_name() const {
  struct Name {
    std::string operator()(const HalfPlane&) const { return "half-plane"; }
    std::string operator()(const Sector&) const { return "sector"; }
    std::string operator()(const DiskInterior&) const { return "disk-interior"; }
    std::string operator()(const DiskExterior&) const { return "disk-exterior"; }
    std::string operator()(const MoebiusImage&) const { return "moebius-image"; }
    std::string operator()(const CuspDomain& c) const {
      return c.complement ? "cusp-complement" : "cusp";
    }
  };
  return std::visit(Name{}, shape_);
}

DomainSpec upper_half_plane() { return DomainSpec(HalfPlane{Complex{0.0, 1.0}, 0.0}); }
DomainSpec quadrant_sector() { return DomainSpec(Sector{Complex{}, 0.25 * kPi, 0.5 * kPi}); }
DomainSpec unit_disk() { return DomainSpec(DiskInterior{Complex{}, 1.0}); }
DomainSpec unit_disk_exterior() { return DomainSpec(DiskExterior{Complex{}, 1.0}); }
DomainSpec cusp_domain(double scale) { return DomainSpec(CuspDomain{scale, false}); }

std::optional<DomainSpec> domain_preset(const std::string& name) {
  if (name == "halfplane" || name == "half-plane") return upper_half_plane();
  if (name == "sector") return quadrant_sector();
  if (name == "disk") return unit_disk();
  if (name == "disk-exterior") return unit_disk_exterior();
  if (name == "cusp") return cusp_domain();
  return std::nullopt;
}

DomainSpec complement(const DomainSpec& domain) {
  struct Complementer {
    DomainSpec operator()(const HalfPlane& h) const {
      return DomainSpec(HalfPlane{-h.normal, -h.offset});
    }
    DomainSpec operator()(const Sector& s) const {
      return DomainSpec(Sector{s.vertex, s.bisector + kPi, 2.0 * kPi - s.opening});
    }
    DomainSpec operator()(const DiskInterior& d) const {
      return DomainSpec(DiskExterior{d.center, d.radius});
    }
    DomainSpec operator()(const DiskExterior& d) const {
      return DomainSpec(DiskInterior{d.center, d.radius});
    }
    DomainSpec operator()(const MoebiusImage& m) const {
      return DomainSpec(
          MoebiusImage{std::make_shared<const DomainSpec>(complement(*m.base)), m.map});
    }
    DomainSpec operator()(const CuspDomain& c) const {
      return DomainSpec(CuspDomain{c.scale, !c.complement});
    }
  };
  return std::visit(Complementer{}, domain.shape());
}

Membership contains(const DomainSpec& domain, Complex z) {
  return contains(domain, z, boundary_epsilon(z));
}

Membership contains(const DomainSpec& domain, Complex z, double eps) {
  const Classification c = classify(domain, z);
  if (c.distance <= eps) return Membership::Boundary;
  return c.interior ? Membership::Interior : Membership::Exterior;
}

Membership contains_infinity(const DomainSpec& domain) {
  if (domain.infinity_on_boundary()) return Membership::Boundary;
  return domain.unbounded() ? Membership::Interior : Membership::Exterior;
}

double boundary_distance(const DomainSpec& domain, Complex z) {
  return classify(domain, z).distance;
}

BoundaryPoint boundary_param(const DomainSpec& domain, double t) {
  if (!(t >= 0.0 && t < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "boundary parameter must lie in [0,1)");
  }
  return {t, std::visit(BoundaryParam{t}, domain.shape())};
}

DomainSpec canonical_form(const DomainSpec& domain) {
  const auto* image = domain.as<MoebiusImage>();
  if (!image) return domain;
  DomainSpec base = canonical_form(*image->base);
  MoebiusMap map = image->map;
  if (const auto* inner = base.as<MoebiusImage>()) {
    // base could not be simplified; keep the composite image
    return DomainSpec(MoebiusImage{inner->base, compose(map, inner->map)});
  }
  const auto probe = interior_probe(base);
  if (!probe) return DomainSpec(MoebiusImage{std::make_shared<const DomainSpec>(base), map});

  const double ts[3] = {0.0, 0.25, 0.75};
  ExtendedPoint img[3];
  for (int k = 0; k < 3; ++k) img[k] = moebius_apply(map, boundary_param(base, ts[k]).point);
  ExtendedPoint inside = moebius_apply(map, ExtendedPoint::finite(*probe));
  if (inside.infinite) {
    inside = moebius_apply(map, ExtendedPoint::finite(*probe + 0.5 * (img[0].infinite ? 1.0 : 0.1)));
  }

  std::vector<Complex> finite;
  for (const auto& p : img) {
    if (!p.infinite) finite.push_back(p.value);
  }
  const bool line = finite.size() < 3 || points_collinear(finite[0], finite[1], finite[2]);
  if (line) {
    const Complex dir = (finite[1] - finite[0]) / std::abs(finite[1] - finite[0]);
    Complex normal = Complex{0.0, 1.0} * dir;
    double offset = (finite[0] * std::conj(normal)).real();
    if (inside.infinite || (inside.value * std::conj(normal)).real() < offset) {
      normal = -normal;
      offset = -offset;
    }
    return DomainSpec(HalfPlane{normal, offset});
  }
  // circumcircle of the three image points
  const Complex a = finite[0], b = finite[1], c = finite[2];
  const Complex ab = b - a, ac = c - a;
  const double den = 2.0 * (ab.real() * ac.imag() - ab.imag() * ac.real());
  const Complex center =
      a + Complex{(ac.imag() * std::norm(ab) - ab.imag() * std::norm(ac)) / den,
                  (ab.real() * std::norm(ac) - ac.real() * std::norm(ab)) / den};
  const double radius = std::abs(a - center);
  if (!inside.infinite && std::abs(inside.value - center) < radius) {
    return DomainSpec(DiskInterior{center, radius});
  }
  return DomainSpec(DiskExterior{center, radius});
}

double quasidisk_constant(const DomainSpec& domain, std::size_t n_samples, double window) {
  if (n_samples < 2) throw Error(ErrorCode::InvalidArgument, "quasidisk_constant needs >= 2 samples");
  const std::size_t n = n_samples;
  std::vector<Complex> pts(n);
  std::vector<char> usable(n, 1);
  double scale = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const ExtendedPoint p = boundary_param(domain, static_cast<double>(k) / n).point;
    if (p.infinite || (domain.unbounded() && std::abs(p.value) > window)) {
      usable[k] = 0;
      continue;
    }
    pts[k] = p.value;
    scale = std::max(scale, std::abs(p.value));
  }
  // diam[i][len]: diameter of the cyclic run of samples i, i+1, ..., i+len
  // (infinite when the run crosses an excluded sample)
  std::vector<double> diam(n * n, kInf);
  for (std::size_t i = 0; i < n; ++i) {
    if (!usable[i]) continue;
    double d = 0.0;
    diam[i * n] = 0.0;
    for (std::size_t len = 1; len < n; ++len) {
      const std::size_t j = (i + len) % n;
      if (!usable[j]) break;
      for (std::size_t s = 0; s < len; ++s) {
        d = std::max(d, std::abs(pts[(i + s) % n] - pts[j]));
      }
      diam[i * n + len] = d;
    }
  }
  const double tol = 1e-12 * std::max(1.0, scale);
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!usable[i]) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!usable[j]) continue;
      const double chord = std::abs(pts[i] - pts[j]);
      if (chord < tol) throw Error(ErrorCode::DegeneratePair, "coincident boundary samples");
      const double arc = std::min(diam[i * n + (j - i)], diam[j * n + (n - (j - i))]);
      if (std::isfinite(arc)) best = std::max(best, arc / chord);
    }
  }
  return best;
}

}  // namespace bergman
