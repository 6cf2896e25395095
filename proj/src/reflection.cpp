#include "bergman/reflection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>

namespace bergman {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double wrap(double t) {
  t = std::fmod(t, 2.0 * kPi);
  if (t < 0.0) t += 2.0 * kPi;
  return t;
}

Complex reflect_sector(const Sector& s, Complex z) {
  const double alpha = s.bisector - 0.5 * s.opening;
  const Complex u = std::polar(1.0, -alpha) * (z - s.vertex);
  const double r = std::abs(u);
  if (r == 0.0) return s.vertex;
  const double t = wrap(std::arg(u));
  const double open = s.opening;
  const double rest = 2.0 * kPi - open;
  // affine angle map exchanging [open, 2 pi] with [0, open], fixing both rays
  const double mu = t >= open ? open * (2.0 * kPi - t) / rest : 2.0 * kPi - t * rest / open;
  return s.vertex + std::polar(r, alpha + mu);
}

Complex reflect_circle(Complex c, double radius, Complex z) {
  const Complex d = z - c;
  if (d == Complex{0.0}) throw Error(ErrorCode::SingularPoint, "reflection of the circle center");
  return c + radius * radius / std::conj(d);
}

Complex reflect_shape(const DomainSpec& domain, Complex z);

struct Reflector {
  Complex z;

  Complex operator()(const HalfPlane& h) const {
    const Complex p0 = h.offset * h.normal;
    const Complex tau = Complex{0.0, -1.0} * h.normal;
    return p0 + tau * tau * std::conj(z - p0);
  }
  Complex operator()(const Sector& s) const { return reflect_sector(s, z); }
  Complex operator()(const DiskInterior& d) const { return reflect_circle(d.center, d.radius, z); }
  Complex operator()(const DiskExterior& d) const { return reflect_circle(d.center, d.radius, z); }
  Complex operator()(const MoebiusImage& m) const {
    const ExtendedPoint u = moebius_apply(invert(m.map), ExtendedPoint::finite(z));
    if (u.infinite) throw Error(ErrorCode::SingularPoint, "reflection passes through infinity");
    const ExtendedPoint v = moebius_apply(m.map, ExtendedPoint::finite(reflect_shape(*m.base, u.value)));
    if (v.infinite) throw Error(ErrorCode::SingularPoint, "reflection passes through infinity");
    return v.value;
  }
  Complex operator()(const CuspDomain&) const {
    throw Error(ErrorCode::ReflectionUnavailable, "no reflection is provided for the cusp domain");
  }
};

Complex reflect_shape(const DomainSpec& domain, Complex z) {
  return std::visit(Reflector{z}, domain.shape());
}

}  // namespace

Reflection make_reflection(const DomainSpec& domain) {
  const DomainSpec canon = canonical_form(domain);
  Reflection r{domain, 1.0, 1.0, true};
  if (canon.as<CuspDomain>()) {
    throw Error(ErrorCode::ReflectionUnavailable, "no reflection is provided for the cusp domain");
  }
  if (const auto* s = canon.as<Sector>()) {
    const double k = std::min(s->opening, 2.0 * kPi - s->opening) /
                     std::max(s->opening, 2.0 * kPi - s->opening);
    r.c1 = k;
    r.c2 = 1.0 / k;
  } else if (!canon.as<HalfPlane>()) {
    r.c1 = kNaN;
    r.c2 = kNaN;
    r.exact_constants = false;
  }
  return r;
}

Complex reflect(const DomainSpec& domain, Complex xi) {
  const DomainSpec canon = canonical_form(domain);
  return reflect_shape(canon, xi);
}

LipschitzEstimate bilipschitz_estimate(const Reflection& refl, std::size_t n_pairs, double window,
                                       std::uint64_t seed) {
  if (n_pairs < 10) throw Error(ErrorCode::InvalidArgument, "bilipschitz_estimate needs >= 10 pairs");
  if (!(window > 0.0)) throw Error(ErrorCode::InvalidArgument, "window must be positive");
  const DomainSpec canon = canonical_form(refl.domain);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Complex anchor{};
  double r_in = 0.0, r_out = window;
  if (const auto* h = canon.as<HalfPlane>()) {
    anchor = h->offset * h->normal;
  } else if (const auto* s = canon.as<Sector>()) {
    anchor = s->vertex;
  } else if (const auto* d = canon.as<DiskInterior>()) {
    if (!(window > 1.0)) throw Error(ErrorCode::InvalidArgument, "disk window ratio must exceed 1");
    anchor = d->center;
    r_in = d->radius / window;
    r_out = d->radius * window;
  } else if (const auto* e = canon.as<DiskExterior>()) {
    if (!(window > 1.0)) throw Error(ErrorCode::InvalidArgument, "disk window ratio must exceed 1");
    anchor = e->center;
    r_in = e->radius / window;
    r_out = e->radius * window;
  }
  auto in_window = [&](Complex z) {
    const double r = std::abs(z - anchor);
    return r >= r_in && r <= r_out;
  };
  auto uniform_point = [&]() {
    const double r = std::sqrt(r_in * r_in + (r_out * r_out - r_in * r_in) * unit(rng));
    return anchor + std::polar(r, 2.0 * kPi * unit(rng));
  };
  auto boundary_point = [&]() -> std::optional<Complex> {
    for (int attempt = 0; attempt < 64; ++attempt) {
      const BoundaryPoint b = boundary_param(canon, unit(rng) * 0.999999);
      if (!b.point.infinite && in_window(b.point.value)) return b.point.value;
    }
    return std::nullopt;
  };

  LipschitzEstimate est;
  est.c1 = std::numeric_limits<double>::infinity();
  est.c2 = 0.0;
  auto record = [&](Complex a, Complex b) {
    const double d = std::abs(a - b);
    if (d < 1e-12 * (1.0 + std::abs(a))) return;
    if (!in_window(a) || !in_window(b)) return;
    double ratio;
    try {
      ratio = std::abs(reflect_shape(canon, a) - reflect_shape(canon, b)) / d;
    } catch (const Error&) {
      return;
    }
    est.c1 = std::min(est.c1, ratio);
    est.c2 = std::max(est.c2, ratio);
    ++est.pairs;
  };

  const std::size_t n_short = n_pairs / 2;
  const std::size_t n_cross = n_pairs / 4;
  const std::size_t n_far = n_pairs - n_short - n_cross;
  for (std::size_t k = 0; k < n_short; ++k) {
    const Complex z = uniform_point();
    const double len = (r_out - r_in) * std::pow(10.0, -1.0 - 3.0 * unit(rng));
    record(z, z + std::polar(len, 2.0 * kPi * unit(rng)));
  }
  for (std::size_t k = 0; k < n_cross; ++k) {
    const auto b = boundary_point();
    if (!b) continue;
    const double len = (r_out - r_in) * std::pow(10.0, -3.0 * unit(rng));
    const Complex z1 = *b + std::polar(len * unit(rng), 2.0 * kPi * unit(rng));
    const Complex z2 = (k % 8 == 0) ? *b : *b + std::polar(len * unit(rng), 2.0 * kPi * unit(rng));
    if (k % 16 == 0) {
      // two boundary points: both fixed, ratio exactly one
      if (const auto b2 = boundary_point()) record(*b, *b2);
      continue;
    }
    record(z1, z2);
  }
  for (std::size_t k = 0; k < n_far; ++k) record(uniform_point(), uniform_point());
  if (est.pairs == 0) throw Error(ErrorCode::DegeneratePair, "no admissible pairs in the window");
  return est;
}

QuadResult pullback_inner(const Reflection& refl, const HoloFun& f, const HoloFun& g,
                          const QuadConfig& cfg) {
  const DomainSpec canon = canonical_form(refl.domain);
  return integrate_domain(
      complement(refl.domain),
      [&](Complex xi) {
        const Complex w = reflect_shape(canon, xi);
        return f.value(w) * std::conj(g.value(w));
      },
      cfg);
}

}  // namespace bergman
