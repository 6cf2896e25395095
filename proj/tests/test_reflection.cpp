#include <doctest.h>

#include <cmath>
#include <random>

#include "bergman/operator_lab.hpp"
#include "bergman/reflection.hpp"

using namespace bergman;

namespace {

const Complex I{0.0, 1.0};

QuadConfig tight(double tol = 1e-9) {
  QuadConfig q;
  q.abs_tol = tol;
  return q;
}

}  // namespace

TEST_CASE("catalogue reflections") {
  CHECK(std::abs(reflect(upper_half_plane(), -2.0 * I) - 2.0 * I) < 1e-15);
  CHECK(std::abs(reflect(quadrant_sector(), std::polar(1.0, kPi)) - std::polar(1.0, kPi / 3.0)) < 1e-14);
  CHECK(std::abs(reflect(unit_disk(), 2.0) - 0.5) < 1e-15);
  CHECK(reflect(quadrant_sector(), 0.0) == Complex{0.0});

  CHECK_THROWS_AS(make_reflection(cusp_domain()), Error);
  CHECK_THROWS_AS(reflect(unit_disk(), 0.0), Error);

  const Reflection hp = make_reflection(upper_half_plane());
  CHECK(hp.c1 == 1.0);
  CHECK(hp.c2 == 1.0);
  const Reflection s = make_reflection(quadrant_sector());
  CHECK(s.c1 == doctest::Approx(1.0 / 3.0));
  CHECK(s.c2 == doctest::Approx(3.0));
  CHECK(std::isnan(make_reflection(unit_disk()).c1));
}

TEST_CASE("reflection axioms hold on every reflectable preset") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss(0.0, 2.0);
  for (const auto& name : {"halfplane", "sector", "disk", "disk-exterior"}) {
    CAPTURE(name);
    const DomainSpec d = *domain_preset(name);
    for (int k = 0; k < 200; ++k) {
      const Complex z{gauss(rng), gauss(rng)};
      const Membership m = contains(d, z);
      if (m == Membership::Boundary) continue;
      const Complex w = reflect(d, z);
      // sides are exchanged and the map is an involution
      CHECK(contains(d, w) != m);
      CHECK(std::abs(reflect(d, w) - z) < 1e-10 * (1.0 + std::abs(z)));
    }
    for (int k = 0; k < 64; ++k) {
      const BoundaryPoint b = boundary_param(d, (k + 0.5) / 64.0);
      if (b.point.infinite) continue;
      CHECK(std::abs(reflect(d, b.point.value) - b.point.value) < 1e-12 * (1.0 + std::abs(b.point.value)));
    }
  }
}

TEST_CASE("bi-Lipschitz estimates") {
  const LipschitzEstimate hp = bilipschitz_estimate(make_reflection(upper_half_plane()), 1000, 10.0);
  CHECK(hp.c1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(hp.c2 == doctest::Approx(1.0).epsilon(1e-12));

  // polar-affine map on the quadrant: angular stretch 1/3 and 3
  const LipschitzEstimate s = bilipschitz_estimate(make_reflection(quadrant_sector()), 10000, 10.0);
  CHECK(s.c1 >= 1.0 / 3.0 - 0.02);
  CHECK(s.c1 <= 1.0 / 3.0 + 0.02);
  CHECK(s.c2 >= 3.0 - 0.1);
  CHECK(s.c2 <= 3.0 + 0.1);

  const LipschitzEstimate disk = bilipschitz_estimate(make_reflection(unit_disk()), 1000, 2.0);
  CHECK(std::isfinite(disk.c1));
  CHECK(std::isfinite(disk.c2));
  CHECK(disk.c1 > 0.0);
  CHECK(disk.pairs > 0);

  CHECK_THROWS_AS(bilipschitz_estimate(make_reflection(unit_disk()), 1000, 0.5), Error);
  CHECK_THROWS_AS(bilipschitz_estimate(make_reflection(upper_half_plane()), 5, 10.0), Error);

  SUBCASE("estimates are reproducible for a fixed seed") {
    const LipschitzEstimate a = bilipschitz_estimate(make_reflection(quadrant_sector()), 500, 10.0, 42);
    const LipschitzEstimate b = bilipschitz_estimate(make_reflection(quadrant_sector()), 500, 10.0, 42);
    CHECK(a.c1 == b.c1);
    CHECK(a.c2 == b.c2);
  }
}

TEST_CASE("pullback norms") {
  SUBCASE("half-plane mirror is an isometry") {
    const DomainSpec d = upper_half_plane();
    const Reflection refl = make_reflection(d);
    for (const HoloFun& f : {rational_section(d, -I), kernel_section(d, {-0.5, 2.0})}) {
      const double n = norm_b2(f, d, tight()).value;
      const QuadResult p = pullback_inner(refl, f, f, tight());
      CHECK(std::abs(std::sqrt(p.value.real()) - n) < 1e-5);
    }
  }
  SUBCASE("quadrant pullback triples the squared norm") {
    // the angle map has Jacobian 1/3 from the complement onto the quadrant
    const DomainSpec d = quadrant_sector();
    const Reflection refl = make_reflection(d);
    for (const HoloFun& f : {rational_section(d, {-1.0, 0.0}), kernel_section(d, {0.5, 0.5})}) {
      const double n = norm_b2(f, d, tight()).value;
      const QuadResult p = pullback_inner(refl, f, f, tight());
      CHECK(p.value.real() == doctest::Approx(3.0 * n * n).epsilon(1e-5));
      // sandwich with the bi-Lipschitz constants
      const double q = n * n / p.value.real();
      CHECK(q >= refl.c1 * refl.c1 * 0.95);
      CHECK(q <= refl.c2 * refl.c2 * 1.05);
    }
  }
  SUBCASE("zero function") {
    const Reflection refl = make_reflection(unit_disk());
    const HoloFun z = zero_function(unit_disk());
    CHECK(pullback_inner(refl, z, z, tight()).value == Complex{0.0});
  }
}
