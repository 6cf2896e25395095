#include <doctest.h>

#include <cmath>

#include "bergman/domain.hpp"
#include "bergman/moebius.hpp"

using namespace bergman;

TEST_CASE("membership of catalogue examples") {
  CHECK(contains(upper_half_plane(), {1.0, 2.0}) == Membership::Interior);
  CHECK(contains(quadrant_sector(), {-1.0, 0.0}) == Membership::Exterior);
  CHECK(contains(unit_disk(), {1.0, 0.0}) == Membership::Boundary);
  CHECK(contains(unit_disk_exterior(), {2.0, 0.0}) == Membership::Interior);
  CHECK(contains(cusp_domain(), {0.5, 0.1}) == Membership::Interior);
  CHECK(contains(cusp_domain(), {0.5, 0.3}) == Membership::Exterior);
  CHECK(contains(cusp_domain(), {0.5, -0.1}) == Membership::Exterior);
}

TEST_CASE("complement swaps interior and exterior") {
  const Complex probes[] = {{0.3, 0.4}, {-1.0, 2.0}, {2.0, -3.0}, {0.5, 0.1}, {-0.2, -0.2}};
  for (const auto& name : {"halfplane", "sector", "disk", "disk-exterior", "cusp"}) {
    const DomainSpec d = *domain_preset(name);
    const DomainSpec c = complement(d);
    for (const Complex z : probes) {
      const Membership a = contains(d, z), b = contains(c, z);
      if (a == Membership::Interior) CHECK(b == Membership::Exterior);
      if (a == Membership::Exterior) CHECK(b == Membership::Interior);
    }
  }
}

TEST_CASE("moebius maps") {
  const MoebiusMap inv = MoebiusMap::inversion();
  CHECK(std::abs(moebius_apply(inv, 2.0) - 0.5) < 1e-15);
  const Complex z{0.3, -1.7};
  CHECK(moebius_apply(MoebiusMap::identity(), z) == z);
  CHECK(std::abs(moebius_derivative(inv, 2.0) + 0.25) < 1e-15);

  SUBCASE("derivative matches central differences") {
    const MoebiusMap m = make_moebius({1.0, 1.0}, 2.0, {0.5, 0.0}, {1.0, -1.0});
    const double h = 1e-5;
    const Complex fd = (moebius_apply(m, z + h) - moebius_apply(m, z - h)) / (2.0 * h);
    CHECK(std::abs(fd - moebius_derivative(m, z)) < 1e-8);
  }
  SUBCASE("inverse and composition") {
    const MoebiusMap m = make_moebius({2.0, 1.0}, -1.0, {0.0, 1.0}, 3.0);
    CHECK(std::abs(moebius_apply(invert(m), moebius_apply(m, z)) - z) < 1e-13);
    const MoebiusMap mm = compose(m, inv);
    CHECK(std::abs(moebius_apply(mm, z) - moebius_apply(m, moebius_apply(inv, z))) < 1e-13);
  }
  SUBCASE("degenerate coefficients and poles") {
    CHECK_THROWS_AS(make_moebius(1.0, 2.0, 2.0, 4.0), Error);
    CHECK_THROWS_AS(moebius_apply(inv, 0.0), Error);
    CHECK(moebius_apply(inv, ExtendedPoint::finite(0.0)).infinite);
    CHECK(moebius_apply(inv, ExtendedPoint::infinity()).value == Complex{0.0});
  }
}

TEST_CASE("boundary parameterization") {
  CHECK(std::abs(boundary_param(unit_disk(), 0.25).point.value - Complex{0.0, 1.0}) < 1e-14);
  CHECK(boundary_param(upper_half_plane(), 0.5).point.infinite);
  const BoundaryPoint s = boundary_param(quadrant_sector(), 0.01);
  CHECK_FALSE(s.point.infinite);
  CHECK(std::abs(s.point.value.imag()) < 1e-12);
  CHECK(s.point.value.real() > 0.0);

  for (const auto& name : {"halfplane", "sector", "disk", "disk-exterior", "cusp"}) {
    const DomainSpec d = *domain_preset(name);
    for (int k = 0; k < 40; ++k) {
      const BoundaryPoint b = boundary_param(d, (k + 0.5) / 40.0);
      if (!b.point.infinite) CHECK(contains(d, b.point.value) == Membership::Boundary);
    }
  }
}

TEST_CASE("moebius images reduce to plain domains") {
  // the inversion sends the disk exterior onto the punctured disk
  const DomainSpec img(MoebiusImage{std::make_shared<const DomainSpec>(unit_disk_exterior()),
                                    MoebiusMap::inversion()});
  const DomainSpec canon = canonical_form(img);
  REQUIRE(canon.as<DiskInterior>() != nullptr);
  CHECK(std::abs(canon.as<DiskInterior>()->radius - 1.0) < 1e-12);
  CHECK(contains(img, {0.2, 0.3}) == Membership::Interior);
  CHECK(contains(img, {1.2, 0.3}) == Membership::Exterior);
}

TEST_CASE("quasidisk constant") {
  CHECK(quasidisk_constant(unit_disk(), 256) <= kPi / 2.0 + 1e-9);
  CHECK(quasidisk_constant(upper_half_plane(), 256) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(cusp_domain().is_quasidisk() == false);
  CHECK(unit_disk().is_quasidisk());

  SUBCASE("cusp estimate keeps growing under refinement") {
    double prev = quasidisk_constant(cusp_domain(), 256);
    for (const std::size_t n : {512u, 1024u}) {
      const double next = quasidisk_constant(cusp_domain(), n);
      CHECK(next > 1.99 * prev);
      prev = next;
    }
  }
}
