#include <doctest.h>

#include <cmath>

#include "bergman/domain.hpp"
#include "bergman/quadrature.hpp"

using namespace bergman;

namespace {

QuadConfig tight(double tol = 1e-10) {
  QuadConfig q;
  q.abs_tol = tol;
  return q;
}

}  // namespace

TEST_CASE("integral of |z - xi0|^-4 outside a disk") {
  const Complex xi0{-0.4, 0.7};
  for (const double d : {0.5, 1.0, 2.0}) {
    const QuadResult q = integrate_domain(
        DomainSpec(DiskExterior{xi0, d}), [&](Complex z) { return Complex{std::pow(std::abs(z - xi0), -4.0)}; },
        tight());
    CHECK(q.converged);
    // radial oracle: integral_d^inf 2 pi r^-3 dr
    CHECK(q.value.real() == doctest::Approx(kPi / (d * d)).epsilon(1e-8));
    CHECK(std::abs(q.value.imag()) < 1e-12);
  }
}

TEST_CASE("areas and mean values") {
  const QuadResult area = integrate_domain(unit_disk(), [](Complex) { return Complex{1.0}; }, tight());
  CHECK(std::abs(area.value - kPi) < 1e-10);

  const QuadResult mean = integrate_domain(
      unit_disk(), [](Complex z) { return 1.0 / ((z - 2.0) * (z - 2.0)); }, tight());
  CHECK(std::abs(mean.value - kPi / 4.0) < 1e-9);

  // iterated integral: inner dx / (x^2 + a^2)^2 = pi / (2 a^3), then over y
  const QuadResult hp = integrate_domain(
      upper_half_plane(), [](Complex z) { return Complex{std::pow(std::abs(z + Complex{0.0, 1.0}), -4.0)}; },
      tight());
  CHECK(std::abs(hp.value - kPi / 4.0) < 1e-9);

  // quarter of the unit disk, cut out by a discontinuous indicator
  const QuadResult sector_area = integrate_domain(
      DomainSpec(Sector{0.0, 0.25 * kPi, 0.5 * kPi}), [](Complex z) {
        return std::abs(z) < 1.0 ? Complex{1.0} : Complex{0.0};
      },
      tight(1e-6));
  CHECK(std::abs(sector_area.value - kPi / 4.0) < 1e-4);
}

TEST_CASE("both unbounded charts agree") {
  auto h = [](Complex z) {
    const Complex d = z - Complex{0.0, -1.0};
    return 1.0 / (d * d * std::conj(d) * std::conj(d));
  };
  QuadConfig inv = tight(1e-9);
  QuadConfig polar = inv;
  polar.unbounded_chart = UnboundedChart::PolarDecay;
  const QuadResult a = integrate_domain(upper_half_plane(), h, inv);
  const QuadResult b = integrate_domain(upper_half_plane(), h, polar);
  CHECK(std::abs(a.value - kPi / 4.0) < 1e-8);
  CHECK(std::abs(b.value - kPi / 4.0) < 1e-6);
}

TEST_CASE("repeated runs are bit-identical") {
  auto h = [](Complex z) { return std::exp(-std::norm(z)) * z * z; };
  const QuadResult a = integrate_domain(quadrant_sector(), h, tight());
  const QuadResult b = integrate_domain(quadrant_sector(), h, tight());
  CHECK(a.value == b.value);
  CHECK(a.cells_used == b.cells_used);
}

TEST_CASE("budget and integrability failures") {
  QuadConfig small = tight(1e-14);
  small.max_cells = 4;
  const QuadResult q = integrate_domain(
      unit_disk(), [](Complex z) { return 1.0 / (z - 1.0001); }, small);
  CHECK_FALSE(q.converged);
  CHECK_THROWS_AS(require_converged(q, "test"), Error);

  // |z|^-2 is not integrable at infinity
  CHECK_THROWS_AS(integrate_domain(unit_disk_exterior(), [](Complex z) { return Complex{1.0 / std::norm(z)}; },
                                   tight(1e-6)),
                  Error);

  QuadConfig bad;
  bad.abs_tol = -1.0;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("one-dimensional Gauss-Kronrod") {
  const QuadResult q = integrate_interval([](double x) { return Complex{std::cos(x), std::sin(x)}; }, 0.0, kPi, 1e-13);
  CHECK(std::abs(q.value - Complex{0.0, 2.0}) < 1e-12);
}

TEST_CASE("Gram of monomials on the disk") {
  const GramResult g = gram_by_quadrature(
      unit_disk(), 3,
      [](Complex z, Eigen::Ref<Eigen::VectorXcd> out) {
        out(0) = 1.0;
        out(1) = z;
        out(2) = z * z;
      },
      tight());
  CHECK(g.converged);
  // (z^n, z^n) = pi / (n + 1) and distinct powers are orthogonal
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const Complex expected = i == j ? Complex{kPi / (i + 1)} : Complex{0.0};
      CHECK(std::abs(g.gram(i, j) - expected) < 1e-9);
    }
  }
}

TEST_CASE("node rule integrates the indicator") {
  const NodeRule rule = build_node_rule(
      quadrant_sector(), [](Complex z) { return std::pow(std::norm(z - Complex{-1.0, -1.0}), -2.0); }, tight());
  CHECK(rule.converged);
  double sum = 0.0;
  for (std::size_t k = 0; k < rule.points.size(); ++k) {
    sum += rule.weights[k] * std::pow(std::norm(rule.points[k] - Complex{-1.0, -1.0}), -2.0);
  }
  CHECK(sum == doctest::Approx(rule.indicator_integral).epsilon(1e-12));
}
