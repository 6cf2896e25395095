#include <doctest.h>

#include <cmath>

#include "bergman/hilbert.hpp"
#include "bergman/operator_lab.hpp"

using namespace bergman;

namespace {

const Complex I{0.0, 1.0};

TransformConfig config(TransformRoute route, double tol = 1e-10) {
  TransformConfig tc;
  tc.route = route;
  tc.quad.abs_tol = tol;
  return tc;
}

}  // namespace

TEST_CASE("half-plane transform of r_{-i}") {
  const HoloFun f = rational_section(upper_half_plane(), -I);
  for (const TransformRoute route : {TransformRoute::Quadrature, TransformRoute::Exact, TransformRoute::Auto}) {
    const QuadResult q = hilbert_transform(f, -2.0 * I, config(route));
    CHECK(q.converged);
    CHECK(std::abs(q.value - kPi / 9.0) < 1e-7);
  }

  // mirror identity ~f(xi) = -pi conj(f(conj xi))
  for (const Complex xi : random_admissible(upper_half_plane(), 8, 3)) {
    const QuadResult q = hilbert_transform(f, xi, config(TransformRoute::Quadrature));
    CHECK(std::abs(q.value + kPi * std::conj(eval(f, std::conj(xi)))) < 1e-7);
  }
}

TEST_CASE("transform basics") {
  // mean value of (z - 2)^-2 over the disk
  const QuadResult one = hilbert_transform(monomial(unit_disk(), 0), 2.0, config(TransformRoute::Quadrature));
  CHECK(std::abs(one.value - kPi / 4.0) < 1e-8);

  const QuadResult zero = hilbert_transform(zero_function(unit_disk()), 2.0, config(TransformRoute::Auto));
  CHECK(zero.value == Complex{0.0});

  // conjugate linearity in f
  const DomainSpec s = quadrant_sector();
  const HoloFun a = rational_section(s, {-1.0, 0.0}), b = kernel_section(s, {0.4, 0.7});
  const Complex c{0.3, -1.2};
  const HoloFun comb = linear_combination(s, {c, 1.0}, {a, b});
  const Complex xi{-0.5, -0.8};
  const TransformConfig tc = config(TransformRoute::Auto);
  const Complex lhs = hilbert_transform(comb, xi, tc).value;
  const Complex rhs = std::conj(c) * hilbert_transform(a, xi, tc).value + hilbert_transform(b, xi, tc).value;
  CHECK(std::abs(lhs - rhs) < 1e-9 * (1.0 + std::abs(lhs)));

  try {
    hilbert_transform(a, {0.5, 0.5}, tc);
    FAIL("expected PointInsideDomain");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PointInsideDomain);
  }
}

TEST_CASE("norm ratio") {
  const HoloFun f = rational_section(upper_half_plane(), -I);
  TransformConfig tc = config(TransformRoute::Auto, 1e-6);
  tc.measure_normalization = MeasureNormalization::Lebesgue;
  const NormRatio leb = transform_norm_ratio(f, tc);
  CHECK(leb.converged);
  CHECK(leb.ratio == doctest::Approx(kPi).epsilon(1e-4));

  tc.measure_normalization = MeasureNormalization::LebesgueOverPi;
  const NormRatio over = transform_norm_ratio(f, tc);
  CHECK(over.ratio == doctest::Approx(1.0).epsilon(1e-4));

  SUBCASE("invariant under scaling f") {
    const HoloFun g = linear_combination(upper_half_plane(), {Complex{-2.5, 4.0}}, {f});
    CHECK(transform_norm_ratio(g, tc).ratio == doctest::Approx(over.ratio).epsilon(1e-8));
  }
  SUBCASE("sector ratios stay below one") {
    const DomainSpec s = quadrant_sector();
    for (const HoloFun& h : {rational_section(s, {-1.0, 0.0}), kernel_section(s, {0.5, 0.5})}) {
      CHECK(transform_norm_ratio(h, tc).ratio <= 1.0 + 1e-3);
    }
  }
}

TEST_CASE("surjectivity diagnostic") {
  const TransformConfig tc = config(TransformRoute::Auto, 1e-6);
  const DomainSpec hp = upper_half_plane();

  const std::vector<Complex> single{-2.0 * I};
  const SurjectivityReport one = surjectivity_diagnostic(hp, single, tc);
  CHECK(one.eigenvalues.size() == 1);
  CHECK(one.spread == doctest::Approx(1.0));

  const SurjectivityReport half = surjectivity_diagnostic(hp, halton_exterior(hp, 8), tc);
  CHECK(half.converged);
  CHECK(half.spread < 1e3);
  // the half-plane transform is pi times an isometry
  for (int k = 0; k < half.eigenvalues.size(); ++k) {
    CHECK(half.eigenvalues(k) == doctest::Approx(kPi * kPi).epsilon(1e-4));
  }

  for (const int level : {0, 1}) {
    const SurjectivityReport cusp = surjectivity_diagnostic(cusp_domain(), cusp_approach(cusp_domain(), level, 8), tc);
    CHECK(cusp.spread >= 10.0 * half.spread);
  }
}

TEST_CASE("holomorphy residual") {
  const HoloFun f = rational_section(upper_half_plane(), -I);
  const std::vector<Complex> grid{{0.0, -2.0}, {1.0, -1.5}, {-0.7, -3.0}};
  const TransformConfig tc = config(TransformRoute::Exact);
  const double r1 = holomorphy_residual(f, grid, 1e-3, tc);
  const double r2 = holomorphy_residual(f, grid, 5e-4, tc);
  CHECK(r1 < 1e-5);
  CHECK(r1 / r2 >= 3.5);
  CHECK(r1 / r2 <= 4.5);
  CHECK(holomorphy_residual(zero_function(upper_half_plane()), grid, 1e-3, tc) == 0.0);
}

TEST_CASE("normalization names") {
  CHECK(parse_normalization("lebesgue") == MeasureNormalization::Lebesgue);
  CHECK(parse_normalization("lebesgue-over-pi") == MeasureNormalization::LebesgueOverPi);
  CHECK_FALSE(parse_normalization("counting").has_value());
  CHECK(measure_factor(MeasureNormalization::LebesgueOverPi) == doctest::Approx(1.0 / kPi));
  for (const auto n : {MeasureNormalization::Lebesgue, MeasureNormalization::LebesgueOverPi}) {
    CHECK(parse_normalization(to_string(n)) == n);
  }
}
