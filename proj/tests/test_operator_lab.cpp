#include <doctest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "bergman/operator_lab.hpp"

using namespace bergman;

namespace {

const Complex I{0.0, 1.0};

QuadConfig quad(double tol = 1e-8) {
  QuadConfig q;
  q.abs_tol = tol;
  return q;
}

double min_hermitian_eig(const Eigen::MatrixXcd& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(m, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

const FiniteModel& half_plane_model() {
  static const FiniteModel m = build_finite_model(upper_half_plane(), halton_exterior(upper_half_plane(), 4), {});
  return m;
}

const FiniteModel& small_sector_model() {
  static const FiniteModel m = build_finite_model(quadrant_sector(), halton_exterior(quadrant_sector(), 10), {});
  return m;
}

const FiniteModel& sector_model() {
  static const FiniteModel m = build_finite_model(quadrant_sector(), halton_exterior(quadrant_sector(), 40), {});
  return m;
}

}  // namespace

TEST_CASE("half-plane model is the scalar chain") {
  const FiniteModel& m = half_plane_model();
  const auto n = static_cast<Eigen::Index>(m.size());
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  CHECK(m.converged);
  // the mirror is an isometry, so both inner products coincide
  CHECK((m.t_mat - id).norm() < 1e-6);
  CHECK((m.r_mat - id).norm() < 1e-6);
  // k_j = (-1/pi) r_j
  CHECK((m.b_mat + kPi * id).cwiseAbs().maxCoeff() < 1e-6);
  CHECK(m.conditioning.r_squared_error < 1e-8);
  CHECK(m.conditioning.t_selfadjoint_error < 1e-8);
  CHECK(m.conditioning.s_error < 1e-8);
}

TEST_CASE("rank-one model") {
  const std::vector<Complex> one{-2.0 * I};
  for (const auto& name : {"halfplane", "sector"}) {
    const FiniteModel m = build_finite_model(*domain_preset(name), one, {});
    for (const Eigen::MatrixXcd* x : {&m.gram_b2, &m.gram_1, &m.gram_r, &m.frame_r, &m.t_mat, &m.r_mat}) {
      REQUIRE(x->rows() == 1);
      CHECK((*x)(0, 0).real() > 0.0);
      CHECK(std::abs((*x)(0, 0).imag()) < 1e-12 * (*x)(0, 0).real());
    }
    // B k_1 = r_1 by construction
    CHECK(apply_B(m, one[0]).residual < 1e-8);
  }
}

TEST_CASE("holdouts") {
  const FiniteModel& hp = half_plane_model();
  for (const Complex xi : {Complex{0.3, -0.7}, Complex{-1.2, -0.4}, Complex{2.0, -1.5}}) {
    CHECK(apply_B(hp, xi).residual < 1e-5);
  }
  for (const Complex xi : hp.points) CHECK(apply_B(hp, xi).residual < 1e-8);
  for (const Complex xi : small_sector_model().points) CHECK(apply_B(small_sector_model(), xi).residual < 1e-8);
  CHECK_THROWS_AS(apply_B(hp, {0.0, 1.0}), Error);
}

TEST_CASE("sector holdout residual decreases under refinement" * doctest::may_fail()) {
  // expected to fail: no bounded B sends k_{rho xi} to r_xi for a reflection
  // that is not anticonformal, and the quadrant admits none
  const DomainSpec s = quadrant_sector();
  const Complex xi{-0.8, 0.5};
  double prev = 1e300;
  for (const std::size_t n : {10u, 20u}) {
    const double r = apply_B(build_finite_model(s, halton_exterior(s, n), {}), xi).residual;
    CHECK(r < prev);
    prev = r;
  }
  CHECK(apply_B(sector_model(), xi).residual < 1e-2);
}

TEST_CASE("orthosimilar expansion on the half-plane") {
  const FiniteModel& m = half_plane_model();
  const HoloFun f = linear_combination(m.domain, {0.7, Complex{0.2, -0.3}},
                                       {kernel_section(m.domain, m.reflected[0]), kernel_section(m.domain, m.reflected[2])});
  const ValueCheck rec = orthosimilar_reconstruct(m, f, {0.4, 1.3}, quad());
  CHECK(rec.relative_error < 1e-4);
  CHECK(std::abs(rec.expected - eval(f, {0.4, 1.3})) < 1e-10);
  const ValueCheck par = parseval_check(m, f, quad());
  CHECK(par.relative_error < 1e-4);

  const HoloFun zero = zero_function(m.domain);
  CHECK(std::abs(orthosimilar_reconstruct(m, zero, I, quad()).value) == 0.0);
  const ValueCheck pz = parseval_check(m, zero, quad());
  CHECK(pz.value == Complex{0.0});
  CHECK(pz.expected == Complex{0.0});

  const ValueCheck rz = orthosimilar_reconstruct(m, f, {-0.3, 0.6}, quad());
  CHECK(std::abs(rz.value - eval(f, {-0.3, 0.6})) < 1e-4 * std::abs(eval(f, {-0.3, 0.6})));
}

TEST_CASE("kernel identity on the half-plane") {
  const DomainSpec hp = upper_half_plane();
  const FiniteModel ring = build_finite_model(hp, ring_points(-I, 0.5, 12), {});
  const ValueCheck kid = kernel_integral_identity(ring, I, I, quad());
  CHECK(std::abs(kid.expected - 1.0 / (4.0 * kPi)) < 1e-12);
  CHECK(kid.relative_error < 1e-2);
  CHECK(kid.value.real() > 0.0);
  CHECK(std::abs(kid.value.imag()) < 1e-10);

  const Complex z{0.2, 0.9}, eta{-0.3, 1.2};
  const ValueCheck off = kernel_integral_identity(ring, z, eta, quad());
  CHECK(std::abs(off.expected - kernel(hp, z, eta)) < 1e-15);
  CHECK(off.relative_error < 1e-2);
  CHECK_THROWS_AS(kernel_integral_identity(ring, -I, I, quad()), Error);
}

TEST_CASE("orthosimilar expansion on the sector") {
  const FiniteModel& m = sector_model();
  const HoloFun f = kernel_section(m.domain, m.reflected[5]);
  CHECK(orthosimilar_reconstruct(m, f, {0.6, 0.4}, quad()).relative_error < 1e-2);
  CHECK(parseval_check(m, f, quad()).relative_error < 1e-2);
  const ValueCheck kid = kernel_integral_identity(m, {0.5, 0.5}, {0.5, 0.5}, quad());
  CHECK(kid.relative_error < 5e-2);
  CHECK(kid.value.real() > 0.0);
  CHECK(kid.expected.real() > 0.0);
}

TEST_CASE("reflection principle on the half-plane") {
  const DomainSpec hp = upper_half_plane();
  std::vector<Complex> pts = halton_exterior(hp, 7);
  pts.push_back(-2.0 * I);
  const FiniteModel m = build_finite_model(hp, pts, {});
  const HoloFun f = kernel_section(hp, 2.0 * I);
  TransformConfig tc;
  tc.quad = quad();
  const ReflectionPrincipleResult r = reflection_principle(m, f, -2.0 * I, tc);
  CHECK(std::abs(r.lhs - std::conj(eval(f, 2.0 * I))) < 1e-14);
  CHECK(r.residual < 1e-5);

  // B^{-1} f = (-1/pi) f
  const HoloFun g = apply_B_inverse(m, f);
  for (const Complex z : {I, Complex{0.5, 0.8}}) CHECK(std::abs(eval(g, z) + eval(f, z) / kPi) < 1e-6);

  const ReflectionPrincipleResult z = reflection_principle(m, zero_function(hp), -2.0 * I, tc);
  CHECK(z.lhs == Complex{0.0});
  CHECK(std::abs(z.rhs) == 0.0);
}

TEST_CASE("reflection principle on the sector" * doctest::may_fail()) {
  // same obstruction as the sector holdouts
  const FiniteModel& m = sector_model();
  const HoloFun f = kernel_section(m.domain, m.reflected[3]);
  TransformConfig tc;
  tc.quad = quad();
  CHECK(reflection_principle(m, f, {-0.6, -0.9}, tc).residual < 1e-2);
}

TEST_CASE("large models lose numerical rank") {
  const FiniteModel& m = sector_model();
  CHECK(m.conditioning.rank_k <= static_cast<Eigen::Index>(m.size()));
  CHECK(m.conditioning.r_squared_error < 1e-8);
  CHECK(m.conditioning.t_selfadjoint_error < 1e-8);
  CHECK(m.conditioning.s_error < 1e-8);
}

TEST_CASE("structural invariants") {
  for (const FiniteModel* m : {&half_plane_model(), &small_sector_model()}) {
    CHECK(min_hermitian_eig(m->gram_b2) > 0.0);
    CHECK(min_hermitian_eig(m->gram_r) > 0.0);
    CHECK(m->conditioning.min_eig_pencil > 0.0);
    CHECK(m->conditioning.t_selfadjoint_error < 1e-8);
    CHECK(m->conditioning.r_squared_error < 1e-8);
    CHECK(m->conditioning.s_error < 1e-8);
    CHECK(std::isfinite(m->conditioning.b_operator));
    // one-to-one on span{k_j}
    CHECK(m->b_w.fullPivLu().rank() == m->conditioning.rank_k);
  }

  SUBCASE("positive definiteness over random configurations") {
    for (const auto& name : {"halfplane", "sector", "disk-exterior"}) {
      const DomainSpec d = *domain_preset(name);
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const FiniteModel m = build_finite_model(d, random_admissible(d, 6, seed), {});
        CHECK(min_hermitian_eig(m.gram_b2) > 0.0);
        CHECK(min_hermitian_eig(m.gram_r) > 0.0);
      }
    }
  }
}

TEST_CASE("rejected inputs") {
  const DomainSpec hp = upper_half_plane();
  const std::vector<Complex> close{-I, Complex{1e-3, -1.0}};
  CHECK_THROWS_AS(build_finite_model(hp, close, {}), Error);
  const std::vector<Complex> inside{-I, I};
  CHECK_THROWS_AS(build_finite_model(hp, inside, {}), Error);
  CHECK_THROWS_AS(build_finite_model(cusp_domain(), cusp_approach(cusp_domain(), 0, 4), {}), Error);
  // circle inversion sends infinity to the center, so (k_i, k_j)_1 diverges
  try {
    build_finite_model(unit_disk(), halton_exterior(unit_disk(), 3), {});
    FAIL("expected NonIntegrableTail");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonIntegrableTail);
  }
}

TEST_CASE("cusp frame conditioning exceeds the sector") {
  ModelConfig cfg;
  cfg.gram_rel_tol = 1e-8;
  const double sector = frame_conditioning(quadrant_sector(), halton_exterior(quadrant_sector(), 8), cfg).compressed;
  const double cusp = frame_conditioning(cusp_domain(), cusp_approach(cusp_domain(), 1, 8), cfg).compressed;
  CHECK(cusp >= 10.0 * sector);
}
