#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "bergman/domain.hpp"
#include "bergman/hilbert.hpp"
#include "bergman/holofun.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/reflection.hpp"

namespace bergman {

struct ModelConfig {
  /// Relative accuracy of the quadrature-assembled Gram and frame matrices.
  double gram_rel_tol = 1e-10;
  QuadConfig quad{};
  /// Eigenvalues below this fraction of the largest are dropped when whitening.
  double whiten_cutoff = 1e-13;
  /// Points closer than this (times 1 + |xi|) are rejected.
  double min_separation = 1e-2;
  double ill_conditioned_threshold = 1e12;
};

struct ConditioningReport {
  double gram_b2 = 1.0;      // cond(G_B2)
  double gram_1 = 1.0;       // cond(G_1)
  double gram_r = 1.0;       // cond(G_R)
  double frame_r = 1.0;      // cond(F_r)
  double frame_r_scaled = 1.0;  // cond(F_r) after Jacobi scaling
  double frame_compressed = 1.0;  // cond of F_r on span{r_j} in an orthonormal basis
  double b_operator = 1.0;   // cond of B on span{k_j}
  double min_eig_b2 = 0.0;
  double min_eig_r = 0.0;
  double min_eig_pencil = 0.0;  // smallest eigenvalue of the pencil (G_B2, G_1)
  double r_squared_error = 0.0;     // ||R^2 - T|| / ||T|| in the orthonormal basis
  double t_selfadjoint_error = 0.0;  // ||G_1 T - T^* G_1|| / ||G_1 T||
  double s_error = 0.0;             // ||S^-2 - F_r|| / ||F_r|| on span{r_j}
  Eigen::Index rank_k = 0;
  Eigen::Index rank_r = 0;
  bool ill_conditioned = false;
};

/// Rank-N realization of the operator chain on span{k_j} and span{r_j}.
///
/// Matrices named *_w act on coordinates in orthonormal bases e_p = sum_j
/// basis_k(j, p) k_j and y_q = sum_j basis_r(j, q) r_j. The k-basis matrices
/// T_mat, R_mat, B_mat act on coefficient vectors with respect to k_1..k_N, and
/// S_mat on coefficients with respect to r_1..r_N.
struct FiniteModel {
  DomainSpec domain;
  Reflection reflection;
  std::vector<Complex> points;     // xi_j
  std::vector<Complex> reflected;  // rho(xi_j)

  Eigen::MatrixXcd gram_b2;  // (k_j, k_i) = K(w_i, w_j)
  Eigen::MatrixXcd gram_1;   // (k_j, k_i)_1; also the frame operator F_K in the k-basis
  Eigen::MatrixXcd gram_r;   // (r_j, r_i)
  Eigen::MatrixXcd frame_r;  // (F_r r_j, r_i)
  Eigen::MatrixXcd cross_kr;  // (r_j, k_i) = r_j(w_i)

  Eigen::MatrixXcd basis_k, basis_r;
  Eigen::MatrixXcd g1_w, frame_w;  // compressed F_K and F_r
  Eigen::MatrixXcd t_w, r_w, s_w, a_w, b_w;

  Eigen::MatrixXcd t_mat, r_mat, s_mat, a_mat, b_mat;

  ConditioningReport conditioning;
  std::size_t cells_used = 0;
  bool converged = true;

  std::size_t size() const { return points.size(); }
};

/// Throws ErrorCode::InvalidArgument for non-exterior or near-coincident points
/// and propagates ErrorCode::ReflectionUnavailable / ChartUnavailable. On the
/// disk interior (k_i, k_j)_1 diverges and ErrorCode::NonIntegrableTail is raised.
FiniteModel build_finite_model(const DomainSpec& domain, std::span<const Complex> points,
                               const ModelConfig& cfg);

/// Frame matrix (F_r r_j, r_i) alone; usable on domains without a kernel.
Eigen::MatrixXcd frame_matrix(const DomainSpec& domain, std::span<const Complex> points,
                              const ModelConfig& cfg, bool* converged = nullptr);

struct FrameConditioning {
  double raw = 1.0;         // cond(F_r)
  double scaled = 1.0;      // after Jacobi scaling
  /// Spread of the pencil (F_r, G_R): the condition number of the frame
  /// operator restricted to span{r_j}, free of the basis' own conditioning.
  double compressed = 1.0;
  bool converged = true;
};

FrameConditioning frame_conditioning(const DomainSpec& domain, std::span<const Complex> points,
                                     const ModelConfig& cfg);

struct HoldoutResidual {
  /// ||B P_K k* - P_R r*|| / ||r*||: B applied to the projected kernel section,
  /// compared with the projection of r* onto span{r_j}.
  double residual = 0.0;
  /// ||B P_K k* - r*|| / ||r*||, which also contains the projection error of r*.
  double unprojected = 0.0;
};

HoldoutResidual apply_B(const FiniteModel& model, Complex xi_holdout);

struct ValueCheck {
  Complex value{};
  Complex expected{};
  double abs_error_estimate = 0.0;
  double relative_error = 0.0;
  bool converged = true;
};

/// Integral over the complement of (f, R k_{rho xi}) (R k_{rho xi})(z) against
/// f(z). Both sides use the projection of f onto span{k_j}.
ValueCheck orthosimilar_reconstruct(const FiniteModel& model, const HoloFun& f, Complex z,
                                    const QuadConfig& cfg);

/// Integral over the complement of |(f, R k_{rho xi})|^2 against ||f||^2, with f
/// projected onto span{k_j}.
ValueCheck parseval_check(const FiniteModel& model, const HoloFun& f, const QuadConfig& cfg);

/// Integral over the complement of (S r_xi)(z) conj((S r_xi)(eta)) against K(z, eta).
ValueCheck kernel_integral_identity(const FiniteModel& model, Complex z, Complex eta,
                                    const QuadConfig& cfg);

struct ReflectionPrincipleResult {
  Complex lhs{};  // conj(f(rho xi))
  Complex rhs{};  // ~(B^{-1} f)(xi)
  double residual = 0.0;  // |lhs - rhs| / (1 + |lhs|)
};

/// B^{-1} f, for f projected onto span{r_j}, as a combination of kernel sections.
HoloFun apply_B_inverse(const FiniteModel& model, const HoloFun& f);

ReflectionPrincipleResult reflection_principle(const FiniteModel& model, const HoloFun& f,
                                               Complex xi, const TransformConfig& cfg);

/// Two-sided comparison C1 ||~f|| <= ||g|| <= C2 ||~f|| with g = conj(f o rho),
/// all norms under `cfg.measure_normalization`. C1 = 1 / c2_hat and
/// C2 = 1 / (c_min c1_hat) where c1_hat, c2_hat are bi-Lipschitz estimates and
/// c_min the smallest transform ratio over the battery.
struct NormComparison {
  double c1_hat = 0.0, c2_hat = 0.0, c_min = 0.0;
  double lower = 0.0, upper = 0.0;  // C1, C2
  std::vector<double> transform_norms, g_norms, function_norms;
  bool holds = false;
  bool converged = true;
};

NormComparison norm_comparison(const Reflection& refl, std::span<const HoloFun> battery,
                               double c1_hat, double c2_hat, const TransformConfig& cfg);

// Point generators. All return points in the open complement.

/// Nested Halton points (bases 2, 3) in a band outside the boundary: a strip for
/// half-planes, a polar band for sectors and the cusp, an annulus for disks.
std::vector<Complex> halton_exterior(const DomainSpec& domain, std::size_t n);

/// Uniform random points from the same band with pairwise separation at least
/// `min_separation` (1 + |xi|).
std::vector<Complex> random_admissible(const DomainSpec& domain, std::size_t n, std::uint64_t seed,
                                       double min_separation = 1e-2);

/// n points on the circle |xi - center| = radius.
std::vector<Complex> ring_points(Complex center, double radius, std::size_t n);

/// n points on the circle of radius 0.3 scale / 2^level about the cusp tip,
/// spread over the angles facing away from the horn.
std::vector<Complex> cusp_approach(const DomainSpec& cusp, int level, std::size_t n);

}  // namespace bergman
