#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bergman/domain.hpp"
#include "bergman/holofun.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

/// Area measure used for the transform and for both norms of the ratio.
enum class MeasureNormalization { Lebesgue, LebesgueOverPi };

/// Auto uses closed-form pairings when every part of f admits one.
enum class TransformRoute { Auto, Quadrature, Exact };

struct TransformConfig {
  MeasureNormalization measure_normalization = MeasureNormalization::Lebesgue;
  TransformRoute route = TransformRoute::Auto;
  QuadConfig quad{};
};

double measure_factor(MeasureNormalization n);
std::string to_string(MeasureNormalization n);
std::optional<MeasureNormalization> parse_normalization(const std::string& text);

/// ~f(xi) = integral over G of conj(f(z)) (z - xi)^-2, i.e. (r_xi, f). Conjugate
/// linear in f. Throws ErrorCode::PointInsideDomain unless xi is exterior.
QuadResult hilbert_transform(const HoloFun& f, Complex xi, const TransformConfig& cfg);

struct NormRatio {
  double ratio = 0.0;
  double transform_norm = 0.0;  // over the complement
  double function_norm = 0.0;   // over G
  double abs_error_estimate = 0.0;
  bool converged = false;
};

/// ||~f|| over the complement divided by ||f|| over G, both by quadrature.
NormRatio transform_norm_ratio(const HoloFun& f, const TransformConfig& cfg);

struct SurjectivityReport {
  std::size_t n = 0;
  /// Eigenvalues of the pencil (Gram of ~r_j over the complement, Gram of r_j
  /// over G), ascending: the squared norm ratios attained on span{r_j}.
  Eigen::VectorXd eigenvalues;
  double spread = 1.0;  // max / min
  double gram_condition = 1.0;
  double transform_gram_condition = 1.0;
  bool converged = true;
};

/// Throws ErrorCode::SingularGram when the section Gram is numerically singular.
SurjectivityReport surjectivity_diagnostic(const DomainSpec& domain, std::span<const Complex> points,
                                           const TransformConfig& cfg);

/// Max over the grid of |d~f/dx + i d~f/dy| / 2 from central differences of step h.
double holomorphy_residual(const HoloFun& f, std::span<const Complex> grid, double h,
                           const TransformConfig& cfg);

}  // namespace bergman
