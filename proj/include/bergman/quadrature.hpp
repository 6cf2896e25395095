#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "bergman/domain.hpp"
#include "bergman/types.hpp"

namespace bergman {

/// How the unbounded radial direction of a polar piece is integrated.
enum class UnboundedChart {
  Inversion,   // s = 1/r, Jacobian r^3 ds; no truncation
  PolarDecay,  // r up to truncation_radius plus a power-law tail correction
};

struct QuadConfig {
  double abs_tol = 1e-8;
  std::size_t max_cells = 200000;
  UnboundedChart unbounded_chart = UnboundedChart::Inversion;
  double truncation_radius = 1e3;
  /// Optional relative target; the run stops once err <= max(abs_tol, rel_tol*|value|).
  double rel_tol = 0.0;

  void validate() const;
};

template <typename Value>
struct BasicQuadResult {
  Value value{};
  double abs_error_estimate = 0.0;
  std::size_t cells_used = 0;
  bool converged = false;
};

using QuadResult = BasicQuadResult<Complex>;

using Integrand = std::function<Complex(Complex)>;

/// Adaptive integral of h over the domain against Lebesgue area measure.
/// Unconverged results come back with converged = false; a tail that does not
/// decay faster than |z|^-2 raises ErrorCode::NonIntegrableTail.
QuadResult integrate_domain(const DomainSpec& domain, const Integrand& h, const QuadConfig& cfg);

/// Throws ErrorCode::BudgetExhausted on an unconverged result.
const QuadResult& require_converged(const QuadResult& result, const char* what);

/// A quadrature rule on a domain, refined until a nonnegative indicator is
/// integrated to tolerance. Reused for many integrands that share the
/// indicator's singular structure (Gram matrix assembly).
struct NodeRule {
  std::vector<Complex> points;
  std::vector<double> weights;
  double indicator_integral = 0.0;
  double indicator_error = 0.0;
  std::size_t cells_used = 0;
  bool converged = false;
};

NodeRule build_node_rule(const DomainSpec& domain, const std::function<double(Complex)>& indicator,
                         const QuadConfig& cfg);

/// Fills `out` (size dim) with feature values at z.
using FeatureMap = std::function<void(Complex z, Eigen::Ref<Eigen::VectorXcd> out)>;

struct GramResult {
  /// gram(i, j) = integral of phi_j(z) * conj(phi_i(z))
  Eigen::MatrixXcd gram;
  /// Error estimate of the trace, which bounds every entry's error to first order.
  double trace_error = 0.0;
  std::size_t cells_used = 0;
  std::size_t nodes = 0;
  bool converged = false;
};

/// Gram matrix of `dim` feature functions over the domain. The mesh is driven
/// by the trace indicator sum_i |phi_i|^2 with tolerance rel_tol * trace.
GramResult gram_by_quadrature(const DomainSpec& domain, std::size_t dim, const FeatureMap& features,
                              const QuadConfig& cfg);

/// Adaptive Gauss-Kronrod (7/15) on a finite interval.
QuadResult integrate_interval(const std::function<Complex(double)>& f, double a, double b,
                              double abs_tol, double rel_tol = 0.0, int max_depth = 50);

/// Thread count from BERGMAN_THREADS (default 1).
unsigned worker_threads();

}  // namespace bergman
