#include "bergman/hilbert.hpp"

#include <cmath>
#include <limits>

#include "bergman/linalg.hpp"

namespace bergman {

double measure_factor(MeasureNormalization n) {
  return n == MeasureNormalization::LebesgueOverPi ? 1.0 / kPi : 1.0;
}

std::string to_string(MeasureNormalization n) {
  return n == MeasureNormalization::LebesgueOverPi ? "lebesgue-over-pi" : "lebesgue";
}

std::optional<MeasureNormalization> parse_normalization(const std::string& text) {
  if (text == "lebesgue") return MeasureNormalization::Lebesgue;
  if (text == "lebesgue-over-pi") return MeasureNormalization::LebesgueOverPi;
  return std::nullopt;
}

namespace {

void require_exterior(const DomainSpec& domain, Complex xi) {
  if (contains(domain, xi) != Membership::Exterior) {
    throw Error(ErrorCode::PointInsideDomain, "transform point must lie outside the closed domain");
  }
}

std::optional<Complex> exact_transform(const HoloFun& f, Complex xi) {
  return inner_exact(HoloFun(f.domain(), RationalSection{xi}), f);
}

}  // namespace

QuadResult hilbert_transform(const HoloFun& f, Complex xi, const TransformConfig& cfg) {
  require_exterior(f.domain(), xi);
  const double m = measure_factor(cfg.measure_normalization);
  if (f.is_zero()) return {Complex{0.0}, 0.0, 1, true};
  if (cfg.route != TransformRoute::Quadrature) {
    if (const auto v = exact_transform(f, xi)) return {m * *v, 0.0, 1, true};
    if (cfg.route == TransformRoute::Exact) {
      throw Error(ErrorCode::ChartUnavailable, "no closed form for this function's transform");
    }
  }
  QuadResult q = integrate_domain(
      f.domain(),
      [&](Complex z) {
        const Complex d = z - xi;
        return std::conj(f.value(z)) / (d * d);
      },
      cfg.quad);
  q.value *= m;
  q.abs_error_estimate *= m;
  return q;
}

NormRatio transform_norm_ratio(const HoloFun& f, const TransformConfig& cfg) {
  if (f.is_zero()) throw Error(ErrorCode::InvalidArgument, "norm ratio of the zero function");
  const double m = measure_factor(cfg.measure_normalization);
  const NormResult fn = norm_b2(f, f.domain(), cfg.quad);

  // inner values are computed at a tighter tolerance than the outer integral
  TransformConfig inner = cfg;
  inner.measure_normalization = MeasureNormalization::Lebesgue;
  inner.quad.abs_tol = cfg.quad.abs_tol * 1e-2;
  bool inner_ok = true;
  const QuadResult outer = integrate_domain(
      complement(f.domain()),
      [&](Complex xi) {
        const QuadResult t = hilbert_transform(f, xi, inner);
        inner_ok = inner_ok && t.converged;
        return Complex{std::norm(t.value)};
      },
      cfg.quad);

  NormRatio out;
  // ||~f||_m^2 = m * integral |m ~f_Leb|^2 and ||f||_m^2 = m * integral |f|^2
  const double tn2 = std::max(outer.value.real(), 0.0);
  out.transform_norm = std::sqrt(m * m * m * tn2);
  out.function_norm = std::sqrt(m) * fn.value;
  out.ratio = out.transform_norm / out.function_norm;
  const double rel_t = tn2 > 0.0 ? 0.5 * outer.abs_error_estimate / tn2 : 0.0;
  const double rel_f = fn.value > 0.0 ? fn.abs_error_estimate / fn.value : 0.0;
  out.abs_error_estimate = out.ratio * (rel_t + rel_f);
  out.converged = outer.converged && fn.converged && inner_ok;
  return out;
}

SurjectivityReport surjectivity_diagnostic(const DomainSpec& domain, std::span<const Complex> points,
                                           const TransformConfig& cfg) {
  const std::size_t n = points.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "surjectivity diagnostic needs points");
  for (const Complex xi : points) {
    if (contains(domain, xi) != Membership::Exterior) {
      throw Error(ErrorCode::InvalidArgument, "section points must lie outside the closed domain");
    }
  }
  const Eigen::Index N = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd gr(N, N);
  for (Eigen::Index i = 0; i < N; ++i) {
    for (Eigen::Index j = 0; j < N; ++j) gr(i, j) = rational_pairing(domain, points[j], points[i]);
  }
  gr = hermitian_part(gr);

  SurjectivityReport rep;
  rep.n = n;
  rep.gram_condition = hermitian_condition(gr);
  if (!(rep.gram_condition < 1e14)) {
    throw Error(ErrorCode::SingularGram, "rational section Gram is numerically singular");
  }
  // Features ~r_j(xi) = (r_xi, r_j) followed by the transforms of an orthonormal
  // basis of span{r_j}; the second block resolves the small end of the spectrum.
  const Whitening<Complex> w = whiten(gr, 1e-15);
  const Eigen::MatrixXcd wc = w.basis.conjugate();
  const Eigen::Index R = w.rank;
  const std::vector<Complex> pts(points.begin(), points.end());
  const GramResult p = gram_by_quadrature(
      complement(domain), static_cast<std::size_t>(N + R),
      [&](Complex xi, Eigen::Ref<Eigen::VectorXcd> out) {
        Eigen::VectorXcd raw(N);
        rational_pairings(domain, xi, pts, std::span<Complex>(raw.data(), raw.size()));
        out.head(N) = raw;
        out.tail(R) = wc.transpose() * raw;
      },
      cfg.quad);
  rep.converged = p.converged;
  rep.transform_gram_condition = hermitian_condition(p.gram.topLeftCorner(N, N));
  const double m = measure_factor(cfg.measure_normalization);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian_part(p.gram.bottomRightCorner(R, R)),
                                                     Eigen::EigenvaluesOnly);
  rep.eigenvalues = es.eigenvalues() * (m * m);
  const double lo = rep.eigenvalues.minCoeff(), hi = rep.eigenvalues.maxCoeff();
  rep.spread = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  return rep;
}

double holomorphy_residual(const HoloFun& f, std::span<const Complex> grid, double h,
                           const TransformConfig& cfg) {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "step must be positive");
  double worst = 0.0;
  for (const Complex xi : grid) {
    auto F = [&](Complex p) { return hilbert_transform(f, p, cfg).value; };
    const Complex dx = (F(xi + h) - F(xi - h)) / (2.0 * h);
    const Complex dy = (F(xi + Complex{0.0, h}) - F(xi - Complex{0.0, h})) / (2.0 * h);
    worst = std::max(worst, 0.5 * std::abs(dx + Complex{0.0, 1.0} * dy));
  }
  return worst;
}

}  // namespace bergman
