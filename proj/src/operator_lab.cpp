#include "bergman/operator_lab.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "bergman/linalg.hpp"

namespace bergman {

namespace {

using Eigen::Index;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

QuadConfig gram_config(const ModelConfig& cfg) {
  QuadConfig q = cfg.quad;
  q.rel_tol = cfg.gram_rel_tol;
  q.abs_tol = std::min(q.abs_tol, 1e-14);
  return q;
}

void check_points(const DomainSpec& domain, std::span<const Complex> points, double min_sep) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "a finite model needs at least one point");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (contains(domain, points[i]) != Membership::Exterior) {
      throw Error(ErrorCode::InvalidArgument, "defining points must lie outside the closed domain");
    }
    for (std::size_t j = 0; j < i; ++j) {
      const double scale = 1.0 + std::max(std::abs(points[i]), std::abs(points[j]));
      if (std::abs(points[i] - points[j]) < min_sep * scale) {
        throw Error(ErrorCode::InvalidArgument, "defining points are closer than the separation limit");
      }
    }
  }
}

double relative_norm(const MatrixXcd& diff, const MatrixXcd& ref) {
  const double r = ref.norm();
  return r > 0.0 ? diff.norm() / r : diff.norm();
}

VectorXcd kernel_values(const FiniteModel& m, Complex z) {
  const Index n = static_cast<Index>(m.size());
  VectorXcd out(n);
  for (Index j = 0; j < n; ++j) out(j) = kernel(m.domain, z, m.reflected[j]);
  return out;
}

VectorXcd rational_values(const FiniteModel& m, Complex z) {
  const Index n = static_cast<Index>(m.size());
  VectorXcd out(n);
  for (Index j = 0; j < n; ++j) {
    const Complex d = z - m.points[j];
    out(j) = 1.0 / (d * d);
  }
  return out;
}

/// (f, k_j) = f(w_j) for every defining point.
VectorXcd values_at_reflected(const FiniteModel& m, const HoloFun& f) {
  const Index n = static_cast<Index>(m.size());
  VectorXcd out(n);
  for (Index j = 0; j < n; ++j) out(j) = f.value(m.reflected[j]);
  return out;
}

double relative_error(Complex value, Complex expected) {
  const double scale = std::abs(expected);
  return scale > 0.0 ? std::abs(value - expected) / scale : std::abs(value);
}

double van_der_corput(std::size_t i, unsigned base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

/// Maps unit-square coordinates onto the band used by the point generators.
struct Band {
  DomainSpec canon;

  std::optional<Complex> operator()(double u, double v) const {
    if (const auto* h = canon.as<HalfPlane>()) {
      const Complex p0 = h->offset * h->normal;
      const Complex tau = Complex{0.0, -1.0} * h->normal;
      return p0 + tau * (-3.0 + 6.0 * u) - h->normal * (0.3 + 1.2 * v);
    }
    if (const auto* s = canon.as<Sector>()) {
      const double alpha = s->bisector - 0.5 * s->opening;
      const double rest = 2.0 * kPi - s->opening;
      const double margin = std::min(0.3, 0.2 * rest);
      const double t = s->opening + margin + (rest - 2.0 * margin) * u;
      return s->vertex + std::polar(0.5 + 2.5 * v, alpha + t);
    }
    if (const auto* d = canon.as<DiskInterior>()) {
      return d->center + std::polar(d->radius * (1.3 + 1.7 * v), 2.0 * kPi * u);
    }
    if (const auto* d = canon.as<DiskExterior>()) {
      return d->center + std::polar(d->radius * (0.3 + 0.47 * v), 2.0 * kPi * u);
    }
    if (const auto* m = canon.as<MoebiusImage>()) {
      const auto base = Band{canonical_form(*m->base)}(u, v);
      if (!base) return std::nullopt;
      const ExtendedPoint p = moebius_apply(m->map, ExtendedPoint::finite(*base));
      if (p.infinite) return std::nullopt;
      return p.value;
    }
    if (const auto* c = canon.as<CuspDomain>()) {
      if (c->complement) throw Error(ErrorCode::InvalidArgument, "no point band for the horn interior");
      return std::polar(c->scale * (0.25 + 1.0 * v), 2.0 * kPi * u);
    }
    return std::nullopt;
  }
};

}  // namespace

Eigen::MatrixXcd frame_matrix(const DomainSpec& domain, std::span<const Complex> points,
                              const ModelConfig& cfg, bool* converged) {
  check_points(domain, points, cfg.min_separation);
  const std::vector<Complex> pts(points.begin(), points.end());
  const Index n = static_cast<Index>(pts.size());
  const GramResult g = gram_by_quadrature(
      complement(domain), pts.size(),
      [&](Complex xi, Eigen::Ref<VectorXcd> out) {
        VectorXcd raw(n);
        rational_pairings(domain, xi, pts, std::span<Complex>(raw.data(), raw.size()));
        out = raw.conjugate();  // (r_j, r_xi)
      },
      gram_config(cfg));
  if (converged) *converged = g.converged;
  return hermitian_part(g.gram);
}

FrameConditioning frame_conditioning(const DomainSpec& domain, std::span<const Complex> points,
                                     const ModelConfig& cfg) {
  FrameConditioning out;
  const MatrixXcd f = frame_matrix(domain, points, cfg, &out.converged);
  const Index n = f.rows();
  MatrixXcd gr(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) gr(i, j) = rational_pairing(domain, points[j], points[i]);
  }
  out.raw = hermitian_condition(f);
  out.scaled = hermitian_condition(jacobi_scaled(f));
  const Eigen::VectorXd ev = generalized_eigenvalues(f, hermitian_part(gr), cfg.whiten_cutoff);
  out.compressed = ev.maxCoeff() / ev.minCoeff();
  return out;
}

FiniteModel build_finite_model(const DomainSpec& domain, std::span<const Complex> points,
                               const ModelConfig& cfg) {
  check_points(domain, points, cfg.min_separation);
  if (!has_kernel(domain)) {
    throw Error(ErrorCode::ChartUnavailable, "finite models need the domain's Bergman kernel");
  }
  FiniteModel m{domain, make_reflection(domain), {}, {}, {}, {}, {}, {}, {}, {}, {}, {}, {},
                {}, {}, {}, {}, {}, {}, {}, {}, {}, {}, {}, 0, true};
  m.points.assign(points.begin(), points.end());
  for (const Complex xi : m.points) {
    const Complex w = reflect(domain, xi);
    if (contains(domain, w) != Membership::Interior) {
      throw Error(ErrorCode::SingularPoint, "reflected point is not interior");
    }
    m.reflected.push_back(w);
  }
  const Index n = static_cast<Index>(m.size());

  m.gram_b2.resize(n, n);
  m.gram_r.resize(n, n);
  m.cross_kr.resize(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      m.gram_b2(i, j) = kernel(domain, m.reflected[i], m.reflected[j]);
      m.gram_r(i, j) = rational_pairing(domain, m.points[j], m.points[i]);
      const Complex d = m.reflected[i] - m.points[j];
      m.cross_kr(i, j) = 1.0 / (d * d);
    }
  }
  m.gram_b2 = hermitian_part(m.gram_b2);
  m.gram_r = hermitian_part(m.gram_r);

  const Whitening<Complex> wk = whiten(m.gram_b2, cfg.whiten_cutoff);
  const Whitening<Complex> wr = whiten(m.gram_r, cfg.whiten_cutoff);
  m.basis_k = wk.basis;
  m.basis_r = wr.basis;
  const Index rk = wk.rank, rr = wr.rank;
  const DomainSpec outside = complement(domain);
  const QuadConfig qcfg = gram_config(cfg);

  // Raw and whitened features share one mesh; the whitened block is what the
  // operators are built from, the raw block gives the k-basis Grams reported in the model.
  const MatrixXcd wkt = m.basis_k.transpose();
  const GramResult g1 = gram_by_quadrature(
      outside, static_cast<std::size_t>(n + rk),
      [&](Complex xi, Eigen::Ref<VectorXcd> out) {
        const VectorXcd kv = kernel_values(m, reflect(domain, xi));
        out.head(n) = kv;
        out.tail(rk) = wkt * kv;
      },
      qcfg);
  const MatrixXcd wrt = m.basis_r.transpose();
  const GramResult fr = gram_by_quadrature(
      outside, static_cast<std::size_t>(n + rr),
      [&](Complex xi, Eigen::Ref<VectorXcd> out) {
        VectorXcd raw(n);
        rational_pairings(domain, xi, m.points, std::span<Complex>(raw.data(), raw.size()));
        const VectorXcd pr = raw.conjugate();  // (r_j, r_xi)
        out.head(n) = pr;
        out.tail(rr) = wrt * pr;
      },
      qcfg);
  m.cells_used = g1.cells_used + fr.cells_used;
  m.converged = g1.converged && fr.converged;

  m.gram_1 = hermitian_part(g1.gram.topLeftCorner(n, n));
  m.g1_w = hermitian_part(g1.gram.bottomRightCorner(rk, rk));
  m.frame_r = hermitian_part(fr.gram.topLeftCorner(n, n));
  m.frame_w = hermitian_part(fr.gram.bottomRightCorner(rr, rr));

  m.t_w = hermitian_inverse(m.g1_w);
  m.r_w = hermitian_inv_sqrt(m.g1_w);
  m.s_w = hermitian_inv_sqrt(m.frame_w);
  const MatrixXcd r_w_inv = hermitian_sqrt(m.g1_w);
  const MatrixXcd s_w_inv = hermitian_sqrt(m.frame_w);

  const MatrixXcd c_k = m.basis_k.adjoint() * m.gram_b2;  // k-coefficients -> e-coordinates
  const MatrixXcd c_r = m.basis_r.adjoint() * m.gram_r;   // r-coefficients -> y-coordinates
  // A sends the coordinates of R k_j to those of S r_j
  m.a_w = m.s_w * c_r * m.basis_k * r_w_inv;
  m.b_w = s_w_inv * m.a_w * m.r_w;

  m.t_mat = m.basis_k * m.t_w * c_k;
  m.r_mat = m.basis_k * m.r_w * c_k;
  m.s_mat = m.basis_r * m.s_w * c_r;
  m.a_mat = m.basis_r * m.a_w * c_k;
  m.b_mat = m.basis_k * (m.basis_k.adjoint() * m.cross_kr);

  ConditioningReport& rep = m.conditioning;
  rep.gram_b2 = wk.condition();
  rep.gram_r = wr.condition();
  rep.gram_1 = hermitian_condition(m.gram_1);
  rep.frame_r = hermitian_condition(m.frame_r);
  rep.frame_r_scaled = hermitian_condition(jacobi_scaled(m.frame_r));
  rep.frame_compressed = hermitian_condition(m.frame_w);
  rep.min_eig_b2 = wk.min_eigenvalue();
  rep.min_eig_r = wr.min_eigenvalue();
  rep.rank_k = rk;
  rep.rank_r = rr;
  {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m.g1_w, Eigen::EigenvaluesOnly);
    rep.min_eig_pencil = 1.0 / es.eigenvalues().maxCoeff();
  }
  {
    Eigen::JacobiSVD<MatrixXcd> svd(m.b_w);
    const auto& sv = svd.singularValues();
    rep.b_operator = sv.size() ? sv(0) / sv(sv.size() - 1) : 1.0;
  }
  // measured in orthonormal coordinates; k-coefficient vectors are not isometric
  rep.r_squared_error = relative_norm(m.r_w * m.r_w - m.t_w, m.t_w);
  const MatrixXcd g1t = m.gram_1 * m.t_mat;
  rep.t_selfadjoint_error = relative_norm(g1t - m.t_mat.adjoint() * m.gram_1, g1t);
  rep.s_error = relative_norm(s_w_inv * s_w_inv - m.frame_w, m.frame_w);
  rep.ill_conditioned = std::max({rep.gram_b2, rep.gram_r, rep.gram_1, rep.frame_r}) >
                        cfg.ill_conditioned_threshold;
  return m;
}

HoldoutResidual apply_B(const FiniteModel& m, Complex xi) {
  if (contains(m.domain, xi) != Membership::Exterior) {
    throw Error(ErrorCode::InvalidArgument, "holdout point must lie outside the closed domain");
  }
  const Index n = static_cast<Index>(m.size());
  const Complex w = reflect(m.domain, xi);
  VectorXcd b(n), g(n);
  for (Index j = 0; j < n; ++j) {
    b(j) = kernel(m.domain, m.reflected[j], w);         // (k_w, k_j)
    g(j) = rational_pairing(m.domain, xi, m.points[j]);  // (r_xi, r_j)
  }
  const VectorXcd c = m.basis_k * (m.basis_k.adjoint() * b);  // k-coefficients of P_K k_w
  const VectorXcd image = m.basis_r.adjoint() * (m.gram_r * c);  // y-coordinates of sum c_j r_j
  const VectorXcd target = m.basis_r.adjoint() * g;             // y-coordinates of P_R r_xi
  const double norm_r = std::sqrt(rational_pairing(m.domain, xi, xi).real());
  HoldoutResidual out;
  const double diff = (image - target).norm();
  out.residual = diff / norm_r;
  const double tail = std::max(norm_r * norm_r - target.squaredNorm(), 0.0);
  out.unprojected = std::sqrt(diff * diff + tail) / norm_r;
  return out;
}

ValueCheck orthosimilar_reconstruct(const FiniteModel& m, const HoloFun& f, Complex z,
                                    const QuadConfig& cfg) {
  ValueCheck out;
  const VectorXcd a = m.basis_k.adjoint() * values_at_reflected(m, f);
  const VectorXcd ez = m.basis_k.transpose() * kernel_values(m, z);
  out.expected = (ez.transpose() * a).value();  // (P_K f)(z)
  const VectorXcd u = m.r_w * a;
  const VectorXcd v = m.r_w.transpose() * ez;
  const MatrixXcd wkt = m.basis_k.transpose();
  // (f, R k_w) = e^T u and (R k_w)(z) = v^T conj(e) with e = W_k^T k(w)
  const QuadResult q = integrate_domain(
      complement(m.domain),
      [&](Complex xi) {
        const VectorXcd e = wkt * kernel_values(m, reflect(m.domain, xi));
        return (e.transpose() * u).value() * e.dot(v);
      },
      cfg);
  out.value = q.value;
  out.abs_error_estimate = q.abs_error_estimate;
  out.converged = q.converged;
  out.relative_error = relative_error(out.value, out.expected);
  return out;
}

ValueCheck parseval_check(const FiniteModel& m, const HoloFun& f, const QuadConfig& cfg) {
  ValueCheck out;
  const VectorXcd a = m.basis_k.adjoint() * values_at_reflected(m, f);
  out.expected = a.squaredNorm();  // ||P_K f||^2
  const VectorXcd u = m.r_w * a;
  const MatrixXcd wkt = m.basis_k.transpose();
  const QuadResult q = integrate_domain(
      complement(m.domain),
      [&](Complex xi) {
        const VectorXcd e = wkt * kernel_values(m, reflect(m.domain, xi));
        return Complex{std::norm(e.dot(u.conjugate()))};
      },
      cfg);
  out.value = q.value;
  out.abs_error_estimate = q.abs_error_estimate;
  out.converged = q.converged;
  out.relative_error = relative_error(out.value, out.expected);
  return out;
}

ValueCheck kernel_integral_identity(const FiniteModel& m, Complex z, Complex eta,
                                    const QuadConfig& cfg) {
  for (const Complex p : {z, eta}) {
    if (contains(m.domain, p) != Membership::Interior) {
      throw Error(ErrorCode::EvaluationOutsideDomain, "kernel identity points must be interior");
    }
  }
  ValueCheck out;
  out.expected = kernel(m.domain, z, eta);
  const Index n = static_cast<Index>(m.size());
  // (S P r_xi)(p) = alpha(p)^T v(xi) with v(xi) = W_r^* ((r_xi, r_j))_j
  const VectorXcd alpha_z = m.s_w.transpose() * (m.basis_r.transpose() * rational_values(m, z));
  const VectorXcd alpha_eta =
      m.s_w.transpose() * (m.basis_r.transpose() * rational_values(m, eta));
  const MatrixXcd wrh = m.basis_r.adjoint();
  const QuadResult q = integrate_domain(
      complement(m.domain),
      [&](Complex xi) {
        VectorXcd raw(n);
        rational_pairings(m.domain, xi, m.points, std::span<Complex>(raw.data(), raw.size()));
        const VectorXcd v = wrh * raw;
        return (alpha_z.transpose() * v).value() * std::conj((alpha_eta.transpose() * v).value());
      },
      cfg);
  out.value = q.value;
  out.abs_error_estimate = q.abs_error_estimate;
  out.converged = q.converged;
  out.relative_error = relative_error(out.value, out.expected);
  return out;
}

HoloFun apply_B_inverse(const FiniteModel& m, const HoloFun& f) {
  const Index n = static_cast<Index>(m.size());
  VectorXcd h(n);
  for (Index i = 0; i < n; ++i) {
    const HoloFun ri(m.domain, RationalSection{m.points[i]});
    if (const auto exact = inner_exact(f, ri)) {
      h(i) = *exact;
    } else {
      h(i) = require_converged(inner_b2(f, ri, m.domain, QuadConfig{}), "projection onto span{r_j}").value;
    }
  }
  // r-coefficients of P_R f; B^{-1} r_j = k_j
  const VectorXcd d = m.basis_r * (m.basis_r.adjoint() * h);
  std::vector<Complex> coeffs(d.data(), d.data() + d.size());
  std::vector<HoloFun> parts;
  parts.reserve(m.size());
  for (const Complex w : m.reflected) parts.push_back(HoloFun(m.domain, KernelSection{w}));
  return linear_combination(m.domain, std::move(coeffs), std::move(parts));
}

ReflectionPrincipleResult reflection_principle(const FiniteModel& m, const HoloFun& f, Complex xi,
                                               const TransformConfig& cfg) {
  ReflectionPrincipleResult out;
  out.lhs = std::conj(f.value(reflect(m.domain, xi)));
  out.rhs = hilbert_transform(apply_B_inverse(m, f), xi, cfg).value;
  out.residual = std::abs(out.lhs - out.rhs) / (1.0 + std::abs(out.lhs));
  return out;
}

NormComparison norm_comparison(const Reflection& refl, std::span<const HoloFun> battery,
                               double c1_hat, double c2_hat, const TransformConfig& cfg) {
  if (battery.empty()) throw Error(ErrorCode::InvalidArgument, "empty battery");
  NormComparison out;
  out.c1_hat = c1_hat;
  out.c2_hat = c2_hat;
  out.c_min = std::numeric_limits<double>::infinity();
  const double m = measure_factor(cfg.measure_normalization);
  for (const HoloFun& f : battery) {
    const NormRatio r = transform_norm_ratio(f, cfg);
    const QuadResult p = pullback_inner(refl, f, f, cfg.quad);
    out.converged = out.converged && r.converged && p.converged;
    out.transform_norms.push_back(r.transform_norm);
    out.function_norms.push_back(r.function_norm);
    out.g_norms.push_back(std::sqrt(m * std::max(p.value.real(), 0.0)));
    out.c_min = std::min(out.c_min, r.ratio);
  }
  out.lower = 1.0 / c2_hat;
  out.upper = 1.0 / (out.c_min * c1_hat);
  out.holds = true;
  for (std::size_t k = 0; k < battery.size(); ++k) {
    const double t = out.transform_norms[k], g = out.g_norms[k];
    out.holds = out.holds && out.lower * t <= g && g <= out.upper * t;
  }
  return out;
}

std::vector<Complex> halton_exterior(const DomainSpec& domain, std::size_t n) {
  const Band band{canonical_form(domain)};
  std::vector<Complex> out;
  for (std::size_t i = 1; out.size() < n; ++i) {
    if (i > 100 * n + 1000) throw Error(ErrorCode::InvalidArgument, "point band is degenerate");
    const auto p = band(van_der_corput(i, 2), van_der_corput(i, 3));
    if (p && contains(domain, *p) == Membership::Exterior) out.push_back(*p);
  }
  return out;
}

std::vector<Complex> random_admissible(const DomainSpec& domain, std::size_t n, std::uint64_t seed,
                                       double min_separation) {
  const Band band{canonical_form(domain)};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Complex> out;
  for (std::size_t attempt = 0; out.size() < n; ++attempt) {
    if (attempt > 10000 * (n + 1)) {
      throw Error(ErrorCode::InvalidArgument, "could not place separated random points");
    }
    const auto p = band(unit(rng), unit(rng));
    if (!p || contains(domain, *p) != Membership::Exterior) continue;
    const bool separated = std::all_of(out.begin(), out.end(), [&](Complex q) {
      return std::abs(*p - q) >= min_separation * (1.0 + std::max(std::abs(*p), std::abs(q)));
    });
    if (separated) out.push_back(*p);
  }
  return out;
}

std::vector<Complex> ring_points(Complex center, double radius, std::size_t n) {
  std::vector<Complex> out;
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(center + std::polar(radius, 2.0 * kPi * static_cast<double>(k) / n));
  }
  return out;
}

std::vector<Complex> cusp_approach(const DomainSpec& cusp, int level, std::size_t n) {
  const DomainSpec canon = canonical_form(cusp);
  const auto* c = canon.as<CuspDomain>();
  if (!c || c->complement) throw Error(ErrorCode::InvalidArgument, "cusp_approach needs the cusp domain");
  const double tm = std::asin(0.5 * (std::sqrt(5.0) - 1.0));
  const double lo = tm + 0.4, hi = 2.0 * kPi - 0.3;
  const double radius = 0.3 * c->scale / std::pow(2.0, level);
  std::vector<Complex> out;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = n == 1 ? 0.5 : static_cast<double>(k) / static_cast<double>(n - 1);
    out.push_back(std::polar(radius, lo + (hi - lo) * t));
  }
  return out;
}

}  // namespace bergman
