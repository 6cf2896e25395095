#include "bergman/suite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bergman/hilbert.hpp"
#include "bergman/linalg.hpp"
#include "bergman/operator_lab.hpp"
#include "bergman/reflection.hpp"

namespace bergman {

namespace {

constexpr const char* kHalfPlane = "halfplane";
constexpr const char* kSector = "sector";
constexpr const char* kDisk = "disk";
constexpr const char* kDiskExterior = "disk-exterior";
constexpr const char* kCusp = "cusp";

using Checks = std::vector<CheckEntry>;

bool wants(const SuiteConfig& cfg, const char* domain) {
  return cfg.domain.empty() || cfg.domain == domain ||
         (cfg.domain == "half-plane" && std::string(domain) == kHalfPlane);
}

DomainSpec preset(const char* name) { return *domain_preset(name); }

QuadConfig quad(const SuiteConfig& cfg) {
  QuadConfig q;
  q.abs_tol = cfg.abs_tol;
  q.max_cells = cfg.max_cells;
  return q;
}

/// Runs one group of checks; a library error becomes a failing entry.
template <typename Body>
void guarded(Checks& out, const std::string& id, const char* domain, Body&& body) {
  try {
    body(out);
  } catch (const Error& e) {
    CheckEntry fail = check_below(id, domain, std::numeric_limits<double>::quiet_NaN(), 0.0);
    fail.note = std::string(bergman::to_string(e.code())) + ": " + e.what();
    fail.converged = e.code() != ErrorCode::BudgetExhausted;
    out.push_back(fail);
  }
}

CheckEntry with_convergence(CheckEntry e, bool converged) {
  e.converged = converged;
  return e;
}

std::vector<HoloFun> half_plane_battery(const DomainSpec& d) {
  return {rational_section(d, {0.0, -1.0}), rational_section(d, {1.0, -2.0}),
          kernel_section(d, {0.0, 1.0}), kernel_section(d, {-0.5, 2.0}),
          linear_combination(d, {0.7, Complex{0.2, -0.3}},
                             {rational_section(d, {0.0, -1.0}), kernel_section(d, {1.0, 0.5})})};
}

std::vector<HoloFun> sector_battery(const DomainSpec& d) {
  return {rational_section(d, {-1.0, 0.0}), rational_section(d, {-0.5, -0.5}),
          kernel_section(d, {0.5, 0.5}), kernel_section(d, {1.0, 0.3}),
          linear_combination(d, {1.0, Complex{0.0, 0.5}},
                             {rational_section(d, {1.0, -1.0}), kernel_section(d, {0.3, 1.2})})};
}

double squared_norm(const HoloFun& f, const QuadConfig& q, bool& converged) {
  if (const auto v = inner_exact(f, f)) return v->real();
  const NormResult n = norm_b2(f, f.domain(), q);
  converged = converged && n.converged;
  return n.value * n.value;
}

std::string indexed(const std::string& id, std::size_t k) { return id + "[" + std::to_string(k) + "]"; }

// 1: exterior of a disk about xi0, closed form pi / d^2.
void membership_integral(const SuiteConfig& cfg, Checks& out) {
  if (!wants(cfg, kDiskExterior)) return;
  const Complex xi0{0.3, 0.2};
  for (const double d : {0.5, 1.0, 2.0}) {
    const std::string id = "acc01.membership-integral/d=" + std::to_string(d).substr(0, 3);
    guarded(out, id, kDiskExterior, [&](Checks& o) {
      const QuadResult q = integrate_domain(
          DomainSpec(DiskExterior{xi0, d}), [&](Complex z) { return Complex{std::pow(std::abs(z - xi0), -4.0)}; },
          quad(cfg));
      CheckEntry e = with_convergence(check_relative(id, kDiskExterior, q.value.real(), kPi / (d * d), 1e-6),
                                      q.converged);
      e.note = "equals 4 pi / D^2 with D = 2d the diameter of the excluded disk";
      o.push_back(e);
    });
  }
}

// 2: half-plane transform against its closed forms.
void half_plane_transform(const SuiteConfig& cfg, Checks& out) {
  if (!wants(cfg, kHalfPlane)) return;
  const DomainSpec d = upper_half_plane();
  TransformConfig tc;
  tc.route = TransformRoute::Quadrature;
  tc.quad = quad(cfg);
  const HoloFun f = rational_section(d, {0.0, -1.0});
  guarded(out, "acc02.half-plane-transform/value", kHalfPlane, [&](Checks& o) {
    const QuadResult q = hilbert_transform(f, {0.0, -2.0}, tc);
    o.push_back(with_convergence(
        check_absolute("acc02.half-plane-transform/value", kHalfPlane, std::abs(q.value - kPi / 9.0), 0.0, 1e-6),
        q.converged));
  });
  guarded(out, "acc02.half-plane-transform/mirror", kHalfPlane, [&](Checks& o) {
    double worst = 0.0;
    bool conv = true;
    for (const Complex xi : random_admissible(d, 10, cfg.seed)) {
      const QuadResult q = hilbert_transform(f, xi, tc);
      conv = conv && q.converged;
      worst = std::max(worst, std::abs(q.value + kPi * std::conj(f.value(std::conj(xi)))));
    }
    o.push_back(with_convergence(check_below("acc02.half-plane-transform/mirror", kHalfPlane, worst, 1e-6), conv));
  });
}

// 3: mean value over the unit disk.
void disk_mean_value(const SuiteConfig& cfg, Checks& out) {
  if (!wants(cfg, kDisk)) return;
  guarded(out, "acc03.disk-mean-value", kDisk, [&](Checks& o) {
    QuadConfig q = quad(cfg);
    q.abs_tol = std::min(q.abs_tol, 1e-10);
    const QuadResult r = integrate_domain(
        unit_disk(), [](Complex z) { return 1.0 / ((z - 2.0) * (z - 2.0)); }, q);
    o.push_back(with_convergence(
        check_absolute("acc03.disk-mean-value", kDisk, std::abs(r.value - kPi / 4.0), 0.0, 1e-8), r.converged));
  });
}

// 4: norm ratio under the normalized measure.
void norm_ratio(const SuiteConfig& cfg, Checks& out) {
  TransformConfig tc;
  tc.measure_normalization = MeasureNormalization::LebesgueOverPi;
  tc.quad = quad(cfg);
  if (wants(cfg, kHalfPlane)) {
    const auto battery = half_plane_battery(upper_half_plane());
    for (std::size_t k = 0; k < battery.size(); ++k) {
      const std::string id = indexed("acc04.norm-ratio/halfplane", k);
      guarded(out, id, kHalfPlane, [&](Checks& o) {
        const NormRatio r = transform_norm_ratio(battery[k], tc);
        o.push_back(with_convergence(check_absolute(id, kHalfPlane, r.ratio, 1.0, 1e-4), r.converged));
      });
    }
  }
  if (wants(cfg, kSector)) {
    const auto battery = sector_battery(quadrant_sector());
    for (std::size_t k = 0; k < battery.size(); ++k) {
      const std::string id = indexed("acc04.norm-ratio/sector", k);
      guarded(out, id, kSector, [&](Checks& o) {
        const NormRatio r = transform_norm_ratio(battery[k], tc);
        o.push_back(with_convergence(check_below(id, kSector, r.ratio, 1.0 + 1e-3), r.converged));
      });
    }
  }
}

// 5: transfer under w = 1/z from the disk exterior to the disk.
void transfer_isometry_check(const SuiteConfig& cfg, Checks& out) {
  if (!wants(cfg, kDiskExterior)) return;
  guarded(out, "acc05.transfer-isometry", kDiskExterior, [&](Checks& o) {
    const HoloFun f = rational_section(unit_disk_exterior(), 0.0);
    const HoloFun g = transfer_isometry(f, MoebiusMap::inversion());
    const NormResult nf = norm_b2(f, f.domain(), quad(cfg));
    const NormResult ng = norm_b2(g, g.domain(), quad(cfg));
    const bool conv = nf.converged && ng.converged;
    o.push_back(with_convergence(
        check_absolute("acc05.transfer-isometry/difference", kDiskExterior, ng.value - nf.value, 0.0, 1e-5), conv));
    o.push_back(with_convergence(
        check_absolute("acc05.transfer-isometry/exterior", kDiskExterior, nf.value, std::sqrt(kPi), 1e-5), conv));
    o.push_back(with_convergence(
        check_absolute("acc05.transfer-isometry/disk", kDiskExterior, ng.value, std::sqrt(kPi), 1e-5), conv));
  });
}

// 6: reflection axioms on grids and the sector bi-Lipschitz estimates.
void reflection_axioms(const SuiteConfig& cfg, Checks& out) {
  for (const char* name : {kHalfPlane, kSector}) {
    if (!wants(cfg, name)) continue;
    const std::string base = std::string("acc06.reflection-axioms/") + name;
    guarded(out, base, name, [&](Checks& o) {
      const DomainSpec d = preset(name);
      const auto grid = random_admissible(complement(d), 100, cfg.seed, 0.0);
      auto inside = random_admissible(d, 100, cfg.seed + 1, 0.0);
      std::vector<Complex> all(grid.begin(), grid.end());
      all.insert(all.end(), inside.begin(), inside.end());
      double involution = 0.0, swap_failures = 0.0;
      for (const Complex z : all) {
        const Complex w = reflect(d, z);
        involution = std::max(involution, std::abs(reflect(d, w) - z) / (1.0 + std::abs(z)));
        const Membership mz = contains(d, z), mw = contains(d, w);
        const bool swapped = (mz == Membership::Interior && mw == Membership::Exterior) ||
                             (mz == Membership::Exterior && mw == Membership::Interior);
        if (!swapped) swap_failures += 1.0;
      }
      double fixing = 0.0;
      for (int k = 0; k < 200; ++k) {
        const BoundaryPoint b = boundary_param(d, (k + 0.5) / 200.0);
        if (b.point.infinite) continue;
        fixing = std::max(fixing, std::abs(reflect(d, b.point.value) - b.point.value));
      }
      o.push_back(check_below(base + "/involution", name, involution, 1e-10));
      o.push_back(check_below(base + "/boundary-fixing", name, fixing, 1e-10));
      o.push_back(check_below(base + "/side-swap", name, swap_failures / all.size(), 1e-10));
    });
  }
  if (wants(cfg, kSector)) {
    guarded(out, "acc06.reflection-axioms/sector-lipschitz", kSector, [&](Checks& o) {
      const LipschitzEstimate e = bilipschitz_estimate(make_reflection(quadrant_sector()), 10000, 10.0, cfg.seed);
      const double lo = 1.0 / 3.0 - 0.02, hi = 3.0 + 0.1;
      for (const auto& [tag, v] : {std::pair{"c1", e.c1}, std::pair{"c2", e.c2}}) {
        o.push_back(check_above(std::string("acc06.reflection-axioms/sector-lipschitz/") + tag + "-low", kSector, v, lo));
        o.push_back(check_below(std::string("acc06.reflection-axioms/sector-lipschitz/") + tag + "-high", kSector, v, hi));
      }
    });
  }
}

// 7: pullback norm against the domain norm.
void sandwich(const SuiteConfig& cfg, Checks& out) {
  if (wants(cfg, kSector)) {
    guarded(out, "acc07.pullback-sandwich/sector", kSector, [&](Checks& o) {
      const DomainSpec d = quadrant_sector();
      const Reflection refl = make_reflection(d);
      const LipschitzEstimate e = bilipschitz_estimate(refl, 10000, 10.0, cfg.seed);
      const auto battery = sector_battery(d);
      for (std::size_t k = 0; k < battery.size(); ++k) {
        bool conv = true;
        const double n2 = squared_norm(battery[k], quad(cfg), conv);
        const QuadResult p = pullback_inner(refl, battery[k], battery[k], quad(cfg));
        conv = conv && p.converged;
        const double q = n2 / p.value.real();  // ||f||^2 / ||f||_1^2
        const std::string id = indexed("acc07.pullback-sandwich/sector", k);
        o.push_back(with_convergence(check_above(id + "/lower", kSector, q, 0.95 * e.c1 * e.c1), conv));
        o.push_back(with_convergence(check_below(id + "/upper", kSector, q, 1.05 * e.c2 * e.c2), conv));
      }
    });
  }
  if (wants(cfg, kHalfPlane)) {
    guarded(out, "acc07.pullback-sandwich/halfplane", kHalfPlane, [&](Checks& o) {
      const DomainSpec d = upper_half_plane();
      const Reflection refl = make_reflection(d);
      const auto battery = half_plane_battery(d);
      for (std::size_t k = 0; k < battery.size(); ++k) {
        bool conv = true;
        const double n = std::sqrt(squared_norm(battery[k], quad(cfg), conv));
        const QuadResult p = pullback_inner(refl, battery[k], battery[k], quad(cfg));
        conv = conv && p.converged;
        const std::string id = indexed("acc07.pullback-sandwich/halfplane", k);
        o.push_back(with_convergence(check_absolute(id, kHalfPlane, std::sqrt(p.value.real()), n, 1e-5), conv));
      }
    });
  }
}

const std::vector<Complex>& half_plane_holdouts() {
  static const std::vector<Complex> pts{{0.3, -0.7}, {-1.2, -0.4}, {2.0, -1.5}};
  return pts;
}

const std::vector<Complex>& sector_holdouts() {
  static const std::vector<Complex> pts{{-0.8, 0.5}, {-0.6, -0.9}, {1.1, -0.4}};
  return pts;
}

double worst_holdout(const FiniteModel& m, const std::vector<Complex>& holdouts) {
  double worst = 0.0;
  for (const Complex xi : holdouts) worst = std::max(worst, apply_B(m, xi).residual);
  return worst;
}

// 8: half-plane operator B equals -pi times the identity.
void half_plane_operator(const SuiteConfig& cfg, Checks& out) {
  if (!wants(cfg, kHalfPlane)) return;
  guarded(out, "acc08.half-plane-operator", kHalfPlane, [&](Checks& o) {
    const DomainSpec d = upper_half_plane();
    ModelConfig mc;
    mc.quad = quad(cfg);
    const FiniteModel m = build_finite_model(d, halton_exterior(d, 8), mc);
    const Eigen::MatrixXcd target = -kPi * Eigen::MatrixXcd::Identity(8, 8);
    o.push_back(with_convergence(
        check_below("acc08.half-plane-operator/b-matrix", kHalfPlane, (m.b_mat - target).cwiseAbs().maxCoeff(), 1e-6),
        m.converged));
    o.push_back(with_convergence(
        check_below("acc08.half-plane-operator/holdout", kHalfPlane, worst_holdout(m, half_plane_holdouts()), 1e-5),
        m.converged));
  });
}

// 9: sector holdout residual under refinement.
void sector_convergence(const SuiteConfig& cfg, Checks& out) {
  if (!wants(cfg, kSector)) return;
  guarded(out, "acc09.sector-convergence", kSector, [&](Checks& o) {
    const DomainSpec d = quadrant_sector();
    ModelConfig mc;
    mc.quad = quad(cfg);
    std::vector<double> res;
    bool conv = true;
    for (const std::size_t n : {10u, 20u, 40u}) {
      const FiniteModel m = build_finite_model(d, halton_exterior(d, n), mc);
      conv = conv && m.converged;
      res.push_back(worst_holdout(m, sector_holdouts()));
      o.push_back(with_convergence(
          check_below("acc09.sector-convergence/residual-n" + std::to_string(n), kSector, res.back(),
                      std::numeric_limits<double>::infinity()),
          m.converged));
    }
    double step = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < res.size(); ++k) step = std::max(step, res[k] - res[k - 1]);
    CheckEntry dec = with_convergence(check_below("acc09.sector-convergence/decrease", kSector, step, 0.0), conv);
    dec.note = "largest change of the holdout residual between successive N";
    o.push_back(dec);
    o.push_back(with_convergence(check_below("acc09.sector-convergence/final", kSector, res.back(), 1e-2), conv));
  });
}

// 10: Parseval analogue and the kernel identity.
void orthosimilar_identities(const SuiteConfig& cfg, Checks& out) {
  ModelConfig mc;
  mc.quad = quad(cfg);
  if (wants(cfg, kHalfPlane)) {
    guarded(out, "acc10.orthosimilar/halfplane", kHalfPlane, [&](Checks& o) {
      const DomainSpec d = upper_half_plane();
      const FiniteModel m = build_finite_model(d, halton_exterior(d, 8), mc);
      const ValueCheck p = parseval_check(m, kernel_section(d, {0.0, 1.0}), quad(cfg));
      o.push_back(with_convergence(
          check_below("acc10.orthosimilar/halfplane/parseval", kHalfPlane, p.relative_error, 1e-4), p.converged));
      const FiniteModel ring = build_finite_model(d, ring_points({0.0, -1.0}, 0.5, 12), mc);
      const ValueCheck k = kernel_integral_identity(ring, {0.0, 1.0}, {0.0, 1.0}, quad(cfg));
      o.push_back(with_convergence(
          check_below("acc10.orthosimilar/halfplane/kernel", kHalfPlane, k.relative_error, 1e-2), k.converged));
    });
  }
  if (wants(cfg, kSector)) {
    guarded(out, "acc10.orthosimilar/sector", kSector, [&](Checks& o) {
      const DomainSpec d = quadrant_sector();
      const FiniteModel m = build_finite_model(d, halton_exterior(d, 40), mc);
      const ValueCheck p = parseval_check(m, kernel_section(d, {0.6, 0.7}), quad(cfg));
      o.push_back(with_convergence(
          check_below("acc10.orthosimilar/sector/parseval", kSector, p.relative_error, 1e-2), p.converged));
      const Complex z = std::polar(1.0, 0.25 * kPi);
      const ValueCheck k = kernel_integral_identity(m, z, z, quad(cfg));
      o.push_back(with_convergence(
          check_below("acc10.orthosimilar/sector/kernel", kSector, k.relative_error, 5e-2), k.converged));
    });
  }
}

// 11: reflection principle and the two-sided norm comparison.
void reflection_principle_checks(const SuiteConfig& cfg, Checks& out) {
  if (wants(cfg, kHalfPlane)) {
    guarded(out, "acc11.reflection-principle/halfplane", kHalfPlane, [&](Checks& o) {
      const DomainSpec d = upper_half_plane();
      ModelConfig mc;
      mc.quad = quad(cfg);
      std::vector<Complex> pts = halton_exterior(d, 7);
      pts.push_back({0.0, -2.0});
      const FiniteModel m = build_finite_model(d, pts, mc);
      const HoloFun f = kernel_section(d, {0.0, 2.0});
      TransformConfig tc;
      tc.quad = quad(cfg);
      double worst = 0.0;
      for (const Complex xi : random_admissible(d, 10, cfg.seed)) {
        worst = std::max(worst, reflection_principle(m, f, xi, tc).residual);
      }
      o.push_back(check_below("acc11.reflection-principle/halfplane", kHalfPlane, worst, 1e-5));
    });
  }
  if (wants(cfg, kSector)) {
    guarded(out, "acc11.reflection-principle/sector-norms", kSector, [&](Checks& o) {
      const DomainSpec d = quadrant_sector();
      const Reflection refl = make_reflection(d);
      const LipschitzEstimate e = bilipschitz_estimate(refl, 10000, 10.0, cfg.seed);
      TransformConfig tc;
      tc.measure_normalization = MeasureNormalization::LebesgueOverPi;
      tc.quad = quad(cfg);
      const auto battery = sector_battery(d);
      const NormComparison nc = norm_comparison(refl, battery, e.c1, e.c2, tc);
      for (std::size_t k = 0; k < battery.size(); ++k) {
        const std::string id = indexed("acc11.reflection-principle/sector-norms", k);
        const double q = nc.g_norms[k] / nc.transform_norms[k];
        o.push_back(with_convergence(check_above(id + "/lower", kSector, q, nc.lower), nc.converged));
        o.push_back(with_convergence(check_below(id + "/upper", kSector, q, nc.upper), nc.converged));
      }
    });
  }
}

// 12: frame conditioning near the cusp against the sector.
void cusp_diagnostic(const SuiteConfig& cfg, Checks& out) {
  if (!wants(cfg, kCusp) && !wants(cfg, kSector)) return;
  guarded(out, "acc12.cusp-frame-condition", kCusp, [&](Checks& o) {
    ModelConfig mc;
    mc.quad = quad(cfg);
    mc.gram_rel_tol = 1e-8;
    const DomainSpec sector = quadrant_sector(), cusp = cusp_domain();
    const FrameConditioning s = frame_conditioning(sector, halton_exterior(sector, 8), mc);
    std::vector<FrameConditioning> levels;
    for (int l = 0; l < 3; ++l) levels.push_back(frame_conditioning(cusp, cusp_approach(cusp, l, 8), mc));
    bool conv = s.converged;
    double step = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < levels.size(); ++k) {
      conv = conv && levels[k].converged;
      if (k > 0) step = std::min(step, levels[k].compressed / levels[k - 1].compressed);
    }
    CheckEntry ratio = with_convergence(
        check_above("acc12.cusp-frame-condition/ratio", kCusp, levels[0].compressed / s.compressed, 10.0),
        conv);
    ratio.note = "condition of the frame matrix on span{r_j} in an orthonormal basis, cusp over sector at N = 8";
    o.push_back(ratio);
    CheckEntry growth = with_convergence(check_above("acc12.cusp-frame-condition/growth", kCusp, step, 1.0), conv);
    growth.note = "smallest ratio of successive levels";
    o.push_back(growth);
  });
}

// 13: positive definiteness of the Grams over random configurations.
void gram_positivity(const SuiteConfig& cfg, Checks& out) {
  for (const char* name : {kHalfPlane, kSector, kDisk, kDiskExterior, kCusp}) {
    if (!wants(cfg, name)) continue;
    const std::string base = std::string("acc13.gram-positivity/") + name;
    guarded(out, base, name, [&](Checks& o) {
      const DomainSpec d = preset(name);
      const bool kern = has_kernel(d);
      double min_b2 = std::numeric_limits<double>::infinity(), min_r = min_b2, worst_cond = 0.0;
      for (std::uint64_t k = 0; k < 20; ++k) {
        const auto pts = random_admissible(d, 8, cfg.seed + k);
        const Eigen::Index n = static_cast<Eigen::Index>(pts.size());
        Eigen::MatrixXcd gb(n, n), gr(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
          for (Eigen::Index j = 0; j < n; ++j) {
            gr(i, j) = rational_pairing(d, pts[j], pts[i]);
            if (kern) gb(i, j) = kernel(d, reflect(d, pts[i]), reflect(d, pts[j]));
          }
        }
        auto smallest = [](const Eigen::MatrixXcd& g) {
          Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian_part(g), Eigen::EigenvaluesOnly);
          return es.eigenvalues()(0);
        };
        min_r = std::min(min_r, smallest(gr));
        worst_cond = std::max(worst_cond, hermitian_condition(gr));
        if (kern) {
          min_b2 = std::min(min_b2, smallest(gb));
          worst_cond = std::max(worst_cond, hermitian_condition(gb));
        }
      }
      o.push_back(check_above(base + "/rational", name, min_r, 0.0));
      if (kern) o.push_back(check_above(base + "/kernel", name, min_b2, 0.0));
      CheckEntry resolvable = check_below(base + "/condition", name, worst_cond, 1e14);
      resolvable.note = "positivity is only meaningful while rounding cannot flip the smallest eigenvalue";
      o.push_back(resolvable);
    });
  }
}

}  // namespace

const std::vector<AcceptanceCriterion>& acceptance_criteria() {
  static const std::vector<AcceptanceCriterion> list{
      {1, "acc01.membership-integral", "exterior-of-disk integral of |z - xi0|^-4 equals pi / d^2", {kDiskExterior}},
      {2, "acc02.half-plane-transform", "half-plane transform closed forms", {kHalfPlane}},
      {3, "acc03.disk-mean-value", "integral of (z - 2)^-2 over the unit disk equals pi / 4", {kDisk}},
      {4, "acc04.norm-ratio", "transform norm ratio under dv / pi", {kHalfPlane, kSector}},
      {5, "acc05.transfer-isometry", "transfer isometry from the disk exterior to the disk", {kDiskExterior}},
      {6, "acc06.reflection-axioms", "reflection axioms and sector bi-Lipschitz constants", {kHalfPlane, kSector}},
      {7, "acc07.pullback-sandwich", "pullback norm sandwich", {kHalfPlane, kSector}},
      {8, "acc08.half-plane-operator", "half-plane B equals -pi Id", {kHalfPlane}},
      {9, "acc09.sector-convergence", "sector holdout residual decreases under refinement", {kSector}},
      {10, "acc10.orthosimilar", "Parseval analogue and kernel identity", {kHalfPlane, kSector}},
      {11, "acc11.reflection-principle", "reflection principle and two-sided norm comparison", {kHalfPlane, kSector}},
      {12, "acc12.cusp-frame-condition", "frame conditioning near the cusp", {kCusp, kSector}},
      {13, "acc13.gram-positivity", "Gram positive definiteness",
       {kHalfPlane, kSector, kDisk, kDiskExterior, kCusp}},
  };
  return list;
}

std::vector<int> selected_criteria(const SuiteConfig& cfg) {
  std::vector<int> ids;
  for (const auto& c : acceptance_criteria()) {
    if (std::any_of(c.domains.begin(), c.domains.end(), [&](const std::string& d) { return wants(cfg, d.c_str()); })) {
      ids.push_back(c.id);
    }
  }
  return ids;
}

std::vector<CheckEntry> run_criterion(int id, const SuiteConfig& cfg) {
  Checks out;
  switch (id) {
    case 1: membership_integral(cfg, out); break;
    case 2: half_plane_transform(cfg, out); break;
    case 3: disk_mean_value(cfg, out); break;
    case 4: norm_ratio(cfg, out); break;
    case 5: transfer_isometry_check(cfg, out); break;
    case 6: reflection_axioms(cfg, out); break;
    case 7: sandwich(cfg, out); break;
    case 8: half_plane_operator(cfg, out); break;
    case 9: sector_convergence(cfg, out); break;
    case 10: orthosimilar_identities(cfg, out); break;
    case 11: reflection_principle_checks(cfg, out); break;
    case 12: cusp_diagnostic(cfg, out); break;
    case 13: gram_positivity(cfg, out); break;
    default: throw Error(ErrorCode::InvalidArgument, "no acceptance criterion " + std::to_string(id));
  }
  return out;
}

}  // namespace bergman
