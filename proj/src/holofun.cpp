#include "bergman/holofun.hpp"

#include <cmath>
#include <algorithm>
#include <array>
#include <functional>

#include "bergman/reflection.hpp"

namespace bergman {

namespace {

double wrap(double t) {
  t = std::fmod(t, 2.0 * kPi);
  if (t < 0.0) t += 2.0 * kPi;
  return t;
}

Complex half_plane_coordinate(const HalfPlane& h, Complex z) {
  const Complex tau = Complex{0.0, -1.0} * h.normal;
  return (z - h.offset * h.normal) / tau;
}

Complex upper_half_plane_kernel(Complex z, Complex w) {
  const Complex d = z - std::conj(w);
  return -1.0 / (kPi * d * d);
}

Complex unit_disk_kernel(Complex z, Complex w) {
  const Complex d = 1.0 - z * std::conj(w);
  return 1.0 / (kPi * d * d);
}

/// Power map of the sector onto the upper half-plane and its derivative.
struct SectorChart {
  Complex value;
  Complex derivative;
};

SectorChart sector_chart(const Sector& s, Complex z) {
  const double alpha = s.bisector - 0.5 * s.opening;
  const double p = kPi / s.opening;
  const Complex u = std::polar(1.0, -alpha) * (z - s.vertex);
  const double t = wrap(std::arg(u));
  const Complex phi = std::polar(std::pow(std::abs(u), p), p * t);
  return {phi, p * phi / (z - s.vertex)};
}

Complex kernel_shape(const DomainSpec& domain, Complex z, Complex w);

struct KernelEval {
  Complex z, w;

  Complex operator()(const HalfPlane& h) const {
    return upper_half_plane_kernel(half_plane_coordinate(h, z), half_plane_coordinate(h, w));
  }
  Complex operator()(const Sector& s) const {
    const SectorChart cz = sector_chart(s, z);
    const SectorChart cw = sector_chart(s, w);
    return cz.derivative * std::conj(cw.derivative) * upper_half_plane_kernel(cz.value, cw.value);
  }
  Complex operator()(const DiskInterior& d) const {
    const double r2 = d.radius * d.radius;
    const Complex q = r2 - (z - d.center) * std::conj(w - d.center);
    return r2 / (kPi * q * q);
  }
  Complex operator()(const DiskExterior& d) const {
    // z -> R / (z - c) carries the exterior onto the unit disk
    const Complex dz = z - d.center, dw = w - d.center;
    const Complex fz = d.radius / dz, fw = d.radius / dw;
    const Complex gz = -d.radius / (dz * dz), gw = -d.radius / (dw * dw);
    return gz * std::conj(gw) * unit_disk_kernel(fz, fw);
  }
  Complex operator()(const MoebiusImage& m) const {
    const MoebiusMap psi = invert(m.map);
    const Complex uz = moebius_apply(psi, z), uw = moebius_apply(psi, w);
    return moebius_derivative(psi, z) * std::conj(moebius_derivative(psi, w)) *
           kernel_shape(*m.base, uz, uw);
  }
  Complex operator()(const CuspDomain&) const {
    throw Error(ErrorCode::ChartUnavailable, "no Bergman kernel is provided for the cusp domain");
  }
};

Complex kernel_shape(const DomainSpec& domain, Complex z, Complex w) {
  return std::visit(KernelEval{z, w}, domain.shape());
}

// Contribution of one boundary ray of a sector to the Green-formula pairing,
// with A = (a - v) e^{-i gamma} and B = conj(b - v) e^{i gamma}.
Complex ray_term(Complex A, Complex B) {
  const Complex d = A - B;
  const Complex u = d / B;
  if (std::abs(u) < 1e-2) {
    Complex sum{0.0}, power{1.0};
    for (int k = 0; k < 16; ++k) {
      sum += ((k % 2 == 0) ? 1.0 : -1.0) * (k + 1.0) / (k + 2.0) * power;
      power *= u;
    }
    return sum / (B * B);
  }
  return (std::log(-A) - std::log(-B)) / (d * d) - 1.0 / (d * A);
}

Complex sector_pairing(const Sector& s, Complex a, Complex b) {
  const double g1 = s.bisector - 0.5 * s.opening;
  const double g2 = s.bisector + 0.5 * s.opening;
  const Complex ap = a - s.vertex, bp = std::conj(b - s.vertex);
  const Complex t1 = ray_term(ap * std::polar(1.0, -g1), bp * std::polar(1.0, g1));
  const Complex t2 = ray_term(ap * std::polar(1.0, -g2), bp * std::polar(1.0, g2));
  return (t2 - t1) / Complex{0.0, 2.0};
}

// Green-formula pairing over the horn: (1/2i) times the boundary integral of
// r_a conj(-1/(z - b)) dz. One sweep serves many b; panels are refined near a
// and near every b.
struct CurvePiece {
  std::function<Complex(double)> z;
  std::function<Complex(double)> dz;
  double t0, t1;
  double sign = 1.0;
};

const std::array<std::pair<double, double>, 15>& kronrod_unit() {
  static const auto nodes = [] {
    constexpr double x[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                             0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                             0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                             0.207784955007898467600689403773245, 0.0};
    constexpr double w[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                             0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                             0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                             0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    std::array<std::pair<double, double>, 15> out{};
    for (int k = 0; k < 15; ++k) {
      const int m = k < 7 ? k : 14 - k;
      const double s = k < 7 ? -1.0 : 1.0;
      out[k] = {0.5 * (1.0 + s * x[m]), 0.5 * w[m]};
    }
    return out;
  }();
  return nodes;
}

void panel_integral(const CurvePiece& c, double t0, double t1, Complex a, std::span<const Complex> bs,
                    std::span<Complex> acc, int depth) {
  const Complex z0 = c.z(t0), z1 = c.z(t1), zm = c.z(0.5 * (t0 + t1));
  const double reach = 1.5 * (std::abs(zm - z0) + std::abs(z1 - zm));
  bool split = std::abs(zm - a) < reach;
  for (std::size_t j = 0; !split && j < bs.size(); ++j) split = std::abs(zm - bs[j]) < reach;
  if (depth < 200 && split) {
    const double mid = 0.5 * (t0 + t1);
    panel_integral(c, t0, mid, a, bs, acc, depth + 1);
    panel_integral(c, mid, t1, a, bs, acc, depth + 1);
    return;
  }
  for (const auto& [x, w] : kronrod_unit()) {
    const double t = t0 + (t1 - t0) * x;
    const Complex z = c.z(t);
    const Complex common = c.sign * w * (t1 - t0) * c.dz(t) / ((z - a) * (z - a));
    for (std::size_t j = 0; j < bs.size(); ++j) acc[j] -= common / std::conj(z - bs[j]);
  }
}

void cusp_pairings(const CuspDomain& cusp, Complex a, std::span<const Complex> bs,
                   std::span<Complex> out) {
  const double s = cusp.scale;
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  const double tm = std::asin(golden);
  const double xm = std::sqrt(golden);
  const std::array<CurvePiece, 3> pieces = {
      CurvePiece{[s](double x) { return Complex{s * x, 0.0}; }, [s](double) { return Complex{s}; },
                 0.0, 1.0},
      CurvePiece{[s](double t) { return s * std::polar(1.0, t); },
                 [s](double t) { return Complex{0.0, s} * std::polar(1.0, t); }, 0.0, tm},
      // parabola, parameterized from the tip so that points near the cusp are
      // resolved; its orientation runs back toward the tip, hence sign -1
      CurvePiece{[s](double x) { return Complex{s * x, s * x * x}; },
                 [s](double x) { return s * Complex{1.0, 2.0 * x}; }, 0.0, xm, -1.0},
  };
  // Points closer to the two tip curves than the parameterization can resolve
  // are moved out to a resolvable distance; the pairing is continuous up to the
  // boundary from outside, so this costs O(delta) accuracy.
  const double x = a.real() / s, y = a.imag() / s;
  if (x >= 0.0 && x <= xm) {
    const double delta = 1e-12 * std::max(std::abs(a) / s, 1e-150);
    const double above = y - x * x;  // > 0 outside the horn, on the parabola side
    const double below = -y;         // > 0 outside the horn, on the segment side
    if (!cusp.complement) {
      if (above >= 0.0 && above < delta) a = s * Complex{x, x * x + delta};
      if (below >= 0.0 && below < delta) a = s * Complex{x, -delta};
    }
  }
  std::fill(out.begin(), out.end(), Complex{0.0});
  for (const auto& p : pieces) {
    constexpr int kPanels = 4;
    for (int k = 0; k < kPanels; ++k) {
      const double t0 = p.t0 + (p.t1 - p.t0) * k / kPanels;
      const double t1 = p.t0 + (p.t1 - p.t0) * (k + 1) / kPanels;
      panel_integral(p, t0, t1, a, bs, out, 0);
    }
  }
  // the complement sees the same curve with the opposite orientation
  const Complex scale = (cusp.complement ? -1.0 : 1.0) / Complex{0.0, 2.0};
  for (auto& v : out) v *= scale;
}

Complex cusp_pairing(const CuspDomain& cusp, Complex a, Complex b) {
  Complex out{};
  cusp_pairings(cusp, a, std::span<const Complex>(&b, 1), std::span<Complex>(&out, 1));
  return out;
}

/// U r_xi for U f = f(m(u)) m'(u): a multiple of r_eta, or a constant when the
/// pole is sent to infinity.
struct TransferredSection {
  Complex coefficient;
  bool constant = false;
  Complex pole{};
};

TransferredSection transfer_section(const MoebiusMap& m, Complex xi) {
  const ExtendedPoint eta = moebius_apply(invert(m), ExtendedPoint::finite(xi));
  const Complex det = m.determinant();
  if (eta.infinite) return {m.c * m.c / det, true, {}};
  const Complex q = m.c * eta.value + m.d;
  return {q * q / det, false, eta.value};
}

Complex rational_pairing_shape(const DomainSpec& domain, Complex a, Complex b);

Complex disk_constant_pairing(const DomainSpec& base, bool a_const, Complex a, bool b_const,
                              Complex b) {
  const auto* d = base.as<DiskInterior>();
  if (!d) throw Error(ErrorCode::InvalidArgument, "constant functions need a bounded disk");
  const double area = kPi * d->radius * d->radius;
  if (a_const && b_const) return area;
  if (a_const) return std::conj(area / ((d->center - b) * (d->center - b)));
  return area / ((d->center - a) * (d->center - a));
}

Complex moebius_pairing(const DomainSpec& base, const MoebiusMap& m, Complex a, Complex b) {
  const TransferredSection ta = transfer_section(m, a), tb = transfer_section(m, b);
  const Complex scale = ta.coefficient * std::conj(tb.coefficient);
  if (ta.constant || tb.constant) {
    return scale * disk_constant_pairing(base, ta.constant, ta.pole, tb.constant, tb.pole);
  }
  return scale * rational_pairing_shape(base, ta.pole, tb.pole);
}

struct PairingEval {
  Complex a, b;

  Complex operator()(const HalfPlane& h) const {
    const Complex au = half_plane_coordinate(h, a), bu = half_plane_coordinate(h, b);
    const Complex d = std::conj(bu) - au;
    return -kPi / (d * d);
  }
  Complex operator()(const Sector& s) const { return sector_pairing(s, a, b); }
  Complex operator()(const DiskInterior& d) const {
    const Complex au = (a - d.center) / d.radius, bu = (b - d.center) / d.radius;
    const Complex q = au * std::conj(bu) - 1.0;
    return kPi / (d.radius * d.radius * q * q);
  }
  Complex operator()(const DiskExterior& d) const {
    const MoebiusMap m{d.center, Complex{d.radius}, Complex{1.0}, Complex{0.0}};
    return moebius_pairing(unit_disk(), m, a, b);
  }
  Complex operator()(const MoebiusImage& m) const { return moebius_pairing(*m.base, m.map, a, b); }
  Complex operator()(const CuspDomain& c) const { return cusp_pairing(c, a, b); }
};

Complex rational_pairing_shape(const DomainSpec& domain, Complex a, Complex b) {
  return std::visit(PairingEval{a, b}, domain.shape());
}

bool same_map(const MoebiusMap& x, const MoebiusMap& y) {
  // projective equality of coefficient vectors
  const Complex p[4] = {x.a, x.b, x.c, x.d}, q[4] = {y.a, y.b, y.c, y.d};
  int k = 0;
  while (k < 4 && std::abs(q[k]) == 0.0) ++k;
  if (k == 4) return false;
  const Complex ratio = p[k] / q[k];
  for (int i = 0; i < 4; ++i) {
    if (std::abs(p[i] - ratio * q[i]) > 1e-13 * (std::abs(p[i]) + std::abs(ratio * q[i]) + 1e-300)) {
      return false;
    }
  }
  return true;
}

struct ValueEval {
  const HoloFun& self;
  Complex z;

  Complex operator()(const RationalSection& r) const {
    const Complex d = z - r.pole;
    return 1.0 / (d * d);
  }
  Complex operator()(const KernelSection& k) const { return kernel(self.domain(), z, k.w); }
  Complex operator()(const MoebiusPullback& p) const {
    const ExtendedPoint u = moebius_apply(p.psi, ExtendedPoint::finite(z));
    if (u.infinite) throw Error(ErrorCode::SingularPoint, "transfer evaluated at the image of infinity");
    return p.base->value(u.value) * moebius_derivative(p.psi, z);
  }
  Complex operator()(const LinearCombination& c) const {
    Complex sum{0.0};
    for (std::size_t k = 0; k < c.parts.size(); ++k) {
      if (c.coeffs[k] != Complex{0.0}) sum += c.coeffs[k] * c.parts[k].value(z);
    }
    return sum;
  }
  Complex operator()(const ClosedForm& c) const {
    if (c.scale == Complex{0.0}) return 0.0;
    return c.scale * std::pow(z, c.power);
  }
};

std::optional<Complex> closed_form_pair(const DomainSpec& domain, const HoloFun& f,
                                        const HoloFun& g) {
  // monomials and rational sections on a disk centered at the origin
  const DomainSpec canon = canonical_form(domain);
  const auto* d = canon.as<DiskInterior>();
  if (!d || d->center != Complex{0.0}) return std::nullopt;
  const double R = d->radius;
  const auto* cf = f.as<ClosedForm>();
  const auto* cg = g.as<ClosedForm>();
  const auto* rf = f.as<RationalSection>();
  const auto* rg = g.as<RationalSection>();
  auto moment = [R](int n) { return kPi * std::pow(R, 2 * n + 2) / (n + 1); };
  if (cf && cg) {
    if (cf->power != cg->power) return Complex{0.0};
    return cf->scale * std::conj(cg->scale) * moment(cf->power);
  }
  if (rf && cg) {
    const int n = cg->power;
    return std::conj(cg->scale) * kPi * std::pow(R, 2 * n + 2) / std::pow(rf->pole, n + 2);
  }
  if (cf && rg) {
    const int n = cf->power;
    return cf->scale * std::conj(kPi * std::pow(R, 2 * n + 2) / std::pow(rg->pole, n + 2));
  }
  return std::nullopt;
}

}  // namespace

HoloFun::HoloFun(DomainSpec domain, Form form) : domain_(std::move(domain)), form_(std::move(form)) {
  if (const auto* c = std::get_if<LinearCombination>(&form_)) {
    if (c->coeffs.size() != c->parts.size()) {
      throw Error(ErrorCode::InvalidArgument, "coefficient and part counts differ");
    }
  }
}

Complex HoloFun::value(Complex z) const { return std::visit(ValueEval{*this, z}, form_); }

bool HoloFun::is_zero() const {
  if (const auto* c = as<ClosedForm>()) return c->scale == Complex{0.0};
  if (const auto* l = as<LinearCombination>()) {
    for (std::size_t k = 0; k < l->parts.size(); ++k) {
      if (l->coeffs[k] != Complex{0.0} && !l->parts[k].is_zero()) return false;
    }
    return true;
  }
  if (const auto* p = as<MoebiusPullback>()) return p->base->is_zero();
  return false;
}

HoloFun rational_section(const DomainSpec& domain, Complex xi) {
  if (contains(domain, xi) != Membership::Exterior) {
    throw Error(ErrorCode::InvalidArgument, "rational section pole must lie outside the closed domain");
  }
  return HoloFun(domain, RationalSection{xi});
}

HoloFun kernel_section(const DomainSpec& domain, Complex w) {
  if (!has_kernel(domain)) {
    throw Error(ErrorCode::ChartUnavailable, "no Bergman kernel is provided for this domain");
  }
  if (contains(domain, w) != Membership::Interior) {
    throw Error(ErrorCode::EvaluationOutsideDomain, "kernel section point must be interior");
  }
  return HoloFun(domain, KernelSection{w});
}

HoloFun zero_function(const DomainSpec& domain) { return HoloFun(domain, ClosedForm{0.0, 0}); }

HoloFun monomial(const DomainSpec& domain, int power, Complex scale) {
  if (power < 0) throw Error(ErrorCode::InvalidArgument, "monomial power must be nonnegative");
  if (domain.unbounded() && scale != Complex{0.0}) {
    throw Error(ErrorCode::InvalidArgument, "polynomials are not square integrable on unbounded domains");
  }
  return HoloFun(domain, ClosedForm{scale, power});
}

HoloFun linear_combination(const DomainSpec& domain, std::vector<Complex> coeffs,
                           std::vector<HoloFun> parts) {
  return HoloFun(domain, LinearCombination{std::move(coeffs), std::move(parts)});
}

HoloFun scaled(const HoloFun& f, Complex lambda) {
  return linear_combination(f.domain(), {lambda}, {f});
}

Complex eval(const HoloFun& f, Complex z) {
  if (contains(f.domain(), z) != Membership::Interior) {
    throw Error(ErrorCode::EvaluationOutsideDomain, "evaluation point is not interior to the domain");
  }
  return f.value(z);
}

bool has_kernel(const DomainSpec& domain) {
  const DomainSpec canon = canonical_form(domain);
  if (canon.as<CuspDomain>()) return false;
  if (const auto* m = canon.as<MoebiusImage>()) return has_kernel(*m->base);
  return true;
}

Complex kernel(const DomainSpec& domain, Complex z, Complex w) {
  return kernel_shape(canonical_form(domain), z, w);
}

Complex rational_pairing(const DomainSpec& domain, Complex a, Complex b) {
  return rational_pairing_shape(canonical_form(domain), a, b);
}

void rational_pairings(const DomainSpec& domain, Complex a, std::span<const Complex> bs,
                       std::span<Complex> out) {
  if (out.size() != bs.size()) throw Error(ErrorCode::InvalidArgument, "output size mismatch");
  const DomainSpec canon = canonical_form(domain);
  if (const auto* c = canon.as<CuspDomain>()) {
    cusp_pairings(*c, a, bs, out);
    return;
  }
  for (std::size_t j = 0; j < bs.size(); ++j) out[j] = rational_pairing_shape(canon, a, bs[j]);
}

std::optional<Complex> inner_exact(const HoloFun& f, const HoloFun& g) {
  if (f.is_zero() || g.is_zero()) return Complex{0.0};
  if (const auto* c = g.as<LinearCombination>()) {
    Complex sum{0.0};
    for (std::size_t k = 0; k < c->parts.size(); ++k) {
      if (c->coeffs[k] == Complex{0.0}) continue;
      const auto part = inner_exact(f, c->parts[k]);
      if (!part) return std::nullopt;
      sum += std::conj(c->coeffs[k]) * *part;
    }
    return sum;
  }
  if (const auto* c = f.as<LinearCombination>()) {
    Complex sum{0.0};
    for (std::size_t k = 0; k < c->parts.size(); ++k) {
      if (c->coeffs[k] == Complex{0.0}) continue;
      const auto part = inner_exact(c->parts[k], g);
      if (!part) return std::nullopt;
      sum += c->coeffs[k] * *part;
    }
    return sum;
  }
  // reproducing property
  if (const auto* k = g.as<KernelSection>()) return f.value(k->w);
  if (const auto* k = f.as<KernelSection>()) return std::conj(g.value(k->w));

  const auto* rf = f.as<RationalSection>();
  const auto* rg = g.as<RationalSection>();
  if (rf && rg) return rational_pairing(f.domain(), rf->pole, rg->pole);

  const auto* pf = f.as<MoebiusPullback>();
  const auto* pg = g.as<MoebiusPullback>();
  if (pf && pg && same_map(pf->psi, pg->psi)) return inner_exact(*pf->base, *pg->base);
  if (pf && rg) {
    // (T h, r_b) = (h, T^{-1} r_b) with T^{-1} r_b a multiple of a section
    const TransferredSection t = transfer_section(invert(pf->psi), rg->pole);
    const DomainSpec& base_domain = pf->base->domain();
    const HoloFun other = t.constant ? monomial(base_domain, 0, 1.0)
                                     : HoloFun(base_domain, RationalSection{t.pole});
    const auto inner = inner_exact(*pf->base, other);
    if (!inner) return std::nullopt;
    return std::conj(t.coefficient) * *inner;
  }
  if (rf && pg) {
    const auto swapped = inner_exact(g, f);
    if (!swapped) return std::nullopt;
    return std::conj(*swapped);
  }
  return closed_form_pair(f.domain(), f, g);
}

QuadResult inner_b2(const HoloFun& f, const HoloFun& g, const DomainSpec& domain,
                    const QuadConfig& cfg) {
  if (f.is_zero() || g.is_zero()) return {Complex{0.0}, 0.0, 1, true};
  return integrate_domain(
      domain, [&](Complex z) { return f.value(z) * std::conj(g.value(z)); }, cfg);
}

NormResult norm_b2(const HoloFun& f, const DomainSpec& domain, const QuadConfig& cfg) {
  if (f.is_zero()) return {0.0, 0.0, 1, true};
  const QuadResult q = integrate_domain(domain, [&](Complex z) { return Complex{std::norm(f.value(z))}; }, cfg);
  NormResult out;
  const double sq = std::max(q.value.real(), 0.0);
  out.value = std::sqrt(sq);
  out.abs_error_estimate = out.value > 0.0 ? q.abs_error_estimate / (2.0 * out.value)
                                           : std::sqrt(q.abs_error_estimate);
  out.cells_used = q.cells_used;
  out.converged = q.converged;
  return out;
}

HoloFun transfer_isometry(const HoloFun& f, const MoebiusMap& m) {
  make_moebius(m.a, m.b, m.c, m.d);
  const ExtendedPoint p = pole(m);
  if (!p.infinite && contains(f.domain(), p.value) == Membership::Interior) {
    throw Error(ErrorCode::PoleAtPoint, "the map has a pole inside the domain");
  }
  const DomainSpec image = canonical_form(
      DomainSpec(MoebiusImage{std::make_shared<const DomainSpec>(f.domain()), m}));
  if (f.is_zero()) return zero_function(image);
  return HoloFun(image, MoebiusPullback{std::make_shared<const HoloFun>(f), invert(m)});
}

SectionFamily section_family(const DomainSpec& domain, std::span<const Complex> points) {
  SectionFamily fam;
  for (const Complex xi : points) {
    if (contains(domain, xi) != Membership::Exterior) {
      throw Error(ErrorCode::InvalidArgument, "section points must lie outside the closed domain");
    }
    const Complex w = reflect(domain, xi);
    fam.points.push_back(xi);
    fam.reflected.push_back(w);
    fam.kernels.push_back(kernel_section(domain, w));
    fam.rationals.push_back(HoloFun(domain, RationalSection{xi}));
  }
  return fam;
}

}  // namespace bergman
