#include "bergman/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <cstdlib>
#include <optional>
#include <queue>
#include <thread>

#include "parallel.hpp"

namespace bergman {

namespace {

// Kronrod 15 / Gauss 7 on [-1, 1]
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Rule15 {
  std::array<double, 15> x{};   // nodes on [0, 1]
  std::array<double, 15> wk{};  // Kronrod weights on [0, 1]
  std::array<double, 15> wg{};  // embedded Gauss weights, zero off the Gauss nodes
};

Rule15 make_rule15() {
  Rule15 r;
  for (int k = 0; k < 15; ++k) {
    const int m = k < 7 ? k : 14 - k;
    const double s = k < 7 ? -1.0 : 1.0;
    r.x[k] = 0.5 * (1.0 + s * kXgk[m]);
    r.wk[k] = 0.5 * kWgk[m];
    r.wg[k] = (m % 2 == 1) ? 0.5 * kWg[m / 2] : 0.0;
  }
  return r;
}

const Rule15& rule15() {
  static const Rule15 r = make_rule15();
  return r;
}

const double kCuspGoldenQ = 0.5 * (std::sqrt(5.0) - 1.0);
const double kCuspThetaMaxQ = std::asin(kCuspGoldenQ);

using RadiusFn = std::function<double(double)>;

/// {center + r e^{it} : t0 < t < t1, lo(t) < r < hi(t)} with hi = infinity when
/// `unbounded`; optionally pushed forward through a Moebius map.
struct PolarPiece {
  Complex center{};
  double t0 = 0.0, t1 = 0.0;
  RadiusFn lo;
  RadiusFn hi;
  bool unbounded = false;
  double scale = 1.0;
  std::optional<MoebiusMap> push;
};

enum class PatchKind { Radial, Tail };

struct Patch {
  const PolarPiece* piece = nullptr;
  PatchKind kind = PatchKind::Radial;
  // radial range [inner(t), outer(t)]; Tail uses inner only
  RadiusFn inner;
  RadiusFn outer;
};

RadiusFn constant_radius(double r) {
  return [r](double) { return r; };
}

std::vector<PolarPiece> polar_pieces(const DomainSpec& domain);

struct PieceBuilder {
  std::vector<PolarPiece>& out;

  void operator()(const HalfPlane& h) const {
    const Complex tau = Complex{0.0, -1.0} * h.normal;
    const double a = std::arg(tau);
    out.push_back({h.offset * h.normal, a, a + kPi, constant_radius(0.0), nullptr, true, 1.0, {}});
  }
  void operator()(const Sector& s) const {
    const double a = s.bisector - 0.5 * s.opening;
    out.push_back({s.vertex, a, a + s.opening, constant_radius(0.0), nullptr, true, 1.0, {}});
  }
  void operator()(const DiskInterior& d) const {
    out.push_back({d.center, 0.0, 2.0 * kPi, constant_radius(0.0), constant_radius(d.radius), false,
                   d.radius, {}});
  }
  void operator()(const DiskExterior& d) const {
    out.push_back(
        {d.center, 0.0, 2.0 * kPi, constant_radius(d.radius), nullptr, true, d.radius, {}});
  }
  void operator()(const MoebiusImage& m) const {
    for (PolarPiece p : polar_pieces(*m.base)) {
      p.push = p.push ? compose(m.map, *p.push) : m.map;
      out.push_back(std::move(p));
    }
  }
  void operator()(const CuspDomain& c) const {
    const double s = c.scale;
    const double tm = kCuspThetaMaxQ;
    auto inner = [s](double t) {
      const double ct = std::cos(t);
      return s * std::sin(t) / (ct * ct);
    };
    if (!c.complement) {
      out.push_back({Complex{}, 0.0, tm, inner, constant_radius(s), false, s, {}});
      return;
    }
    out.push_back({Complex{}, tm, 2.0 * kPi, constant_radius(0.0), nullptr, true, s, {}});
    out.push_back({Complex{}, 0.0, tm, constant_radius(0.0), inner, false, s, {}});
    out.push_back({Complex{}, 0.0, tm, constant_radius(s), nullptr, true, s, {}});
  }
};

std::vector<PolarPiece> polar_pieces(const DomainSpec& domain) {
  std::vector<PolarPiece> out;
  const DomainSpec canon = canonical_form(domain);
  std::visit(PieceBuilder{out}, canon.shape());
  return out;
}

struct Sample {
  Complex z;
  double weight;
};

/// Maps unit coordinates (x, y) of a patch to a plane point and its area weight.
struct PatchMap {
  const Patch& patch;

  // Per-theta data so the radial functions are evaluated once per column.
  struct Column {
    double theta;
    Complex dir;
    double inner;
    double outer;
  };

  Column column(double x) const {
    const PolarPiece& p = *patch.piece;
    const double t = p.t0 + (p.t1 - p.t0) * x;
    Column c{t, std::polar(1.0, t), patch.inner(t), 0.0};
    if (patch.kind == PatchKind::Radial) c.outer = patch.outer(t);
    return c;
  }

  Sample at(const Column& c, double y) const {
    const PolarPiece& p = *patch.piece;
    double r = 0.0;
    double w = p.t1 - p.t0;
    if (patch.kind == PatchKind::Radial) {
      r = c.inner + y * (c.outer - c.inner);
      w *= (c.outer - c.inner) * r;
    } else {
      r = c.inner / y;
      w *= r * r * r / c.inner;
    }
    Complex z = p.center + r * c.dir;
    if (p.push) {
      const Complex d = moebius_derivative(*p.push, z, 0.0);
      w *= std::norm(d);
      z = moebius_apply(*p.push, z, 0.0);
    }
    return {z, w};
  }
};

std::vector<Patch> make_patches(const std::vector<PolarPiece>& pieces, const QuadConfig& cfg) {
  std::vector<Patch> patches;
  for (const PolarPiece& p : pieces) {
    if (!p.unbounded) {
      patches.push_back({&p, PatchKind::Radial, p.lo, p.hi});
      continue;
    }
    const double s = p.scale;
    RadiusFn lo = p.lo;
    RadiusFn split = [lo, s](double t) {
      const double l = lo(t);
      return l + std::max(s, l);
    };
    patches.push_back({&p, PatchKind::Radial, lo, split});
    if (cfg.unbounded_chart == UnboundedChart::Inversion) {
      patches.push_back({&p, PatchKind::Tail, split, nullptr});
    } else {
      const double R = cfg.truncation_radius;
      RadiusFn outer = [R, split](double t) { return std::max(R, split(t)); };
      patches.push_back({&p, PatchKind::Radial, split, outer});
    }
  }
  return patches;
}

std::string format_point(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

template <typename V>
struct CellValue {
  V value{};
  double err_x = 0.0;
  double err_y = 0.0;
  double err() const { return err_x + err_y; }
};

template <typename V, typename F>
CellValue<V> evaluate_cell(const Patch& patch, double x0, double x1, double y0, double y1,
                           const F& h) {
  const Rule15& q = rule15();
  const PatchMap map{patch};
  V full{}, gauss_x{}, gauss_y{};
  for (int i = 0; i < 15; ++i) {
    const auto col = map.column(x0 + (x1 - x0) * q.x[i]);
    V row_k{}, row_g{};
    for (int j = 0; j < 15; ++j) {
      const Sample s = map.at(col, y0 + (y1 - y0) * q.x[j]);
      const V v = h(s.z) * s.weight;
      if (!std::isfinite(std::abs(v))) {
        throw Error(ErrorCode::InvalidArgument,
                    "integrand is not finite at z = " + format_point(s.z));
      }
      row_k += q.wk[j] * v;
      row_g += q.wg[j] * v;
    }
    full += q.wk[i] * row_k;
    gauss_x += q.wg[i] * row_k;
    gauss_y += q.wk[i] * row_g;
  }
  const double area = (x1 - x0) * (y1 - y0);
  CellValue<V> out;
  out.value = full * area;
  out.err_x = std::abs(full - gauss_x) * area;
  out.err_y = std::abs(full - gauss_y) * area;
  if (!std::isfinite(out.err_x) || !std::isfinite(out.err_y) || !std::isfinite(std::abs(out.value))) {
    throw Error(ErrorCode::InvalidArgument, "integrand is not finite on the domain");
  }
  return out;
}

struct CellGeom {
  std::size_t patch;
  double x0, x1, y0, y1;
};

template <typename V>
struct Cell {
  CellGeom g;
  CellValue<V> v;
};

template <typename V>
struct ByError {
  bool operator()(const Cell<V>& a, const Cell<V>& b) const { return a.v.err() < b.v.err(); }
};

template <typename V>
struct Mesh {
  std::vector<Cell<V>> leaves;
  V value{};
  double error = 0.0;
  bool converged = false;
};

/// Global adaptive refinement: repeatedly bisects the worst cells along their
/// dominant error direction until the summed estimate meets the target.
template <typename V, typename F>
Mesh<V> refine(const std::vector<Patch>& patches, const F& h, const QuadConfig& cfg,
               double extra_error) {
  constexpr std::size_t kBatch = 16;
  std::vector<CellGeom> initial;
  for (std::size_t p = 0; p < patches.size(); ++p) {
    const PolarPiece& piece = *patches[p].piece;
    const int nx = std::max(2, static_cast<int>(std::ceil((piece.t1 - piece.t0) / (0.25 * kPi))));
    const int ny = 2;
    for (int i = 0; i < nx; ++i) {
      for (int j = 0; j < ny; ++j) {
        initial.push_back({p, double(i) / nx, double(i + 1) / nx, double(j) / ny, double(j + 1) / ny});
      }
    }
  }

  std::vector<Cell<V>> heap(initial.size());
  parallel_for(initial.size(), [&](std::size_t k) {
    const CellGeom& g = initial[k];
    heap[k] = {g, evaluate_cell<V>(patches[g.patch], g.x0, g.x1, g.y0, g.y1, h)};
  });
  std::make_heap(heap.begin(), heap.end(), ByError<V>{});
  std::vector<Cell<V>> frozen;

  auto totals = [&](V& value, double& error) {
    value = V{};
    error = 0.0;
    for (const auto& c : heap) {
      value += c.v.value;
      error += c.v.err();
    }
    for (const auto& c : frozen) {
      value += c.v.value;
      error += c.v.err();
    }
  };

  V value{};
  double error = 0.0;
  totals(value, error);
  auto target = [&](const V& v) { return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(v)); };

  std::size_t splits = 0;
  std::vector<Cell<V>> parents;
  std::vector<CellGeom> kids;
  std::vector<Cell<V>> kid_cells;
  while (error + extra_error > target(value) && !heap.empty() &&
         heap.size() + frozen.size() < cfg.max_cells) {
    parents.clear();
    kids.clear();
    while (!heap.empty() && parents.size() < kBatch) {
      std::pop_heap(heap.begin(), heap.end(), ByError<V>{});
      Cell<V> c = heap.back();
      heap.pop_back();
      const bool split_x = c.v.err_x >= c.v.err_y;
      const double w = split_x ? c.g.x1 - c.g.x0 : c.g.y1 - c.g.y0;
      if (w < 1e-13) {
        frozen.push_back(c);
        continue;
      }
      CellGeom a = c.g, b = c.g;
      if (split_x) {
        a.x1 = b.x0 = 0.5 * (c.g.x0 + c.g.x1);
      } else {
        a.y1 = b.y0 = 0.5 * (c.g.y0 + c.g.y1);
      }
      kids.push_back(a);
      kids.push_back(b);
      parents.push_back(c);
      if (!heap.empty() && heap.front().v.err() < 1e-3 * parents.front().v.err()) break;
    }
    kid_cells.resize(kids.size());
    parallel_for(kids.size(), [&](std::size_t k) {
      const CellGeom& g = kids[k];
      kid_cells[k] = {g, evaluate_cell<V>(patches[g.patch], g.x0, g.x1, g.y0, g.y1, h)};
    });
    for (const auto& p : parents) {
      value -= p.v.value;
      error -= p.v.err();
    }
    for (auto& k : kid_cells) {
      value += k.v.value;
      error += k.v.err();
      heap.push_back(k);
      std::push_heap(heap.begin(), heap.end(), ByError<V>{});
    }
    splits += parents.size();
    if (splits % 4096 < kBatch) totals(value, error);
  }

  Mesh<V> mesh;
  mesh.leaves = std::move(heap);
  mesh.leaves.insert(mesh.leaves.end(), frozen.begin(), frozen.end());
  V v{};
  double e = 0.0;
  for (const auto& c : mesh.leaves) {
    v += c.v.value;
    e += c.v.err();
  }
  mesh.value = v;
  mesh.error = e;
  mesh.converged = e + extra_error <= target(v);
  return mesh;
}

struct TailCorrection {
  Complex value{};
  double error = 0.0;
};

/// Probes the decay of the pulled-back integrand on circles of radius R, 2R, 4R
/// around each unbounded piece. Non-integrable decay raises; under the
/// truncation chart the power-law tail beyond R is also returned.
TailCorrection probe_tails(const std::vector<PolarPiece>& pieces, const Integrand& h,
                           const QuadConfig& cfg, bool want_correction) {
  TailCorrection total;
  for (const PolarPiece& p : pieces) {
    if (!p.unbounded) continue;
    double R = cfg.truncation_radius;
    for (int k = 0; k <= 8; ++k) {
      const double t = p.t0 + (p.t1 - p.t0) * k / 8.0;
      R = std::max(R, 2.0 * (p.lo(t) + std::max(p.scale, p.lo(t))));
    }
    auto pulled = [&](double r, double t) {
      Complex z = p.center + std::polar(r, t);
      double w = 1.0;
      if (p.push) {
        w = std::norm(moebius_derivative(*p.push, z, 0.0));
        z = moebius_apply(*p.push, z, 0.0);
      }
      return h(z) * w;
    };
    auto peak = [&](double r) {
      double m = 0.0;
      constexpr int kProbe = 32;
      for (int k = 0; k < kProbe; ++k) {
        const double t = p.t0 + (p.t1 - p.t0) * (k + 0.5) / kProbe;
        m = std::max(m, std::abs(pulled(r, t)));
      }
      return m;
    };
    const double m1 = peak(R), m2 = peak(2.0 * R), m4 = peak(4.0 * R);
    if (m1 == 0.0 && m2 == 0.0 && m4 == 0.0) continue;
    const double p1 = (m2 > 0.0) ? std::log2(m1 / m2) : 1e9;
    const double p2 = (m4 > 0.0) ? std::log2(m2 / m4) : 1e9;
    // |h| r^2 must fall off; an r^-2 integrand diverges logarithmically
    if (p1 <= 2.05 && p2 <= 2.05) {
      throw Error(ErrorCode::NonIntegrableTail, "integrand tail does not decay faster than |z|^-2");
    }
    if (!want_correction) continue;
    auto tail_for = [&](double power) -> QuadResult {
      const double factor = R * R / (power - 2.0);
      return integrate_interval([&](double t) { return pulled(R, t) * factor; }, p.t0, p.t1,
                                1e-3 * cfg.abs_tol, 1e-12);
    };
    if (p2 <= 2.05) {
      total.error = std::numeric_limits<double>::infinity();
      continue;
    }
    const double q2 = std::min(p2, 60.0);
    const QuadResult t2 = tail_for(q2);
    total.value += t2.value;
    double err = t2.abs_error_estimate;
    if (p1 > 2.05) {
      const QuadResult t1 = tail_for(std::min(p1, 60.0));
      err += std::abs(t1.value - t2.value);
    } else {
      err = std::numeric_limits<double>::infinity();
    }
    total.error += err;
  }
  return total;
}

}  // namespace

void QuadConfig::validate() const {
  if (!(abs_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "abs_tol must be positive");
  if (max_cells < 4) throw Error(ErrorCode::InvalidArgument, "max_cells must be at least 4");
  if (!(truncation_radius > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "truncation_radius must be positive");
  }
  if (rel_tol < 0.0) throw Error(ErrorCode::InvalidArgument, "rel_tol must be nonnegative");
}

QuadResult integrate_domain(const DomainSpec& domain, const Integrand& h, const QuadConfig& cfg) {
  cfg.validate();
  const std::vector<PolarPiece> pieces = polar_pieces(domain);
  const bool truncated = cfg.unbounded_chart == UnboundedChart::PolarDecay;
  const TailCorrection tail = probe_tails(pieces, h, cfg, truncated);
  const std::vector<Patch> patches = make_patches(pieces, cfg);
  const Mesh<Complex> mesh = refine<Complex>(patches, h, cfg, tail.error);
  QuadResult out;
  out.value = mesh.value + tail.value;
  out.abs_error_estimate = mesh.error + tail.error;
  out.cells_used = mesh.leaves.size();
  out.converged = mesh.converged;
  return out;
}

const QuadResult& require_converged(const QuadResult& result, const char* what) {
  if (!result.converged) {
    throw Error(ErrorCode::BudgetExhausted,
                std::string("quadrature did not converge within the cell budget: ") + what);
  }
  return result;
}

NodeRule build_node_rule(const DomainSpec& domain, const std::function<double(Complex)>& indicator,
                         const QuadConfig& cfg) {
  cfg.validate();
  QuadConfig inv = cfg;
  inv.unbounded_chart = UnboundedChart::Inversion;
  const std::vector<PolarPiece> pieces = polar_pieces(domain);
  probe_tails(pieces, [&](Complex z) { return Complex{indicator(z)}; }, inv, false);
  const std::vector<Patch> patches = make_patches(pieces, inv);
  const Mesh<double> mesh = refine<double>(patches, indicator, inv, 0.0);

  NodeRule rule;
  rule.indicator_integral = mesh.value;
  rule.indicator_error = mesh.error;
  rule.cells_used = mesh.leaves.size();
  rule.converged = mesh.converged;
  rule.points.reserve(mesh.leaves.size() * 225);
  rule.weights.reserve(mesh.leaves.size() * 225);
  const Rule15& q = rule15();
  for (const auto& c : mesh.leaves) {
    const PatchMap map{patches[c.g.patch]};
    const double area = (c.g.x1 - c.g.x0) * (c.g.y1 - c.g.y0);
    for (int i = 0; i < 15; ++i) {
      const auto col = map.column(c.g.x0 + (c.g.x1 - c.g.x0) * q.x[i]);
      for (int j = 0; j < 15; ++j) {
        const Sample s = map.at(col, c.g.y0 + (c.g.y1 - c.g.y0) * q.x[j]);
        rule.points.push_back(s.z);
        rule.weights.push_back(q.wk[i] * q.wk[j] * area * s.weight);
      }
    }
  }
  return rule;
}

GramResult gram_by_quadrature(const DomainSpec& domain, std::size_t dim, const FeatureMap& features,
                              const QuadConfig& cfg) {
  GramResult out;
  out.gram = Eigen::MatrixXcd::Zero(dim, dim);
  if (dim == 0) {
    out.converged = true;
    return out;
  }
  auto indicator = [&](Complex z) {
    Eigen::VectorXcd phi(dim);
    features(z, phi);
    return phi.squaredNorm();
  };
  const NodeRule rule = build_node_rule(domain, indicator, cfg);
  out.trace_error = rule.indicator_error;
  out.cells_used = rule.cells_used;
  out.nodes = rule.points.size();
  out.converged = rule.converged;

  constexpr std::size_t kChunk = 2048;
  const std::size_t n_chunks = (rule.points.size() + kChunk - 1) / kChunk;
  std::vector<Eigen::MatrixXcd> partial(n_chunks);
  parallel_for(n_chunks, [&](std::size_t c) {
    const std::size_t begin = c * kChunk;
    const std::size_t end = std::min(rule.points.size(), begin + kChunk);
    Eigen::MatrixXcd phi(dim, end - begin);
    for (std::size_t n = begin; n < end; ++n) {
      features(rule.points[n], phi.col(n - begin));
      phi.col(n - begin) *= std::sqrt(rule.weights[n]);
    }
    partial[c] = phi.conjugate() * phi.transpose();
  });
  for (const auto& p : partial) out.gram += p;
  return out;
}

QuadResult integrate_interval(const std::function<Complex(double)>& f, double a, double b,
                              double abs_tol, double rel_tol, int max_depth) {
  const Rule15& q = rule15();
  struct Piece {
    double a, b;
    Complex value;
    double err;
    bool operator<(const Piece& o) const { return err < o.err; }
  };
  auto eval = [&](double lo, double hi) {
    Complex k{}, g{};
    for (int i = 0; i < 15; ++i) {
      const Complex v = f(lo + (hi - lo) * q.x[i]);
      k += q.wk[i] * v;
      g += q.wg[i] * v;
    }
    const double len = hi - lo;
    return Piece{lo, hi, k * len, std::abs(k - g) * len};
  };
  std::priority_queue<Piece> pq;
  std::vector<Piece> done;
  Piece first = eval(a, b);
  Complex value = first.value;
  double err = first.err;
  pq.push(first);
  const std::size_t max_pieces = std::size_t{1} << std::min(max_depth, 16);
  while (!pq.empty() && err > std::max(abs_tol, rel_tol * std::abs(value)) &&
         pq.size() + done.size() < max_pieces) {
    Piece p = pq.top();
    pq.pop();
    const double mid = 0.5 * (p.a + p.b);
    if (!(mid > p.a && mid < p.b)) {
      done.push_back(p);
      continue;
    }
    Piece l = eval(p.a, mid), r = eval(mid, p.b);
    value += l.value + r.value - p.value;
    err += l.err + r.err - p.err;
    pq.push(l);
    pq.push(r);
  }
  QuadResult out;
  value = 0.0;
  err = 0.0;
  std::size_t count = done.size();
  for (const auto& p : done) {
    value += p.value;
    err += p.err;
  }
  while (!pq.empty()) {
    value += pq.top().value;
    err += pq.top().err;
    pq.pop();
    ++count;
  }
  out.value = value;
  out.abs_error_estimate = err;
  out.cells_used = count;
  out.converged = err <= std::max(abs_tol, rel_tol * std::abs(value));
  return out;
}

unsigned worker_threads() {
  if (const char* env = std::getenv("BERGMAN_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<unsigned>(std::min<long>(n, 256));
  }
  return 1;
}

}  // namespace bergman
