// bergman: batch verification runs over the domain catalogue.
//
// Every verb writes one report (JSON or CSV) to --out or stdout. Exit status:
// 0 all checks pass, 1 a check failed, 2 configuration could not be parsed,
// 3 a quadrature exhausted its cell budget.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bergman/hilbert.hpp"
#include "bergman/io.hpp"
#include "bergman/operator_lab.hpp"
#include "bergman/reflection.hpp"
#include "bergman/report.hpp"
#include "bergman/suite.hpp"

namespace {

using bergman::Complex;
using bergman::io::Json;

struct Options {
  std::string domain = "halfplane";
  std::vector<std::string> fns;
  std::string points;
  double tol = 1e-8;
  std::size_t max_cells = bergman::QuadConfig{}.max_cells;
  std::uint64_t seed = 1;
  std::string norm = "lebesgue";
  std::string out;
  std::string format = "json";
  // verb-specific
  std::string w;
  std::size_t samples = 10000;
  double window = 10.0;
  std::vector<std::size_t> sizes;
  std::string holdout;
};

struct Resolved {
  bergman::DomainSpec domain;
  std::vector<Complex> points;
  bergman::MeasureNormalization norm = bergman::MeasureNormalization::Lebesgue;
};

Json points_json(const std::vector<Complex>& pts) {
  Json a = Json::array();
  for (const Complex z : pts) a.push_back(bergman::io::to_json(z));
  return a;
}

bergman::QuadConfig quad(const Options& o) {
  bergman::QuadConfig q;
  q.abs_tol = o.tol;
  q.max_cells = o.max_cells;
  q.validate();
  return q;
}

Json base_config(const std::string& verb, const Options& o, const Resolved& r) {
  Json c{{"verb", verb},
         {"domain", bergman::io::to_json(r.domain)},
         {"tol", o.tol},
         {"seed", o.seed},
         {"norm", o.norm},
         {"format", o.format},
         {"quad", bergman::io::to_json(quad(o))}};
  if (!o.points.empty()) {
    c["points_spec"] = o.points;
    c["points"] = points_json(r.points);
  }
  return c;
}

std::vector<bergman::HoloFun> functions(const Options& o, const Resolved& r, Json& cfg) {
  std::vector<bergman::HoloFun> fs;
  Json list = Json::array();
  for (const auto& d : o.fns) {
    fs.push_back(bergman::io::parse_function(r.domain, d));
    list.push_back(bergman::io::to_json(fs.back()));
  }
  cfg["functions"] = list;
  return fs;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw bergman::Error(bergman::ErrorCode::ParseError, what);
}

std::string error_text(const bergman::Error& e) {
  return std::string(bergman::to_string(e.code())) + ": " + e.what();
}

bergman::Report run_kernel(const Options& o, const Resolved& r) {
  bergman::Report rep;
  rep.command = "kernel";
  rep.config = base_config("kernel", o, r);
  require(!r.points.empty(), "kernel needs --points");
  // generated specs give exterior points; their reflections are interior
  std::vector<Complex> zs = r.points;
  if (o.points.rfind("gen:", 0) == 0) {
    for (Complex& z : zs) z = bergman::reflect(r.domain, z);
  }
  const std::vector<Complex> ws = o.w.empty() ? zs : std::vector<Complex>{bergman::io::parse_complex(o.w)};
  Json rows = Json::array();
  double asym = 0.0;
  for (const Complex z : zs) {
    for (const Complex w : ws) {
      const Complex k = bergman::kernel(r.domain, z, w);
      asym = std::max(asym, std::abs(k - std::conj(bergman::kernel(r.domain, w, z))) / (1.0 + std::abs(k)));
      rows.push_back({{"z", bergman::io::to_json(z)}, {"w", bergman::io::to_json(w)}, {"value", bergman::io::to_json(k)}});
    }
  }
  double diag = std::numeric_limits<double>::infinity();
  for (const Complex z : zs) diag = std::min(diag, bergman::kernel(r.domain, z, z).real());
  rep.data["values"] = rows;
  rep.checks.push_back(bergman::check_below("kernel/hermitian", r.domain.variant_name(), asym, 1e-12));
  rep.checks.push_back(bergman::check_above("kernel/diagonal-positive", r.domain.variant_name(), diag, 0.0));
  return rep;
}

bergman::Report run_transform(const Options& o, const Resolved& r) {
  bergman::Report rep;
  rep.command = "transform";
  rep.config = base_config("transform", o, r);
  const auto fs = functions(o, r, rep.config);
  require(!fs.empty(), "transform needs --fn");
  require(!r.points.empty(), "transform needs --points");
  bergman::TransformConfig tc;
  tc.measure_normalization = r.norm;
  tc.quad = quad(o);
  Json rows = Json::array();
  for (std::size_t k = 0; k < fs.size(); ++k) {
    for (std::size_t i = 0; i < r.points.size(); ++i) {
      const Complex xi = r.points[i];
      const std::string id = "transform/fn" + std::to_string(k) + "/xi" + std::to_string(i);
      try {
        const bergman::QuadResult q = bergman::hilbert_transform(fs[k], xi, tc);
        rows.push_back({{"fn", k}, {"xi", bergman::io::to_json(xi)}, {"value", bergman::io::to_json(q.value)},
                        {"err", q.abs_error_estimate}, {"quad", bergman::io::to_json(q)}});
        bergman::CheckEntry e = bergman::check_below(id, r.domain.variant_name(), q.abs_error_estimate,
                                                     o.tol * (1.0 + 1e-12));
        e.converged = q.converged;
        rep.checks.push_back(e);
      } catch (const bergman::Error& e) {
        if (e.code() == bergman::ErrorCode::BudgetExhausted) throw;
        rep.errors.push_back(id + ": " + error_text(e));
      }
    }
  }
  rep.data["values"] = rows;
  return rep;
}

bergman::Report run_reflect(const Options& o, const Resolved& r) {
  bergman::Report rep;
  rep.command = "reflect";
  rep.config = base_config("reflect", o, r);
  require(!r.points.empty(), "reflect needs --points");
  Json rows = Json::array();
  double involution = 0.0;
  for (const Complex xi : r.points) {
    try {
      const Complex w = bergman::reflect(r.domain, xi);
      involution = std::max(involution, std::abs(bergman::reflect(r.domain, w) - xi) / (1.0 + std::abs(xi)));
      rows.push_back({{"xi", bergman::io::to_json(xi)}, {"reflected", bergman::io::to_json(w)}});
    } catch (const bergman::Error& e) {
      rep.errors.push_back(error_text(e));
    }
  }
  rep.data["values"] = rows;
  rep.checks.push_back(bergman::check_below("reflect/involution", r.domain.variant_name(), involution, 1e-10));
  return rep;
}

bergman::Report run_lipschitz(const Options& o, const Resolved& r) {
  bergman::Report rep;
  rep.command = "lipschitz";
  rep.config = base_config("lipschitz", o, r);
  rep.config["samples"] = o.samples;
  rep.config["window"] = o.window;
  const bergman::Reflection refl = bergman::make_reflection(r.domain);
  const bergman::LipschitzEstimate e = bergman::bilipschitz_estimate(refl, o.samples, o.window, o.seed);
  rep.data = {{"c1", e.c1}, {"c2", e.c2}, {"pairs", e.pairs}};
  // boundary points are fixed, so the sampled ratios straddle 1
  rep.checks.push_back(bergman::check_below("lipschitz/c1", r.domain.variant_name(), e.c1, 1.0 + 1e-12));
  rep.checks.push_back(bergman::check_above("lipschitz/c2", r.domain.variant_name(), e.c2, 1.0 - 1e-12));
  return rep;
}

bergman::ModelConfig model_config(const Options& o) {
  bergman::ModelConfig mc;
  mc.quad = quad(o);
  return mc;
}

Json conditioning_json(const bergman::FiniteModel& m) {
  const auto& c = m.conditioning;
  return {{"N", m.size()},
          {"rank_k", c.rank_k},
          {"rank_r", c.rank_r},
          {"cond_gram_b2", c.gram_b2},
          {"cond_gram_1", c.gram_1},
          {"cond_gram_r", c.gram_r},
          {"cond_frame_r", c.frame_r},
          {"cond_frame_r_scaled", c.frame_r_scaled},
          {"cond_frame_compressed", c.frame_compressed},
          {"cond_b", c.b_operator},
          {"min_eig_gram_b2", c.min_eig_b2},
          {"min_eig_gram_r", c.min_eig_r},
          {"min_eig_pencil", c.min_eig_pencil},
          {"r_squared_error", c.r_squared_error},
          {"t_selfadjoint_error", c.t_selfadjoint_error},
          {"s_error", c.s_error},
          {"ill_conditioned", c.ill_conditioned},
          {"cells", m.cells_used},
          {"converged", m.converged}};
}

void model_checks(bergman::Report& rep, const bergman::FiniteModel& m, const std::string& prefix) {
  const std::string d = m.domain.variant_name();
  const auto& c = m.conditioning;
  auto push = [&](bergman::CheckEntry e) {
    e.converged = m.converged;
    rep.checks.push_back(e);
  };
  push(bergman::check_above(prefix + "min-eig-gram-b2", d, c.min_eig_b2, 0.0));
  push(bergman::check_above(prefix + "min-eig-gram-r", d, c.min_eig_r, 0.0));
  push(bergman::check_below(prefix + "r-squared", d, c.r_squared_error, 1e-8));
  push(bergman::check_below(prefix + "t-selfadjoint", d, c.t_selfadjoint_error, 1e-8));
  push(bergman::check_below(prefix + "s-consistency", d, c.s_error, 1e-8));
}

bergman::Report run_operators_build(const Options& o, const Resolved& r) {
  bergman::Report rep;
  rep.command = "operators build";
  rep.config = base_config("operators build", o, r);
  require(!r.points.empty(), "operators build needs --points");
  const bergman::FiniteModel m = bergman::build_finite_model(r.domain, r.points, model_config(o));
  rep.data = conditioning_json(m);
  model_checks(rep, m, "operators/");
  return rep;
}

std::vector<Complex> default_holdouts(const bergman::DomainSpec& d, std::uint64_t seed) {
  return bergman::random_admissible(d, 3, seed + 1000);
}

bergman::Report run_operators_verify(const Options& o, const Resolved& r) {
  bergman::Report rep;
  rep.command = "operators verify";
  rep.config = base_config("operators verify", o, r);
  const auto fs = functions(o, r, rep.config);
  const std::vector<Complex> holdouts =
      o.holdout.empty() ? default_holdouts(r.domain, o.seed) : bergman::io::load_points(o.holdout, r.domain, o.seed);
  rep.config["holdouts"] = points_json(holdouts);
  rep.config["sizes"] = o.sizes;
  require(!r.points.empty() || !o.sizes.empty(), "operators verify needs --points or --sizes");
  const std::string d = r.domain.variant_name();
  // residual tolerance of the verify table
  const double tol = 1e-2;
  rep.config["residual_tol"] = tol;

  std::vector<std::vector<Complex>> sets;
  if (!o.sizes.empty()) {
    for (const std::size_t n : o.sizes) sets.push_back(bergman::halton_exterior(r.domain, n));
  } else {
    sets.push_back(r.points);
  }
  Json table = Json::array();
  for (const auto& pts : sets) {
    const bergman::FiniteModel m = bergman::build_finite_model(r.domain, pts, model_config(o));
    const std::string prefix = "verify/N=" + std::to_string(m.size()) + "/";
    model_checks(rep, m, prefix);
    double worst = 0.0, worst_unprojected = 0.0;
    for (const Complex xi : holdouts) {
      const bergman::HoldoutResidual h = bergman::apply_B(m, xi);
      worst = std::max(worst, h.residual);
      worst_unprojected = std::max(worst_unprojected, h.unprojected);
    }
    bergman::CheckEntry e = bergman::check_below(prefix + "holdout", d, worst, tol);
    e.converged = m.converged;
    rep.checks.push_back(e);
    Json row = conditioning_json(m);
    row["holdout_residual"] = worst;
    row["holdout_unprojected"] = worst_unprojected;
    for (std::size_t k = 0; k < fs.size(); ++k) {
      const bergman::ValueCheck p = bergman::parseval_check(m, fs[k], quad(o));
      bergman::CheckEntry pe = bergman::check_below(prefix + "parseval/fn" + std::to_string(k), d, p.relative_error, tol);
      pe.converged = p.converged;
      rep.checks.push_back(pe);
    }
    table.push_back(row);
  }
  rep.data["models"] = table;
  return rep;
}

bergman::Report run_suite(const Options& o) {
  bergman::Report rep;
  rep.command = "suite";
  bergman::SuiteConfig sc;
  if (o.domain != "all") sc.domain = o.domain;
  require(sc.domain.empty() || bergman::domain_preset(sc.domain).has_value(),
          "suite --domain takes a preset name or 'all'");
  sc.seed = o.seed;
  sc.abs_tol = o.tol;
  sc.max_cells = o.max_cells;
  rep.config = {{"verb", "suite"}, {"domain", o.domain}, {"seed", o.seed}, {"tol", o.tol},
                {"max_cells", o.max_cells}, {"format", o.format}};
  Json ran = Json::array();
  for (const int id : bergman::selected_criteria(sc)) {
    ran.push_back(bergman::acceptance_criteria()[static_cast<std::size_t>(id - 1)].check_id);
    for (auto& e : bergman::run_criterion(id, sc)) rep.checks.push_back(std::move(e));
  }
  rep.data["criteria"] = ran;
  return rep;
}

int emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) {
    std::cerr << "cannot write '" << out << "'\n";
    return bergman::kExitParse;
  }
  f << text;
  return 0;
}

std::string render(const bergman::Report& rep, const std::string& format) {
  return format == "csv" ? bergman::to_csv(rep) : bergman::to_json(rep).dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bergman-space reflection and operator verification"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub, bool with_points) {
    sub->add_option("--domain", o.domain, "domain file or preset (halfplane, sector, disk, disk-exterior, cusp)");
    if (with_points) sub->add_option("--points", o.points, "points file, list:re,im;..., gen:annulus:N or gen:random:N");
    sub->add_option("--tol", o.tol, "absolute quadrature tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--max-cells", o.max_cells, "quadrature cell budget per integral")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--out", o.out, "output path (default stdout)");
    sub->add_option("--format", o.format, "report format")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* kernel = app.add_subcommand("kernel", "evaluate the Bergman kernel on a point set");
  common(kernel, true);
  kernel->add_option("--w", o.w, "fixed second argument re,im (default: all pairs)");

  auto* transform = app.add_subcommand("transform", "transform values at exterior points");
  common(transform, true);
  transform->add_option("--fn", o.fns, "function descriptor (repeatable)");
  transform->add_option("--norm", o.norm, "area measure")->check(CLI::IsMember({"lebesgue", "lebesgue-over-pi"}));

  auto* reflect = app.add_subcommand("reflect", "reflect points across the boundary");
  common(reflect, true);

  auto* lipschitz = app.add_subcommand("lipschitz", "bi-Lipschitz constant estimates of the reflection");
  common(lipschitz, false);
  lipschitz->add_option("--samples", o.samples, "number of sampled pairs")->check(CLI::Range(10, 100000000));
  lipschitz->add_option("--window", o.window, "sampling window")->check(CLI::PositiveNumber);

  auto* operators = app.add_subcommand("operators", "finite-rank operator models");
  operators->require_subcommand(1);
  auto* build = operators->add_subcommand("build", "assemble a model and report its conditioning");
  common(build, true);
  auto* verify = operators->add_subcommand("verify", "residual table for one or more models");
  common(verify, true);
  verify->add_option("--fn", o.fns, "function descriptor for the Parseval check (repeatable)");
  verify->add_option("--sizes", o.sizes, "nested Halton sizes for a convergence table")->delimiter(',');
  verify->add_option("--holdout", o.holdout, "holdout points (same forms as --points)");

  auto* suite = app.add_subcommand("suite", "acceptance battery");
  common(suite, false);
  suite->get_option("--domain")->description("preset to restrict to, or 'all'");
  o.domain = "halfplane";

  auto* schema = app.add_subcommand("schema", "print the report schema");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return bergman::kExitParse;
  }

  if (schema->parsed()) return emit(bergman::report_schema().dump(2) + "\n", o.out);
  if (suite->parsed() && suite->count("--domain") == 0) o.domain = "all";

  bergman::Report rep;
  try {
    if (suite->parsed()) {
      rep = run_suite(o);
    } else {
      Resolved r;
      r.domain = bergman::io::load_domain(o.domain);
      const auto norm = bergman::parse_normalization(o.norm);
      require(norm.has_value(), "unknown normalization '" + o.norm + "'");
      r.norm = *norm;
      if (!o.points.empty()) r.points = bergman::io::load_points(o.points, r.domain, o.seed);
      if (kernel->parsed()) rep = run_kernel(o, r);
      if (transform->parsed()) rep = run_transform(o, r);
      if (reflect->parsed()) rep = run_reflect(o, r);
      if (lipschitz->parsed()) rep = run_lipschitz(o, r);
      if (build->parsed()) rep = run_operators_build(o, r);
      if (verify->parsed()) rep = run_operators_verify(o, r);
    }
  } catch (const bergman::Error& e) {
    if (e.code() == bergman::ErrorCode::ParseError) {
      std::cerr << "parse error: " << e.what() << "\n";
      return bergman::kExitParse;
    }
    rep.errors.push_back(error_text(e));
    const int written = emit(render(rep, o.format), o.out);
    if (written != 0) return written;
    return e.code() == bergman::ErrorCode::BudgetExhausted ? bergman::kExitBudget : bergman::kExitCheckFailed;
  }
  const int written = emit(render(rep, o.format), o.out);
  if (written != 0) return written;
  return bergman::exit_code(rep);
}
