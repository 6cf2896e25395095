#include "bergman/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bergman/operator_lab.hpp"

namespace bergman::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

double number(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) fail(std::string("missing number field '") + key + "'");
  return j.at(key).get<double>();
}

double number_or(const Json& j, const char* key, double fallback) {
  return j.contains(key) ? number(j, key) : fallback;
}

Complex complex_field(const Json& j, const char* key) {
  if (!j.contains(key)) fail(std::string("missing complex field '") + key + "'");
  return complex_from_json(j.at(key));
}

Complex complex_or(const Json& j, const char* key, Complex fallback) {
  return j.contains(key) ? complex_field(j, key) : fallback;
}

double parse_double(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    fail("not a number: '" + text + "'");
  }
  if (used != text.size()) fail("trailing characters in number '" + text + "'");
  return v;
}

std::size_t parse_count(const std::string& text) {
  const double v = parse_double(text);
  if (!(v >= 1.0) || v != std::floor(v) || v > 1e7) fail("not a positive count: '" + text + "'");
  return static_cast<std::size_t>(v);
}

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(origin + ": " + e.what());
  }
}

Json map_to_json(const MoebiusMap& m) {
  return Json{{"a", to_json(m.a)}, {"b", to_json(m.b)}, {"c", to_json(m.c)}, {"d", to_json(m.d)}};
}

MoebiusMap map_from_json(const Json& j) {
  if (!j.is_object()) fail("moebius map must be an object with a, b, c, d");
  return MoebiusMap{complex_field(j, "a"), complex_field(j, "b"), complex_field(j, "c"),
                    complex_field(j, "d")};
}

}  // namespace

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  if (j.is_string()) return parse_complex(j.get<std::string>());
  fail("expected a complex number as [re, im]");
}

Complex parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return {parse_double(text), 0.0};
  return {parse_double(text.substr(0, comma)), parse_double(text.substr(comma + 1))};
}

Json to_json(const DomainSpec& domain) {
  struct Params {
    Json operator()(const HalfPlane& h) const {
      return {{"normal", to_json(h.normal)}, {"offset", h.offset}};
    }
    Json operator()(const Sector& s) const {
      return {{"vertex", to_json(s.vertex)}, {"bisector", s.bisector}, {"opening", s.opening}};
    }
    Json operator()(const DiskInterior& d) const {
      return {{"center", to_json(d.center)}, {"radius", d.radius}};
    }
    Json operator()(const DiskExterior& d) const {
      return {{"center", to_json(d.center)}, {"radius", d.radius}};
    }
    Json operator()(const MoebiusImage& m) const {
      return {{"base", to_json(*m.base)}, {"map", map_to_json(m.map)}};
    }
    Json operator()(const CuspDomain& c) const { return {{"scale", c.scale}}; }
  };
  return {{"variant", domain.variant_name()}, {"parameters", std::visit(Params{}, domain.shape())}};
}

DomainSpec domain_from_json(const Json& j) {
  if (!j.is_object()) fail("domain must be a JSON object");
  if (j.contains("preset")) {
    if (!j.at("preset").is_string()) fail("preset must be a string");
    const auto d = domain_preset(j.at("preset").get<std::string>());
    if (!d) fail("unknown domain preset '" + j.at("preset").get<std::string>() + "'");
    return *d;
  }
  if (!j.contains("variant") || !j.at("variant").is_string()) fail("domain needs a string 'variant'");
  const std::string v = j.at("variant").get<std::string>();
  const Json p = j.contains("parameters") ? j.at("parameters") : Json::object();
  if (!p.is_object()) fail("domain 'parameters' must be an object");
  try {
    if (v == "half-plane") {
      return DomainSpec(HalfPlane{complex_or(p, "normal", {0.0, 1.0}), number_or(p, "offset", 0.0)});
    }
    if (v == "sector") {
      return DomainSpec(Sector{complex_or(p, "vertex", {}), number_or(p, "bisector", 0.25 * kPi),
                               number_or(p, "opening", 0.5 * kPi)});
    }
    if (v == "disk-interior") {
      return DomainSpec(DiskInterior{complex_or(p, "center", {}), number_or(p, "radius", 1.0)});
    }
    if (v == "disk-exterior") {
      return DomainSpec(DiskExterior{complex_or(p, "center", {}), number_or(p, "radius", 1.0)});
    }
    if (v == "moebius-image") {
      if (!p.contains("base") || !p.contains("map")) fail("moebius-image needs 'base' and 'map'");
      return DomainSpec(MoebiusImage{std::make_shared<const DomainSpec>(domain_from_json(p.at("base"))),
                                     map_from_json(p.at("map"))});
    }
    if (v == "cusp" || v == "cusp-complement") {
      return DomainSpec(CuspDomain{number_or(p, "scale", 1.0), v == "cusp-complement"});
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    fail(std::string("invalid ") + v + " parameters: " + e.what());
  }
  fail("unknown domain variant '" + v + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DomainSpec load_domain(const std::string& path_or_preset) {
  if (std::filesystem::is_regular_file(path_or_preset)) {
    return domain_from_json(parse_json_text(read_file(path_or_preset), path_or_preset));
  }
  if (const auto d = domain_preset(path_or_preset)) return *d;
  fail("'" + path_or_preset + "' is neither a domain file nor a preset");
}

Json to_json(const HoloFun& f) {
  struct Form {
    Json operator()(const RationalSection& r) const {
      return {{"form", "rational-section"}, {"pole", to_json(r.pole)}};
    }
    Json operator()(const KernelSection& k) const {
      return {{"form", "kernel-section"}, {"w", to_json(k.w)}};
    }
    Json operator()(const MoebiusPullback& m) const {
      return {{"form", "moebius-pullback"}, {"base", to_json(*m.base)}, {"psi", map_to_json(m.psi)}};
    }
    Json operator()(const LinearCombination& c) const {
      Json terms = Json::array();
      for (std::size_t k = 0; k < c.parts.size(); ++k) {
        terms.push_back({{"coeff", to_json(c.coeffs[k])}, {"fn", to_json(c.parts[k])}});
      }
      return {{"form", "combination"}, {"terms", terms}};
    }
    Json operator()(const ClosedForm& c) const {
      return {{"form", "monomial"}, {"power", c.power}, {"scale", to_json(c.scale)}};
    }
  };
  return std::visit(Form{}, f.form());
}

HoloFun function_from_json(const DomainSpec& domain, const Json& j) {
  if (!j.is_object() || !j.contains("form") || !j.at("form").is_string()) {
    fail("function descriptor needs a string 'form'");
  }
  const std::string form = j.at("form").get<std::string>();
  if (form == "rational-section") return rational_section(domain, complex_field(j, "pole"));
  if (form == "kernel-section") return kernel_section(domain, complex_field(j, "w"));
  if (form == "monomial") {
    const double p = number(j, "power");
    if (p != std::floor(p)) fail("monomial power must be an integer");
    return monomial(domain, static_cast<int>(p), complex_or(j, "scale", 1.0));
  }
  if (form == "combination") {
    if (!j.contains("terms") || !j.at("terms").is_array()) fail("combination needs a 'terms' array");
    std::vector<Complex> coeffs;
    std::vector<HoloFun> parts;
    for (const Json& t : j.at("terms")) {
      if (!t.is_object() || !t.contains("fn")) fail("combination term needs 'fn'");
      coeffs.push_back(complex_or(t, "coeff", 1.0));
      parts.push_back(function_from_json(domain, t.at("fn")));
    }
    return linear_combination(domain, std::move(coeffs), std::move(parts));
  }
  fail("unknown function form '" + form + "'");
}

HoloFun parse_function(const DomainSpec& domain, const std::string& descriptor) {
  if (!descriptor.empty() && descriptor.front() == '{') {
    return function_from_json(domain, parse_json_text(descriptor, "--fn"));
  }
  const auto colon = descriptor.find(':');
  if (colon != std::string::npos) {
    const std::string head = descriptor.substr(0, colon), rest = descriptor.substr(colon + 1);
    if (head == "rational") return rational_section(domain, parse_complex(rest));
    if (head == "kernel") return kernel_section(domain, parse_complex(rest));
    if (head == "monomial") {
      const auto second = rest.find(':');
      const double p = parse_double(rest.substr(0, second));
      if (p != std::floor(p)) fail("monomial power must be an integer");
      const Complex scale = second == std::string::npos ? Complex{1.0} : parse_complex(rest.substr(second + 1));
      return monomial(domain, static_cast<int>(p), scale);
    }
  }
  if (std::filesystem::is_regular_file(descriptor)) {
    return function_from_json(domain, parse_json_text(read_file(descriptor), descriptor));
  }
  fail("unrecognized function descriptor '" + descriptor + "'");
}

std::vector<Complex> load_points(const std::string& spec, const DomainSpec& domain,
                                 std::uint64_t seed) {
  if (spec.rfind("gen:annulus:", 0) == 0) return halton_exterior(domain, parse_count(spec.substr(12)));
  if (spec.rfind("gen:random:", 0) == 0) {
    return random_admissible(domain, parse_count(spec.substr(11)), seed);
  }
  std::vector<Complex> out;
  if (spec.rfind("list:", 0) == 0) {
    std::stringstream ss(spec.substr(5));
    std::string item;
    while (std::getline(ss, item, ';')) {
      if (!item.empty()) out.push_back(parse_complex(item));
    }
  } else {
    const Json j = parse_json_text(read_file(spec), spec);
    if (!j.is_array()) fail(spec + ": points file must hold an array of [re, im]");
    for (const Json& p : j) out.push_back(complex_from_json(p));
  }
  if (out.empty()) fail("empty point list");
  return out;
}

Json to_json(const QuadResult& q) {
  return {{"value_re", q.value.real()},
          {"value_im", q.value.imag()},
          {"abs_err", q.abs_error_estimate},
          {"cells", q.cells_used},
          {"converged", q.converged}};
}

Json to_json(const QuadConfig& cfg) {
  return {{"abs_tol", cfg.abs_tol},
          {"rel_tol", cfg.rel_tol},
          {"max_cells", cfg.max_cells},
          {"unbounded_chart", cfg.unbounded_chart == UnboundedChart::Inversion ? "inversion" : "polar-decay"},
          {"truncation_radius", cfg.truncation_radius}};
}

QuadConfig quad_config_from_json(const Json& j, QuadConfig base) {
  if (!j.is_object()) fail("quadrature config must be an object");
  base.abs_tol = number_or(j, "abs_tol", base.abs_tol);
  base.rel_tol = number_or(j, "rel_tol", base.rel_tol);
  base.max_cells = static_cast<std::size_t>(number_or(j, "max_cells", static_cast<double>(base.max_cells)));
  base.truncation_radius = number_or(j, "truncation_radius", base.truncation_radius);
  if (j.contains("unbounded_chart")) {
    const std::string c = j.at("unbounded_chart").is_string() ? j.at("unbounded_chart").get<std::string>() : "";
    if (c == "inversion") {
      base.unbounded_chart = UnboundedChart::Inversion;
    } else if (c == "polar-decay") {
      base.unbounded_chart = UnboundedChart::PolarDecay;
    } else {
      fail("unbounded_chart must be 'inversion' or 'polar-decay'");
    }
  }
  try {
    base.validate();
  } catch (const Error& e) {
    fail(std::string("invalid quadrature config: ") + e.what());
  }
  return base;
}

}  // namespace bergman::io
