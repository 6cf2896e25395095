#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "bergman/domain.hpp"
#include "bergman/holofun.hpp"
#include "bergman/quadrature.hpp"

namespace bergman::io {

/// Insertion-ordered so that reports serialize byte-identically.
using Json = nlohmann::ordered_json;

// All parse failures throw Error(ErrorCode::ParseError, ...).

Json to_json(Complex z);  // [re, im]
Complex complex_from_json(const Json& j);
/// "re,im" or a bare real.
Complex parse_complex(const std::string& text);

/// {"variant": ..., "parameters": {...}}; a bare {"preset": name} is also read.
Json to_json(const DomainSpec& domain);
DomainSpec domain_from_json(const Json& j);
/// Reads a domain file, or a preset name when no such file exists.
DomainSpec load_domain(const std::string& path_or_preset);

/// {"form": "rational-section", "pole": [re, im]} and similar for
/// "kernel-section" ("w"), "monomial" ("power", "scale") and "combination"
/// ("terms": [{"coeff": [re, im], "fn": {...}}]).
Json to_json(const HoloFun& f);
HoloFun function_from_json(const DomainSpec& domain, const Json& j);
/// Inline descriptors "rational:re,im", "kernel:re,im", "monomial:n[:re,im]",
/// a JSON object, or a path to a file holding one.
HoloFun parse_function(const DomainSpec& domain, const std::string& descriptor);

/// "gen:annulus:N" (nested Halton points in the exterior band),
/// "gen:random:N" (seeded), "list:re,im;re,im;...", or a JSON file holding an
/// array of [re, im] pairs.
std::vector<Complex> load_points(const std::string& spec, const DomainSpec& domain,
                                 std::uint64_t seed);

/// {value_re, value_im, abs_err, cells, converged}
Json to_json(const QuadResult& q);
Json to_json(const QuadConfig& cfg);
QuadConfig quad_config_from_json(const Json& j, QuadConfig base = {});

std::string read_file(const std::string& path);

}  // namespace bergman::io
