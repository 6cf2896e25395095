#include "bergman/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "bergman/suite.hpp"

namespace bergman {

namespace {

bool judge(CheckKind kind, double value, double expected, double tol) {
  if (!std::isfinite(value)) return false;
  switch (kind) {
    case CheckKind::Absolute: return std::abs(value - expected) <= tol;
    case CheckKind::Relative: return std::abs(value - expected) <= tol * std::abs(expected);
    case CheckKind::Below: return value < tol;
    case CheckKind::Above: return value > tol;
  }
  return false;
}

CheckEntry make(std::string id, std::string domain, CheckKind kind, double value, double expected,
                double tol) {
  CheckEntry e;
  e.check_id = std::move(id);
  e.domain = std::move(domain);
  e.kind = kind;
  e.value = value;
  e.expected = expected;
  e.tol = tol;
  e.pass = judge(kind, value, expected, tol);
  return e;
}

// JSON has no NaN or infinity; those are written as strings.
io::Json number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

CheckEntry check_absolute(std::string id, std::string domain, double value, double expected, double tol) {
  return make(std::move(id), std::move(domain), CheckKind::Absolute, value, expected, tol);
}

CheckEntry check_relative(std::string id, std::string domain, double value, double expected, double tol) {
  return make(std::move(id), std::move(domain), CheckKind::Relative, value, expected, tol);
}

CheckEntry check_below(std::string id, std::string domain, double value, double bound) {
  return make(std::move(id), std::move(domain), CheckKind::Below, value, 0.0, bound);
}

CheckEntry check_above(std::string id, std::string domain, double value, double bound) {
  return make(std::move(id), std::move(domain), CheckKind::Above, value, 0.0, bound);
}

const char* to_string(CheckKind kind) {
  switch (kind) {
    case CheckKind::Absolute: return "abs";
    case CheckKind::Relative: return "rel";
    case CheckKind::Below: return "below";
    case CheckKind::Above: return "above";
  }
  return "?";
}

bool Report::all_pass() const {
  if (!errors.empty()) return false;
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

bool Report::budget_exhausted() const {
  for (const auto& c : checks) {
    if (!c.converged) return true;
  }
  return false;
}

io::Json to_json(const CheckEntry& e) {
  io::Json j{{"check_id", e.check_id},
             {"domain", e.domain},
             {"kind", to_string(e.kind)},
             {"value", number(e.value)},
             {"expected", number(e.expected)},
             {"tol", number(e.tol)},
             {"pass", e.pass},
             {"converged", e.converged}};
  if (!e.note.empty()) j["note"] = e.note;
  return j;
}

io::Json to_json(const Report& r) {
  io::Json checks = io::Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return {{"schema", kReportSchemaVersion},
          {"command", r.command},
          {"config", r.config},
          {"pass", r.all_pass()},
          {"checks", checks},
          {"data", r.data},
          {"errors", r.errors}};
}

std::string to_csv(const Report& r) {
  std::ostringstream out;
  out << "check_id,domain,kind,value,expected,tol,pass,converged\n";
  for (const auto& c : r.checks) {
    out << c.check_id << ',' << c.domain << ',' << to_string(c.kind) << ',' << csv_number(c.value)
        << ',' << csv_number(c.expected) << ',' << csv_number(c.tol) << ',' << (c.pass ? 1 : 0)
        << ',' << (c.converged ? 1 : 0) << '\n';
  }
  return out.str();
}

io::Json report_schema() {
  io::Json criteria = io::Json::array();
  for (const auto& c : acceptance_criteria()) {
    criteria.push_back({{"id", c.id}, {"check_id", c.check_id}, {"title", c.title}, {"domains", c.domains}});
  }
  return {
      {"schema", kReportSchemaVersion},
      {"report",
       {{"schema", "schema version string"},
        {"command", "verb that produced the report"},
        {"config", "fully resolved run configuration"},
        {"pass", "true iff every check passed and no error occurred"},
        {"checks", "array of check entries"},
        {"data", "verb-specific numeric output"},
        {"errors", "error messages, each prefixed by its error code"}}},
      {"check_entry",
       {{"check_id", "stable identifier; acceptance entries start with their criterion's check_id"},
        {"domain", "domain preset the check ran on"},
        {"kind", "abs: |value-expected|<=tol; rel: |value-expected|<=tol*|expected|; below: value<tol; above: value>tol"},
        {"value", "computed number"},
        {"expected", "reference value (0 for one-sided kinds)"},
        {"tol", "tolerance or bound"},
        {"pass", "outcome of the comparison"},
        {"converged", "false when a quadrature exhausted its cell budget"},
        {"note", "optional remark"}}},
      {"quad_result", {{"value_re", "real part"}, {"value_im", "imaginary part"}, {"abs_err", "error estimate"},
                       {"cells", "cells used"}, {"converged", "tolerance reached"}}},
      {"exit_codes", {{"0", "all checks pass"}, {"1", "a check failed"}, {"2", "configuration parse error"},
                      {"3", "numerical budget exhausted"}}},
      {"acceptance", criteria}};
}

int exit_code(const Report& r) {
  if (r.budget_exhausted()) return kExitBudget;
  return r.all_pass() ? kExitOk : kExitCheckFailed;
}

}  // namespace bergman
