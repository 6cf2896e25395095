#pragma once

#include <string>
#include <vector>

#include "bergman/io.hpp"

namespace bergman {

/// Bumped by hand whenever a report field changes meaning or shape.
inline constexpr const char* kReportSchemaVersion = "bergman-report/1";

/// How `value` is judged against `expected` and `tol`.
enum class CheckKind {
  Absolute,  // |value - expected| <= tol
  Relative,  // |value - expected| <= tol |expected|
  Below,     // value < tol
  Above,     // value > tol
};

struct CheckEntry {
  std::string check_id;
  std::string domain;
  CheckKind kind = CheckKind::Absolute;
  double value = 0.0;
  double expected = 0.0;
  double tol = 0.0;
  bool pass = false;
  /// False when a quadrature behind the value ran out of its cell budget.
  bool converged = true;
  std::string note;
};

CheckEntry check_absolute(std::string id, std::string domain, double value, double expected, double tol);
CheckEntry check_relative(std::string id, std::string domain, double value, double expected, double tol);
CheckEntry check_below(std::string id, std::string domain, double value, double bound);
CheckEntry check_above(std::string id, std::string domain, double value, double bound);

const char* to_string(CheckKind kind);

struct Report {
  std::string command;
  io::Json config = io::Json::object();
  std::vector<CheckEntry> checks;
  /// Free-form numeric output of the verb (values, tables).
  io::Json data = io::Json::object();
  std::vector<std::string> errors;

  bool all_pass() const;
  bool budget_exhausted() const;
};

io::Json to_json(const CheckEntry& e);
io::Json to_json(const Report& r);
/// One row per check: check_id,domain,kind,value,expected,tol,pass,converged.
std::string to_csv(const Report& r);

/// Field descriptions plus the registered acceptance check ids.
io::Json report_schema();

/// Exit codes shared by the CLI verbs.
enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitParse = 2, kExitBudget = 3 };

int exit_code(const Report& r);

}  // namespace bergman
