#pragma once

// Report files: JSON (with config echo and summary) and CSV (one row per
// report, columns = flattened InequalityReport fields). Both read back to
// the same report list.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "weinlab/errors.hpp"
#include "weinlab/expression.hpp"
#include "weinlab/inequalities.hpp"
#include "weinlab/random.hpp"
#include "weinlab/sweep.hpp"

namespace weinlab {

class ReportFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> cols{
      "inequality_id", "variant",   "function_id", "status",    "passed",    "lhs",
      "rhs",           "slack",     "tol",         "alpha",     "d",         "p",
      "q",             "s",         "t",           "z",         "omega",     "sigma",
      "eps_omega",     "eps_sigma", "mu_omega",    "mu_sigma",  "k_emp",     "note"};
  return cols;
}

namespace detail {

// Non-finite doubles are stored as the strings "inf", "-inf", "nan".
inline nlohmann::ordered_json number_to_json(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

inline double number_from_text(const std::string& s) {
  if (s == "inf") return kInfinity;
  if (s == "-inf") return -kInfinity;
  if (s == "nan") return std::nan("");
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ReportFormatError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ReportFormatError("not a number: '" + s + "'");
  return v;
}

inline double number_from_json(const nlohmann::json& v, const std::string& key) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return number_from_text(v.get<std::string>());
  throw ReportFormatError("field '" + key + "' must be a number");
}

inline std::string number_to_text(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return format_number(v);
}

}  // namespace detail

inline nlohmann::ordered_json report_to_json(const InequalityReport& r) {
  using detail::number_to_json;
  nlohmann::ordered_json j;
  j["inequality_id"] = to_string(r.id);
  j["variant"] = r.variant;
  j["function_id"] = r.function_id;
  j["status"] = to_string(r.status);
  j["passed"] = r.passed;
  j["lhs"] = number_to_json(r.lhs);
  j["rhs"] = number_to_json(r.rhs);
  j["slack"] = number_to_json(r.slack);
  j["tol"] = number_to_json(r.tol);
  j["alpha"] = number_to_json(r.alpha);
  j["d"] = r.d;
  auto opt = [&](const char* key, const std::optional<double>& v) {
    j[key] = v ? number_to_json(*v) : nlohmann::ordered_json(nullptr);
  };
  opt("p", r.p);
  opt("q", r.q);
  opt("s", r.s);
  opt("t", r.t);
  opt("z", r.z);
  j["omega"] = r.omega;
  j["sigma"] = r.sigma;
  opt("eps_omega", r.eps_omega);
  opt("eps_sigma", r.eps_sigma);
  opt("mu_omega", r.mu_omega);
  opt("mu_sigma", r.mu_sigma);
  opt("k_emp", r.k_emp);
  j["note"] = r.note;
  return j;
}

inline InequalityReport report_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ReportFormatError("report entry must be an object");
  auto str = [&](const char* key) -> std::string {
    if (!j.contains(key) || !j[key].is_string()) {
      throw ReportFormatError(std::string("missing string field '") + key + "'");
    }
    return j[key].get<std::string>();
  };
  auto num = [&](const char* key) -> double {
    if (!j.contains(key)) throw ReportFormatError(std::string("missing field '") + key + "'");
    return detail::number_from_json(j[key], key);
  };
  auto opt = [&](const char* key) -> std::optional<double> {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    return detail::number_from_json(j[key], key);
  };
  InequalityReport r;
  const auto id = parse_inequality_id(str("inequality_id"));
  if (!id) throw ReportFormatError("unknown inequality_id '" + str("inequality_id") + "'");
  r.id = *id;
  r.variant = str("variant");
  r.function_id = str("function_id");
  const auto status = parse_report_status(str("status"));
  if (!status) throw ReportFormatError("unknown status '" + str("status") + "'");
  r.status = *status;
  if (!j.contains("passed") || !j["passed"].is_boolean()) {
    throw ReportFormatError("missing boolean field 'passed'");
  }
  r.passed = j["passed"].get<bool>();
  r.lhs = num("lhs");
  r.rhs = num("rhs");
  r.slack = num("slack");
  r.tol = num("tol");
  r.alpha = num("alpha");
  r.d = static_cast<int>(num("d"));
  r.p = opt("p");
  r.q = opt("q");
  r.s = opt("s");
  r.t = opt("t");
  r.z = opt("z");
  r.omega = str("omega");
  r.sigma = str("sigma");
  r.eps_omega = opt("eps_omega");
  r.eps_sigma = opt("eps_sigma");
  r.mu_omega = opt("mu_omega");
  r.mu_sigma = opt("mu_sigma");
  r.k_emp = opt("k_emp");
  r.note = str("note");
  return r;
}

inline nlohmann::ordered_json summary_to_json(const std::vector<InequalitySummary>& summary) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& s : summary) {
    nlohmann::ordered_json j;
    j["inequality_id"] = to_string(s.id);
    j["total"] = s.total;
    j["checked"] = s.checked;
    j["passed"] = s.passed;
    j["skipped"] = s.skipped;
    j["informational"] = s.informational;
    j["pass_rate"] = s.pass_rate();
    j["max_slack"] = detail::number_to_json(s.max_slack);
    if (s.sup_k_emp) j["sup_k_emp"] = detail::number_to_json(*s.sup_k_emp);
    out.push_back(std::move(j));
  }
  return out;
}

/// JSON document: config echo (without output paths), RNG name, summary, reports.
inline void write_reports_json(std::ostream& out, const SweepResult& result,
                               const ExperimentConfig* config = nullptr) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["rng"] = kRngAlgorithm;
  if (config) doc["config"] = config_to_json(*config, false);
  doc["summary"] = summary_to_json(result.summary);
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const auto& r : result.reports) list.push_back(report_to_json(r));
  doc["reports"] = std::move(list);
  out << doc.dump(2) << '\n';
}

inline std::vector<InequalityReport> read_reports_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ReportFormatError(std::string("malformed JSON: ") + e.what());
  }
  const nlohmann::json* list = &doc;
  if (doc.is_object()) {
    if (!doc.contains("reports")) throw ReportFormatError("no 'reports' array");
    list = &doc["reports"];
  }
  if (!list->is_array()) throw ReportFormatError("'reports' must be an array");
  std::vector<InequalityReport> out;
  for (std::size_t i = 0; i < list->size(); ++i) {
    try {
      out.push_back(report_from_json((*list)[i]));
    } catch (const ReportFormatError& e) {
      throw ReportFormatError("report " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// CSV (RFC 4180 quoting)

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

inline std::vector<std::string> report_row(const InequalityReport& r) {
  auto opt = [](const std::optional<double>& v) { return v ? number_to_text(*v) : std::string(); };
  return {to_string(r.id),           r.variant,
          r.function_id,             to_string(r.status),
          r.passed ? "true" : "false", number_to_text(r.lhs),
          number_to_text(r.rhs),     number_to_text(r.slack),
          number_to_text(r.tol),     number_to_text(r.alpha),
          std::to_string(r.d),       opt(r.p),
          opt(r.q),                  opt(r.s),
          opt(r.t),                  opt(r.z),
          r.omega,                   r.sigma,
          opt(r.eps_omega),          opt(r.eps_sigma),
          opt(r.mu_omega),           opt(r.mu_sigma),
          opt(r.k_emp),              r.note};
}

// Splits one CSV record; returns false at end of input.
inline bool read_csv_record(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  if (in.peek() == std::char_traits<char>::eof()) return false;
  std::string cur;
  bool quoted = false;
  char c;
  while (in.get(c)) {
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          cur += '"';
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c == '\n') {
      break;
    } else if (c != '\r') {
      cur += c;
    }
  }
  if (quoted) throw ReportFormatError("unterminated quoted CSV field");
  fields.push_back(std::move(cur));
  return true;
}

}  // namespace detail

inline void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << detail::csv_field(fields[i]);
  }
  out << '\n';
}

inline void write_reports_csv(std::ostream& out, const std::vector<InequalityReport>& reports) {
  write_csv_row(out, report_columns());
  for (const auto& r : reports) write_csv_row(out, detail::report_row(r));
}

inline std::vector<InequalityReport> read_reports_csv(std::istream& in) {
  std::vector<std::string> fields;
  std::vector<InequalityReport> out;
  if (!detail::read_csv_record(in, fields)) return out;
  if (fields != report_columns()) throw ReportFormatError("unexpected CSV header");
  const auto& cols = report_columns();
  std::size_t line = 1;
  while (detail::read_csv_record(in, fields)) {
    ++line;
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != cols.size()) {
      throw ReportFormatError("line " + std::to_string(line) + ": expected " +
                              std::to_string(cols.size()) + " fields, got " +
                              std::to_string(fields.size()));
    }
    nlohmann::json j;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const std::string& key = cols[k];
      const std::string& v = fields[k];
      if (key == "passed") {
        if (v != "true" && v != "false") throw ReportFormatError("line " + std::to_string(line) + ": bad 'passed'");
        j[key] = v == "true";
      } else if (key == "inequality_id" || key == "variant" || key == "function_id" ||
                 key == "status" || key == "omega" || key == "sigma" || key == "note") {
        j[key] = v;
      } else if (v.empty()) {
        j[key] = nullptr;
      } else {
        j[key] = v;  // numbers go through number_from_text, keeping inf/nan
      }
    }
    try {
      out.push_back(report_from_json(j));
    } catch (const ReportFormatError& e) {
      throw ReportFormatError("line " + std::to_string(line) + ": " + e.what());
    }
  }
  return out;
}

/// Reads .json or .csv by extension.
inline std::vector<InequalityReport> read_reports_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ReportFormatError("cannot open " + path.string());
  if (path.extension() == ".csv") return read_reports_csv(in);
  return read_reports_json(in);
}

// ---------------------------------------------------------------------------
// Plot-ready series

/// Abscissa used for the slack series of each inequality.
inline std::string series_axis(const InequalityReport& r) {
  switch (r.id) {
    case InequalityId::Lemma31: return "z";
    case InequalityId::ThmA: return r.variant.rfind("eps_split", 0) == 0 ? "eps" : "t";
    case InequalityId::HausdorffYoung: return "p";
    case InequalityId::HPW_classic: return "alpha";
    default: return "mu_omega*mu_sigma";
  }
}

inline std::optional<double> series_x(const InequalityReport& r) {
  switch (r.id) {
    case InequalityId::Lemma31: return r.z;
    case InequalityId::ThmA: return r.variant.rfind("eps_split", 0) == 0 ? r.z : r.t;
    case InequalityId::HausdorffYoung: return r.p;
    case InequalityId::HPW_classic: return r.alpha;
    default:
      if (r.mu_omega && r.mu_sigma) return *r.mu_omega * *r.mu_sigma;
      return std::nullopt;
  }
}

/// CSV with one block of rows per series (inequality id plus variant), in
/// order of first appearance. Skipped reports are left out. Nothing is
/// written for an empty report list.
inline void write_slack_series(std::ostream& out, const std::vector<InequalityReport>& reports) {
  if (reports.empty()) return;
  std::vector<std::string> order;
  std::map<std::string, std::vector<const InequalityReport*>> groups;
  for (const auto& r : reports) {
    if (r.status == ReportStatus::skipped) continue;
    const std::string key = r.variant.empty() ? to_string(r.id) : to_string(r.id) + "/" + r.variant;
    if (!groups.count(key)) order.push_back(key);
    groups[key].push_back(&r);
  }
  write_csv_row(out, {"series", "inequality_id", "variant", "x_name", "x", "slack", "passed",
                      "function_id", "alpha", "p"});
  for (const auto& key : order) {
    for (const InequalityReport* r : groups[key]) {
      const auto x = series_x(*r);
      write_csv_row(out, {key, to_string(r->id), r->variant, series_axis(*r),
                          x ? detail::number_to_text(*x) : std::string(),
                          detail::number_to_text(r->slack), r->passed ? "true" : "false",
                          r->function_id, detail::number_to_text(r->alpha),
                          r->p ? detail::number_to_text(*r->p) : std::string()});
    }
  }
}

}  // namespace weinlab
