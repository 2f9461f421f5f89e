#include "lcgeom/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace lcg {

namespace {

using nlohmann::ordered_json;

ordered_json number(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

double read_number(const ordered_json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return v.get<double>();
}

CheckStatus parse_status(const std::string& s) {
  if (s == "pass") return CheckStatus::pass;
  if (s == "fail") return CheckStatus::fail;
  if (s == "skipped-diverged") return CheckStatus::skipped_diverged;
  throw std::invalid_argument("unknown status '" + s + "'");
}

}  // namespace

std::string report_json(const std::vector<CheckReport>& reports) {
  ordered_json arr = ordered_json::array();
  for (const CheckReport& r : reports) {
    ordered_json j;
    j["name"] = r.name;
    j["status"] = to_string(r.status);
    j["lhs"] = number(r.lhs);
    j["rhs"] = number(r.rhs);
    j["margin"] = number(r.margin);
    j["tolerance"] = number(r.tolerance);
    j["runtime_ms"] = number(r.runtime_ms);
    j["details"] = r.details;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

void write_report_json(std::ostream& out, const std::vector<CheckReport>& reports) {
  out << report_json(reports);
}

std::vector<CheckReport> parse_report_json(const std::string& text) {
  std::vector<CheckReport> out;
  try {
    const ordered_json arr = ordered_json::parse(text);
    if (!arr.is_array()) throw std::invalid_argument("report must be a JSON array");
    for (const auto& j : arr) {
      CheckReport r;
      r.name = j.at("name").get<std::string>();
      r.status = parse_status(j.at("status").get<std::string>());
      r.lhs = read_number(j, "lhs");
      r.rhs = read_number(j, "rhs");
      r.margin = read_number(j, "margin");
      r.tolerance = read_number(j, "tolerance");
      r.runtime_ms = read_number(j, "runtime_ms");
      r.details = j.at("details").get<std::string>();
      out.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed report: ") + e.what());
  }
  return out;
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace lcg
