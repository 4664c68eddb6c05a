#include "report.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace meanlab::cli {

namespace {

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buffer[32];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, v);
  return std::string(buffer, ptr);
}

std::string optional_number(const std::optional<double>& v) { return v ? number(*v) : std::string(); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::string scalar_text(const Json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_float()) return number(value.get<double>());
  return value.dump();
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "text") return Format::kText;
  if (name == "csv") return Format::kCsv;
  if (name == "json") return Format::kJson;
  throw std::invalid_argument("unknown format '" + name + "'");
}

std::string to_string(Format format) {
  switch (format) {
    case Format::kText:
      return "text";
    case Format::kCsv:
      return "csv";
    case Format::kJson:
      return "json";
  }
  return "text";
}

Json to_json(const RunReport& report) {
  Json results = Json::array();
  for (const auto& row : report.results) {
    Json item = {
        {"check_name", row.check_name},         {"sample_index", row.sample_index},
        {"lhs", optional_json(row.lhs)},         {"rhs", optional_json(row.rhs)},
        {"residual", optional_json(row.residual)}, {"verdict", row.verdict},
    };
    for (const auto& [key, value] : row.extra.items()) item[key] = value;
    results.push_back(std::move(item));
  }
  return Json{
      {"command", report.command},
      {"config", report.config},
      {"results", std::move(results)},
      {"summary", report.summary},
      {"runtime_ms", report.runtime_ms},
  };
}

void write_report(const RunReport& report, Format format, std::ostream& out) {
  switch (format) {
    case Format::kJson:
      out << to_json(report).dump(2) << '\n';
      return;
    case Format::kCsv:
      out << "# command=" << report.command << '\n';
      for (const auto& [key, value] : report.config.items()) {
        out << "# config." << key << '=' << scalar_text(value) << '\n';
      }
      out << "check_name,sample_index,lhs,rhs,residual,verdict\n";
      for (const auto& row : report.results) {
        out << csv_field(row.check_name) << ',' << row.sample_index << ',' << optional_number(row.lhs) << ','
            << optional_number(row.rhs) << ',' << optional_number(row.residual) << ',' << csv_field(row.verdict)
            << '\n';
      }
      return;
    case Format::kText:
      out << report.command << '\n';
      for (const auto& [key, value] : report.summary.items()) {
        out << "  " << key << ": " << scalar_text(value) << '\n';
      }
      if (!report.results.empty()) {
        out << "  results:\n";
        for (const auto& row : report.results) {
          out << "    [" << row.sample_index << "] " << row.check_name;
          if (row.lhs) out << " lhs=" << number(*row.lhs);
          if (row.rhs) out << " rhs=" << number(*row.rhs);
          if (row.residual) out << " residual=" << number(*row.residual);
          out << ' ' << row.verdict << '\n';
        }
      }
      return;
  }
}

}  // namespace meanlab::cli
