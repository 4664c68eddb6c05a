#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace meanlab::cli {

using Json = nlohmann::ordered_json;

enum class Format { kText, kCsv, kJson };

Format parse_format(const std::string& name);
std::string to_string(Format format);

/// One line of the normative CSV schema; `extra` only appears in JSON/text.
struct ResultRow {
  std::string check_name;
  std::size_t sample_index = 0;
  std::optional<double> lhs;
  std::optional<double> rhs;
  std::optional<double> residual;
  std::string verdict;
  Json extra = Json::object();
};

struct RunReport {
  std::string command;
  Json config = Json::object();
  std::vector<ResultRow> results;
  Json summary = Json::object();
  /// Wall time; the only field outside the determinism contract.
  double runtime_ms = 0.0;
};

Json to_json(const RunReport& report);
void write_report(const RunReport& report, Format format, std::ostream& out);

}  // namespace meanlab::cli
