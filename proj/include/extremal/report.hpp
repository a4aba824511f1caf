#pragma once

// CSV and JSON emission. Every output opens with the full resolved config so
// a run can be reproduced from its own header. The output path is left out:
// where a report is written does not change its content.

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "extremal/config.hpp"

namespace extremal {

inline std::string echoed_config(RunConfig cfg) {
  cfg.output_path.clear();
  return emit_config(cfg);
}

class CsvReport {
 public:
  explicit CsvReport(const RunConfig& cfg) {
    os_ << "# extremal " << to_string(cfg.command) << "\n";
    os_ << "# seed=" << cfg.seed << "\n";
    std::istringstream lines(echoed_config(cfg));
    for (std::string line; std::getline(lines, line);) os_ << "# | " << line << "\n";
  }

  CsvReport& comment(std::string_view key, const std::string& value) {
    os_ << "# " << key << "=" << value << "\n";
    return *this;
  }
  CsvReport& comment(std::string_view key, double value) { return comment(key, format_real(value)); }

  CsvReport& columns(const std::vector<std::string>& names) {
    write_cells(names);
    return *this;
  }

  CsvReport& row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_real(v));
    write_cells(cells);
    return *this;
  }

  CsvReport& row_cells(const std::vector<std::string>& cells) {
    write_cells(cells);
    return *this;
  }

  std::string str() const { return os_.str(); }

 private:
  void write_cells(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << cells[i];
    os_ << "\n";
  }

  std::ostringstream os_;
};

/// Header object shared by JSON outputs.
inline nlohmann::ordered_json json_header(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["tool"] = "extremal";
  j["command"] = std::string(to_string(cfg.command));
  j["seed"] = cfg.seed;
  j["config"] = echoed_config(cfg);
  return j;
}

/// Recovers the config embedded in a CSV header written by CsvReport.
inline RunConfig config_from_csv_header(std::string_view csv) {
  std::istringstream in{std::string(csv)};
  std::string text;
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("# | ", 0) == 0) text += line.substr(4) + "\n";
    else if (line.empty() || line[0] != '#') break;
  }
  return parse_config(text);
}

}  // namespace extremal
