#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace ekrlab {

inline constexpr const char* kToolName = "ekrlab";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

enum class CheckStatus { Pass, Fail, Skip, Info };
const char* to_string(CheckStatus s);

// One verdict line. `anchor` is the stable key of the claim being checked in
// the check registry (e.g. "thm:main"); reports are traceable through it.
struct Check {
  std::string anchor;
  std::string name;
  CheckStatus status = CheckStatus::Info;
  std::string details;
  std::vector<std::string> witnesses;
};

struct HistogramTable {
  std::string name;
  std::vector<std::pair<std::string, std::uint64_t>> rows;
};

// Schema-versioned run record. JSON serialization is canonical and carries a
// content hash; wall-clock timings appear only in the text rendering so that
// identical runs produce byte-identical JSON.
struct Report {
  int schema_version = kReportSchemaVersion;
  std::string tool_name = kToolName;
  std::string tool_version = kToolVersion;
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<Check> checks;
  std::vector<std::pair<std::string, std::uint64_t>> counts;
  std::vector<HistogramTable> histograms;
  std::string summary;
  std::vector<std::pair<std::string, std::uint64_t>> timings_ms;  // text only

  bool any_failed() const;
  void add_check(Check c) { checks.push_back(std::move(c)); }

  nlohmann::ordered_json to_json() const;
  std::string to_json_text() const;
  std::string to_csv() const;
  std::string to_text() const;

  // Parses a document produced by to_json(); validates the schema version
  // and the embedded content hash (ParseError otherwise).
  static Report from_json(const nlohmann::ordered_json& j);
  static Report from_json_text(const std::string& text);

  // Equality of the serialized content (timings are rendering-only).
  friend bool operator==(const Report& a, const Report& b) {
    return a.to_json() == b.to_json();
  }
};

}  // namespace ekrlab
