#include "ekrlab/report.hpp"

#include <cctype>
#include <iomanip>
#include <sstream>

#include "ekrlab/error.hpp"
#include "ekrlab/search.hpp"

namespace ekrlab {
namespace {

using nlohmann::ordered_json;

CheckStatus status_from(const std::string& s) {
  if (s == "pass") return CheckStatus::Pass;
  if (s == "fail") return CheckStatus::Fail;
  if (s == "skip") return CheckStatus::Skip;
  if (s == "info") return CheckStatus::Info;
  throw Error(Errc::ParseError, "unknown check status \"" + s + "\"");
}

std::string hash_string(const std::string& payload) {
  std::ostringstream out;
  out << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(payload);
  return out.str();
}

// CSV fields are plain identifiers and numbers today; quote defensively.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skip: return "skip";
    default: return "info";
  }
}

bool Report::any_failed() const {
  for (const auto& c : checks)
    if (c.status == CheckStatus::Fail) return true;
  return false;
}

ordered_json Report::to_json() const {
  ordered_json j;
  j["schema_version"] = schema_version;
  j["tool"] = ordered_json{{"name", tool_name}, {"version", tool_version}};
  j["command"] = command;
  ordered_json in = ordered_json::object();
  for (const auto& [k, v] : inputs) in[k] = v;
  j["inputs"] = in;
  ordered_json cs = ordered_json::array();
  for (const auto& c : checks) {
    ordered_json cj;
    cj["anchor"] = c.anchor;
    cj["name"] = c.name;
    cj["status"] = to_string(c.status);
    cj["details"] = c.details;
    cj["witnesses"] = c.witnesses;
    cs.push_back(std::move(cj));
  }
  j["checks"] = cs;
  ordered_json cn = ordered_json::object();
  for (const auto& [k, v] : counts) cn[k] = v;
  j["counts"] = cn;
  ordered_json hs = ordered_json::object();
  for (const auto& t : histograms) {
    ordered_json rows = ordered_json::object();
    for (const auto& [k, v] : t.rows) rows[k] = v;
    hs[t.name] = rows;
  }
  j["histograms"] = hs;
  j["summary"] = summary;
  j["timings"] = ordered_json::object();  // kept empty: see to_text()
  j["output_hash"] = hash_string(j.dump());
  return j;
}

std::string Report::to_json_text() const { return to_json().dump(2) + "\n"; }

std::string Report::to_csv() const {
  std::ostringstream out;
  out << "table,key,value\n";
  for (const auto& t : histograms)
    for (const auto& [k, v] : t.rows)
      out << csv_field(t.name) << "," << csv_field(k) << "," << v << "\n";
  return out.str();
}

std::string Report::to_text() const {
  std::ostringstream out;
  out << tool_name << " " << tool_version << " — " << command << "\n";
  if (!inputs.empty()) {
    out << "inputs:";
    for (const auto& [k, v] : inputs) out << " " << k << "=" << v;
    out << "\n";
  }
  for (const auto& c : checks) {
    std::string tag = to_string(c.status);
    for (auto& ch : tag) ch = (char)std::toupper((unsigned char)ch);
    out << "[" << tag << "] " << c.anchor << " — " << c.name;
    if (!c.details.empty()) out << ": " << c.details;
    out << "\n";
    for (const auto& w : c.witnesses) out << "        witness: " << w << "\n";
  }
  for (const auto& [k, v] : counts) out << "count " << k << " = " << v << "\n";
  for (const auto& t : histograms) {
    out << "histogram " << t.name << ":";
    for (const auto& [k, v] : t.rows) out << " " << k << ":" << v;
    out << "\n";
  }
  if (!summary.empty()) out << "summary: " << summary << "\n";
  if (!timings_ms.empty()) {
    out << "timings:";
    for (const auto& [k, v] : timings_ms) out << " " << k << "=" << v << "ms";
    out << "\n";
  }
  return out.str();
}

Report Report::from_json(const ordered_json& j) {
  try {
    Report r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kReportSchemaVersion)
      throw Error(Errc::ParseError, "unsupported report schema version");
    r.tool_name = j.at("tool").at("name").get<std::string>();
    r.tool_version = j.at("tool").at("version").get<std::string>();
    r.command = j.at("command").get<std::string>();
    for (const auto& [k, v] : j.at("inputs").items())
      r.inputs.emplace_back(k, v.get<std::string>());
    for (const auto& cj : j.at("checks")) {
      Check c;
      c.anchor = cj.at("anchor").get<std::string>();
      c.name = cj.at("name").get<std::string>();
      c.status = status_from(cj.at("status").get<std::string>());
      c.details = cj.at("details").get<std::string>();
      for (const auto& w : cj.at("witnesses")) c.witnesses.push_back(w.get<std::string>());
      r.checks.push_back(std::move(c));
    }
    for (const auto& [k, v] : j.at("counts").items())
      r.counts.emplace_back(k, v.get<std::uint64_t>());
    for (const auto& [name, rows] : j.at("histograms").items()) {
      HistogramTable t;
      t.name = name;
      for (const auto& [k, v] : rows.items()) t.rows.emplace_back(k, v.get<std::uint64_t>());
      r.histograms.push_back(std::move(t));
    }
    r.summary = j.at("summary").get<std::string>();
    ordered_json without_hash = r.to_json();
    std::string recomputed = without_hash.at("output_hash").get<std::string>();
    std::string stored = j.at("output_hash").get<std::string>();
    if (recomputed != stored)
      throw Error(Errc::ParseError, "report content hash mismatch");
    return r;
  } catch (const ordered_json::exception& e) {
    throw Error(Errc::ParseError, std::string("malformed report: ") + e.what());
  }
}

Report Report::from_json_text(const std::string& text) {
  ordered_json j = ordered_json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw Error(Errc::ParseError, "report is not valid JSON");
  return from_json(j);
}

}  // namespace ekrlab
