#include <string>

#include "doctest.h"
#include "ekrlab/error.hpp"
#include "ekrlab/report.hpp"

using namespace ekrlab;

namespace {

Report sample() {
  Report r;
  r.command = "verify";
  r.inputs.push_back({"field", "GF(3)"});
  r.inputs.push_back({"q", "3"});
  Check c;
  c.anchor = "thm:EKR-GL";
  c.name = "maximum intersecting size equals q(q-1)";
  c.status = CheckStatus::Pass;
  c.details = "maximum intersecting size 6, expected q(q-1) = 6";
  c.witnesses.push_back("maximum set: [[2,2],[0,1]]");
  r.add_check(c);
  Check i;
  i.anchor = "cert:singer";
  i.name = "regular cyclic subgroup";
  i.status = CheckStatus::Info;
  i.details = "order 8";
  r.add_check(i);
  r.counts.push_back({"max_intersecting_size", 6});
  HistogramTable h;
  h.name = "maximal_set_sizes";
  h.rows.push_back({"6", 64});
  r.histograms.push_back(h);
  r.summary = "all 1 checks passed";
  r.timings_ms.push_back({"ekr", 12});
  return r;
}

}  // namespace

TEST_CASE("reports round-trip through JSON") {
  Report r = sample();
  std::string text = r.to_json_text();
  Report back = Report::from_json_text(text);
  CHECK(back == r);
  CHECK(back.to_json_text() == text);
  CHECK(back.schema_version == kReportSchemaVersion);
  CHECK(back.tool_name == kToolName);
}

TEST_CASE("JSON is deterministic and hashed") {
  Report r = sample();
  CHECK(r.to_json_text() == sample().to_json_text());
  auto j = r.to_json();
  CHECK(j.contains("output_hash"));
  std::string h = j["output_hash"];
  CHECK(h.rfind("fnv1a64:", 0) == 0);
  CHECK(h.size() == 8 + 16);
  // Timings never reach the JSON payload: determinism across machines.
  CHECK(j["timings"].is_object());
  CHECK(j["timings"].empty());
}

TEST_CASE("tampered payloads are rejected") {
  Report r = sample();
  std::string text = r.to_json_text();
  std::string tampered = text;
  const std::string before = "\"all 1 checks passed\"";
  const std::string after = "\"all 2 checks passed\"";
  std::size_t at = tampered.find(before);
  REQUIRE(at != std::string::npos);
  tampered.replace(at, before.size(), after);
  try {
    Report::from_json_text(tampered);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParseError);
    CHECK(std::string(e.what()).find("hash") != std::string::npos);
  }

  CHECK_THROWS_AS(Report::from_json_text("not json"), Error);
  CHECK_THROWS_AS(Report::from_json_text("{}"), Error);

  // A wrong schema version is refused before anything else.
  std::string wrong = text;
  const std::string v1 = "\"schema_version\": 1";
  at = wrong.find(v1);
  REQUIRE(at != std::string::npos);
  wrong.replace(at, v1.size(), "\"schema_version\": 9");
  CHECK_THROWS_AS(Report::from_json_text(wrong), Error);
}

TEST_CASE("the CSV projection carries the histogram tables") {
  Report r = sample();
  std::string csv = r.to_csv();
  CHECK(csv.rfind("table,key,value\n", 0) == 0);
  CHECK(csv.find("maximal_set_sizes,6,64") != std::string::npos);
  // Counts and checks do not leak into the CSV.
  CHECK(csv.find("max_intersecting_size") == std::string::npos);
  CHECK(csv.find("thm:") == std::string::npos);
}

TEST_CASE("the text rendering carries anchors, witnesses, and timings") {
  Report r = sample();
  std::string t = r.to_text();
  CHECK(t.find("ekrlab 0.1.0 — verify") != std::string::npos);
  CHECK(t.find("[PASS] thm:EKR-GL — maximum intersecting size equals q(q-1):") !=
        std::string::npos);
  CHECK(t.find("[INFO] cert:singer") != std::string::npos);
  CHECK(t.find("witness: maximum set") != std::string::npos);
  CHECK(t.find("count max_intersecting_size = 6") != std::string::npos);
  CHECK(t.find("histogram maximal_set_sizes: 6:64") != std::string::npos);
  CHECK(t.find("timings: ekr=12ms") != std::string::npos);
  CHECK(t.find("summary: all 1 checks passed") != std::string::npos);
}

TEST_CASE("any_failed distinguishes failures from informational checks") {
  Report r = sample();
  CHECK(!r.any_failed());
  Check f;
  f.anchor = "thm:main";
  f.name = "x";
  f.status = CheckStatus::Fail;
  r.add_check(f);
  CHECK(r.any_failed());
  // Skip does not count as failure.
  Report s = sample();
  Check sk;
  sk.anchor = "thm:main";
  sk.name = "y";
  sk.status = CheckStatus::Skip;
  s.add_check(sk);
  CHECK(!s.any_failed());
}

TEST_CASE("status labels round-trip through JSON") {
  for (CheckStatus st : {CheckStatus::Pass, CheckStatus::Fail, CheckStatus::Info,
                         CheckStatus::Skip}) {
    Report r;
    r.command = "x";
    Check c;
    c.anchor = "thm:main";
    c.name = "status probe";
    c.status = st;
    r.add_check(c);
    Report back = Report::from_json_text(r.to_json_text());
    CHECK(back.checks.at(0).status == st);
  }
}
