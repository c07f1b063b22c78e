#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frobkp/series_io.hpp"

namespace frobkp {

struct SuiteConfig {
  std::string suite = "all";  // gram | frobenius | potential | wdvv | recursion | appendix | canonical | all
  int m = 1, n = 1;
  int depth = kDefaultDepth;
  int t_range = kDefaultTRange;
  std::uint64_t seed = 1;
  std::optional<std::string> point;  // point file
  double tol = 1e-9;
  std::optional<std::string> out;
  int points = 3;    // random points per suite when no point file is given
  int p_max = 2;     // recursion suite
  int threads = 0;   // 0: FROBKP_THREADS or the hardware concurrency
};

struct Record {
  std::string check;
  Json params = Json::object();
  std::string status;  // pass | fail | skip
  std::string witness;
  Json extra = Json::object();  // check-specific payload, merged into the JSON line
  double elapsed_ms = 0;
};

struct Report {
  std::vector<Record> records;
  bool any_fail() const;
  int count(const std::string& status) const;
};

// Throws ConfigError.
void validate(const SuiteConfig& cfg);
const std::vector<std::string>& suite_names();

// Throws ConfigError or PointParseError.
Report run_suite(const SuiteConfig& cfg);

// Individual suites, also used by the subcommands.
Report potential_report(int m, int n);
Report recursion_report(const LaxPoint<XPoly>& pt, int p_max, int t_range, int threads);
Report canonical_report(const LPoint& lp, double tol);

Json record_json(const Record& r);
std::string to_jsonl(const Report& r);
std::string summary(const Report& r);

}  // namespace frobkp
