#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wtv::cli {

/// Outcome of one verification suite: a pass flag plus one line per check.
struct SuiteResult {
  std::string name;
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what);
  void note(const std::string& what);
};

std::vector<std::string> suite_names();  // excludes the "all" alias

/// Runs one suite ("all" runs every suite in order). Throws
/// std::invalid_argument for unknown names.
std::vector<SuiteResult> run_suites(const std::string& name,
                                    std::uint64_t seed);

/// JSON verdict document for a set of suite results.
std::string suites_json(const std::vector<SuiteResult>& results);

}  // namespace wtv::cli
