#pragma once

#include "k3/export.hpp"

#include <string>
#include <vector>

namespace k3 {

struct ReportOptions {
  bool deep = false;        // the degree-7 curve count and its orbit split
  std::string out_dir;      // witnesses are written here when set
  unsigned seed = 0;        // only reorders searches
};

struct Check {
  std::string name;         // "<report>.<item>"
  int criterion = 0;        // acceptance item it belongs to
  Json expected, computed;
  bool pass = false;
  std::string anchor;       // where the expected value is stated
  std::string witness;      // file under out_dir, if exported
  std::string note;
};

struct Report {
  std::string id;
  std::vector<Check> checks;
  std::string error;        // set when the pipeline itself threw
  double seconds = 0;
  bool passed() const;
  Json to_json() const;     // without timing, so runs compare byte for byte
  std::string summary() const;
};

const std::vector<std::string>& report_ids();
// throws std::invalid_argument on an unknown id; pipeline failures are
// captured in Report::error
Report run_report(const std::string& id, const ReportOptions& opt = {});

// the anchor text of a check name ("" if none is recorded)
const std::string& anchor_for(const std::string& check);

}  // namespace k3
