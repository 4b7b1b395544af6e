// Runs every report and prints one verdict line per acceptance item.
#include "k3/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <map>

int main(int argc, char** argv) {
  CLI::App app{"acceptance: one pass/fail line per item"};
  k3::ReportOptions opt;
  bool verbose = false;
  app.add_flag("--deep", opt.deep, "include the degree-7 curve count");
  app.add_option("--out", opt.out_dir, "write report JSON and witnesses here");
  app.add_flag("-v,--verbose", verbose, "print every check");
  CLI11_PARSE(app, argc, argv);

  struct Tally {
    int ok = 0, bad = 0;
    double seconds = 0;
    std::vector<std::string> failed;
  };
  std::map<int, Tally> items;
  for (int i = 1; i <= 16; ++i) items[i];
  std::vector<std::string> errors;

  for (auto& id : k3::report_ids()) {
    auto t0 = std::chrono::steady_clock::now();
    k3::Report r = k3::run_report(id, opt);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (verbose) std::cout << r.summary() << std::flush;
    std::cerr << "[" << id << " " << secs << "s]\n";
    if (!r.error.empty()) errors.push_back(id + ": " + r.error);
    std::map<int, bool> touched;
    for (auto& c : r.checks) {
      Tally& t = items[c.criterion];
      if (c.pass) ++t.ok;
      else {
        ++t.bad;
        t.failed.push_back(c.name + " = " + c.computed.dump() + " (expected " + c.expected.dump() + ")");
      }
      touched[c.criterion] = true;
    }
    // a thrown pipeline fails everything it would have covered
    for (auto& [k, _] : touched) {
      items[k].seconds += secs / double(touched.size());
      if (!r.error.empty()) items[k].failed.push_back(id + " aborted: " + r.error);
    }
  }

  bool all = errors.empty();
  for (auto& [k, t] : items) {
    bool pass = t.bad == 0 && t.ok > 0 && t.failed.empty();
    all = all && pass;
    std::cout << "criterion " << k << ": " << (pass ? "PASS" : "FAIL") << " (" << t.ok << "/" << t.ok + t.bad
              << " checks)";
    if (t.ok + t.bad == 0) std::cout << " no checks ran";
    std::cout << "\n";
    for (auto& f : t.failed) std::cout << "    " << f << "\n";
  }
  for (auto& e : errors) std::cout << "error: " << e << "\n";
  return all ? 0 : 1;
}
