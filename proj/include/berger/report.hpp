#pragma once

#include <functional>
#include <string>
#include <vector>

#include "berger/scalar.hpp"

namespace berger::cli {

struct Config {
  scalar::Mode mode = scalar::Mode::kExact;
  double tol = 1e-9;
  int threads = 0;  // 0: library default
  unsigned seed = 1;
  int grid_theta = 256;
  int grid_phi = 512;
  int family_samples = 50;
  int translations = 20;
  bool canonical = false;  // omit wall-clock fields for byte-stable output
};

struct Entry {
  std::string check_id;
  std::string anchor;  // which structural claim the check exercises
  enum class Status { kPass, kFail, kMeasured } status = Status::kFail;
  double residual = 0;
  double runtime_ms = 0;
  std::string details;
};

struct Report {
  std::string version = "1.0";
  Config config;
  std::vector<Entry> entries;

  bool all_passed() const {
    for (const auto& e : entries)
      if (e.status == Entry::Status::kFail) return false;
    return true;
  }
  void add(Entry e) { entries.push_back(std::move(e)); }
  std::string to_json() const;
};

// timing helper: runs fn, fills residual/status through the returned entry
Entry timed_entry(const std::string& check_id, const std::string& anchor,
                  const std::function<Entry()>& body);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string to_csv() const;
};

// ---- suite runners -----------------------------------------------------------

Report run_verify_structure(const Config& cfg);
Report run_verify_g2(const Config& cfg);
Report run_verify_flag(const Config& cfg);
Report run_verify_cohom1(const Config& cfg);
Report run_verify_berger(const Config& cfg);   // curves and homogeneous orbits
Report run_verify_all(const Config& cfg);

Report run_classify(const Config& cfg, CsvTable* table);
Report run_scan_grassmannian(const Config& cfg, CsvTable* table);
Report run_orbit(const Config& cfg, const std::string& case_name, CsvTable* cloud);
Report run_intersect_veronese(const Config& cfg);

}  // namespace berger::cli
