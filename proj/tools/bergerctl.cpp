#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "berger/report.hpp"

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << content;
}

int finish(const berger::cli::Report& rep, const std::string& json_path,
           const berger::cli::CsvTable* table, const std::string& csv_path) {
  for (const auto& e : rep.entries) {
    const char* s = e.status == berger::cli::Entry::Status::kPass     ? "pass"
                    : e.status == berger::cli::Entry::Status::kFail   ? "FAIL"
                                                                      : "measured";
    std::cout << "[" << s << "] " << e.check_id << "  residual=" << e.residual;
    if (!e.details.empty()) std::cout << "  (" << e.details << ")";
    std::cout << "\n";
  }
  if (!json_path.empty()) write_file(json_path, rep.to_json());
  if (table && !csv_path.empty()) write_file(csv_path, table->to_csv());
  return rep.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification toolkit for the homogeneous 7-space of quadric surfaces"};
  app.require_subcommand(1);

  berger::cli::Config cfg;
  std::string mode = "exact";
  std::string json_path, csv_path;
  app.add_option("--mode", mode, "scalar mode: exact or float")
      ->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--tol", cfg.tol, "float-mode tolerance");
  app.add_option("--threads", cfg.threads, "worker threads (0 = library default)");
  app.add_option("--seed", cfg.seed, "seed for randomized scans");
  app.add_option("--json", json_path, "write the report as JSON to this path");
  app.add_option("--csv", csv_path, "write tables as CSV to this path");
  app.add_option("--grid-theta", cfg.grid_theta, "latitude grid size for surface scans");
  app.add_option("--grid-phi", cfg.grid_phi, "longitude grid size for surface scans");
  app.add_option("--samples", cfg.family_samples, "samples per one-parameter family");
  app.add_option("--t-samples", cfg.translations, "translation samples per orbit");
  app.add_flag("--canonical", cfg.canonical, "omit wall-clock fields from the JSON report");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string which = "all";
  verify->add_option("suite", which, "all|structure|g2|flag|cohom1|berger")
      ->check(CLI::IsMember({"all", "structure", "g2", "flag", "cohom1", "berger"}));

  auto* classify = app.add_subcommand("classify", "invariant plane classification table");
  std::string group_filter;
  classify->add_option("--group", group_filter, "restrict to one group (e.g. Z6)");

  auto* scan = app.add_subcommand("scan-grassmannian", "calibration scans over plane families");
  auto* orbit = app.add_subcommand("orbit", "sample a homogeneous calibrated orbit");
  std::string orbit_case = "ico";
  orbit->add_option("--case", orbit_case, "o123a|o123b|o145|o167|ico|oct1|oct2")
      ->check(CLI::IsMember({"o123a", "o123b", "o145", "o167", "ico", "oct1", "oct2"}));
  auto* intersect = app.add_subcommand("intersect-veronese", "surface-pair intersection");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  cfg.mode = (mode == "exact") ? berger::scalar::Mode::kExact : berger::scalar::Mode::kFloat;
#ifdef _OPENMP
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#endif

  try {
    if (verify->parsed()) {
      berger::cli::Report rep;
      if (which == "all") rep = berger::cli::run_verify_all(cfg);
      else if (which == "structure") rep = berger::cli::run_verify_structure(cfg);
      else if (which == "g2") rep = berger::cli::run_verify_g2(cfg);
      else if (which == "flag") rep = berger::cli::run_verify_flag(cfg);
      else if (which == "cohom1") rep = berger::cli::run_verify_cohom1(cfg);
      else rep = berger::cli::run_verify_berger(cfg);
      return finish(rep, json_path, nullptr, csv_path);
    }
    if (classify->parsed()) {
      berger::cli::CsvTable table;
      berger::cli::Report rep = berger::cli::run_classify(cfg, &table);
      if (!group_filter.empty()) {
        berger::cli::CsvTable filtered;
        filtered.header = table.header;
        for (auto& row : table.rows)
          if (row[0] == group_filter) filtered.rows.push_back(row);
        table = filtered;
        berger::cli::Report kept;
        kept.config = rep.config;
        for (auto& e : rep.entries)
          if (e.check_id == "classify." + group_filter) kept.add(e);
        rep = kept;
      }
      for (const auto& row : table.rows) {
        for (size_t i = 0; i < row.size(); ++i)
          std::cout << row[i] << (i + 1 < row.size() ? "," : "\n");
      }
      return finish(rep, json_path, &table, csv_path);
    }
    if (scan->parsed()) {
      berger::cli::CsvTable table;
      berger::cli::Report rep = berger::cli::run_scan_grassmannian(cfg, &table);
      return finish(rep, json_path, &table, csv_path);
    }
    if (orbit->parsed()) {
      berger::cli::CsvTable cloud;
      berger::cli::Report rep = berger::cli::run_orbit(cfg, orbit_case, &cloud);
      return finish(rep, json_path, &cloud, csv_path);
    }
    if (intersect->parsed()) {
      berger::cli::Report rep = berger::cli::run_intersect_veronese(cfg);
      return finish(rep, json_path, nullptr, csv_path);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
