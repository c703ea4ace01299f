#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "berger/report.hpp"

using namespace berger;
using cli::Config;
using cli::Entry;
using cli::Report;

TEST_CASE("structure suite passes in both modes") {
  Config cfg;
  cfg.canonical = true;
  Report exact = cli::run_verify_structure(cfg);
  CHECK(exact.all_passed());
  cfg.mode = scalar::Mode::kFloat;
  cfg.tol = 1e-12;
  Report fl = cli::run_verify_structure(cfg);
  CHECK(fl.all_passed());
  // modes agree on every status
  REQUIRE(exact.entries.size() == fl.entries.size());
  for (size_t i = 0; i < exact.entries.size(); ++i)
    CHECK((exact.entries[i].status == Entry::Status::kFail) ==
          (fl.entries[i].status == Entry::Status::kFail));
}

TEST_CASE("reports are deterministic given seed, mode and tolerance") {
  Config cfg;
  cfg.canonical = true;
  cfg.family_samples = 10;
  Report a = cli::run_verify_g2(cfg);
  Report b = cli::run_verify_g2(cfg);
  CHECK(a.to_json() == b.to_json());
  // check ids are unique
  for (size_t i = 0; i < a.entries.size(); ++i)
    for (size_t j = i + 1; j < a.entries.size(); ++j)
      CHECK(a.entries[i].check_id != a.entries[j].check_id);
  // anchors are nonempty
  for (const auto& e : a.entries) CHECK_FALSE(e.anchor.empty());
}

TEST_CASE("json shape") {
  Config cfg;
  cfg.canonical = true;
  Report rep = cli::run_verify_structure(cfg);
  std::string j = rep.to_json();
  CHECK(j.find("\"version\"") != std::string::npos);
  CHECK(j.find("\"entries\"") != std::string::npos);
  CHECK(j.find("\"check_id\"") != std::string::npos);
  CHECK(j.find("\"paper_anchor\"") != std::string::npos);
  CHECK(j.find("\"status\"") != std::string::npos);
  CHECK(j.find("runtime_ms") == std::string::npos);  // canonical output
  cfg.canonical = false;
  Report rep2 = cli::run_verify_structure(cfg);
  CHECK(rep2.to_json().find("runtime_ms") != std::string::npos);
}

TEST_CASE("classification table") {
  Config cfg;
  cfg.family_samples = 12;
  cli::CsvTable table;
  Report rep = cli::run_classify(cfg, &table);
  CHECK(rep.all_passed());
  // the order-6 cyclic row set: seven isolated planes, three calibrated
  int z6_rows = 0, z6_assoc = 0;
  for (const auto& row : table.rows)
    if (row[0] == "Z6") {
      ++z6_rows;
      if (row[2] == "yes") ++z6_assoc;
    }
  CHECK(z6_rows == 7);
  CHECK(z6_assoc == 3);
  std::string csv = table.to_csv();
  CHECK(csv.find("group,plane,associative,stabilizer_verified") == 0);
}

TEST_CASE("orbit runner and point cloud") {
  Config cfg;
  cfg.translations = 6;
  cli::CsvTable cloud;
  Report rep = cli::run_orbit(cfg, "ico", &cloud);
  CHECK(rep.all_passed());
  CHECK(cloud.rows.size() == 64);
  CHECK(cloud.header.size() == 36);
  CHECK_THROWS_AS(cli::run_orbit(cfg, "bogus", nullptr), std::invalid_argument);
}

TEST_CASE("intersection runner") {
  Config cfg;
  cfg.grid_theta = 96;
  cfg.grid_phi = 192;
  Report rep = cli::run_intersect_veronese(cfg);
  CHECK(rep.all_passed());
}
