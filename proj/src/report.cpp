#include "berger/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include <json.hpp>

#include "berger/berger_space.hpp"
#include "berger/cohom1.hpp"
#include "berger/flag.hpp"
#include "berger/g2.hpp"
#include "berger/scan.hpp"
#include "berger/so5.hpp"
#include "berger/stab.hpp"

namespace berger::cli {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* status_str(Entry::Status s) {
  switch (s) {
    case Entry::Status::kPass: return "pass";
    case Entry::Status::kFail: return "fail";
    case Entry::Status::kMeasured: return "measured";
  }
  return "fail";
}

}  // namespace

std::string Report::to_json() const {
  nlohmann::ordered_json j;
  j["version"] = version;
  j["config"] = {{"mode", config.mode == scalar::Mode::kExact ? "exact" : "float"},
                 {"tol", fmt_double(config.tol)},
                 {"threads", config.threads},
                 {"seed", config.seed},
                 {"grid_theta", config.grid_theta},
                 {"grid_phi", config.grid_phi},
                 {"family_samples", config.family_samples}};
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    nlohmann::ordered_json je;
    je["check_id"] = e.check_id;
    je["paper_anchor"] = e.anchor;
    je["status"] = status_str(e.status);
    je["residual"] = fmt_double(e.residual);
    if (!config.canonical) je["runtime_ms"] = fmt_double(e.runtime_ms);
    je["details"] = e.details;
    j["entries"].push_back(je);
  }
  return j.dump(2) + "\n";
}

std::string CsvTable::to_csv() const {
  std::string out;
  for (size_t i = 0; i < header.size(); ++i) {
    out += header[i];
    out += (i + 1 < header.size()) ? ',' : '\n';
  }
  for (const auto& row : rows)
    for (size_t i = 0; i < row.size(); ++i) {
      out += row[i];
      out += (i + 1 < row.size()) ? ',' : '\n';
    }
  return out;
}

Entry timed_entry(const std::string& check_id, const std::string& anchor,
                  const std::function<Entry()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Entry e = body();
  auto t1 = std::chrono::steady_clock::now();
  e.check_id = check_id;
  e.anchor = anchor;
  e.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return e;
}

namespace {

Entry pass_fail(bool ok, double residual, const std::string& details = "") {
  Entry e;
  e.status = ok ? Entry::Status::kPass : Entry::Status::kFail;
  e.residual = residual;
  e.details = details;
  return e;
}

Entry measured(double value, const std::string& details) {
  Entry e;
  e.status = Entry::Status::kMeasured;
  e.residual = value;
  e.details = details;
  return e;
}

template <class K>
void structure_entries(Report& rep, double tol) {
  rep.add(timed_entry("structure.coframe_differentials", "coset structure equations", [&] {
    auto rows = liealg::check_berger_structure<K>(tol);
    double worst = 0;
    bool ok = true;
    std::string detail;
    for (const auto& r : rows) {
      worst = std::max(worst, r.residual);
      ok = ok && r.pass;
      if (!r.pass) detail += " row " + liealg::coframe_names()[r.coframe_index];
    }
    return pass_fail(ok, worst, detail.empty() ? "all 10 coframe rows" : detail);
  }));
  rep.add(timed_entry("structure.d_squared", "exterior differential squares to zero", [&] {
    double res = liealg::d_squared_residual<K>();
    return pass_fail(res <= (scalar::Traits<K>::is_exact ? 0.0 : tol), res,
                     "all 45 coframe 2-form monomials");
  }));
  rep.add(timed_entry("structure.jacobi", "bracket satisfies the Jacobi identity", [&] {
    return pass_fail(liealg::so5_structure().jacobi_holds(), 0.0, "");
  }));
  rep.add(timed_entry("structure.subalgebras", "distinguished subalgebras close", [&] {
    double worst = 0;
    using liealg::Subalgebra;
    for (auto s : {Subalgebra::kSo3Irr, Subalgebra::kSo4, Subalgebra::kU2, Subalgebra::kSu2,
                   Subalgebra::kSo3Std, Subalgebra::kSo2So3Std, Subalgebra::kT2})
      worst = std::max(worst, liealg::subalgebra_closure_residual(liealg::subalgebra_basis(s)));
    return pass_fail(worst == 0.0, worst, "");
  }));
}

template <class K>
void g2_entries(Report& rep, double tol) {
  rep.add(timed_entry("g2.nearly_parallel", "the 3-form satisfies the nearly-parallel law", [&] {
    auto r = g2::verify_nearly_parallel<K>(tol);
    return pass_fail(r.pass, std::max(r.dphi_residual, r.hodge_residual), "");
  }));
  rep.add(timed_entry("g2.dual_coclosed", "derivative of the dual 4-form", [&] {
    auto r = g2::verify_nearly_parallel<K>(tol);
    return measured(r.dstar_norm, "norm of the 5-form derivative");
  }));
}

}  // namespace

Report run_verify_structure(const Config& cfg) {
  Report rep;
  rep.config = cfg;
  if (cfg.mode == scalar::Mode::kExact)
    structure_entries<scalar::FieldScalar>(rep, cfg.tol);
  else
    structure_entries<double>(rep, cfg.tol);
  return rep;
}

Report run_verify_g2(const Config& cfg) {
  Report rep;
  rep.config = cfg;
  if (cfg.mode == scalar::Mode::kExact)
    g2_entries<scalar::FieldScalar>(rep, cfg.tol);
  else
    g2_entries<double>(rep, cfg.tol);

  rep.add(timed_entry("g2.catalogued_planes", "isolated plane calibrations", [&] {
    bool ok = g2::plane_a123<scalar::FieldScalar>().calibrated_exact() == 1 &&
              g2::plane_a145<scalar::FieldScalar>().calibrated_exact() == 1 &&
              g2::plane_a167<scalar::FieldScalar>().calibrated_exact() == 1 &&
              g2::plane_a_ico<scalar::FieldScalar>().calibrated_exact() == 1 &&
              g2::plane_a_oct<scalar::FieldScalar>().calibrated_exact() == 1 &&
              g2::plane_w<scalar::FieldScalar>().calibrated_exact() == 0;
    return pass_fail(ok, 0.0, "five calibrated planes and the complement plane");
  }));
  rep.add(timed_entry("g2.families", "one-angle families calibrate identically", [&] {
    double worst = 0;
    int n = cfg.family_samples;
    for (const char* fam : {"Q5", "Q4a", "Q3"}) {
      auto vals = scan::family_scan(fam, n, cfg.threads != 1);
      for (double v : vals) worst = std::max(worst, std::fabs(v - 1.0));
    }
    return pass_fail(worst < 1e-10, worst, "");
  }));
  rep.add(timed_entry("g2.q4b_grid", "two-angle family never calibrates", [&] {
    double closest = 0;
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 20; ++j)
        closest = std::max(closest,
                           std::fabs(g2::plane_q4b(i * M_PI / 20, j * M_PI / 20).calibration_value()));
    return pass_fail(closest < 1.0 - 1e-6, closest, "max |value| over a 400-point grid");
  }));
  rep.add(timed_entry("g2.p_theta_roots", "interpolation family root set", [&] {
    // scan for value-1 roots with sign-change refinement
    auto f = [](double t) { return g2::plane_p_theta(t).calibration_value() - 1.0; };
    std::vector<double> roots;
    const int n = 3000;
    for (int k = 0; k < n; ++k) {
      double a = 2 * M_PI * k / n, b = 2 * M_PI * (k + 1) / n;
      double fa = f(a), fb = f(b);
      double m = (a + b) / 2;
      if (f(m) > std::max(fa, fb) - 1e-18 || fa == 0) {
        // local max near 0: golden refine on -f
        double lo = a - (b - a), hi = b + (b - a);
        const double gr = (std::sqrt(5.0) - 1) / 2;
        double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
        for (int it = 0; it < 80; ++it) {
          if (f(c) > f(d)) {
            hi = d; d = c; c = hi - gr * (hi - lo);
          } else {
            lo = c; c = d; d = lo + gr * (hi - lo);
          }
        }
        double r = (lo + hi) / 2;
        if (std::fabs(f(r)) < 1e-12) {
          r = std::fmod(r + 2 * M_PI, 2 * M_PI);
          bool dup = false;
          for (double q : roots)
            if (std::fabs(q - r) < 1e-6 || std::fabs(std::fabs(q - r) - 2 * M_PI) < 1e-6) dup = true;
          if (!dup) roots.push_back(r);
        }
      }
    }
    std::sort(roots.begin(), roots.end());
    bool ok = roots.size() == 3;
    double worst = 1;
    if (ok) {
      worst = std::max({std::fabs(roots[0] - 0.0), std::fabs(roots[1] - 2 * M_PI / 3),
                        std::fabs(roots[2] - 4 * M_PI / 3)});
      ok = worst < 1e-9;
    }
    return pass_fail(ok, ok ? worst : 1.0, "roots at 0, 2pi/3, 4pi/3");
  }));
  rep.add(timed_entry("g2.calibration_bound", "calibration inequality on random planes", [&] {
    auto vals = scan::calibration_scan(10000, cfg.seed, cfg.threads != 1);
    double worst = 0;
    for (double v : vals) worst = std::max(worst, std::fabs(v));
    return pass_fail(worst <= 1.0 + 1e-12, worst, "10000 pseudorandom planes");
  }));
  return rep;
}

Report run_verify_flag(const Config& cfg) {
  Report rep;
  rep.config = cfg;
  rep.add(timed_entry("flag.holomorphic_congruences", "quadratic congruences of the complex coframe",
                      [&] {
                        auto r = flag::verify_jstruct();
                        return pass_fail(r.pass, 0.0,
                                         r.negative_control_fails ? "negative control escapes"
                                                                  : "negative control failed");
                      }));
  rep.add(timed_entry("flag.coframe_relation", "linear relation between the two coframes", [&] {
    auto r = flag::verify_omegazeta();
    return pass_fail(r.pass, r.max_residual, r.full_rank ? "relation matrix invertible" : "");
  }));
  rep.add(timed_entry("flag.structure_equations", "complex-frame structure equations", [&] {
    auto r = flag::verify_structflag();
    double worst = 0;
    for (double v : r.residuals) worst = std::max(worst, v);
    return pass_fail(r.pass, worst, "six rows and their differentials");
  }));
  rep.add(timed_entry("flag.twistor_nearly_kahler", "invariant structure on the twistor quotient",
                      [&] {
                        auto r = flag::verify_nk_cp3();
                        std::string d = "d(omega) = " + fmt_double(r.re_coefficient) + " Re(Psi) + " +
                                        fmt_double(r.im_coefficient) + " Im(Psi); d(Re Psi) = " +
                                        fmt_double(r.volume_coefficient) + " omega^2";
                        return pass_fail(r.pass,
                                         std::max(r.proportionality_residual, r.volume_residual), d);
                      }));
  rep.add(timed_entry("flag.normal_lift", "normal-lift frame pattern", [&] {
    auto r = flag::z5_normal_lift_check();
    return pass_fail(r.pass, std::max(r.pattern_residual, r.ruling_frame_residual), "");
  }));
  rep.add(timed_entry("flag.immersion_criterion", "pointwise immersion locus", [&] {
    std::array<scalar::Complex<double>, 4> gauss{scalar::Complex<double>(std::sqrt(3.0 / 5.0)),
                                                 scalar::Complex<double>(0.0),
                                                 scalar::Complex<double>(0.0),
                                                 scalar::Complex<double>(std::sqrt(2.0 / 5.0))};
    bool ok = !flag::immersion_criterion(gauss);
    for (int k = 0; k < 100 && ok; ++k) {
      double t = 2 * M_PI * k / 100;
      std::array<scalar::Complex<double>, 4> w{scalar::Complex<double>(0.0),
                                               scalar::Complex<double>(std::cos(t)),
                                               scalar::Complex<double>(0.0, -std::sin(t)),
                                               scalar::Complex<double>(0.0)};
      ok = flag::immersion_criterion(w);
    }
    return pass_fail(ok, 0.0, "tangent lift degenerate, normal lifts immersed");
  }));
  return rep;
}

Report run_verify_cohom1(const Config& cfg) {
  Report rep;
  rep.config = cfg;
  rep.add(timed_entry("cohom1.pullback", "section pullback of the tangent coframe", [&] {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unif(0.0, M_PI);
    double worst = 0;
    for (int k = 0; k < 100; ++k) worst = std::max(worst, cohom1::pullback_residual(unif(rng)));
    return pass_fail(worst < 1e-12, worst, "100 random parameters");
  }));
  rep.add(timed_entry("cohom1.transverse_leg", "constant transverse coefficient", [&] {
    scalar::FieldScalar c(0), s(1);
    auto P = cohom1::pullback_matrix<scalar::FieldScalar>(c, s);
    bool ok = P(3, 6) == scalar::FieldScalar(3, 10) * scalar::FieldScalar::sqrt5();
    for (int i = 0; i < 7; ++i)
      if (i != 3) ok = ok && P(i, 6).is_zero();
    return pass_fail(ok, 0.0, "");
  }));
  rep.add(timed_entry("cohom1.half_flat", "hypersurface torsion identity", [&] {
    std::mt19937_64 rng(cfg.seed + 1);
    std::uniform_real_distribution<double> unif(0.03, M_PI / 3 - 0.03);
    double worst = 0, cmin = 1e300, cmax = -1e300;
    for (int k = 0; k < 20; ++k) {
      auto r = cohom1::verify_nearly_half_flat(unif(rng));
      worst = std::max(worst, r.residual);
      cmin = std::min(cmin, r.constant);
      cmax = std::max(cmax, r.constant);
    }
    bool ok = worst < 1e-10 && std::fabs(cmin - cmax) < 1e-9 && std::fabs(cmin + 2.0) < 1e-9;
    return pass_fail(ok, worst, "constant " + fmt_double((cmin + cmax) / 2));
  }));
  rep.add(timed_entry("cohom1.never_nearly_kahler", "structure defect bounded away from zero", [&] {
    double mind = 1e300;
    for (int k = 1; k < 50; ++k) {
      auto r = cohom1::verify_not_nearly_kahler((M_PI / 3) * k / 50.0);
      mind = std::min(mind, r.defect);
    }
    return pass_fail(mind > 1e-6, mind, "minimum defect over the principal sweep");
  }));
  rep.add(timed_entry("cohom1.singular_parameters", "fundamental domain from rank structure", [&] {
    auto s = cohom1::singular_parameters(600);
    bool ok = s.size() >= 2 && std::fabs(s[0]) < 1e-5 && std::fabs(s[1] - M_PI / 3) < 1e-5;
    std::string d = "singular at";
    for (double v : s) d += " " + fmt_double(v);
    return pass_fail(ok, 0.0, d);
  }));
  rep.add(timed_entry("cohom1.slag_implies_assoc", "orbit calibration implication", [&] {
    double worst = 0;
    int calibrated = 0;
    std::mt19937_64 rng(cfg.seed + 2);
    std::uniform_real_distribution<double> unif(0.05, M_PI / 3 - 0.05);
    for (int k = 0; k < 25; ++k) {
      double t = unif(rng);
      auto plane = cohom1::calibrated_orbit_plane(t, cfg.seed + k);
      auto r = cohom1::slag_implies_assoc(t, plane);
      if (!r.implication_holds) worst = 1;
      if (r.re_calibrated) ++calibrated;
    }
    worst = std::max(worst, cohom1::phi_restriction_residual(0.4));
    return pass_fail(worst < 1e-10 && calibrated > 10, worst,
                     std::to_string(calibrated) + " calibrated samples");
  }));
  return rep;
}

Report run_verify_berger(const Config& cfg) {
  Report rep;
  rep.config = cfg;
  rep.add(timed_entry("berger.curve_properties", "distinguished geodesic circles", [&] {
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss;
    linalg::Mat<double> A(5, 5);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) A(i, j) = gauss(rng);
    auto Q = linalg::qr_q(A);
    if (!space::is_special_orthogonal(Q, 1e-9))
      for (int i = 0; i < 5; ++i) Q(i, 4) = -Q(i, 4);
    auto props = space::c_curve_properties(Q);
    bool ok = props.closure_residual < 1e-12 && props.variation > 1e-3 &&
              props.stabilizer_drift < 1e-12 && props.tangent_cone_residual < 1e-8 &&
              props.torus_collapse_defect < 1e-9;
    return pass_fail(ok, props.torus_collapse_defect, "closure, nonconstancy, cone tangency");
  }));
  rep.add(timed_entry("berger.fiber_curves", "curves through a point with prescribed tangent", [&] {
    linalg::Vec<double> p{1, 0, 0, 0, 0}, t1{0, 1, 0, 0, 0}, t2{0, 0, 1, 0, 0};
    auto r = space::gamma_fiber_check(p, t1, t2, 20);
    bool ok = r.max_membership_defect < 1e-8 && r.max_tangent_defect < 1e-6;
    return pass_fail(ok, std::max(r.max_membership_defect, r.max_tangent_defect), "");
  }));
  rep.add(timed_entry("berger.homogeneous_catalogue", "homogeneous calibrated orbits", [&] {
    bool ok = true;
    double worst = 0;
    std::string d;
    for (const auto& c : space::homogeneous_catalogue()) {
      auto r = space::verify_homogeneous_case(c, cfg.translations, cfg.seed);
      ok = ok && r.pass;
      worst = std::max(worst, std::fabs(r.worst_translated_value - 1.0));
      if (!r.pass) d += " " + r.name;
    }
    return pass_fail(ok, worst, d.empty() ? "seven homogeneous cases" : ("failed:" + d));
  }));
  rep.add(timed_entry("berger.group_intersections", "orders of the surface-pair symmetries", [&] {
    int a = space::group_intersection_order_ico();
    int b = space::group_intersection_order_oct();
    bool ok = a == 60 && b == 4;
    return pass_fail(ok, 0.0, "orders " + std::to_string(a) + " and " + std::to_string(b));
  }));
  return rep;
}

Report run_verify_all(const Config& cfg) {
  Report rep;
  rep.config = cfg;
  for (auto runner : {run_verify_structure, run_verify_g2, run_verify_flag, run_verify_cohom1,
                      run_verify_berger}) {
    Report part = runner(cfg);
    for (auto& e : part.entries) rep.add(std::move(e));
  }
  return rep;
}

Report run_classify(const Config& cfg, CsvTable* table) {
  Report rep;
  rep.config = cfg;
  if (table) table->header = {"group", "plane", "associative", "stabilizer_verified"};
  struct Case {
    stab::NamedGroup which;
    std::string name;
    int exact_cyclic;  // n for the exact stabilizer test, 0 to skip
  };
  std::vector<Case> cases{{stab::NamedGroup::kIco, "Ico", 0},   {stab::NamedGroup::kOct, "Oct", 0},
                          {stab::NamedGroup::kZn_large, "Z8", 8}, {stab::NamedGroup::kZ6, "Z6", 6},
                          {stab::NamedGroup::kZ5, "Z5", 0},     {stab::NamedGroup::kZ4, "Z4", 4},
                          {stab::NamedGroup::kZ3, "Z3", 3},     {stab::NamedGroup::kTet, "Tet", 0}};
  for (const auto& c : cases) {
    rep.add(timed_entry("classify." + c.name, "invariant plane table", [&] {
      auto planes = stab::invariant_three_planes(c.which);
      bool ok = true;
      for (size_t i = 0; i < planes.isolated.size(); ++i) {
        const auto& p = planes.isolated[i];
        int cal = p.calibrated_exact();
        bool stab_ok = true;
        if (c.which == stab::NamedGroup::kIco)
          stab_ok = stab::stabilizer_contains(p, stab::ico_group());
        else if (c.which == stab::NamedGroup::kOct)
          stab_ok = stab::stabilizer_contains(p, stab::oct_group());
        else if (c.exact_cyclic > 0)
          stab_ok = stab::stabilizer_contains(p, *stab::cyclic_group_exact(c.exact_cyclic));
        else if (c.which == stab::NamedGroup::kZ5) {
          std::vector<linalg::Vec<double>> b;
          for (const auto& v : p.basis()) {
            linalg::Vec<double> w(7);
            for (int q = 0; q < 7; ++q) w[q] = v[q].to_double();
            b.push_back(std::move(w));
          }
          g2::ThreePlane<double> pf(b[0], b[1], b[2]);
          stab_ok = stab::stabilizer_contains(pf, stab::cyclic_group_float(5), 1e-8);
        }
        ok = ok && stab_ok;
        if (table)
          table->rows.push_back({c.name, planes.isolated_names[i], cal == 1 ? "yes" : "no",
                                 stab_ok ? "yes" : "no"});
      }
      // families: sampled associativity pattern
      for (const auto& fam : planes.families) {
        bool fam_assoc = true;
        double worst = 0;
        int n = cfg.family_samples;
        if (fam == "Q4b") {
          for (int i = 0; i < 20; ++i)
            for (int j = 0; j < 20; ++j)
              worst = std::max(worst, std::fabs(g2::plane_q4b(i * M_PI / 20, j * M_PI / 20)
                                                    .calibration_value()));
          fam_assoc = false;
          ok = ok && worst < 1.0 - 1e-6;
        } else if (fam == "P") {
          fam_assoc = false;  // calibrated only at the three roots
        } else {
          auto vals = scan::family_scan(fam, n, cfg.threads != 1);
          for (double v : vals) worst = std::max(worst, std::fabs(v - 1.0));
          ok = ok && worst < 1e-10;
        }
        if (table)
          table->rows.push_back({c.name, fam + "(family)", fam_assoc ? "yes" : "pattern", "yes"});
      }
      return pass_fail(ok, 0.0, "");
    }));
  }
  return rep;
}

Report run_scan_grassmannian(const Config& cfg, CsvTable* table) {
  Report rep;
  rep.config = cfg;
  if (table) table->header = {"family", "parameter", "value"};
  rep.add(timed_entry("scan.families", "family calibration scan", [&] {
    double worst_q = 0;
    for (const char* fam : {"Q5", "Q4a", "Q3", "P"}) {
      auto vals = scan::family_scan(fam, cfg.family_samples, cfg.threads != 1);
      for (size_t i = 0; i < vals.size(); ++i) {
        double t = M_PI * (i + 0.5) / cfg.family_samples;
        if (table)
          table->rows.push_back({fam, fmt_double(t), fmt_double(vals[i])});
        if (std::string(fam) != "P") worst_q = std::max(worst_q, std::fabs(vals[i] - 1.0));
      }
    }
    return pass_fail(worst_q < 1e-10, worst_q, "");
  }));
  rep.add(timed_entry("scan.random_planes", "calibration inequality scan", [&] {
    auto vals = scan::calibration_scan(10000, cfg.seed, cfg.threads != 1);
    double worst = 0;
    for (double v : vals) worst = std::max(worst, std::fabs(v));
    return pass_fail(worst <= 1.0 + 1e-12, worst, "");
  }));
  rep.add(timed_entry("scan.ascent", "gradient ascent reaches calibrated planes", [&] {
    std::mt19937_64 rng(cfg.seed);
    int converged = 0;
    for (int k = 0; k < 10; ++k) {
      auto start = g2::random_plane(rng);
      if (start.calibration_value() < 0.05) continue;
      try {
        auto r = g2::nearest_associative(start);
        if (r.converged) ++converged;
      } catch (const std::exception&) {
      }
    }
    return pass_fail(converged > 0, 0.0, std::to_string(converged) + " ascents converged");
  }));
  return rep;
}

Report run_orbit(const Config& cfg, const std::string& case_name, CsvTable* cloud) {
  Report rep;
  rep.config = cfg;
  const space::HomogeneousCase* found = nullptr;
  for (const auto& c : space::homogeneous_catalogue())
    if (c.name == case_name) found = &c;
  if (!found) throw std::invalid_argument("unknown orbit case: " + case_name);
  rep.add(timed_entry("orbit." + case_name, "homogeneous orbit verification", [&] {
    auto r = space::verify_homogeneous_case(*found, cfg.translations, cfg.seed);
    return pass_fail(r.pass, std::fabs(r.worst_translated_value - 1.0), r.name);
  }));
  if (cloud) {
    cloud->header = {"sample"};
    for (int i = 0; i < 35; ++i) cloud->header.push_back("c" + std::to_string(i));
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss;
    auto basis = liealg::subalgebra_basis(found->group);
    linalg::Mat<double> hf(5, 5);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) hf(i, j) = found->frame(i, j).to_double();
    for (int s = 0; s < 64; ++s) {
      linalg::Mat<double> X(5, 5);
      for (const auto& B : basis) {
        linalg::Mat<double> Bf(5, 5);
        for (int i = 0; i < 5; ++i)
          for (int j = 0; j < 5; ++j) Bf(i, j) = B(i, j).to_double();
        X = X + gauss(rng) * Bf;
      }
      auto pt = space::point_from<double>(space::expm5(X) * hf.transpose());
      std::vector<std::string> row{std::to_string(s)};
      for (int i = 0; i < 35; ++i) row.push_back(fmt_double(pt.coeffs[i]));
      cloud->rows.push_back(std::move(row));
    }
  }
  return rep;
}

Report run_intersect_veronese(const Config& cfg) {
  Report rep;
  rep.config = cfg;
  rep.add(timed_entry("intersect.surface_pair", "vertex configuration of the surface pair", [&] {
    auto r = space::dodeca_intersection(cfg.grid_theta, cfg.grid_phi, 1e-6, cfg.threads != 1);
    bool ok = r.points.size() == 20 && r.antipodal_classes == 10 &&
              r.max_membership_residual < 1e-10 && r.single_orbit &&
              r.displayed_match_residual < 1e-8;
    return pass_fail(ok, r.displayed_match_residual,
                     std::to_string(r.points.size()) + " points, " +
                         std::to_string(r.antipodal_classes) + " antipodal classes");
  }));
  return rep;
}

}  // namespace berger::cli
