// Command-line front end: computes peak-norm sequences, emits the named
// matrix families, prints certified angle data, fits growth exponents, and
// runs the named verification checks.
//
// Exit codes: 0 success, 2 configuration or input error, 3 operational
// failure (a valid request the computation could not complete), 4 one or
// more verification checks failed.

#include <algorithm>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mirs/analysis.hpp"
#include "mirs/constructions.hpp"
#include "mirs/diophantine.hpp"
#include "mirs/engine.hpp"
#include "mirs/errors.hpp"
#include "mirs/io.hpp"
#include "mirs/matrix.hpp"
#include "mirs/verify.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitOperational = 3;
constexpr int kExitVerification = 4;

int classify(const mirs::Error& e) {
  if (dynamic_cast<const mirs::DegenerateInput*>(&e) ||
      dynamic_cast<const mirs::SizeOverflow*>(&e) ||
      dynamic_cast<const mirs::DimensionMismatch*>(&e) ||
      dynamic_cast<const mirs::IndexOutOfRange*>(&e) ||
      dynamic_cast<const mirs::AlphaOutOfRange*>(&e))
    return kExitConfig;
  return kExitOperational;
}

// Depth that keeps the continued-fraction state compact while certifying
// far more digits than a double can represent. Quotients grow like
// q^(gamma-1), so for gamma > 1 a handful of levels already overshoots.
int pick_depth(double gamma) {
  if (gamma <= 1.0 + 1e-9) return 60;
  int depth = 2;
  while (depth < 60) {
    mirs::dio::CFTheta probe(gamma, depth);
    if (mpz_sizeinbase(probe.denominator(depth).get_mpz_t(), 10) > 60) break;
    ++depth;
  }
  return depth;
}

struct FamilyOptions {
  std::string family;
  std::string set_path;
  double alpha = 1.0 / 3.0;
  double theta = 0.0;  // 0 = derive from alpha via the certified angle
  int grid = 8;
};

double resolve_theta(const FamilyOptions& f) {
  if (f.theta != 0.0) return f.theta;
  if (!(f.alpha >= 1.0 / 3.0 && f.alpha < 0.5))
    throw mirs::AlphaOutOfRange("alpha must lie in [1/3, 1/2)");
  // alpha >= 1/3 guarantees gamma >= 1 exactly; rounding in the quotient can
  // land a hair below, so clamp back onto the admissible domain.
  double gamma = std::max(1.0, f.alpha / (1.0 - 2.0 * f.alpha));
  return mirs::dio::CFTheta(gamma, pick_depth(gamma)).theta();
}

mirs::MatrixSet resolve_set(const FamilyOptions& f) {
  if (!f.set_path.empty()) return mirs::io::load_set(f.set_path);
  if (f.family.empty())
    throw mirs::DegenerateInput("need --family or --set");
  if (f.family == "pj") return mirs::pj_matrices(f.alpha, resolve_theta(f));
  if (f.family == "harvey") return mirs::harvey_pair(resolve_theta(f));
  if (f.family == "pj-lift")
    return mirs::pair_lift(mirs::pj_matrices(f.alpha, resolve_theta(f)))
        .as_set();
  if (f.family == "kron-pj") {
    mirs::MatrixSet pj = mirs::pj_matrices(f.alpha, resolve_theta(f));
    return mirs::kron_product_set(pj, pj);
  }
  if (f.family == "gz") return mirs::gz_family(f.alpha, f.grid);
  throw mirs::DegenerateInput("unknown family: " + f.family +
                              " (expected pj, harvey, pj-lift, kron-pj, gz)");
}

void add_family_options(CLI::App* cmd, FamilyOptions& f, bool allow_file) {
  cmd->add_option("--family", f.family,
                  "named family: pj, harvey, pj-lift, kron-pj, gz");
  if (allow_file)
    cmd->add_option("--set", f.set_path, "path to a matrix-set JSON file");
  cmd->add_option("--alpha", f.alpha,
                  "growth exponent parameter (default 1/3)");
  cmd->add_option("--theta", f.theta,
                  "rotation angle override (default: certified angle for "
                  "the exponent implied by --alpha)");
  cmd->add_option("--grid", f.grid, "grid points for the gz family");
}

void add_engine_options(CLI::App* cmd, mirs::EngineConfig& cfg) {
  cmd->add_option("--tol", cfg.dedup_tol, "frontier dedup resolution");
  cmd->add_option("--capacity", cfg.capacity,
                  "max exact frontier states per level");
  cmd->add_option("--beam", cfg.beam_width,
                  "beam width after capacity degradation");
  cmd->add_option("--threads", cfg.threads,
                  "worker threads (0 = MIRS_THREADS or hardware)");
  cmd->add_flag("--exact-or-fail", cfg.exact_or_fail,
                "fail instead of degrading to lower bounds");
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    mirs::io::write_file(out_path, text);
}

std::string sidecar_path(const std::string& csv_path) {
  std::string p = csv_path;
  if (p.size() > 4 && p.substr(p.size() - 4) == ".csv")
    p.resize(p.size() - 4);
  return p + ".json";
}

void print_check_line(const mirs::verify::CheckReport& rep) {
  std::printf("[%s] %-22s %7.2fs  tol=%g\n", rep.pass ? "PASS" : "FAIL",
              rep.name.c_str(), rep.seconds, rep.tolerance);
}

json report_to_json(const mirs::verify::CheckReport& rep) {
  return json{{"name", rep.name},     {"claim", rep.claim},
              {"computed", rep.computed}, {"tolerance", rep.tolerance},
              {"pass", rep.pass},     {"seconds", rep.seconds}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"peak-norm sequences of matrix families, with certificates"};
  app.require_subcommand(1);

  // ---- compute -----------------------------------------------------------
  auto* compute = app.add_subcommand(
      "compute", "compute a_1..a_N for a family or a set file");
  FamilyOptions comp_fam;
  mirs::EngineConfig comp_cfg;
  int comp_N = 20;
  std::string comp_out;
  add_family_options(compute, comp_fam, true);
  add_engine_options(compute, comp_cfg);
  compute->add_option("--N", comp_N, "horizon (max product length)")
      ->check(CLI::PositiveNumber);
  compute->add_option("--out", comp_out,
                      "CSV output path (a .json sidecar with certificates "
                      "and witnesses is written next to it)");

  // ---- construct ---------------------------------------------------------
  auto* construct = app.add_subcommand(
      "construct", "emit a named family as a matrix-set JSON document");
  FamilyOptions cons_fam;
  std::string cons_out;
  add_family_options(construct, cons_fam, false);
  construct->add_option("--out", cons_out, "output path (default stdout)");

  // ---- theta -------------------------------------------------------------
  auto* theta = app.add_subcommand(
      "theta", "certified continued-fraction angle for a growth exponent");
  double th_gamma = 1.0;
  int th_depth = 0;
  int th_digits = 0;
  std::string th_out;
  theta->add_option("--gamma", th_gamma,
                    "approximation exponent (>= 1)");
  theta->add_option("--depth", th_depth,
                    "continued-fraction depth (default: adaptive)");
  auto* digits_opt = theta->add_option(
      "--digits", th_digits,
      "decimal digits of the angle to print (default: min(120, certified); "
      "fails if more digits are requested than the depth certifies)");
  theta->add_option("--out", th_out, "output path (default stdout)");

  // ---- fit ---------------------------------------------------------------
  auto* fit = app.add_subcommand(
      "fit", "fit the growth exponent of a computed sequence");
  FamilyOptions fit_fam;
  mirs::EngineConfig fit_cfg;
  int fit_N = 20, fit_lo = 0, fit_hi = 0;
  std::string fit_out;
  add_family_options(fit, fit_fam, true);
  add_engine_options(fit, fit_cfg);
  fit->add_option("--N", fit_N, "horizon")->check(CLI::PositiveNumber);
  fit->add_option("--window-lo", fit_lo, "fit window start (default N/4)");
  fit->add_option("--window-hi", fit_hi, "fit window end (default N)");
  fit->add_option("--out", fit_out, "output path (default stdout)");

  // ---- verify ------------------------------------------------------------
  auto* verify = app.add_subcommand(
      "verify", "run named verification checks (exit 4 on failure)");
  std::vector<std::string> ver_checks;
  bool ver_list = false, ver_quick = false, ver_json = false;
  mirs::verify::CheckOptions ver_opt;
  verify->add_option("--check", ver_checks,
                     "check name (repeatable; see --list)");
  verify->add_flag("--list", ver_list, "list check names and exit");
  verify->add_flag("--quick", ver_quick, "reduced instance sizes");
  verify->add_flag("--json", ver_json, "print full JSON reports");
  verify->add_option("--seed", ver_opt.seed, "seed for random instances");
  verify->add_option("--horizon", ver_opt.horizon,
                     "override the per-check horizon");
  verify->add_option("--beta", ver_opt.beta,
                     "bend exponent override for the bend check");

  // ---- report ------------------------------------------------------------
  auto* report = app.add_subcommand(
      "report", "run every verification check and summarize");
  bool rep_quick = false;
  std::string rep_out;
  unsigned rep_seed = mirs::verify::CheckOptions{}.seed;
  report->add_flag("--quick", rep_quick, "reduced instance sizes");
  report->add_option("--seed", rep_seed, "seed for random instances");
  report->add_option("--out", rep_out, "write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*compute) {
      mirs::MatrixSet set = resolve_set(comp_fam);
      mirs::MirsResult result = mirs::compute_mirs(set, comp_N, comp_cfg);
      std::string csv = mirs::io::result_to_csv(result);
      if (comp_out.empty()) {
        std::cout << csv;
      } else {
        mirs::io::write_file(comp_out, csv);
        mirs::io::write_file(sidecar_path(comp_out),
                             mirs::io::result_to_json(result).dump(2) + "\n");
      }
      return kExitOk;
    }

    if (*construct) {
      mirs::MatrixSet set = resolve_set(cons_fam);
      emit(mirs::io::set_to_json(set).dump(2) + "\n", cons_out);
      return kExitOk;
    }

    if (*theta) {
      if (!(th_gamma >= 1.0))
        throw mirs::DegenerateInput("--gamma must be >= 1");
      int depth = th_depth > 0 ? th_depth : pick_depth(th_gamma);
      mirs::dio::CFTheta cf(th_gamma, depth);
      int certified = cf.certified_digits();
      int digits = digits_opt->count() > 0 ? th_digits
                                           : std::min(120, certified);
      // vartheta_digits throws PrecisionExhausted when digits > certified.
      std::string vartheta = cf.vartheta_digits(digits);
      json quotients = json::array(), nums = json::array(),
           dens = json::array();
      for (int i = 1; i <= depth; ++i)
        quotients.push_back(cf.quotient(i).get_str());
      for (int i = 0; i <= depth; ++i) {
        nums.push_back(cf.numerator(i).get_str());
        dens.push_back(cf.denominator(i).get_str());
      }
      mirs::dio::BadnessReport bad = mirs::dio::badness_scan(cf, 100000);
      json doc{{"gamma", th_gamma},
               {"depth", depth},
               {"quotients", quotients},
               {"convergent_numerators", nums},
               {"convergent_denominators", dens},
               {"vartheta", vartheta},
               {"digits", digits},
               {"certified_digits", certified},
               {"kappa_estimate", bad.inf_value},
               {"kappa_argmin", bad.argmin}};
      emit(doc.dump(2) + "\n", th_out);
      return kExitOk;
    }

    if (*fit) {
      mirs::MatrixSet set = resolve_set(fit_fam);
      mirs::MirsResult result = mirs::compute_mirs(set, fit_N, fit_cfg);
      mirs::GrowthFit gf = mirs::fit_exponent(result, fit_lo, fit_hi);
      json doc{{"set", result.set_label},
               {"horizon", fit_N},
               {"exponent", gf.exponent},
               {"log_intercept", gf.log_intercept},
               {"window", {gf.window_lo, gf.window_hi}},
               {"max_abs_residual", gf.max_abs_residual},
               {"envelope_constant", gf.envelope_constant}};
      emit(doc.dump(2) + "\n", fit_out);
      return kExitOk;
    }

    if (*verify) {
      if (ver_list) {
        for (const auto& n : mirs::verify::check_names())
          std::cout << n << "\n";
        return kExitOk;
      }
      if (ver_checks.empty())
        throw mirs::DegenerateInput("need at least one --check (or --list)");
      ver_opt.quick = ver_quick;
      bool all_pass = true;
      json reports = json::array();
      for (const auto& name : ver_checks) {
        mirs::verify::CheckReport rep = mirs::verify::run_check(name, ver_opt);
        print_check_line(rep);
        if (ver_json) reports.push_back(report_to_json(rep));
        all_pass = all_pass && rep.pass;
      }
      if (ver_json) std::cout << reports.dump(2) << "\n";
      return all_pass ? kExitOk : kExitVerification;
    }

    if (*report) {
      mirs::verify::CheckOptions opt;
      opt.quick = rep_quick;
      opt.seed = rep_seed;
      bool all_pass = true;
      int passed = 0, total = 0;
      json reports = json::array();
      for (const auto& name : mirs::verify::check_names()) {
        mirs::verify::CheckReport rep = mirs::verify::run_check(name, opt);
        print_check_line(rep);
        reports.push_back(report_to_json(rep));
        all_pass = all_pass && rep.pass;
        passed += rep.pass ? 1 : 0;
        ++total;
      }
      std::printf("passed %d/%d\n", passed, total);
      if (!rep_out.empty())
        mirs::io::write_file(rep_out, reports.dump(2) + "\n");
      return all_pass ? kExitOk : kExitVerification;
    }
  } catch (const mirs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return classify(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOperational;
  }

  return kExitConfig;
}
