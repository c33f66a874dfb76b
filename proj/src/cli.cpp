#include "acclab/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include <CLI11.hpp>
#include <json.hpp>

#include "acclab/data_csv.hpp"
#include "acclab/harness.hpp"
#include "acclab/normal.hpp"
#include "acclab/problem.hpp"
#include "acclab/testing.hpp"
#include "acclab/theory.hpp"

namespace acclab {

namespace {

using nlohmann::json;

std::string iso_utc_now() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Writes the body to stdout, or to `out_path` plus a sidecar
// <out_path>.meta.json carrying the command line and timestamp. The body
// itself stays a deterministic function of the inputs.
void emit(const std::string& body, const std::string& out_path,
          const std::string& command, std::uint64_t master_seed,
          std::size_t rows) {
  if (out_path.empty()) {
    std::cout << body;
    return;
  }
  {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open " + out_path);
    out << body;
    if (!out.good()) throw std::runtime_error("write failed for " + out_path);
  }
  json meta;
  meta["command"] = command;
  meta["master_seed"] = master_seed;
  meta["generated_at"] = iso_utc_now();
  meta["rows"] = rows;
  std::ofstream side(out_path + ".meta.json");
  if (!side) {
    throw std::runtime_error("cannot open " + out_path + ".meta.json");
  }
  side << meta.dump(2) << '\n';
}

double resolve_alpha(const CLI::Option* alpha_opt, double alpha_val,
                     const CLI::Option* z_opt, double z_val) {
  double alpha = 0.05;
  if (alpha_opt->count() > 0) alpha = alpha_val;
  if (z_opt->count() > 0) alpha = std_normal_cdf(-z_val);
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("alpha: resolved level must lie in (0, 1)");
  }
  return alpha;
}

SpdMatrix resolve_sigma(const std::string& arg, std::size_t d) {
  if (arg == "identity") return SpdMatrix::identity(d);
  const std::string_view view = arg;
  if (view.rfind("diagonal:", 0) == 0) {
    const Matrix m = read_matrix_csv(arg.substr(9));
    if (!((m.rows == 1 && m.cols == d) || (m.rows == d && m.cols == 1))) {
      throw std::invalid_argument(
          "sigma: diagonal file must hold exactly " + std::to_string(d) +
          " values (1 row or 1 column)");
    }
    return SpdMatrix::diagonal(m.data);
  }
  if (view.rfind("dense:", 0) == 0) {
    const Matrix m = read_matrix_csv(arg.substr(6));
    if (m.rows != d || m.cols != d) {
      throw std::invalid_argument(
          "sigma: dense file must be " + std::to_string(d) + " x " +
          std::to_string(d) + ", got " + std::to_string(m.rows) + " x " +
          std::to_string(m.cols));
    }
    return SpdMatrix(d, m.data);
  }
  throw std::invalid_argument(
      "sigma: expected identity | diagonal:<path> | dense:<path>, got \"" +
      arg + "\"");
}

MeanShift parse_direction(const std::string& name) {
  if (name == "uniform") return MeanShift::uniform;
  if (name == "first-axis") return MeanShift::first_axis;
  throw std::invalid_argument("direction: expected uniform | first-axis");
}

// Identity-covariance case defers to the canonical construction; otherwise
// the unit direction is rescaled so the whitened shift length equals psi.
ProblemSpec spec_with_sigma(std::size_t d, std::size_t n, double psi,
                            MeanShift direction, SpdMatrix sigma) {
  if (sigma.kind() == SpdKind::identity) {
    return spec_for_experiment(d, n, psi, direction);
  }
  if (!(psi >= 0.0) || !std::isfinite(psi)) {
    throw std::invalid_argument("psi must be >= 0");
  }
  std::vector<double> u(d, 0.0);
  if (direction == MeanShift::uniform) {
    u.assign(d, 1.0 / std::sqrt(static_cast<double>(d)));
  } else {
    u[0] = 1.0;
  }
  const std::vector<double> w = sigma.forward_solve(u);
  double norm2 = 0.0;
  for (const double v : w) norm2 += v * v;
  const double scale = psi == 0.0 ? 0.0 : psi / std::sqrt(norm2);
  std::vector<double> mu1(d);
  for (std::size_t j = 0; j < d; ++j) mu1[j] = -scale * u[j];
  return ProblemSpec(n, std::vector<double>(d, 0.0), std::move(mu1),
                     std::move(sigma));
}

std::string outcome_csv(const TestOutcome& out) {
  std::ostringstream s;
  s << "statistic,threshold,reject,p_value,alpha,scheme\n"
    << format_double(out.statistic) << ',' << format_double(out.threshold)
    << ',' << (out.reject ? 1 : 0) << ',' << format_double(out.p_value) << ','
    << format_double(out.alpha) << ',' << out.scheme << '\n';
  return s.str();
}

json to_json(const TestOutcome& out) {
  json j;
  j["statistic"] = out.statistic;
  j["threshold"] = std::isfinite(out.threshold)
                       ? json(out.threshold)
                       : json(format_double(out.threshold));
  j["reject"] = out.reject;
  j["p_value"] = out.p_value;
  j["alpha"] = out.alpha;
  j["scheme"] = out.scheme;
  return j;
}

json to_json(const std::vector<PowerCurvePoint>& points) {
  json rows = json::array();
  for (const PowerCurvePoint& p : points) {
    json j;
    j["d"] = p.d;
    j["n"] = p.n;
    j["psi"] = p.psi;
    j["empirical_power"] = p.empirical_power;
    j["mc_stderr"] = p.mc_stderr;
    j["theory_minimax"] = p.theory_minimax;
    j["theory_lda_approx"] = p.theory_lda_approx;
    j["theory_lda_expected"] = p.theory_lda_expected;
    rows.push_back(std::move(j));
  }
  return rows;
}

std::string join_command(const std::vector<std::string>& args) {
  std::string cmd = "acclab";
  for (const std::string& a : args) {
    cmd += ' ';
    cmd += a;
  }
  return cmd;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{
      "Two-sample Gaussian mean testing: classifier-based statistics, "
      "permutation calibration, closed-form power curves, and Monte Carlo "
      "power experiments"};
  app.require_subcommand(1);
  const std::string command = join_command(args);

  // ---- shared option state ----------------------------------------------
  struct {
    std::string input, sigma = "identity", out, scheme = "split-accuracy";
    std::string stat = "hotelling", method, direction = "uniform";
    double alpha = 0.05, z_alpha = 2.0, psi = 0.0;
    std::uint64_t seed = 0;
    std::size_t perms = 199, reps = 200, workers = 1, d = 0, n = 0;
    std::vector<std::size_t> ds, ns;
    std::vector<double> psis;
    bool json_out = false, fixed_d = false;
  } opt;

  const auto add_common = [&](CLI::App* cmd, bool with_seed) {
    cmd->add_option("--out", opt.out, "Write output here (CSV/JSON) plus a "
                                      "<out>.meta.json sidecar");
    cmd->add_flag("--json", opt.json_out, "Emit JSON instead of CSV");
    if (with_seed) {
      cmd->add_option("--seed", opt.seed, "Master seed (default 0)");
    }
  };
  const auto add_level = [&](CLI::App* cmd) {
    CLI::Option* a = cmd->add_option(
        "--alpha", opt.alpha, "Test level in (0,1); default 0.05");
    CLI::Option* z = cmd->add_option(
        "--z-alpha", opt.z_alpha,
        "Upper rejection threshold; sets alpha = Phi(-z)");
    a->excludes(z);
    z->excludes(a);
    return std::pair<CLI::Option*, CLI::Option*>{a, z};
  };

  // ---- test ---------------------------------------------------------------
  CLI::App* test_cmd =
      app.add_subcommand("test", "Run one two-sample test on a CSV dataset");
  test_cmd->add_option("--input", opt.input, "Dataset CSV (f0..f{d-1},label)")
      ->required();
  test_cmd
      ->add_option("--scheme", opt.scheme,
                   "split-accuracy (analytic) | hotelling | sd (both "
                   "permutation-calibrated); default split-accuracy")
      ->check(CLI::IsMember({"split-accuracy", "hotelling", "sd"}));
  test_cmd->add_option("--sigma", opt.sigma,
                       "identity | diagonal:<csv> | dense:<csv>");
  test_cmd->add_option("--P", opt.perms,
                       "Permutation count for hotelling/sd (default 199)");
  const auto test_level = add_level(test_cmd);
  add_common(test_cmd, true);
  test_cmd->callback([&] {
    const TwoSampleData data = read_two_sample_csv(opt.input);
    const double alpha = resolve_alpha(test_level.first, opt.alpha,
                                       test_level.second, opt.z_alpha);
    const SpdMatrix sigma = resolve_sigma(opt.sigma, data.x.cols);
    const PermutationConfig cfg{opt.perms, SeedSpec{opt.seed, 0}};
    TestOutcome outcome;
    if (opt.scheme == "split-accuracy") {
      outcome = test_split_accuracy(data, sigma, alpha);
    } else if (opt.scheme == "hotelling") {
      outcome = perm_test_hotelling(data, sigma, cfg, alpha);
    } else {
      outcome = perm_test_sd(data, cfg, alpha);
    }
    emit(opt.json_out ? to_json(outcome).dump(2) + "\n" : outcome_csv(outcome),
         opt.out, command, opt.seed, 1);
  });

  // ---- perm ---------------------------------------------------------------
  CLI::App* perm_cmd = app.add_subcommand(
      "perm", "Permutation-test protocols on a CSV dataset");
  perm_cmd->add_option("--input", opt.input, "Dataset CSV")->required();
  perm_cmd
      ->add_option("--method", opt.method,
                   "direct (re-split, recompute --stat) | 1 (fixed rule, "
                   "permuted held-out bag) | 2 (re-pool and retrain)")
      ->required()
      ->check(CLI::IsMember({"direct", "1", "2"}));
  perm_cmd
      ->add_option("--stat", opt.stat,
                   "Statistic for --method direct: hotelling | sd")
      ->check(CLI::IsMember({"hotelling", "sd"}));
  perm_cmd->add_option("--P", opt.perms, "Permutation count (default 199)");
  perm_cmd->add_option("--sigma", opt.sigma,
                       "identity | diagonal:<csv> | dense:<csv>");
  const auto perm_level = add_level(perm_cmd);
  add_common(perm_cmd, true);
  perm_cmd->callback([&] {
    const TwoSampleData data = read_two_sample_csv(opt.input);
    const double alpha = resolve_alpha(perm_level.first, opt.alpha,
                                       perm_level.second, opt.z_alpha);
    const SpdMatrix sigma = resolve_sigma(opt.sigma, data.x.cols);
    const PermutationConfig cfg{opt.perms, SeedSpec{opt.seed, 0}};
    TestOutcome outcome;
    if (opt.method == "1") {
      outcome = perm_test_method1(data, sigma, cfg, alpha);
    } else if (opt.method == "2") {
      outcome = perm_test_method2(data, sigma, cfg, alpha);
    } else if (opt.stat == "sd") {
      outcome = perm_test_sd(data, cfg, alpha);
    } else {
      outcome = perm_test_hotelling(data, sigma, cfg, alpha);
    }
    emit(opt.json_out ? to_json(outcome).dump(2) + "\n" : outcome_csv(outcome),
         opt.out, command, opt.seed, 1);
  });

  // ---- theory --------------------------------------------------------------
  CLI::App* theory_cmd = app.add_subcommand(
      "theory", "Closed-form power curves over a (d, n, psi) grid");
  theory_cmd->add_option("--d", opt.ds, "Dimensions")->required();
  theory_cmd->add_option("--n", opt.ns, "Per-class sizes (even)")->required();
  theory_cmd->add_option("--psi", opt.psis, "SNR values")->required();
  const auto theory_level = add_level(theory_cmd);
  add_common(theory_cmd, false);
  theory_cmd->callback([&] {
    const double alpha = resolve_alpha(theory_level.first, opt.alpha,
                                       theory_level.second, opt.z_alpha);
    std::ostringstream csv;
    json rows = json::array();
    csv << "d,n,psi,alpha,theory_minimax,theory_low_snr,theory_lda_approx,"
           "theory_lda_expected\n";
    std::size_t count = 0;
    for (const std::size_t d : opt.ds) {
      for (const std::size_t n : opt.ns) {
        for (const double psi : opt.psis) {
          const PowerQuery q{psi, n, d, alpha};
          const double minimax = minimax_power_lower_bound(q);
          const double low = low_snr_power(q);
          const double approx = lda_power_approx(q);
          const double expected = lda_expected_power(q);
          ++count;
          if (opt.json_out) {
            json j;
            j["d"] = d;
            j["n"] = n;
            j["psi"] = psi;
            j["alpha"] = alpha;
            j["theory_minimax"] = minimax;
            j["theory_low_snr"] = low;
            j["theory_lda_approx"] = approx;
            j["theory_lda_expected"] = expected;
            rows.push_back(std::move(j));
          } else {
            csv << d << ',' << n << ',' << format_double(psi) << ','
                << format_double(alpha) << ',' << format_double(minimax)
                << ',' << format_double(low) << ',' << format_double(approx)
                << ',' << format_double(expected) << '\n';
          }
        }
      }
    }
    emit(opt.json_out ? rows.dump(2) + "\n" : csv.str(), opt.out, command, 0,
         count);
  });

  // ---- power ----------------------------------------------------------------
  CLI::App* power_cmd = app.add_subcommand(
      "power", "Monte Carlo power estimate for one configuration");
  power_cmd->add_option("--d", opt.d, "Dimension")->required();
  power_cmd->add_option("--n", opt.n, "Per-class size (even)")->required();
  power_cmd->add_option("--psi", opt.psi, "SNR")->required();
  power_cmd->add_option("--R", opt.reps, "Repetitions (default 200)");
  power_cmd
      ->add_option("--scheme", opt.scheme, "Test scheme (default "
                                           "split-accuracy)")
      ->check(CLI::IsMember({"split-accuracy", "hotelling", "sd",
                             "perm-direct", "perm-method1", "perm-method2"}));
  power_cmd->add_option("--P", opt.perms,
                        "Permutation count for permutation schemes");
  power_cmd
      ->add_option("--direction", opt.direction, "uniform | first-axis")
      ->check(CLI::IsMember({"uniform", "first-axis"}));
  power_cmd->add_option("--sigma", opt.sigma,
                        "identity | diagonal:<csv> | dense:<csv>");
  power_cmd->add_option("--workers", opt.workers, "Thread count (default 1)");
  const auto power_level = add_level(power_cmd);
  add_common(power_cmd, true);
  power_cmd->callback([&] {
    const double alpha = resolve_alpha(power_level.first, opt.alpha,
                                       power_level.second, opt.z_alpha);
    const ProblemSpec spec =
        spec_with_sigma(opt.d, opt.n, opt.psi, parse_direction(opt.direction),
                        resolve_sigma(opt.sigma, opt.d));
    const std::vector<PowerCurvePoint> points{
        estimate_power(spec, parse_test_scheme(opt.scheme), alpha, opt.reps,
                       SeedSpec{opt.seed, 0}, opt.workers, opt.perms)};
    emit(opt.json_out ? to_json(points).dump(2) + "\n"
                      : power_csv_string(points),
         opt.out, command, opt.seed, points.size());
  });

  // ---- reproduce -------------------------------------------------------------
  CLI::App* repro = app.add_subcommand(
      "reproduce", "Re-run the canonical power-curve experiments");
  repro->require_subcommand(1);
  const auto add_repro = [&](const char* name, const char* help,
                             bool increasing) {
    CLI::App* cmd = repro->add_subcommand(name, help);
    cmd->add_option("--R", opt.reps, "Repetitions per point (default 200)");
    cmd->add_option("--workers", opt.workers, "Thread count (default 1)");
    if (increasing) {
      cmd->add_flag("--fixed-d", opt.fixed_d,
                    "Hold d = n = 100 while e varies (alternative reading)");
    }
    add_common(cmd, true);
    cmd->callback([&, increasing] {
      const std::vector<PowerCurvePoint> points =
          increasing ? experiment_increasing_power(opt.seed, opt.fixed_d,
                                                   opt.reps, opt.workers)
                     : experiment_constant_power(opt.seed, opt.reps,
                                                 opt.workers);
      emit(opt.json_out ? to_json(points).dump(2) + "\n"
                        : power_csv_string(points),
           opt.out, command, opt.seed, points.size());
    });
  };
  add_repro("constant-power",
            "30 points, d = n = 20e, psi = 3/d^(1/4), z = 2", false);
  add_repro("increasing-power",
            "30 points, psi = e/(10 d^(1/4)), z = 2", true);

  // ---- parse & dispatch -------------------------------------------------------
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("acclab");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace acclab
