// tmspline: build and check 3-monotone cubic spline approximations.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tmspline/funcs.hpp"
#include "tmspline/io.hpp"
#include "tmspline/mono_builder.hpp"
#include "tmspline/s3_builder.hpp"
#include "tmspline/verify.hpp"

namespace fs = std::filesystem;
using namespace tmspline;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
  std::string function = "exp";
  double a = -1, b = 1;
  int n = 16;
  std::vector<int> n_list{8, 16, 32, 64};
  std::string output;
  int grid = 64;
  double tol = kDefaultMonotoneTol;
  std::uint64_t seed = 20240611;
  std::string format = "csv";
  int trials = 10000;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const char* verdict(bool pass) { return pass ? "PASS" : "FAIL"; }

void validate(const RunConfig& c) {
  if (!(c.a < c.b)) throw UsageError("interval must satisfy a < b");
  if (!std::isfinite(c.a) || !std::isfinite(c.b)) throw UsageError("interval must be finite");
}

// Writes to <output>/<name> when an output directory was given, else stdout.
void emit(const RunConfig& c, const std::string& name, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  fs::create_directories(c.output);
  const auto path = fs::path(c.output) / name;
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
  std::cerr << "wrote " << path.string() << '\n';
}

double grid_max_error(const RealFunction& f, const RealFunction& s, double a, double b, int samples) {
  return sup_abs([&](double x) { return f(x) - s(x); }, a, b, samples);
}

double grid_max_abs(const RealFunction& f, double a, double b, int samples) {
  return sup_abs(f, a, b, samples);
}

std::string error_table_csv(const std::vector<IntervalError>& rows) {
  std::ostringstream os;
  write_error_csv(os, rows);
  return os.str();
}

int cmd_build(const RunConfig& c) {
  const auto f = resolve_function(c.function);
  const auto p = Partition::equidistant(c.a, c.b, c.n);
  const auto s = build_spline(f, p);
  const auto report = check_3monotone_spline(s.form24, c.tol);
  const int samples = c.n * c.grid;
  const double err = grid_max_error(f, s, c.a, c.b, samples);

  if (!c.output.empty()) {
    emit(c, "spline.json", to_json(s).dump(2) + "\n");
    std::ostringstream csv;
    csv << "x,f,s,f_minus_s\n";
    for (int i = 0; i <= samples; ++i) {
      const double x = i == samples ? c.b : c.a + (c.b - c.a) * i / samples;
      const double fx = f(x), sx = s(x);
      csv << format_double(x) << ',' << format_double(fx) << ',' << format_double(sx) << ','
          << format_double(fx - sx) << '\n';
    }
    emit(c, "grid.csv", csv.str());
  }

  std::cout << "max_error," << format_double(err) << '\n';
  std::cout << "knots," << s.knots().size() << '\n';
  std::cout << error_table_csv(spline_error_report(f, s, p, c.grid));
  std::cout << "3-monotone," << verdict(report.pass) << '\n';
  return report.pass ? kExitOk : kExitFail;
}

int cmd_verify(const RunConfig& c) {
  const auto f = resolve_function(c.function);
  const auto p = Partition::equidistant(c.a, c.b, c.n);
  const auto s = build_spline(f, p);
  const auto mono = check_3monotone_spline(s.form24, c.tol);
  const auto meta = theorem_metadata(s, p);
  const bool screen = check_function_3monotone(f, c.a, c.b, 2000, c.seed);

  double forms = 0;
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> u(c.a, c.b);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng);
    forms = std::max(forms, std::abs(s.form23(x) - s(x)) / std::max(1.0, std::abs(s(x))));
  }
  const bool forms_ok = forms <= 1e-9;
  const bool ends_ok = std::abs(s(c.a) - f(c.a)) <= 1e-12 * std::max(1.0, std::abs(f(c.a))) &&
                       std::abs(s(c.b) - f(c.b)) <= 1e-12 * std::max(1.0, std::abs(f(c.b)));
  const bool count_ok = !s.plan || s.plan->count_bound_ok;

  nlohmann::json j = {
      {"function", c.function},
      {"n", c.n},
      {"input_screen_3monotone", screen},
      {"spline_3monotone", mono.pass},
      {"scale", mono.scale},
      {"worst_jump", {{"knot", mono.worst_jump.knot},
                      {"left", mono.worst_jump.left},
                      {"right", mono.worst_jump.right}}},
      {"worst_slope", {{"lo", mono.worst_slope.lo},
                       {"hi", mono.worst_slope.hi},
                       {"slope", mono.worst_slope.slope}}},
      {"worst_c1_gap", mono.worst_c1_gap},
      {"forms_max_rel_diff", forms},
      {"interpolates_endpoints", ends_ok},
      {"knot_distances_ok", meta.distances_ok},
      {"knot_gaps_ok", meta.gaps_ok},
      {"knot_count_ok", count_ok}};
  const bool pass = mono.pass && forms_ok && ends_ok && meta.distances_ok && meta.gaps_ok;
  j["verdict"] = verdict(pass);

  if (c.format == "json") {
    emit(c, "verify.json", j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "check,value\n";
    for (const auto& [k, v] : j.items()) {
      if (v.is_object()) continue;
      os << k << ',';
      if (v.is_number_float())
        os << format_double(v.get<double>());
      else if (v.is_string())
        os << v.get<std::string>();
      else
        os << v.dump();
      os << '\n';
    }
    emit(c, "verify.csv", os.str());
  }
  return pass ? kExitOk : kExitFail;
}

struct SweepRow {
  int n = 0;
  double h = 0, err = 0, omega = 0, ratio = 0, floor = 0;
};

int cmd_sweep(const RunConfig& c) {
  if (c.n_list.size() < 2) throw UsageError("sweep needs at least two values in --n-list");
  for (int n : c.n_list)
    if (n < 1) throw UsageError("--n-list values must be >= 1");
  const auto f = resolve_function(c.function);
  std::vector<SweepRow> rows(c.n_list.size());
  const int count = static_cast<int>(rows.size());
  std::vector<std::exception_ptr> failures(rows.size());
#ifdef TMSPLINE_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int i = 0; i < count; ++i) {
    try {
      const int n = c.n_list[i];
      const auto p = Partition::equidistant(c.a, c.b, n);
      const auto s = build_spline(f, p);
      SweepRow& r = rows[i];
      r.n = n;
      r.h = p.mean_h();
      r.err = sup_abs_serial([&](double x) { return f(x) - s(x); }, c.a, c.b, n * c.grid);
      r.omega = modulus_serial(f, 4, r.h, c.a, c.b).value;
      r.floor = noise_floor(sup_abs_serial(f, c.a, c.b, n * c.grid));
      r.ratio = ratio_above_floor(r.err, r.omega, r.floor);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  }
  for (const auto& e : failures)
    if (e) std::rethrow_exception(e);

  auto order = [&](std::size_t i) -> std::string {
    if (i == 0) return "";
    const auto& prev = rows[i - 1];
    const auto& cur = rows[i];
    if (prev.err <= prev.floor && cur.err <= cur.floor) return "exact";
    if (cur.err <= cur.floor) return "inf";
    return format_double(std::log(prev.err / cur.err) / std::log(prev.h / cur.h));
  };

  if (c.format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t i = 0; i < rows.size(); ++i)
      arr.push_back({{"n", rows[i].n},
                     {"h", rows[i].h},
                     {"sup_error", rows[i].err},
                     {"omega4", rows[i].omega},
                     {"ratio", rows[i].ratio},
                     {"order", order(i)}});
    emit(c, "sweep.json", arr.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "n,h,sup_error,omega4,ratio,order\n";
    for (std::size_t i = 0; i < rows.size(); ++i)
      os << rows[i].n << ',' << format_double(rows[i].h) << ',' << format_double(rows[i].err) << ','
         << format_double(rows[i].omega) << ',' << format_double(rows[i].ratio) << ',' << order(i)
         << '\n';
    emit(c, "sweep.csv", os.str());
  }
  return kExitOk;
}

int cmd_compare(const RunConfig& c) {
  const auto f = resolve_function(c.function);
  if (c.n < 3) throw UsageError("compare needs n >= 3");
  const auto p = Partition::equidistant(c.a, c.b, c.n);
  const auto s3 = build_s3(f, p);
  const auto s = build_spline(f, p);
  const int samples = c.n * c.grid;
  const double e3 = grid_max_error(f, [&](double x) { return s3.piecewise(x); }, c.a, c.b, samples);
  const double es = grid_max_error(f, s, c.a, c.b, samples);
  const bool m3 = check_3monotone_spline(s3.form7, c.tol).pass;
  const bool ms = check_3monotone_spline(s.form24, c.tol).pass;
  const double floor = noise_floor(grid_max_abs(f, c.a, c.b, samples));

  std::ostringstream os;
  if (c.format == "json") {
    nlohmann::json j = {{"S3", {{"sup_error", e3}, {"monotone", verdict(m3)}}},
                        {"s", {{"sup_error", es}, {"monotone", verdict(ms)}}},
                        {"error_ratio", ratio_above_floor(es, e3, floor)}};
    os << j.dump(2) << '\n';
    emit(c, "compare.json", os.str());
  } else {
    os << "spline,sup_error,3-monotone\n";
    os << "S3," << format_double(e3) << ',' << verdict(m3) << '\n';
    os << "s," << format_double(es) << ',' << verdict(ms) << '\n';
    emit(c, "compare.csv", os.str());
  }
  return ms ? kExitOk : kExitFail;
}

int cmd_lemma1(const RunConfig& c) {
  if (c.trials < 1) throw UsageError("--trials must be >= 1");
  const auto f = resolve_function(c.function);
  if (!check_function_3monotone(f, c.a, c.b, 2000, c.seed)) {
    std::cerr << "refused: input not 3-monotone on [" << format_double(c.a) << ", "
              << format_double(c.b) << "]\n";
    return kExitFail;
  }
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> unit(0, 1);
  const double len = c.b - c.a;
  int v9 = 0, v10 = 0, applicable = 0;
  double slack9 = std::numeric_limits<double>::infinity();
  double slack10 = std::numeric_limits<double>::infinity();
  for (int t = 0; t < c.trials; ++t) {
    const double h = len / 5 * (1e-3 + (1 - 1e-3) * unit(rng));
    const double start = c.a + (len - 5 * h) * unit(rng);
    std::array<double, 6> x{};
    for (int i = 0; i < 6; ++i) x[i] = start + (5 - i) * h;
    x[0] = std::min(x[0], c.b);
    const auto r = lemma1_check(f, x);
    if (!r.upper_holds) ++v9;
    slack9 = std::min(slack9, r.upper_slack);
    if (r.lower_holds) {
      ++applicable;
      if (!*r.lower_holds) ++v10;
      slack10 = std::min(slack10, *r.lower_slack);
    }
  }
  std::ostringstream os;
  if (c.format == "json") {
    nlohmann::json j = {{"trials", c.trials},
                        {"upper_violations", v9},
                        {"lower_applicable", applicable},
                        {"lower_violations", v10},
                        {"min_upper_slack", slack9},
                        {"min_lower_slack", applicable ? nlohmann::json(slack10) : nlohmann::json()}};
    os << j.dump(2) << '\n';
    emit(c, "lemma1.json", os.str());
  } else {
    os << "trials,upper_violations,lower_applicable,lower_violations,min_upper_slack,min_lower_slack\n";
    os << c.trials << ',' << v9 << ',' << applicable << ',' << v10 << ',' << format_double(slack9)
       << ',' << (applicable ? format_double(slack10) : "") << '\n';
    emit(c, "lemma1.csv", os.str());
  }
  return v9 == 0 && v10 == 0 ? kExitOk : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shape-preserving (3-monotone) C1 cubic spline approximation"};
  app.footer(expression_syntax());
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub, bool with_n) {
    sub->add_option("-f,--function", cfg.function, "Function to approximate")->capture_default_str();
    sub->add_option("-a", cfg.a, "Left end of the interval")->capture_default_str();
    sub->add_option("-b", cfg.b, "Right end of the interval")->capture_default_str();
    if (with_n)
      sub->add_option("-n", cfg.n, "Number of partition intervals")
          ->check(CLI::Range(1, 1 << 20))
          ->capture_default_str();
    sub->add_option("-o,--output", cfg.output, "Output directory (default: stdout)");
    sub->add_option("--grid", cfg.grid, "Evaluation points per interval")
        ->check(CLI::Range(32, 1 << 20))
        ->capture_default_str();
    sub->add_option("--tol", cfg.tol, "Relative tolerance of the 3-monotonicity check")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--seed", cfg.seed, "Seed of the randomized checks")->capture_default_str();
    sub->add_option("--format", cfg.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
  };

  auto* build = app.add_subcommand("build", "Build s, write spline.json and grid.csv");
  add_common(build, true);
  auto* verify = app.add_subcommand("verify", "Build s and check its properties");
  add_common(verify, true);
  auto* sweep = app.add_subcommand("sweep", "Error against omega_4 over several n");
  add_common(sweep, false);
  sweep->add_option("--n-list", cfg.n_list, "Values of n")->delimiter(',')->capture_default_str();
  auto* compare = app.add_subcommand("compare", "Unconstrained S3 against s");
  add_common(compare, true);
  auto* lemma1 = app.add_subcommand("lemma1", "Fuzz the six-point divided-difference inequalities");
  add_common(lemma1, false);
  lemma1->add_option("--trials", cfg.trials, "Number of random windows")
      ->check(CLI::Range(1, 1 << 30))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    validate(cfg);
    if (*build) return cmd_build(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*sweep) return cmd_sweep(cfg);
    if (*compare) return cmd_compare(cfg);
    if (*lemma1) return cmd_lemma1(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const AdmissibilityError& e) {
    std::cerr << e.what() << '\n';
    return kExitFail;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
