// minkit command line: compute nonlocality measures on state files, sweep
// state families to CSV, trace sequential weak-measurement curves, and run
// the verification battery.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "minkit/errors.hpp"
#include "minkit/measures.hpp"
#include "minkit/state_io.hpp"
#include "minkit/verification.hpp"

namespace {

using nlohmann::json;
using namespace minkit;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitUnconverged = 3;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::vector<std::string> split_csv_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

json certificate_to_json(const OptimizerResult& cert) {
  return json{{"best_value", cert.best_value},
              {"params", cert.best_params.values},
              {"evaluations", cert.evaluations},
              {"restarts", cert.restarts},
              {"converged", cert.converged}};
}

json report_to_json(const MeasureReport& rep, bool paper_scale) {
  json j{{"name", rep.name},
         {"value", paper_scale ? 2.0 * rep.value : rep.value},
         {"method", to_string(rep.method)}};
  if (paper_scale) j["scaled_by"] = 2;
  if (rep.cross_check) {
    j["cross_check"] = *rep.cross_check;
    j["cross_check_tol"] = rep.cross_check_tol;
  }
  if (rep.certificate) j["certificate"] = certificate_to_json(*rep.certificate);
  if (!rep.diagnostics.empty()) j["diagnostics"] = rep.diagnostics;
  if (rep.equals_hellinger) j["equals_hellinger"] = *rep.equals_hellinger;
  return j;
}

struct MeasureArgs {
  std::string state_file;
  std::string measures = "h_min";
  double weak_strength = 1.0;
  std::uint64_t seed = 20240901;
  long budget = 20000;
  bool allow_unconverged = false;
  bool paper_scale = false;
};

int run_measure(const MeasureArgs& args) {
  DensityMatrix rho = load_state(args.state_file);
  MeasureOptions opts;
  opts.seed = args.seed;
  opts.budget = args.budget;

  std::vector<MeasureReport> reports;
  for (const std::string& name : split_csv_list(args.measures)) {
    if (name == "h_min") {
      reports.push_back(h_min(rho, opts));
    } else if (name == "hs_min") {
      reports.push_back(hs_min_2xn(rho, opts));
    } else if (name == "h_min_upper_bound") {
      MeasureReport rep;
      rep.name = "h_min_upper_bound";
      rep.value = h_min_upper_bound(rho);
      rep.method = Method::ClosedForm;
      reports.push_back(std::move(rep));
    } else if (name == "skew_min") {
      reports.push_back(skew_min(rho, opts));
    } else if (name == "affinity_min") {
      reports.push_back(affinity_min(rho, opts));
    } else if (name == "weak_h_min") {
      reports.push_back(weak_h_min(rho, args.weak_strength, opts));
    } else {
      throw OutOfRange("unknown measure: " + name);
    }
  }

  bool unconverged = std::any_of(
      reports.begin(), reports.end(), [](const MeasureReport& r) {
        return r.certificate && !r.certificate->converged;
      });

  json out{{"state", args.state_file},
           {"m", rho.m},
           {"n", rho.n},
           {"measures", json::array()}};
  for (const MeasureReport& rep : reports) {
    out["measures"].push_back(report_to_json(rep, args.paper_scale));
  }
  std::cout << out.dump(2) << "\n";

  if (unconverged && !args.allow_unconverged) {
    std::cerr << "error: optimizer did not converge"
                 " (use --allow-unconverged to accept)\n";
    return kExitUnconverged;
  }
  return kExitOk;
}

struct SweepArgs {
  std::string family;
  double start = 0.0;
  double stop = 1.0;
  int steps = 101;
  int dim = 2;
  std::string measures = "h_min,hs_min";
  std::string out_path;
  bool paper_scale = false;
  std::uint64_t seed = 20240901;
  int jobs = 1;
};

double sweep_value(const SweepArgs& args, const std::string& measure,
                   double param) {
  if (args.family == "bell_diagonal") {
    std::array<double, 3> c{-param, -param, -param};
    if (measure == "h_min") return h_min_bell_diagonal(c);
    if (measure == "hs_min") {
      MeasureOptions mo;
      mo.cross_check = false;
      return hs_min_2xn(bell_diagonal(c), mo).value;
    }
  } else if (args.family == "isotropic") {
    if (measure == "h_min") return h_min_isotropic(args.dim, param);
    if (measure == "hs_min") {
      MeasureOptions mo;
      mo.cross_check = false;
      return hs_min_2xn(isotropic(args.dim, param), mo).value;
    }
  } else if (args.family == "werner") {
    if (measure == "h_min") return h_min_werner(args.dim, param);
    if (measure == "hs_min") {
      MeasureOptions mo;
      mo.cross_check = false;
      return hs_min_2xn(werner(args.dim, param), mo).value;
    }
  } else {
    throw OutOfRange("unknown family: " + args.family);
  }
  throw OutOfRange("unsupported sweep measure: " + measure);
}

int run_sweep(const SweepArgs& args) {
  if (args.steps < 2) throw OutOfRange("sweep: steps must be >= 2");
  std::vector<std::string> measures = split_csv_list(args.measures);
  if (measures.empty()) throw OutOfRange("sweep: no measures requested");

  const int points = args.steps;
  std::vector<double> params(points);
  for (int i = 0; i < points; ++i) {
    params[i] = args.start + (args.stop - args.start) * i / (points - 1);
  }
  // Validate the range eagerly so bad input fails before any work.
  sweep_value(args, measures[0], params.front());
  sweep_value(args, measures[0], params.back());

  std::vector<std::vector<double>> values(
      points, std::vector<double>(measures.size()));
  auto worker = [&](int begin, int end) {
    for (int i = begin; i < end; ++i)
      for (std::size_t mi = 0; mi < measures.size(); ++mi)
        values[i][mi] = sweep_value(args, measures[mi], params[i]);
  };
  int jobs = std::max(1, args.jobs);
  if (jobs == 1) {
    worker(0, points);
  } else {
    std::vector<std::thread> pool;
    int chunk = (points + jobs - 1) / jobs;
    for (int j = 0; j < jobs; ++j) {
      int begin = j * chunk;
      int end = std::min(points, begin + chunk);
      if (begin < end) pool.emplace_back(worker, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  std::ostringstream csv;
  csv << "param";
  for (const std::string& m : measures) csv << "," << m;
  csv << "\n";
  const double scale = args.paper_scale ? 2.0 : 1.0;
  for (int i = 0; i < points; ++i) {
    csv << fmt_double(params[i]);
    for (double v : values[i]) csv << "," << fmt_double(scale * v);
    csv << "\n";
  }

  if (args.out_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(args.out_path);
    if (!out) throw ParseError("cannot write: " + args.out_path);
    out << csv.str();
  }
  return kExitOk;
}

struct SeqWeakArgs {
  std::string state_file;
  std::string x_list = "1,1.5,3";
  int n_max = 10;
  std::string out_path;
  std::uint64_t seed = 20240901;
  long budget = 20000;
};

int run_seqweak(const SeqWeakArgs& args) {
  if (args.n_max < 1) throw OutOfRange("seqweak: n-max must be >= 1");
  std::vector<double> xs;
  for (const std::string& tok : split_csv_list(args.x_list)) {
    double x = std::stod(tok);
    if (!(x > 0.0)) throw OutOfRange("seqweak: strengths must be > 0");
    xs.push_back(x);
  }
  if (xs.empty()) throw OutOfRange("seqweak: no strengths given");

  DensityMatrix rho = load_state(args.state_file);
  MeasureOptions opts;
  opts.seed = args.seed;
  opts.budget = args.budget;

  // Measure along the h_min-optimal invariant measurement.
  MeasureReport base = h_min(rho, opts);
  ProjectiveMeasurement P =
      base.certificate
          ? base.certificate->best_measurement
          : *marginal_invariant_measurement(rho).measurement;
  TwoOutcomeSplit split = split_from_measurement(P);

  std::ostringstream csv;
  csv << "x,n,H0n\n";
  for (double x : xs) {
    for (int n = 0; n <= args.n_max; ++n) {
      csv << fmt_double(x) << "," << n << ","
          << fmt_double(seq_distance(rho, split, x, 0, n)) << "\n";
    }
  }
  if (args.out_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(args.out_path);
    if (!out) throw ParseError("cannot write: " + args.out_path);
    out << csv.str();
  }
  return kExitOk;
}

struct VerifyArgs {
  int battery = 20;
  std::uint64_t seed = 7;
  long budget = 20000;
  std::string out_path;
};

int run_verify(const VerifyArgs& args) {
  if (args.battery < 1) throw OutOfRange("verify: battery must be >= 1");
  VerifyOptions opts;
  opts.battery_size = args.battery;
  opts.seed = args.seed;
  opts.budget = args.budget;
  VerifyReport report = run_verification(opts);
  std::string text = format_report(report);
  std::cout << text;
  if (!args.out_path.empty()) {
    std::ofstream out(args.out_path);
    if (!out) throw ParseError("cannot write: " + args.out_path);
    out << text;
  }
  return report.all_passed ? kExitOk : kExitVerifyFailed;
}

struct MkStateArgs {
  std::string family = "bell";
  std::vector<double> c{0.0, 0.0, 0.0};
  double x = 1.0;
  int dim = 2;
  int m = 2, n = 2, rank = 4;
  std::uint64_t seed = 1;
  std::string out_path;
};

int run_mkstate(const MkStateArgs& args) {
  DensityMatrix rho;
  if (args.family == "bell") {
    rho = pure_from_schmidt(SchmidtForm{{0.5, 0.5}, 2, 2});
  } else if (args.family == "bell_diagonal") {
    if (args.c.size() != 3) throw OutOfRange("mkstate: --c needs 3 values");
    rho = bell_diagonal({args.c[0], args.c[1], args.c[2]});
  } else if (args.family == "isotropic") {
    rho = isotropic(args.dim, args.x);
  } else if (args.family == "werner") {
    rho = werner(args.dim, args.x);
  } else if (args.family == "random") {
    rho = random_density(args.m, args.n, args.rank, args.seed);
  } else if (args.family == "product") {
    DensityMatrix a = random_density(1, args.m, args.m, args.seed);
    DensityMatrix b = random_density(1, args.n, args.n, args.seed + 1);
    rho = make_density(kron(a.matrix, b.matrix), args.m, args.n);
  } else {
    throw OutOfRange("mkstate: unknown family " + args.family);
  }
  if (args.out_path.empty()) {
    std::cout << state_to_json(rho) << "\n";
  } else {
    save_state(args.out_path, rho);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Measurement-induced nonlocality measures for bipartite states"};
  app.require_subcommand(1);

  MeasureArgs margs;
  CLI::App* measure = app.add_subcommand(
      "measure", "Compute measures for a JSON state file");
  measure->add_option("state", margs.state_file, "state JSON file")
      ->required();
  measure->add_option("--measures", margs.measures,
                      "comma list: h_min,hs_min,h_min_upper_bound,skew_min,"
                      "affinity_min,weak_h_min");
  measure->add_option("--weak-strength", margs.weak_strength,
                      "strength x for weak_h_min");
  measure->add_option("--seed", margs.seed, "optimizer seed");
  measure->add_option("--budget", margs.budget, "optimizer evaluation cap");
  measure->add_flag("--allow-unconverged", margs.allow_unconverged,
                    "exit 0 even if the optimizer did not converge");
  measure->add_flag("--paper-scale", margs.paper_scale,
                    "report values scaled by 2");

  SweepArgs sargs;
  CLI::App* sweep =
      app.add_subcommand("sweep", "Sweep a state family, write CSV");
  sweep->add_option("--family", sargs.family,
                    "bell_diagonal | isotropic | werner")
      ->required();
  sweep->add_option("--start", sargs.start, "first parameter value");
  sweep->add_option("--stop", sargs.stop, "last parameter value");
  sweep->add_option("--steps", sargs.steps, "grid size (>= 2)");
  sweep->add_option("--dim", sargs.dim, "family dimension (n or d)");
  sweep->add_option("--measures", sargs.measures, "comma list: h_min,hs_min");
  sweep->add_option("--out", sargs.out_path, "CSV output path");
  sweep->add_flag("--paper-scale", sargs.paper_scale, "scale values by 2");
  sweep->add_option("--seed", sargs.seed, "optimizer seed");
  sweep->add_option("--jobs", sargs.jobs, "parallel workers");

  SeqWeakArgs qargs;
  CLI::App* seqweak = app.add_subcommand(
      "seqweak", "Sequential weak-measurement distance curves, CSV");
  seqweak->add_option("state", qargs.state_file, "state JSON file")
      ->required();
  seqweak->add_option("--x", qargs.x_list, "comma list of strengths");
  seqweak->add_option("--n-max", qargs.n_max, "largest step count");
  seqweak->add_option("--out", qargs.out_path, "CSV output path");
  seqweak->add_option("--seed", qargs.seed, "optimizer seed");
  seqweak->add_option("--budget", qargs.budget, "optimizer evaluation cap");

  VerifyArgs vargs;
  CLI::App* verify = app.add_subcommand(
      "verify", "Run the closed-form vs optimizer verification battery");
  verify->add_option("--battery", vargs.battery, "random states per check");
  verify->add_option("--seed", vargs.seed, "battery seed");
  verify->add_option("--budget", vargs.budget, "optimizer evaluation cap");
  verify->add_option("--out", vargs.out_path, "report output path");

  MkStateArgs kargs;
  CLI::App* mkstate =
      app.add_subcommand("mkstate", "Write a state file for a known family");
  mkstate->add_option("--family", kargs.family,
                      "bell | bell_diagonal | isotropic | werner | random |"
                      " product");
  mkstate->add_option("--c", kargs.c, "bell_diagonal correlation triple")
      ->expected(3);
  mkstate->add_option("--x", kargs.x, "family parameter");
  mkstate->add_option("--dim", kargs.dim, "family dimension");
  mkstate->add_option("--m", kargs.m, "subsystem a dimension");
  mkstate->add_option("--n", kargs.n, "subsystem b dimension");
  mkstate->add_option("--rank", kargs.rank, "random state rank");
  mkstate->add_option("--seed", kargs.seed, "random state seed");
  mkstate->add_option("--out", kargs.out_path, "state output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (measure->parsed()) return run_measure(margs);
    if (sweep->parsed()) return run_sweep(sargs);
    if (seqweak->parsed()) return run_seqweak(qargs);
    if (verify->parsed()) return run_verify(vargs);
    if (mkstate->parsed()) return run_mkstate(kargs);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitOk;
}
