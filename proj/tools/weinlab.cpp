// weinlab: transform samples, verify inequality sweeps, emit plot-ready series.
//
//   weinlab transform --fn gaussian:1.0 --alpha 0.5 --d 1 --out spectrum.wls
//   weinlab verify --config configs/default.json [--only ThmB] [--format csv]
//   weinlab report reports/reports.json > series.csv
//
// Exit codes: 0 success / all checks pass, 1 an inequality failed,
// 2 usage, configuration or input error.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "weinlab/weinlab.hpp"

namespace fs = std::filesystem;
using namespace weinlab;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct TransformArgs {
  std::string fn;
  std::string input;
  std::optional<double> alpha;
  int d = 1;
  GridSpec grid{};
  std::string radial_rule = "gauss_jacobi";
  std::uint64_t seed = 1;
  std::string out = "spectrum.wls";
};

struct VerifyArgs {
  std::string config;
  std::vector<std::string> only;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  std::optional<std::string> out_dir;
  std::optional<std::string> format;
};

struct ReportArgs {
  std::string input;
  std::string out;
};

int run_transform(const TransformArgs& a) {
  GridFunction f = [&] {
    if (!a.input.empty()) {
      const SampleFile s = read_samples(fs::path(a.input));
      if (s.domain != Domain::space) throw SampleFileError("input samples must be of kind 'space'");
      auto grid = TensorGrid::build(s.params, s.grid, Domain::space);
      return GridFunction(grid, s.values);
    }
    GridSpec spec = a.grid;
    spec.radial_rule = parse_radial_rule(a.radial_rule);
    const WeinsteinParams params{a.d, *a.alpha};
    params.validate();
    spec.validate();
    auto grid = TensorGrid::build(params, spec, Domain::space);
    return make_function(a.fn, grid, a.seed);
  }();

  const auto tr = transform_for(f.grid_ptr());
  const SpectralFunction spectrum = tr->forward(f);
  write_samples(fs::path(a.out), spectrum);

  const double nf = lp_norm(f, 2.0);
  const double ng = lp_norm(spectrum, 2.0);
  const GridFunction back = tr->inverse(spectrum);
  const double rt = nf > 0.0 ? lp_norm(back - f, 2.0) / nf : 0.0;
  std::printf("wrote %s (%zu samples, alpha=%s, d=%d)\n", a.out.c_str(), spectrum.size(),
              format_number(f.grid().params().alpha).c_str(), f.grid().params().d);
  std::printf("plancherel: ||f||_2 = %.12g  ||F f||_2 = %.12g  ratio = %.12g\n", nf, ng,
              nf > 0.0 ? ng / nf : 1.0);
  std::printf("round trip: relative L2 error = %.3e\n", rt);
  return kExitPass;
}

void print_summary(const SweepResult& result) {
  std::printf("%-16s %8s %8s %8s %8s %9s %12s %10s\n", "inequality", "checked", "passed",
              "skipped", "info", "pass", "max_slack", "sup_K");
  for (const auto& s : result.summary) {
    std::printf("%-16s %8zu %8zu %8zu %8zu %8.2f%% %12.6g %10s\n", to_string(s.id).c_str(),
                s.checked, s.passed, s.skipped, s.informational, 100.0 * s.pass_rate(), s.max_slack,
                s.sup_k_emp ? format_number(*s.sup_k_emp).substr(0, 10).c_str() : "-");
  }
}

int run_verify(const VerifyArgs& a) {
  ExperimentConfig config = load_config(fs::path(a.config));
  if (a.seed) config.seed = *a.seed;
  if (a.out_dir) config.out_dir = *a.out_dir;
  if (a.format) {
    auto f = parse_report_format(*a.format);
    if (!f) throw ConfigError("--format", "expected 'json' or 'csv'");
    config.format = *f;
  }
  if (!a.only.empty()) {
    config.inequalities.clear();
    for (const auto& name : a.only) {
      auto id = parse_inequality_id(name);
      if (!id) throw ConfigError("--only", "unknown inequality '" + name + "'");
      config.inequalities.push_back(*id);
    }
  }
  config.validate();

  const unsigned threads = a.threads ? a.threads : std::max(1u, std::thread::hardware_concurrency());
  const SweepResult result = run_sweep(config, threads);

  fs::create_directories(config.out_dir);
  const fs::path out = fs::path(config.out_dir) / ("reports." + to_string(config.format));
  {
    std::ofstream file(out, std::ios::binary);
    if (!file) throw ConfigError("output.dir", "cannot write " + out.string());
    if (config.format == ReportFormat::json) {
      write_reports_json(file, result, &config);
    } else {
      write_reports_csv(file, result.reports);
    }
  }
  print_summary(result);
  std::printf("%zu reports written to %s\n", result.reports.size(), out.string().c_str());

  const bool ok = result.all_passed();
  if (!ok) {
    for (const auto& r : result.reports) {
      if (r.status == ReportStatus::checked && !r.passed) {
        std::fprintf(stderr, "FAIL %s%s%s f=%s alpha=%s slack=%.9g tol=%.3g\n",
                     to_string(r.id).c_str(), r.variant.empty() ? "" : "/", r.variant.c_str(),
                     r.function_id.c_str(), format_number(r.alpha).c_str(), r.slack, r.tol);
      }
    }
  }
  return ok ? kExitPass : kExitFail;
}

int run_report(const ReportArgs& a) {
  const auto reports = read_reports_file(fs::path(a.input));
  if (a.out.empty()) {
    write_slack_series(std::cout, reports);
  } else {
    std::ofstream file(a.out, std::ios::binary);
    if (!file) throw ReportFormatError("cannot write " + a.out);
    write_slack_series(file, reports);
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weinstein transform toolkit: transforms and uncertainty-inequality sweeps"};
  app.require_subcommand(1);

  TransformArgs ta;
  auto* transform = app.add_subcommand("transform", "Forward-transform a function and write spectral samples");
  auto* fn_opt = transform->add_option("--fn", ta.fn, "Function spec, e.g. gaussian:1.0 or bump(3)");
  auto* in_opt = transform->add_option("--input", ta.input, "Space-domain sample file")->check(CLI::ExistingFile);
  fn_opt->excludes(in_opt);
  transform->add_option("--alpha", ta.alpha, "Bessel order alpha > -1/2 (required with --fn)");
  transform->add_option("--d", ta.d, "Euclidean dimension")->capture_default_str();
  transform->add_option("--L", ta.grid.euclid_extent, "Euclidean half-extent")->capture_default_str();
  transform->add_option("--N", ta.grid.euclid_points, "Euclidean points per axis")->capture_default_str();
  transform->add_option("--R", ta.grid.radial_extent, "Radial extent")->capture_default_str();
  transform->add_option("--M", ta.grid.radial_points, "Radial points")->capture_default_str();
  transform->add_option("--radial-rule", ta.radial_rule, "gauss_jacobi or trapezoid")->capture_default_str();
  transform->add_option("--seed", ta.seed, "Seed for random generators")->envname("WEINLAB_SEED");
  transform->add_option("--out", ta.out, "Output sample file")->capture_default_str();

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run an inequality sweep and write reports");
  verify->add_option("--config", va.config, "Experiment config (JSON)")
      ->required()
      ->envname("WEINLAB_CONFIG");
  verify->add_option("--only", va.only, "Restrict to these inequality ids (repeatable)");
  verify->add_option("--seed", va.seed, "Override ensemble seed")->envname("WEINLAB_SEED");
  verify->add_option("--threads", va.threads, "Worker threads (0 = hardware)")->envname("WEINLAB_THREADS");
  verify->add_option("--out-dir", va.out_dir, "Report directory")->envname("WEINLAB_OUT_DIR");
  verify->add_option("--format", va.format, "csv or json")->envname("WEINLAB_FORMAT");

  ReportArgs ra;
  auto* report = app.add_subcommand("report", "Turn a report file into slack-vs-parameter series (CSV)");
  report->add_option("file", ra.input, "Report file (.json or .csv)")->required();
  report->add_option("--out", ra.out, "Write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*transform) {
      if (ta.fn.empty() == ta.input.empty()) {
        std::cerr << "transform: exactly one of --fn or --input is required\n" << transform->help();
        return kExitConfig;
      }
      if (!ta.fn.empty() && !ta.alpha) {
        std::cerr << "transform: --alpha is required with --fn\n" << transform->help();
        return kExitConfig;
      }
      return run_transform(ta);
    }
    if (*verify) return run_verify(va);
    if (*report) return run_report(ra);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const SampleFileError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ReportFormatError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
