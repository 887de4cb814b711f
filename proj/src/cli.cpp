#include "ltar/cli.hpp"

#include <CLI11.hpp>

#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ltar/datagen.hpp"
#include "ltar/errors.hpp"
#include "ltar/eval.hpp"
#include "ltar/io.hpp"
#include "ltar/model.hpp"
#include "ltar/parallel.hpp"

namespace ltar {

namespace {

struct Options {
  // shared
  std::string out;
  std::uint64_t seed = 0;
  std::string transform = "dct";
  std::string workers = "1";
  std::size_t trials = 5;

  // generate
  std::size_t n = 2000;
  std::size_t nodes = 20;
  double edge_period = 50.0;
  double community_period = 200.0;
  double sigma = 0.02;

  // fit / forecast / eval
  std::string input;
  std::string model;
  std::string history;
  std::string truth;
  std::string errors;
  std::string train;
  std::string test;
  std::size_t p = 0;
  std::size_t d = 0;
  std::size_t s = 0;
  std::string order = "seasonal-then-lag";
  std::string mode = "multi";
  std::size_t steps = 0;
  bool no_ridge = false;

  // bench
  std::vector<std::size_t> lengths{250, 500, 1000, 2000};
  std::size_t ell = 10;
  std::size_t depth = 10;
  bool stability_diagnostic = false;
};

/// Argument problems detected after CLI11 parsing.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

unsigned parse_workers(const std::string& text) {
  if (text == "max") {
    return hardware_workers();
  }
  std::size_t pos = 0;
  unsigned long value = 0;
  try {
    value = std::stoul(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || value == 0 || value > 4096) {
    throw UsageError("--workers must be a positive integer or 'max', got '" +
                     text + "'");
  }
  return static_cast<unsigned>(value);
}

template <typename F>
auto as_usage(F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    out.flush();
  } else {
    write_file(path, text);
  }
}

void run_generate_ltar1(const Options& o, std::ostream& out) {
  const TransformKind kind = as_usage([&] { return parse_transform_kind(o.transform); });
  if (o.n == 0) {
    throw UsageError("--n must be positive");
  }
  emit(series_to_string(gen_ltar1_series(o.n, o.seed, kind)), o.out, out);
}

void run_generate_graph(const Options& o, std::ostream& out) {
  GraphGenConfig cfg;
  cfg.nodes = o.nodes;
  cfg.edge_period = o.edge_period;
  cfg.community_period = o.community_period;
  cfg.sigma = o.sigma;
  cfg.seed = o.seed;
  cfg.n = o.n;
  as_usage([&] {
    cfg.validate();
    return 0;
  });
  emit(series_to_string(gen_graph_series(cfg)), o.out, out);
}

void run_fit(const Options& o, std::ostream& out) {
  const TransformKind kind = as_usage([&] { return parse_transform_kind(o.transform); });
  const DifferenceOrder order =
      as_usage([&] { return parse_difference_order(o.order); });
  if (o.p == 0) {
    throw UsageError("--p must be at least 1");
  }
  FitOptions opts;
  opts.workers = parse_workers(o.workers);
  opts.ridge_fallback = !o.no_ridge;
  const TensorSeries series = load_series(o.input);
  const LtarModel model =
      fit_with_differencing(series, o.p, o.d, o.s, kind, order, opts);
  emit(serialize_model(model), o.out, out);
}

void run_forecast(const Options& o, std::ostream& out) {
  const ForecastMode mode = as_usage([&] { return parse_forecast_mode(o.mode); });
  if (o.steps == 0) {
    throw UsageError("--steps must be at least 1");
  }
  if (mode == ForecastMode::SingleStep && o.truth.empty()) {
    throw UsageError("single-step forecasting needs --truth");
  }
  std::string errors_path = o.errors;
  if (!o.truth.empty() && errors_path.empty()) {
    if (o.out.empty()) {
      throw UsageError("--truth without --out needs an explicit --errors path");
    }
    errors_path = o.out + ".errors.csv";
  }
  const LtarModel model = load_model(o.model);
  const TensorSeries history = load_series(o.history);
  std::optional<TensorSeries> truth;
  if (!o.truth.empty()) {
    truth = load_series(o.truth);
  }
  const ForecastResult result = forecast(model, history, o.steps, mode, truth);
  emit(series_to_string(result.forecasts), o.out, out);
  if (truth) {
    std::ostringstream csv;
    write_eval_csv(csv, make_eval_report(mode, result.errors));
    write_file(errors_path, csv.str());
  }
}

void run_eval(const Options& o, std::ostream& out, std::ostream& err) {
  const ForecastMode mode = as_usage([&] { return parse_forecast_mode(o.mode); });
  const LtarModel model = load_model(o.model);
  const TensorSeries train = load_series(o.train);
  const TensorSeries test = load_series(o.test);
  const EvalReport report = evaluate(model, train, test, mode);
  std::ostringstream csv;
  write_eval_csv(csv, report);
  emit(csv.str(), o.out, out);
  err << "eval: mode=" << to_string(mode) << " horizon=" << report.horizon
      << " mean=" << format_double(report.mean_error)
      << " max=" << format_double(report.max_error)
      << " final=" << format_double(report.final_error) << '\n';
}

void run_bench_speedup(const Options& o, std::ostream& out, std::ostream& err) {
  const TransformKind kind = as_usage([&] { return parse_transform_kind(o.transform); });
  const unsigned workers = parse_workers(o.workers);
  if (o.trials == 0) {
    throw UsageError("--trials must be at least 1");
  }
  if (o.p == 0) {
    throw UsageError("--p must be at least 1");
  }
  GraphGenConfig cfg;
  cfg.nodes = o.nodes;
  cfg.n = o.n;
  cfg.seed = o.seed;
  as_usage([&] {
    cfg.validate();
    return 0;
  });
  const TensorSeries series = gen_graph_series(cfg);
  const BenchReport report = bench_fit(series, o.p, kind, workers, o.trials);
  std::ostringstream csv;
  write_bench_csv(csv, report);
  emit(csv.str(), o.out, out);
  err << "bench speedup: ell=" << report.ell << " depth=" << report.depth
      << " n=" << report.n << " p=" << report.p
      << " workers=" << report.parallel_workers
      << " speedup=" << format_double(report.speedup)
      << " identical_coefficients="
      << (report.identical_coefficients ? "true" : "false") << '\n';
}

void run_bench_scaling(const Options& o, std::ostream& out, std::ostream& err) {
  ScalingConfig cfg;
  cfg.ell = o.ell;
  cfg.depth = o.depth;
  cfg.p = o.p;
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.stability_diagnostic = o.stability_diagnostic;
  cfg.transform = as_usage([&] { return parse_transform_kind(o.transform); });
  if (cfg.p == 0 || cfg.ell == 0 || cfg.depth == 0) {
    throw UsageError("--p, --ell and --depth must be positive");
  }
  const auto points = as_usage([&] { return scaling_probe(o.lengths, cfg); });
  std::ostringstream csv;
  write_scaling_csv(csv, points);
  emit(csv.str(), o.out, out);
  err << "bench scaling: slope=" << format_double(loglog_slope(points)) << '\n';
}

std::string one_line(std::string text) {
  for (char& c : text) {
    if (c == '\n' || c == '\r') {
      c = ' ';
    }
  }
  return text;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  Options o;
  CLI::App app{"Transform-based tensor autoregression", "ltar"};
  app.require_subcommand(1);

  auto add_out = [&](CLI::App* cmd, const char* what) {
    cmd->add_option("--out,-o", o.out, what);
  };

  CLI::App* generate = app.add_subcommand("generate", "Write a synthetic series");
  generate->require_subcommand(1);
  CLI::App* gen_ltar1 =
      generate->add_subcommand("ltar1", "3x3x3 L-TAR(1) example with U(-1,1) noise");
  gen_ltar1->add_option("--n", o.n, "Number of observations")->capture_default_str();
  gen_ltar1->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
  gen_ltar1->add_option("--transform", o.transform, "dct | dft | haar")
      ->capture_default_str();
  add_out(gen_ltar1, "Series file (default: standard output)");

  CLI::App* gen_graph =
      generate->add_subcommand("graph", "Two-community time-varying graph");
  gen_graph->add_option("--nodes", o.nodes, "Number of nodes")->capture_default_str();
  gen_graph->add_option("--n", o.n, "Number of time steps")->capture_default_str();
  gen_graph->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
  gen_graph->add_option("--edge-period", o.edge_period, "Steps per edge-weight cycle")
      ->capture_default_str();
  gen_graph->add_option("--community-period", o.community_period,
                        "Steps per community split-and-merge cycle")
      ->capture_default_str();
  gen_graph->add_option("--sigma", o.sigma, "Noise standard deviation")
      ->capture_default_str();
  add_out(gen_graph, "Series file (default: standard output)");

  CLI::App* fit = app.add_subcommand("fit", "Fit an L-TAR model to a series");
  fit->add_option("--in,-i", o.input, "Series file")->required();
  fit->add_option("--p", o.p, "Autoregressive order")->required();
  fit->add_option("--d", o.d, "Lag differencing order")->capture_default_str();
  fit->add_option("--s", o.s, "Seasonal period (0: none)")->capture_default_str();
  fit->add_option("--transform", o.transform, "dct | dft | haar")
      ->capture_default_str();
  fit->add_option("--order", o.order, "seasonal-then-lag | lag-then-seasonal")
      ->capture_default_str();
  fit->add_option("--workers", o.workers, "Worker threads or 'max'")
      ->capture_default_str();
  fit->add_flag("--no-ridge-fallback", o.no_ridge,
                "Fail on singular normal equations");
  add_out(fit, "Model file (default: standard output)");

  CLI::App* fc = app.add_subcommand("forecast", "Forecast from a fitted model");
  fc->add_option("--model,-m", o.model, "Model file")->required();
  fc->add_option("--history", o.history, "Series preceding the forecasts")
      ->required();
  fc->add_option("--steps,-w", o.steps, "Forecast horizon")->required();
  fc->add_option("--mode", o.mode, "multi | single")->capture_default_str();
  fc->add_option("--truth", o.truth, "True continuation of the history");
  fc->add_option("--errors", o.errors,
                 "Error CSV path (default: <out>.errors.csv)");
  add_out(fc, "Forecast series file (default: standard output)");

  CLI::App* ev = app.add_subcommand("eval", "Score a model on a test series");
  ev->add_option("--model,-m", o.model, "Model file")->required();
  ev->add_option("--train", o.train, "Series preceding the test span")->required();
  ev->add_option("--test", o.test, "Test series")->required();
  ev->add_option("--mode", o.mode, "multi | single")->capture_default_str();
  add_out(ev, "Error CSV (default: standard output)");

  CLI::App* bench = app.add_subcommand("bench", "Timing benchmarks");
  bench->require_subcommand(1);
  CLI::App* speedup =
      bench->add_subcommand("speedup", "Parallel fit speedup on a graph series");
  o.p = 0;
  speedup->add_option("--nodes", o.nodes, "Graph nodes")->capture_default_str();
  speedup->add_option("--n", o.n, "Series length")->capture_default_str();
  speedup->add_option("--p", o.p, "Autoregressive order (default 2)");
  speedup->add_option("--workers", o.workers, "Worker threads or 'max'")
      ->capture_default_str();
  speedup->add_option("--trials", o.trials, "Trials")->capture_default_str();
  speedup->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
  speedup->add_option("--transform", o.transform, "dct | dft | haar")
      ->capture_default_str();
  add_out(speedup, "CSV (default: standard output)");

  CLI::App* scaling =
      bench->add_subcommand("scaling", "Fit time against series length");
  scaling->add_option("--n", o.lengths, "Comma-separated lengths")
      ->delimiter(',')
      ->capture_default_str();
  scaling->add_option("--ell", o.ell, "Tensor rows")->capture_default_str();
  scaling->add_option("--depth", o.depth, "Tube length")->capture_default_str();
  scaling->add_option("--p", o.p, "Autoregressive order (default 5)");
  scaling->add_option("--trials", o.trials, "Trials")->capture_default_str();
  scaling->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
  scaling->add_option("--transform", o.transform, "dct | dft | haar")
      ->capture_default_str();
  scaling->add_flag("--stability-diagnostic", o.stability_diagnostic,
                    "Time the spectral-radius diagnostic as part of each fit");
  add_out(scaling, "CSV (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "ltar: " << one_line(e.what()) << '\n';
    return kExitUsage;
  }

  try {
    if (*gen_ltar1) {
      run_generate_ltar1(o, out);
    } else if (*gen_graph) {
      run_generate_graph(o, out);
    } else if (*fit) {
      run_fit(o, out);
    } else if (*fc) {
      run_forecast(o, out);
    } else if (*ev) {
      run_eval(o, out, err);
    } else if (*speedup) {
      if (speedup->count("--p") == 0) o.p = 2;
      run_bench_speedup(o, out, err);
    } else if (*scaling) {
      if (scaling->count("--p") == 0) o.p = 5;
      run_bench_scaling(o, out, err);
    }
  } catch (const UsageError& e) {
    err << "ltar: " << one_line(e.what()) << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "ltar: parse error: " << one_line(e.what()) << '\n';
    return kExitData;
  } catch (const IoError& e) {
    err << "ltar: " << one_line(e.what()) << '\n';
    return kExitData;
  } catch (const ShapeError& e) {
    err << "ltar: shape mismatch: " << one_line(e.what()) << '\n';
    return kExitData;
  } catch (const InsufficientDataError& e) {
    err << "ltar: insufficient data: " << one_line(e.what()) << '\n';
    return kExitData;
  } catch (const NumericalError& e) {
    err << "ltar: numerical failure: " << one_line(e.what()) << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "ltar: " << one_line(e.what()) << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "ltar: " << one_line(e.what()) << '\n';
    return kExitData;
  }
  return kExitOk;
}

}  // namespace ltar
