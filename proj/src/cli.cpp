#include "seglab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "seglab/experiment.hpp"
#include "seglab/generators.hpp"
#include "seglab/method.hpp"
#include "seglab/plot.hpp"
#include "seglab/rng.hpp"
#include "seglab/run.hpp"
#include "seglab/schedule.hpp"
#include "seglab/serialization.hpp"
#include "seglab/verify.hpp"

namespace seglab {

namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_text_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw UsageError("write failed for " + path.string());
}

struct ProblemConfig {
  std::string kind = "monotone";
  std::uint64_t seed = 0;
  int dx = 20, dy = 20, n = 40;
  double L = 2.0, mu = 1.0, sigma = 1.0;
  std::string rr_kind = "seg";
  std::string path;
};

struct ExperimentConfig {
  ProblemConfig problem;
  std::vector<std::string> methods;
  std::string schedule = "poly:auto,10,0.34";
  std::map<std::string, std::string> schedules;  // per-method overrides
  std::int64_t budget_passes = 100000;
  std::int64_t checkpoint_stride = 100;
  int instance_count = 5;
  std::uint64_t seed = 2024;
  std::string out_dir = "out";
  std::vector<double> etas;  // sweep grid
};

bool generator_kind(const std::string& kind) {
  return kind == "monotone" || kind == "strongly-monotone";
}

FiniteSumProblem make_problem(const ProblemConfig& config,
                              std::uint64_t instance_seed) {
  if (config.kind == "monotone") {
    return gen_monotone(instance_seed, config.dx, config.dy, config.n);
  }
  if (config.kind == "strongly-monotone") {
    return gen_strongly_monotone(instance_seed, config.dx, config.dy,
                                 config.n);
  }
  if (config.kind == "divergence") return divergence_example(config.L);
  if (config.kind == "variance-floor") {
    return variance_floor_example(config.L, config.sigma);
  }
  if (config.kind == "rr-lower-bound") {
    if (config.rr_kind != "seg" && config.rr_kind != "sgda") {
      throw UsageError("--rr-kind must be seg or sgda");
    }
    return rr_lower_bound_example(
        config.L, config.mu, config.sigma, config.n,
        config.rr_kind == "seg" ? RrKind::Seg : RrKind::Sgda);
  }
  if (config.kind == "file") {
    if (config.path.empty()) throw UsageError("problem kind 'file' needs a path");
    return load_problem(config.path);
  }
  throw UsageError("unknown problem kind '" + config.kind + "'");
}

struct ScheduleSpec {
  enum class Kind { Constant, Poly, Dseg } kind = Kind::Poly;
  bool auto_eta0 = true;
  double eta = 0.0;
  PolyDecayStep poly{0.01, 10.0, 0.34};
  DsegDualStep dseg = dseg_general_preset();
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

double parse_real(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw UsageError(std::string("bad number '") + text + "' in " + what);
  }
}

ScheduleSpec parse_schedule_spec(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string tail =
      colon == std::string::npos ? std::string() : text.substr(colon + 1);
  ScheduleSpec spec;
  if (head == "constant") {
    spec.kind = ScheduleSpec::Kind::Constant;
    spec.eta = parse_real(tail, "constant schedule");
    return spec;
  }
  if (head == "poly") {
    spec.kind = ScheduleSpec::Kind::Poly;
    const auto parts = split_list(tail);
    if (parts.size() != 3) {
      throw UsageError("poly schedule needs eta0|auto,shift,exponent");
    }
    spec.auto_eta0 = parts[0] == "auto";
    if (!spec.auto_eta0) spec.poly.eta0 = parse_real(parts[0], "poly eta0");
    spec.poly.shift = parse_real(parts[1], "poly shift");
    spec.poly.exponent = parse_real(parts[2], "poly exponent");
    return spec;
  }
  if (head == "dseg") {
    spec.kind = ScheduleSpec::Kind::Dseg;
    if (tail == "bilinear") {
      spec.dseg = dseg_bilinear_preset();
    } else if (tail == "general" || tail.empty()) {
      spec.dseg = dseg_general_preset();
    } else {
      const auto parts = split_list(tail);
      if (parts.size() != 5) {
        throw UsageError(
            "dseg schedule needs bilinear, general, or g0,e0,r1,r2,offset");
      }
      spec.dseg = DsegDualStep{parse_real(parts[0], "dseg gamma0"),
                               parse_real(parts[1], "dseg eta0"),
                               parse_real(parts[2], "dseg r1"),
                               parse_real(parts[3], "dseg r2"),
                               parse_real(parts[4], "dseg offset")};
    }
    return spec;
  }
  throw UsageError("unknown schedule '" + text + "'");
}

StepsizeSchedule resolve_schedule(const ScheduleSpec& spec,
                                  const FiniteSumProblem& problem) {
  switch (spec.kind) {
    case ScheduleSpec::Kind::Constant:
      return ConstantStep{spec.eta};
    case ScheduleSpec::Kind::Poly: {
      PolyDecayStep poly = spec.poly;
      if (spec.auto_eta0) {
        poly.eta0 = std::min(0.01, 1.0 / problem.smoothness());
      }
      return poly;
    }
    case ScheduleSpec::Kind::Dseg:
      return spec.dseg;
  }
  throw UsageError("unreachable schedule kind");
}

std::string schedule_text_for(const ExperimentConfig& config,
                              const std::string& method) {
  const auto it = config.schedules.find(method);
  if (it != config.schedules.end()) return it->second;
  // DSEG cannot run on a single-stepsize schedule; default it to its
  // general preset unless the config overrides.
  if (parse_method(method).family == Family::Dseg &&
      parse_schedule_spec(config.schedule).kind != ScheduleSpec::Kind::Dseg) {
    return "dseg:general";
  }
  return config.schedule;
}

nlohmann::json config_to_json(const ExperimentConfig& config) {
  nlohmann::json doc;
  doc["problem"] = {{"kind", config.problem.kind},
                    {"seed", config.problem.seed},
                    {"dx", config.problem.dx},
                    {"dy", config.problem.dy},
                    {"n", config.problem.n},
                    {"L", config.problem.L},
                    {"mu", config.problem.mu},
                    {"sigma", config.problem.sigma},
                    {"rr_kind", config.problem.rr_kind},
                    {"path", config.problem.path}};
  doc["methods"] = config.methods;
  doc["schedule"] = config.schedule;
  doc["schedules"] = config.schedules;
  doc["budget_passes"] = config.budget_passes;
  doc["checkpoint_stride"] = config.checkpoint_stride;
  doc["instance_count"] = config.instance_count;
  doc["seed"] = config.seed;
  doc["out_dir"] = config.out_dir;
  doc["etas"] = config.etas;
  return doc;
}

void config_from_json(const nlohmann::json& doc, ExperimentConfig& config) {
  if (doc.contains("problem")) {
    const auto& p = doc["problem"];
    if (p.contains("kind")) config.problem.kind = p["kind"].get<std::string>();
    if (p.contains("seed")) config.problem.seed = p["seed"].get<std::uint64_t>();
    if (p.contains("dx")) config.problem.dx = p["dx"].get<int>();
    if (p.contains("dy")) config.problem.dy = p["dy"].get<int>();
    if (p.contains("n")) config.problem.n = p["n"].get<int>();
    if (p.contains("L")) config.problem.L = p["L"].get<double>();
    if (p.contains("mu")) config.problem.mu = p["mu"].get<double>();
    if (p.contains("sigma")) config.problem.sigma = p["sigma"].get<double>();
    if (p.contains("rr_kind")) {
      config.problem.rr_kind = p["rr_kind"].get<std::string>();
    }
    if (p.contains("path")) config.problem.path = p["path"].get<std::string>();
  }
  if (doc.contains("methods")) {
    config.methods = doc["methods"].get<std::vector<std::string>>();
  }
  if (doc.contains("schedule")) {
    config.schedule = doc["schedule"].get<std::string>();
  }
  if (doc.contains("schedules")) {
    config.schedules =
        doc["schedules"].get<std::map<std::string, std::string>>();
  }
  if (doc.contains("budget_passes")) {
    config.budget_passes = doc["budget_passes"].get<std::int64_t>();
  }
  if (doc.contains("checkpoint_stride")) {
    config.checkpoint_stride = doc["checkpoint_stride"].get<std::int64_t>();
  }
  if (doc.contains("instance_count")) {
    config.instance_count = doc["instance_count"].get<int>();
  }
  if (doc.contains("seed")) config.seed = doc["seed"].get<std::uint64_t>();
  if (doc.contains("out_dir")) {
    config.out_dir = doc["out_dir"].get<std::string>();
  }
  if (doc.contains("etas")) {
    config.etas = doc["etas"].get<std::vector<double>>();
  }
}

struct Workload {
  std::vector<FiniteSumProblem> instances;
  std::vector<Vector> starts;
  std::vector<MethodSpec> methods;
};

Workload build_workload(const ExperimentConfig& config) {
  if (config.methods.empty()) throw UsageError("no methods configured");
  if (config.instance_count < 1) throw UsageError("instance_count must be >= 1");
  Workload work;
  for (int i = 0; i < config.instance_count; ++i) {
    const std::uint64_t instance_seed =
        generator_kind(config.problem.kind)
            ? derive_seed(config.problem.seed, static_cast<std::uint64_t>(i))
            : config.problem.seed;
    work.instances.push_back(make_problem(config.problem, instance_seed));
    work.starts.push_back(random_start(
        work.instances.back(),
        derive_seed(config.seed ^ 0x5EEDULL, static_cast<std::uint64_t>(i))));
  }
  for (const auto& name : config.methods) {
    work.methods.push_back(parse_method(name));
  }
  return work;
}

nlohmann::json summary_json(const std::vector<MethodSeries>& series) {
  nlohmann::json methods = nlohmann::json::array();
  for (const auto& s : series) {
    methods.push_back({{"method", s.method_label},
                       {"diverged_instances", s.diverged_instances}});
  }
  return nlohmann::json{{"methods", methods}};
}

int cmd_gen(const ProblemConfig& problem, const std::string& out_dir) {
  const FiniteSumProblem instance = make_problem(problem, problem.seed);
  const fs::path path = fs::path(out_dir) / (problem.kind + "-" +
                                             std::to_string(problem.seed) +
                                             ".json");
  if (!out_dir.empty()) fs::create_directories(out_dir);
  save_problem(instance, path.string());
  std::cout << path.string() << '\n';
  return 0;
}

int cmd_run(const ExperimentConfig& config) {
  const Workload work = build_workload(config);
  const auto schedule_for = [&](const MethodSpec& spec,
                                const FiniteSumProblem& problem) {
    return resolve_schedule(
        parse_schedule_spec(schedule_text_for(config, method_label(spec))),
        problem);
  };
  const ExperimentOutput output = run_experiment(
      work.instances, work.starts, work.methods, schedule_for,
      config.budget_passes, config.checkpoint_stride, config.seed);

  const fs::path out_dir(config.out_dir);
  write_text_file(out_dir / "config.json", config_to_json(config).dump(2) + "\n");
  for (std::size_t m = 0; m < output.records.size(); ++m) {
    for (std::size_t i = 0; i < output.records[m].size(); ++i) {
      const std::string name = "run-" + output.series[m].method_label + "-i" +
                               std::to_string(i) + ".csv";
      write_text_file(out_dir / name, run_csv(output.records[m][i]));
    }
  }
  write_text_file(out_dir / "geo_mean.csv", aggregate_csv(output.series));
  write_text_file(out_dir / "summary.json",
                  summary_json(output.series).dump(2) + "\n");
  std::cout << (out_dir / "geo_mean.csv").string() << '\n';
  return 0;
}

int cmd_sweep(const ExperimentConfig& config) {
  if (config.etas.empty()) throw UsageError("sweep needs a nonempty --etas grid");
  const Workload work = build_workload(config);
  for (const auto& spec : work.methods) {
    if (spec.family == Family::Dseg) {
      throw UsageError("DSEG uses its dual schedule; it cannot be swept");
    }
  }
  std::vector<SweepSeries> all_series;
  std::vector<MethodSeries> cell_summaries;
  for (std::size_t e = 0; e < config.etas.size(); ++e) {
    const double eta = config.etas[e];
    if (!(eta > 0.0)) throw UsageError("sweep stepsizes must be positive");
    const auto schedule_for = [&](const MethodSpec&, const FiniteSumProblem&) {
      return StepsizeSchedule(ConstantStep{eta});
    };
    // Cells share the master seed (common random numbers across the grid),
    // so a single-cell sweep reproduces cmd_run exactly.
    const ExperimentOutput output = run_experiment(
        work.instances, work.starts, work.methods, schedule_for,
        config.budget_passes, config.checkpoint_stride, config.seed);
    for (const auto& series : output.series) {
      all_series.push_back(
          {series.method_label, eta, series.points, series.diverged_instances});
      MethodSeries tagged = series;
      tagged.method_label += " eta=" + format_double(eta);
      cell_summaries.push_back(std::move(tagged));
    }
  }
  const fs::path out_dir(config.out_dir);
  write_text_file(out_dir / "config.json", config_to_json(config).dump(2) + "\n");
  write_text_file(out_dir / "sweep.csv", sweep_csv(all_series));
  write_text_file(out_dir / "summary.json",
                  summary_json(cell_summaries).dump(2) + "\n");
  std::cout << (out_dir / "sweep.csv").string() << '\n';
  return 0;
}

int cmd_verify(const std::string& suite, const std::string& out_path) {
  const std::vector<VerifyReport> reports = run_verify_suite(suite);
  const std::string rendered = reports_to_json(reports).dump(2) + "\n";
  std::cout << rendered;
  if (!out_path.empty()) write_text_file(out_path, rendered);
  return all_passed(reports) ? 0 : 1;
}

int cmd_plot(const std::vector<std::string>& inputs,
             const std::string& out_path) {
  const auto series = read_plot_series(inputs);
  write_text_file(out_path, render_svg(series));
  std::cout << out_path << '\n';
  return 0;
}

void apply_preset(ExperimentConfig& config, const std::string& preset) {
  if (preset == "monotone") {
    config.problem.kind = "monotone";
    config.problem.dx = config.problem.dy = 20;
    config.problem.n = 40;
    config.methods = {"SEG-US", "SEG-RR", "SEG-FF", "SEG-FFA"};
    config.schedule = "poly:auto,10,0.34";
    config.budget_passes = 100000;
  } else if (preset == "strongly-monotone") {
    config.problem.kind = "strongly-monotone";
    config.problem.dx = config.problem.dy = 20;
    config.problem.n = 40;
    config.methods = {"SGDA-US", "SGDA-RR", "SEG-US",
                      "SEG-RR",  "SEG-FF",  "SEG-FFA"};
    config.schedule = "constant:0.001";
    config.budget_passes = 100000;
  } else if (!preset.empty()) {
    throw UsageError("unknown preset '" + preset + "'");
  }
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"shuffling-based stochastic extragradient lab"};
  app.require_subcommand(1);

  ProblemConfig gen_problem;
  std::string gen_out = ".";
  auto* gen = app.add_subcommand("gen", "generate a problem file");
  gen->add_option("--kind", gen_problem.kind,
                  "monotone|strongly-monotone|divergence|variance-floor|"
                  "rr-lower-bound");
  gen->add_option("--seed", gen_problem.seed, "generator seed");
  gen->add_option("--dx", gen_problem.dx, "min-variable dimension");
  gen->add_option("--dy", gen_problem.dy, "max-variable dimension");
  gen->add_option("--n", gen_problem.n, "component count");
  gen->add_option("--L", gen_problem.L, "smoothness scale");
  gen->add_option("--mu", gen_problem.mu, "strong-monotonicity constant");
  gen->add_option("--sigma", gen_problem.sigma, "variance constant");
  gen->add_option("--rr-kind", gen_problem.rr_kind, "seg|sgda");
  gen->add_option("--out", gen_out, "output directory");

  ExperimentConfig run_config;
  run_config.methods = {"SEG-US", "SEG-RR", "SEG-FF", "SEG-FFA"};
  std::string run_config_path, run_preset;
  bool run_fast = false;
  std::string run_methods_csv, sweep_etas_csv;

  const auto add_experiment_flags = [&](CLI::App* cmd) {
    cmd->add_option("--config", run_config_path, "JSON config file");
    cmd->add_option("--preset", run_preset, "monotone|strongly-monotone");
    cmd->add_option("--problem-kind", run_config.problem.kind,
                    "problem source kind (incl. 'file')");
    cmd->add_option("--problem-seed", run_config.problem.seed,
                    "problem generator master seed");
    cmd->add_option("--problem-path", run_config.problem.path,
                    "serialized problem path (kind 'file')");
    cmd->add_option("--dx", run_config.problem.dx, "min-variable dimension");
    cmd->add_option("--dy", run_config.problem.dy, "max-variable dimension");
    cmd->add_option("--n", run_config.problem.n, "component count");
    cmd->add_option("--L", run_config.problem.L, "counterexample L");
    cmd->add_option("--mu", run_config.problem.mu, "counterexample mu");
    cmd->add_option("--sigma", run_config.problem.sigma, "counterexample sigma");
    cmd->add_option("--rr-kind", run_config.problem.rr_kind, "seg|sgda");
    cmd->add_option("--methods", run_methods_csv,
                    "comma-separated method list");
    cmd->add_option("--schedule", run_config.schedule,
                    "constant:ETA | poly:ETA0|auto,SHIFT,EXP | "
                    "dseg:bilinear|general|G0,E0,R1,R2,OFF");
    cmd->add_option("--passes", run_config.budget_passes, "pass budget");
    cmd->add_option("--stride", run_config.checkpoint_stride,
                    "checkpoint stride in passes");
    cmd->add_option("--instances", run_config.instance_count,
                    "number of problem instances");
    cmd->add_option("--seed", run_config.seed, "experiment master seed");
    cmd->add_option("--out", run_config.out_dir, "output directory");
    cmd->add_flag("--fast", run_fast, "cap the budget at 1e4 passes");
  };

  auto* run_cmd = app.add_subcommand("run", "run methods and aggregate");
  add_experiment_flags(run_cmd);
  auto* sweep_cmd = app.add_subcommand("sweep", "stepsize-grid sweep");
  add_experiment_flags(sweep_cmd);
  sweep_cmd->add_option("--etas", sweep_etas_csv,
                        "comma-separated constant stepsizes");

  std::string verify_suite = "all", verify_out;
  auto* verify_cmd = app.add_subcommand("verify", "run verification suites");
  verify_cmd->add_option("suite", verify_suite,
                         "counterexamples|error-order|floor|phi|all");
  verify_cmd->add_option("--out", verify_out, "report JSON path");

  std::vector<std::string> plot_inputs;
  std::string plot_out;
  auto* plot_cmd = app.add_subcommand("plot", "render aggregate CSVs to SVG");
  plot_cmd->add_option("inputs", plot_inputs, "aggregate CSV paths")
      ->required();
  plot_cmd->add_option("--out", plot_out, "output SVG path")->required();

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
      return app.exit(help);  // prints help, exit 0
    } catch (const CLI::ParseError& parse_error) {
      std::cerr << parse_error.what() << '\n';
      return 2;
    }

    if (gen->parsed()) return cmd_gen(gen_problem, gen_out);

    if (run_cmd->parsed() || sweep_cmd->parsed()) {
      CLI::App* active = run_cmd->parsed() ? run_cmd : sweep_cmd;
      ExperimentConfig config;  // defaults
      config.methods = run_config.methods;
      if (!run_config_path.empty()) {
        std::ifstream in(run_config_path);
        if (!in) throw UsageError("cannot open config " + run_config_path);
        nlohmann::json doc;
        in >> doc;
        config_from_json(doc, config);
      }
      if (!run_preset.empty()) apply_preset(config, run_preset);
      // CLI flags seen on the command line override the config/preset.
      const auto overridden = [&](const std::string& flag) {
        return active->count(flag) > 0;
      };
      if (overridden("--problem-kind")) config.problem.kind = run_config.problem.kind;
      if (overridden("--problem-seed")) config.problem.seed = run_config.problem.seed;
      if (overridden("--problem-path")) {
        config.problem.path = run_config.problem.path;
        config.problem.kind = "file";
      }
      if (overridden("--dx")) config.problem.dx = run_config.problem.dx;
      if (overridden("--dy")) config.problem.dy = run_config.problem.dy;
      if (overridden("--n")) config.problem.n = run_config.problem.n;
      if (overridden("--L")) config.problem.L = run_config.problem.L;
      if (overridden("--mu")) config.problem.mu = run_config.problem.mu;
      if (overridden("--sigma")) config.problem.sigma = run_config.problem.sigma;
      if (overridden("--rr-kind")) config.problem.rr_kind = run_config.problem.rr_kind;
      if (overridden("--methods")) config.methods = split_list(run_methods_csv);
      if (overridden("--schedule")) config.schedule = run_config.schedule;
      if (overridden("--passes")) config.budget_passes = run_config.budget_passes;
      if (overridden("--stride")) {
        config.checkpoint_stride = run_config.checkpoint_stride;
      }
      if (overridden("--instances")) {
        config.instance_count = run_config.instance_count;
      }
      if (overridden("--seed")) config.seed = run_config.seed;
      if (overridden("--out")) config.out_dir = run_config.out_dir;
      if (run_fast) {
        config.budget_passes = std::min<std::int64_t>(config.budget_passes, 10000);
      }
      if (sweep_cmd->parsed()) {
        if (sweep_cmd->count("--etas") > 0) {
          config.etas.clear();
          for (const auto& item : split_list(sweep_etas_csv)) {
            config.etas.push_back(parse_real(item, "--etas"));
          }
        }
        return cmd_sweep(config);
      }
      return cmd_run(config);
    }

    if (verify_cmd->parsed()) return cmd_verify(verify_suite, verify_out);
    if (plot_cmd->parsed()) return cmd_plot(plot_inputs, plot_out);
    std::cerr << "no subcommand given\n";
    return 2;
  } catch (const UsageError& error) {
    std::cerr << "error: " << error.what() << '\n';
    return 2;
  } catch (const PlotInputError& error) {
    std::cerr << "error: " << error.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& error) {
    std::cerr << "error: " << error.what() << '\n';
    return 2;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << '\n';
    return 2;
  }
}

}  // namespace seglab
