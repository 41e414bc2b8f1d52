// Command-line front end: classify, simulate, spectrum, resolvent, verify, sweep.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bresse/analysis.hpp"
#include "bresse/config.hpp"
#include "bresse/discretize.hpp"
#include "bresse/integrate.hpp"
#include "bresse/io.hpp"
#include "bresse/spectral.hpp"

namespace fs = std::filesystem;
using namespace bresse;

namespace {

enum Exit { kOk = 0, kValidation = 1, kNumerical = 2 };

struct Common {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::map<std::string, std::string> overrides;
  bool dump_matrix = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config_path, "key = value config file")->check(CLI::ExistingFile);
  sub->add_option("--out", c.out_dir, "output directory");
  sub->add_option("--seed", c.seed, "seed for random initial data");
  sub->add_option("--threads", c.threads, "worker threads");
  for (auto key : config_keys()) {
    const std::string name(key);
    if (name == "seed" || name == "threads" || name == "output_dir") continue;
    sub->add_option_function<std::string>(
        "--" + name, [&c, name](const std::string& v) { c.overrides[name] = v; },
        "override config key " + name);
  }
}

RunConfig load(const Common& c) {
  RunConfig cfg = c.config_path.empty() ? RunConfig{} : parse_config(io::read_file(c.config_path));
  for (const auto& [k, v] : c.overrides) apply_setting(cfg, k, v);
  if (c.seed) cfg.seed = *c.seed;
  if (c.threads) cfg.threads = *c.threads;
  if (!c.out_dir.empty()) cfg.output_dir = c.out_dir;
  cfg.validate();
  return cfg;
}

void print_error(const char* kind, const std::string& message, const std::string& key = {},
                 int line = 0) {
  nlohmann::json j{{"error", kind}, {"message", message}};
  if (!key.empty()) j["key"] = key;
  if (line > 0) j["line"] = line;
  std::cerr << j.dump() << '\n';
}

std::string classify_line(const PhysicalParameters& p) {
  const Regime r = classify_regime(p);
  return std::string(to_string(r.kind)) + ", ell=" + std::to_string(r.ell) +
         ", predicted: " + predicted_decay(r).describe();
}

int run_classify(const RunConfig& cfg) {
  std::cout << classify_line(cfg.params) << '\n';
  return kOk;
}

int run_simulate(const RunConfig& cfg) {
  const auto op = assemble(cfg.params, cfg.N);
  const auto u0 = make_initial_state(cfg.initial, op, cfg.seed);
  const auto trace = simulate(op, u0, cfg.time);
  const fs::path out = fs::path(cfg.output_dir) / "energy.csv";
  io::write_atomically(out, energy_csv(trace));
  std::cout << "E(0)=" << io::format_double(trace.energies.front())
            << " E(T)=" << io::format_double(trace.energies.back()) << " -> " << out.string()
            << '\n';
  return kOk;
}

void dump_matrices(const SemiDiscreteOperator& op, const fs::path& dir) {
  std::ostringstream a, g;
  write_triplets(a, op.A);
  write_triplets(g, op.G);
  io::write_atomically(dir / "A.txt", a.str());
  io::write_atomically(dir / "G.txt", g.str());
}

int run_spectrum(const RunConfig& cfg, bool dump) {
  const auto op = assemble(cfg.params, cfg.N);
  if (dump) dump_matrices(op, cfg.output_dir);
  const auto rep = eigenvalues(op);
  const fs::path out = fs::path(cfg.output_dir) / "spectrum.csv";
  io::write_atomically(out, spectrum_csv(rep));
  std::cout << "spectral abscissa " << io::format_double(rep.spectral_abscissa)
            << ", resolved abscissa " << io::format_double(rep.resolved_abscissa)
            << ", min |Re| " << io::format_double(rep.min_distance_to_imaginary_axis) << " -> "
            << out.string() << '\n';
  return kOk;
}

int run_resolvent(const RunConfig& cfg, bool dump) {
  const auto op = assemble(cfg.params, cfg.N);
  if (dump) dump_matrices(op, cfg.output_dir);
  const auto sweep = resolvent_sweep(op, cfg.sweep_options());
  const fs::path out = fs::path(cfg.output_dir) / "resolvent.csv";
  io::write_atomically(out, resolvent_csv(sweep));
  std::cout << "fitted exponent " << io::format_double(sweep.fitted_exponent) << " over ["
            << io::format_double(sweep.window_min) << ", " << io::format_double(sweep.window_max)
            << "] -> " << out.string() << '\n';
  return kOk;
}

int run_verify(const RunConfig& cfg) {
  const auto report = verify_regime(cfg.params, cfg.verify_options());
  const fs::path dir(cfg.output_dir);
  const std::string text = report_text(report);
  io::write_atomically(dir / "report.csv", report_csv(report));
  io::write_atomically(dir / "report.txt", text);
  std::cout << text;
  return kOk;
}

struct SweepSpec {
  std::string param = "k3";
  double from = 1.0;
  double to = 2.0;
  int steps = 5;
};

int run_sweep(const RunConfig& base, const SweepSpec& spec) {
  if (!is_config_key(spec.param)) throw ParameterError("param", "unknown key " + spec.param);
  if (spec.steps < 1) throw ParameterError("steps", "must be at least 1");
  std::vector<RunConfig> items(spec.steps);
  std::vector<std::string> values(spec.steps);
  for (int k = 0; k < spec.steps; ++k) {
    const double t = spec.steps == 1 ? 0.0 : static_cast<double>(k) / (spec.steps - 1);
    values[k] = io::format_double(spec.from + t * (spec.to - spec.from));
    items[k] = base;
    apply_setting(items[k], spec.param, values[k]);
    char name[32];
    std::snprintf(name, sizeof name, "item_%03d", k);
    items[k].output_dir = (fs::path(base.output_dir) / name).string();
    items[k].threads = 1;
    items[k].validate();
  }

  std::vector<RegimeReport> reports(items.size());
  detail::parallel_for(items.size(), base.threads, [&](std::size_t k) {
    reports[k] = verify_regime(items[k].params, items[k].verify_options());
    io::write_atomically(fs::path(items[k].output_dir) / "report.csv", report_csv(reports[k]));
    io::write_atomically(fs::path(items[k].output_dir) / "report.txt", report_text(reports[k]));
  });

  std::string csv = "item," + spec.param + ",regime,ell,resolvent_exponent,passed,failed\n";
  for (std::size_t k = 0; k < reports.size(); ++k) {
    const auto& r = reports[k];
    int passed = 0, failed = 0;
    for (const auto& c : r.checks) (c.pass ? passed : failed)++;
    failed += static_cast<int>(r.errors.size());
    csv += std::to_string(k) + ',' + values[k] + ',' + std::string(to_string(r.regime.kind)) +
           ',' + std::to_string(r.regime.ell) + ',' +
           (r.sweep_N > 0 ? io::format_double(r.sweep.fitted_exponent) : std::string("nan")) +
           ',' + std::to_string(passed) + ',' + std::to_string(failed) + '\n';
    std::cout << spec.param << '=' << values[k] << ": " << to_string(r.regime.kind)
              << ", checks passed " << passed << ", failed " << failed << '\n';
  }
  io::write_atomically(fs::path(base.output_dir) / "sweep.csv", csv);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical lab for the damped Bresse beam"};
  app.require_subcommand(1);

  Common common;
  SweepSpec sweep_spec;
  auto* classify = app.add_subcommand("classify", "print the stability regime");
  auto* simulate_cmd = app.add_subcommand("simulate", "integrate in time, write energy.csv");
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues, write spectrum.csv");
  auto* resolvent = app.add_subcommand("resolvent", "resolvent sweep, write resolvent.csv");
  auto* verify = app.add_subcommand("verify", "regime report, write report.csv");
  auto* sweep = app.add_subcommand("sweep", "verify over a range of one parameter");
  for (auto* sub : {classify, simulate_cmd, spectrum, resolvent, verify, sweep}) {
    add_common(sub, common);
  }
  for (auto* sub : {spectrum, resolvent}) {
    sub->add_flag("--dump-matrix", common.dump_matrix, "also write A.txt and G.txt triplets");
  }
  sweep->add_option("--param", sweep_spec.param, "config key to vary");
  sweep->add_option("--from", sweep_spec.from, "first value");
  sweep->add_option("--to", sweep_spec.to, "last value");
  sweep->add_option("--steps", sweep_spec.steps, "number of values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("usage", e.what());
    return kValidation;
  }

  try {
    const RunConfig cfg = load(common);
    if (*classify) return run_classify(cfg);
    if (*simulate_cmd) return run_simulate(cfg);
    if (*spectrum) return run_spectrum(cfg, common.dump_matrix);
    if (*resolvent) return run_resolvent(cfg, common.dump_matrix);
    if (*verify) return run_verify(cfg);
    if (*sweep) return run_sweep(cfg, sweep_spec);
  } catch (const ParseError& e) {
    print_error("parse", e.what(), {}, e.line());
    return kValidation;
  } catch (const ParameterError& e) {
    print_error("validation", e.what(), e.key());
    return kValidation;
  } catch (const NumericalError& e) {
    print_error("numerical", e.what());
    return kNumerical;
  } catch (const std::exception& e) {
    print_error("failure", e.what());
    return kNumerical;
  }
  return kOk;
}
