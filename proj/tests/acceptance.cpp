// Acceptance suite: one line per criterion, nonzero exit if any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "bresse/analysis.hpp"
#include "bresse/io.hpp"

using namespace bresse;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string num(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

PhysicalParameters regime_params(int which) {
  PhysicalParameters p;
  if (which == 2) p.k3 = 2;
  if (which == 3) p.k2 = 2;
  return p;
}

// Spectra shared by several criteria, keyed by (regime, N).
std::map<std::pair<int, int>, SpectrumReport> spectra;

const SpectrumReport& spectrum(int regime, int n) {
  auto it = spectra.find({regime, n});
  if (it == spectra.end()) {
    it = spectra.emplace(std::make_pair(regime, n), eigenvalues(assemble(regime_params(regime), n)))
             .first;
  }
  return it->second;
}

Outcome dissipation_identity() {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> normal;
  const PhysicalParameters p;
  const auto op = assemble(p, 100);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    StateVector u(100);
    for (auto& c : u.data()) c = normal(rng);
    double expected = 0.0;
    for (int i = 1; i <= 100; ++i) {
      const double v6 = u.block(Field::WT)(i - 1);
      if (op.grid.x(i) < p.beta) expected -= p.a0 * op.grid.h * v6 * v6;
    }
    const double norm2 = 2.0 * op.gram_energy(u);
    worst = std::max(worst, std::abs(op.energy_rate(u) - expected) / norm2);
  }
  return {worst <= 1e-12, "max |Re<AU,U>_G + a0 h sum|v6|^2| / ||U||_G^2 = " + num(worst) +
                              " (limit 1e-12)"};
}

Outcome conservative_limit() {
  PhysicalParameters p;
  p.a0 = 0;
  const auto op = assemble(p, 100);
  TimeStepConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_final = 10.0;
  cfg.record_every = 1;
  const auto trace = simulate(op, make_initial_state(InitialData::NormalizedRandom, op, 1), cfg);
  const double e0 = trace.energies.front();
  double drift = 0.0;
  for (double e : trace.energies) drift = std::max(drift, std::abs(e - e0) / e0);
  return {drift <= 1e-10 && cfg.steps() == 10000,
          std::to_string(cfg.steps()) + " steps, max relative drift " + num(drift) +
              " (limit 1e-10)"};
}

Outcome strong_stability() {
  bool ok = true;
  std::string detail;
  for (int n : {50, 100, 200}) {
    const auto& s = spectrum(1, n);
    ok = ok && s.spectral_abscissa < 0.0 && s.min_distance_to_imaginary_axis > 1e-10;
    detail += "N=" + std::to_string(n) + ": max Re " + num(s.spectral_abscissa) + ", min |Re| " +
              num(s.min_distance_to_imaginary_axis) + "; ";
  }
  return {ok, detail + "limit min |Re| > 1e-10"};
}

Outcome regime_exponents() {
  bool ok = true;
  std::string detail;
  for (int regime : {1, 2, 3}) {
    const auto p = regime_params(regime);
    const auto op = assemble(p, 200);
    const auto sweep = resolvent_sweep(op, SweepOptions{}, &spectrum(regime, 200));
    const auto window = exponent_window(classify_regime(p));
    const bool in = window.contains(sweep.fitted_exponent);
    ok = ok && in;
    detail += "H" + std::to_string(regime) + " " + num(sweep.fitted_exponent) + " in " +
              num(window.center) + "+-" + num(window.half_width) + (in ? "" : " (outside)") + "; ";
  }
  return {ok, detail + "lambda in [10, 0.3 pi c_min / h], N=200"};
}

Outcome exponential_decay() {
  const PhysicalParameters p;
  const auto op = assemble(p, 100);
  TimeStepConfig cfg;
  cfg.dt = 0.01;
  cfg.t_final = 1500;
  cfg.record_every = 100;
  const auto trace = simulate(op, make_initial_state(InitialData::SmoothRandom, op, 0), cfg);
  const auto fit = fit_exponential(trace);
  const auto& s = spectrum(1, 100);
  const double predicted = 2.0 * std::abs(s.resolved_abscissa);
  const double rel = std::abs(fit.energy_rate - predicted) / predicted;
  return {rel <= 0.2, "fitted energy rate " + num(fit.energy_rate) + " vs 2|abscissa| " +
                          num(predicted) + " (resolved band; full spectrum gives " +
                          num(2.0 * std::abs(s.spectral_abscissa)) + "), relative gap " +
                          num(rel) + " (limit 0.2)"};
}

Outcome uniform_gap_trend() {
  bool ok = true;
  std::string detail;
  for (int regime : {1, 2, 3}) {
    const double a50 = std::abs(spectrum(regime, 50).resolved_abscissa);
    const double a100 = std::abs(spectrum(regime, 100).resolved_abscissa);
    const double a200 = std::abs(spectrum(regime, 200).resolved_abscissa);
    bool in;
    if (regime == 1) {
      const double ratio = std::max({a50, a100, a200}) / std::min({a50, a100, a200});
      in = ratio < 2.0;
      detail += "H1 ratio " + num(ratio) + " (< 2); ";
    } else {
      in = a100 < a50 && a200 < a100;
      detail += "H" + std::to_string(regime) + " " + num(a50) + " > " + num(a100) + " > " +
                num(a200) + (in ? "" : " (not shrinking)") + "; ";
    }
    ok = ok && in;
  }
  return {ok, detail + "|abscissa| over the resolved band, N=50/100/200"};
}

Outcome transfer_oracle() {
  const PhysicalParameters p;
  double group = 0.0;
  for (double lambda = 0.0; lambda <= 10.0; lambda += 0.25) {
    const auto tm = transfer_matrix(lambda, p);
    const Vector6 v = Vector6::LinSpaced(-1.0, 2.0);
    for (double x = p.beta; x <= p.L; x += 0.125) {
      group = std::max(group, (flow(tm, propagate(tm, v, x), -(x - p.beta)) - v).norm() / v.norm());
    }
  }
  double residual = 0.0;
  const double h = 1e-3;
  for (double lambda : {0.0, 0.5, 1.0, 1.5, 3.0, 6.0}) {
    const auto v = reduced_solution(lambda, p, 0.7, 0.4);
    double worst = 0.0, vmax = 0.0;
    for (double x = 2 * h; x <= p.beta - 2 * h; x += h) {
      const double vxx =
          (-v(x + 2 * h) + 16 * v(x + h) - 30 * v(x) + 16 * v(x - h) - v(x - 2 * h)) / (12 * h * h);
      worst = std::max(worst, std::abs(v.s * v(x) + vxx));
      vmax = std::max(vmax, std::abs(v(x)));
    }
    residual = std::max(residual, worst / vmax);
  }
  PhysicalParameters q;
  q.l = 2;
  q.k3 = 2;
  q.rho1 = 2;  // threshold lambda = 2 exactly
  const bool switch_ok = reduced_solution(2.0, q, 1, 1).kind == ReducedCase::Linear &&
                         reduced_solution(std::nextafter(2.0, 3.0), q, 1, 1).kind ==
                             ReducedCase::Exponential &&
                         reduced_solution(std::nextafter(2.0, 1.0), q, 1, 1).kind ==
                             ReducedCase::Trigonometric;
  return {group <= 1e-9 && residual <= 1e-6 && switch_ok,
          "group property error " + num(group) + " (limit 1e-9), FD residual " + num(residual) +
              " (limit 1e-6), case switch at threshold " + (switch_ok ? "exact" : "wrong")};
}

Outcome fitter_exactness() {
  auto make = [](const std::function<double(double)>& e, double t0, double t1) {
    EnergyTrace t;
    for (int k = 0; k <= 1000; ++k) {
      const double s = t0 + (t1 - t0) * k / 1000.0;
      t.times.push_back(s);
      t.energies.push_back(e(s));
    }
    return t;
  };
  const auto a = fit_exponential(make([](double t) { return std::exp(-3 * t); }, 0, 10));
  const auto b = fit_exponential(make([](double t) { return 7 * std::exp(-0.5 * t); }, 0, 40));
  const auto c = fit_polynomial(make([](double t) { return 1 / t; }, 0, 50));
  const auto d = fit_polynomial(make([](double t) { return 5 / std::sqrt(t); }, 0, 50));
  const double err = std::max({std::abs(a.energy_rate - 3), std::abs(a.amplitude - 1),
                               std::abs(b.energy_rate - 0.5), std::abs(b.amplitude - 7),
                               std::abs(c.alpha - 1), std::abs(d.alpha - 0.5),
                               std::abs(d.amplitude - 5)});
  return {err <= 1e-10, "max parameter error " + num(err) + " (limit 1e-10)"};
}

int run_cli(const std::string& args) {
  const int raw = std::system((std::string(BRESSE_LAB_EXE) + " " + args + " > /dev/null").c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / "bresse_acceptance_determinism";
  fs::remove_all(dir);
  const int s1 = run_cli("verify --seed 7 --threads 1 --out " + (dir / "t1").string());
  const int s8 = run_cli("verify --seed 7 --threads 8 --out " + (dir / "t8").string());
  if (s1 != 0 || s8 != 0) {
    return {false, "verify exited with " + std::to_string(s1) + " / " + std::to_string(s8)};
  }
  const auto a = io::read_file(dir / "t1" / "report.csv");
  const auto b = io::read_file(dir / "t8" / "report.csv");
  fs::remove_all(dir);
  return {a == b, "report.csv " + std::to_string(a.size()) + " bytes, threads 1 vs 8 " +
                      (a == b ? "identical" : "differ")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1 discrete dissipation identity", dissipation_identity},
      {"AC2 conservative limit", conservative_limit},
      {"AC3 strong stability", strong_stability},
      {"AC4 regime exponents", regime_exponents},
      {"AC5 exponential regime decay", exponential_decay},
      {"AC6 uniform-gap trend", uniform_gap_trend},
      {"AC7 transfer-matrix oracle", transfer_oracle},
      {"AC8 fitter exactness", fitter_exactness},
      {"AC9 determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << ": " << o.detail << " ["
              << num(secs) << " s]" << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
