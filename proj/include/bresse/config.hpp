#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bresse/analysis.hpp"

namespace bresse {

/// Everything a run needs. Missing config keys keep these defaults.
struct RunConfig {
  PhysicalParameters params;
  int N = 100;
  TimeStepConfig time;
  double lambda_min = 10.0;
  /// 0 selects the resolved band limit of the grid.
  double lambda_max = 0.0;
  int sweep_count = 60;
  SweepMode sweep_mode = SweepMode::PeakEnvelope;
  SlopeFit slope_fit = SlopeFit::LeastSquares;
  std::uint64_t seed = 0;
  InitialData initial = InitialData::SmoothRandom;
  std::string output_dir = ".";
  std::vector<int> grid_sizes{50, 100, 200};
  unsigned threads = 1;

  void validate() const {
    params.validate();
    if (N < 2) throw ParameterError("N", "must be at least 2");
    time.validate();
    if (!(lambda_min > 0.0)) throw ParameterError("lambda_min", "must be positive");
    if (lambda_max != 0.0 && !(lambda_max > lambda_min)) {
      throw ParameterError("lambda_max", "must exceed lambda_min (or be 0 for automatic)");
    }
    if (sweep_count < 2) throw ParameterError("sweep_count", "must be at least 2");
    if (grid_sizes.empty()) throw ParameterError("grid_sizes", "must not be empty");
    for (int n : grid_sizes) {
      if (n < 2) throw ParameterError("grid_sizes", "every size must be at least 2");
    }
    if (threads < 1) throw ParameterError("threads", "must be at least 1");
    if (output_dir.empty()) throw ParameterError("output_dir", "must not be empty");
  }

  SweepOptions sweep_options() const {
    SweepOptions s;
    s.lambda_min = lambda_min;
    s.lambda_max = lambda_max;
    s.count = sweep_count;
    s.mode = sweep_mode;
    s.fit = slope_fit;
    s.threads = threads;
    return s;
  }

  VerifyOptions verify_options() const {
    VerifyOptions v;
    v.grid_sizes = grid_sizes;
    v.simulation_N = N;
    v.time = time;
    v.initial = initial;
    v.seed = seed;
    v.sweep = sweep_options();
    return v;
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc() || res.ptr != end) {
    throw ParameterError(std::string(key), "not a valid number: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace detail

inline const std::vector<std::string_view>& config_keys() {
  static const std::vector<std::string_view> keys{
      "rho1",       "rho2",        "k1",         "k2",         "k3",           "l",
      "L",          "a0",          "beta",       "N",          "dt",           "t_final",
      "record_every", "seed",      "output_dir", "lambda_min", "lambda_max",   "sweep_count",
      "sweep_mode", "slope_fit",   "initial_data", "grid_sizes", "threads"};
  return keys;
}

inline bool is_config_key(std::string_view key) {
  for (auto k : config_keys()) {
    if (k == key) return true;
  }
  return false;
}

/// Sets one key from its textual value. Throws ParameterError naming the key
/// for unknown keys and unparsable values; range checks happen in validate().
inline void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
  using detail::parse_number;
  auto& p = cfg.params;
  if (key == "rho1") p.rho1 = parse_number<double>(key, value);
  else if (key == "rho2") p.rho2 = parse_number<double>(key, value);
  else if (key == "k1") p.k1 = parse_number<double>(key, value);
  else if (key == "k2") p.k2 = parse_number<double>(key, value);
  else if (key == "k3") p.k3 = parse_number<double>(key, value);
  else if (key == "l") p.l = parse_number<double>(key, value);
  else if (key == "L") p.L = parse_number<double>(key, value);
  else if (key == "a0") p.a0 = parse_number<double>(key, value);
  else if (key == "beta") p.beta = parse_number<double>(key, value);
  else if (key == "N") cfg.N = parse_number<int>(key, value);
  else if (key == "dt") cfg.time.dt = parse_number<double>(key, value);
  else if (key == "t_final") cfg.time.t_final = parse_number<double>(key, value);
  else if (key == "record_every") cfg.time.record_every = parse_number<int>(key, value);
  else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "output_dir") cfg.output_dir = std::string(value);
  else if (key == "lambda_min") cfg.lambda_min = parse_number<double>(key, value);
  else if (key == "lambda_max") cfg.lambda_max = parse_number<double>(key, value);
  else if (key == "sweep_count") cfg.sweep_count = parse_number<int>(key, value);
  else if (key == "threads") cfg.threads = parse_number<unsigned>(key, value);
  else if (key == "sweep_mode") {
    if (value == "peak") cfg.sweep_mode = SweepMode::PeakEnvelope;
    else if (value == "sampled") cfg.sweep_mode = SweepMode::Sampled;
    else throw ParameterError("sweep_mode", "expected peak or sampled");
  } else if (key == "slope_fit") {
    if (value == "least_squares") cfg.slope_fit = SlopeFit::LeastSquares;
    else if (value == "median") cfg.slope_fit = SlopeFit::MedianOfSlopes;
    else throw ParameterError("slope_fit", "expected least_squares or median");
  } else if (key == "initial_data") {
    if (value == "sine") cfg.initial = InitialData::Sine;
    else if (value == "smooth_random") cfg.initial = InitialData::SmoothRandom;
    else if (value == "normalized_random") cfg.initial = InitialData::NormalizedRandom;
    else throw ParameterError("initial_data", "expected sine, smooth_random or normalized_random");
  } else if (key == "grid_sizes") {
    std::vector<int> sizes;
    std::string_view rest = value;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const auto item = detail::trim(rest.substr(0, comma));
      sizes.push_back(parse_number<int>(key, item));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    cfg.grid_sizes = std::move(sizes);
  } else {
    throw ParameterError(std::string(key), "unknown key");
  }
}

/// Flat "key = value" lines, '#' starts a comment. Malformed lines and unknown
/// keys raise ParseError with the 1-based line number; the finished config is
/// validated and raises ParameterError naming the offending key.
inline RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    const auto key = detail::trim(line.substr(0, eq));
    const auto value = detail::trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, "missing key");
    if (value.empty()) throw ParseError(line_no, "missing value for '" + std::string(key) + "'");
    if (!is_config_key(key)) throw ParseError(line_no, "unknown key '" + std::string(key) + "'");
    try {
      apply_setting(cfg, key, value);
    } catch (const ParameterError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  cfg.validate();
  return cfg;
}

}  // namespace bresse
