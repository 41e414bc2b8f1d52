#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "bresse/discretize.hpp"
#include "bresse/io.hpp"

namespace bresse {

struct TimeStepConfig {
  double dt = 1e-3;
  double t_final = 50.0;
  /// Sampling stride of the trace; 0 selects max(1, floor(0.01/dt)).
  int record_every = 0;

  void validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ParameterError("dt", "must be positive");
    if (!(t_final >= dt) || !std::isfinite(t_final)) {
      throw ParameterError("t_final", "must be at least dt");
    }
    if (record_every < 0) throw ParameterError("record_every", "must be positive");
  }

  int stride() const {
    if (record_every > 0) return record_every;
    return std::max(1, static_cast<int>(std::floor(0.01 / dt)));
  }

  long steps() const { return std::lround(t_final / dt); }
};

struct EnergyTrace {
  std::vector<double> times;
  std::vector<double> energies;
  std::string provenance;

  std::size_t size() const { return times.size(); }
};

/// Implicit midpoint (Crank-Nicolson) propagator for U_t = A U.
///
/// Solves (I - dt/2 A) u+ = (I + dt/2 A) u with a sparse LU factorization
/// computed once. Because A is G-skew up to the damping term, the scheme
/// satisfies E(u+) - E(u) = dt * Re<A m, m>_G with m = (u + u+)/2.
class MidpointStepper {
 public:
  static constexpr double kResidualTolerance = 1e-12;

  MidpointStepper(const SemiDiscreteOperator& op, double dt) : op_(&op), dt_(dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ParameterError("dt", "must be positive");
    Eigen::SparseMatrix<double> eye(op.dim(), op.dim());
    eye.setIdentity();
    lhs_ = eye - 0.5 * dt * op.A;
    rhs_ = eye + 0.5 * dt * op.A;
    lhs_.makeCompressed();
    lu_.analyzePattern(lhs_);
    lu_.factorize(lhs_);
    if (lu_.info() != Eigen::Success) {
      throw NumericalError("factorization of I - dt/2 A failed: " + lu_.lastErrorMessage());
    }
  }

  double dt() const { return dt_; }

  StateVector step(const StateVector& u) const {
    op_->check(u);
    const Eigen::VectorXd b = rhs_ * u.data();
    Eigen::VectorXd x = lu_.solve(b);
    const double scale = std::max(b.norm(), std::numeric_limits<double>::min());
    for (int refine = 0;; ++refine) {
      const Eigen::VectorXd r = b - lhs_ * x;
      if (r.norm() <= kResidualTolerance * scale) break;
      if (refine == 3) {
        throw NumericalError("midpoint solve stalled at relative residual " +
                             io::format_double(r.norm() / scale));
      }
      x += lu_.solve(r);
    }
    return StateVector(u.size(), std::move(x));
  }

 private:
  const SemiDiscreteOperator* op_;
  double dt_;
  Eigen::SparseMatrix<double> lhs_;
  Eigen::SparseMatrix<double> rhs_;
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_;
};

/// One implicit midpoint step. Prefer MidpointStepper for repeated steps.
inline StateVector step(const SemiDiscreteOperator& op, const StateVector& u, double dt) {
  return MidpointStepper(op, dt).step(u);
}

/// Called after every step with (step index n >= 1, time, u_{n-1}, u_n).
using StepObserver =
    std::function<void(long, double, const StateVector&, const StateVector&)>;

inline EnergyTrace simulate(const SemiDiscreteOperator& op, const StateVector& u0,
                            const TimeStepConfig& cfg, const StepObserver& observer = {}) {
  cfg.validate();
  op.check(u0);
  const MidpointStepper stepper(op, cfg.dt);
  const long steps = cfg.steps();
  const int stride = cfg.stride();

  EnergyTrace trace;
  {
    std::ostringstream tag;
    tag << "N=" << op.N() << " dt=" << io::format_double(cfg.dt)
        << " a0=" << io::format_double(op.params.a0);
    trace.provenance = tag.str();
  }
  trace.times.reserve(static_cast<std::size_t>(steps / stride + 2));
  trace.energies.reserve(trace.times.capacity());
  trace.times.push_back(0.0);
  trace.energies.push_back(energy(u0, op.params, op.grid));

  StateVector u = u0;
  for (long n = 1; n <= steps; ++n) {
    StateVector next = stepper.step(u);
    const double t = static_cast<double>(n) * cfg.dt;
    if (observer) observer(n, t, u, next);
    u = std::move(next);
    if (n % stride == 0 || n == steps) {
      trace.times.push_back(t);
      trace.energies.push_back(energy(u, op.params, op.grid));
    }
  }
  return trace;
}

/// "t,E" header followed by one row per sample, 17 significant digits.
inline std::string energy_csv(const EnergyTrace& trace) {
  std::string out = "t,E\n";
  for (std::size_t k = 0; k < trace.size(); ++k) {
    out += io::format_double(trace.times[k]);
    out += ',';
    out += io::format_double(trace.energies[k]);
    out += '\n';
  }
  return out;
}

enum class InitialData { Sine, SmoothRandom, NormalizedRandom };

/// Initial states for simulations.
///
/// Sine: every displacement is sin(pi x / L), velocities vanish.
/// SmoothRandom: every block is sum_{k<=8} g_k / k^2 sin(k pi x / L), g_k ~ N(0,1).
/// NormalizedRandom: i.i.d. N(0,1) nodal values scaled to unit energy.
inline StateVector make_initial_state(InitialData kind, const SemiDiscreteOperator& op,
                                      std::uint64_t seed) {
  const Grid& g = op.grid;
  StateVector u(g.N);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double k0 = std::numbers::pi / g.L;
  switch (kind) {
    case InitialData::Sine:
      for (Field f : {Field::Phi, Field::Psi, Field::W}) {
        for (int i = 1; i <= g.N; ++i) u.block(f)(i - 1) = std::sin(k0 * g.x(i));
      }
      break;
    case InitialData::SmoothRandom:
      for (int b = 0; b < 6; ++b) {
        auto block = u.block(static_cast<Field>(b));
        for (int k = 1; k <= 8; ++k) {
          const double amp = normal(rng) / (k * k);
          for (int i = 1; i <= g.N; ++i) block(i - 1) += amp * std::sin(k * k0 * g.x(i));
        }
      }
      break;
    case InitialData::NormalizedRandom: {
      for (Eigen::Index i = 0; i < u.data().size(); ++i) u.data()(i) = normal(rng);
      const double e = energy(u, op.params, g);
      u.data() /= std::sqrt(e);
      break;
    }
  }
  return u;
}

}  // namespace bresse
