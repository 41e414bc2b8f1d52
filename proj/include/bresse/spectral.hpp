#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <unsupported/Eigen/MatrixFunctions>

#include "bresse/discretize.hpp"
#include "bresse/io.hpp"

namespace bresse {

using Complex = std::complex<double>;

inline constexpr Eigen::Index kDenseSolverCap = 2400;

/// Fraction of the mesh cutoff pi * c_min / h below which the discrete
/// operator is treated as resolving the continuum dynamics.
inline constexpr double kResolvedFraction = 0.3;

/// Largest frequency the grid can represent for the slowest wave.
inline double mesh_cutoff(const SemiDiscreteOperator& op) {
  return std::numbers::pi * wave_speeds(op.params).min_speed() / op.grid.h;
}

inline double resolved_cutoff(const SemiDiscreteOperator& op) {
  return kResolvedFraction * mesh_cutoff(op);
}

/// W A W^{-1} with G = W^T W (dense Cholesky). Its Euclidean geometry is the
/// energy geometry of A, so it is nearly skew-symmetric and well scaled.
inline Eigen::MatrixXd energy_similarity(const SemiDiscreteOperator& op) {
  const Eigen::MatrixXd g = Eigen::MatrixXd(op.G);
  const Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success) throw NumericalError("Gram matrix is not positive definite");
  const Eigen::MatrixXd lower = llt.matrixL();
  // B = L^T A L^{-T}
  Eigen::MatrixXd b = lower.transpose() * Eigen::MatrixXd(op.A);
  lower.transpose().triangularView<Eigen::Upper>().solveInPlace<Eigen::OnTheRight>(b);
  return b;
}

struct SpectrumReport {
  /// All 6N eigenvalues, sorted by real part descending (then imaginary part).
  std::vector<Complex> eigenvalues;
  double spectral_abscissa = 0.0;
  double min_distance_to_imaginary_axis = 0.0;
  /// Band |Im| <= resolved_cutoff in which the grid resolves the continuum.
  double resolved_cutoff = 0.0;
  /// max Re over the resolved band.
  double resolved_abscissa = 0.0;
  double operator_norm = 0.0;  ///< ||W A W^{-1}||_2 estimate (Frobenius bound)
  int N = 0;
  PhysicalParameters params;
};

inline SpectrumReport eigenvalues(const SemiDiscreteOperator& op,
                                  Eigen::Index cap = kDenseSolverCap) {
  if (op.dim() > cap) {
    throw NumericalError("dense eigensolver refuses 6N = " + std::to_string(op.dim()) +
                         " above the cap of " + std::to_string(cap));
  }
  const Eigen::MatrixXd b = energy_similarity(op);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(b, false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigen-decomposition failed for N = " + std::to_string(op.N()) +
                         " (Eigen info code " + std::to_string(static_cast<int>(solver.info())) +
                         ")");
  }
  SpectrumReport r;
  r.N = op.N();
  r.params = op.params;
  r.operator_norm = b.norm();
  const auto& ev = solver.eigenvalues();
  r.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::sort(r.eigenvalues.begin(), r.eigenvalues.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  r.spectral_abscissa = r.eigenvalues.front().real();
  r.min_distance_to_imaginary_axis = std::numeric_limits<double>::infinity();
  r.resolved_cutoff = resolved_cutoff(op);
  r.resolved_abscissa = -std::numeric_limits<double>::infinity();
  for (const Complex z : r.eigenvalues) {
    r.min_distance_to_imaginary_axis = std::min(r.min_distance_to_imaginary_axis, std::abs(z.real()));
    if (std::abs(z.imag()) <= r.resolved_cutoff) {
      r.resolved_abscissa = std::max(r.resolved_abscissa, z.real());
    }
  }
  return r;
}

/// "re,im" rows in report order.
inline std::string spectrum_csv(const SpectrumReport& r) {
  std::string out = "re,im\n";
  for (const Complex z : r.eigenvalues) {
    out += io::format_double(z.real()) + ',' + io::format_double(z.imag()) + '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Resolvent norms in the energy norm.

enum class ResolventMethod { Auto, DenseSvd, InverseIteration };

inline constexpr Eigen::Index kDenseSvdLimit = 600;

namespace detail {

inline void check_not_singular(double sigma_min, double lambda) {
  if (!(sigma_min > 1e-12 * std::max(1.0, std::abs(lambda)))) {
    throw NearSingularError(lambda, "i*lambda is within round-off of the spectrum at lambda = " +
                                        io::format_double(lambda));
  }
}

}  // namespace detail

/// 1 / sigma_min(i lambda - W A W^{-1}) from a full complex SVD.
inline double resolvent_norm_svd(const Eigen::MatrixXd& similarity, double lambda) {
  const Eigen::Index n = similarity.rows();
  Eigen::MatrixXcd shifted = -similarity.cast<Complex>();
  shifted.diagonal().array() += Complex(0.0, lambda);
  const Eigen::BDCSVD<Eigen::MatrixXcd> svd(shifted);
  const double sigma_min = svd.singularValues()(n - 1);
  detail::check_not_singular(sigma_min, lambda);
  return 1.0 / sigma_min;
}

/// Sparse evaluation of ||(i lambda - A)^{-1}||_G.
///
/// Block power (subspace) iteration on the G-self-adjoint operator
/// T = G^{-1} R^H G R with R = (i lambda - A)^{-1}; both R and R^H are
/// applied through sparse LU factorizations, so the cost per sample is
/// linear in N up to fill-in.
class SparseResolvent {
 public:
  static constexpr int kBlock = 4;
  static constexpr int kMaxIterations = 2000;
  static constexpr double kTolerance = 1e-13;

  explicit SparseResolvent(const SemiDiscreteOperator& op) : op_(&op), gram_(op.G.cast<Complex>()) {
    gram_factor_.compute(gram_);
    if (gram_factor_.info() != Eigen::Success) {
      throw NumericalError("Gram matrix is not positive definite");
    }
    a_ = op.A.cast<Complex>();
    a_adjoint_ = Eigen::SparseMatrix<Complex>(a_.adjoint());
  }

  double norm(double lambda) const {
    const Eigen::Index n = op_->dim();
    Eigen::SparseMatrix<Complex> eye(n, n);
    eye.setIdentity();
    const Eigen::SparseMatrix<Complex> shifted = Complex(0.0, lambda) * eye - a_;
    const Eigen::SparseMatrix<Complex> shifted_adjoint = Complex(0.0, -lambda) * eye - a_adjoint_;
    Lu lu(shifted), lu_adjoint(shifted_adjoint);
    if (lu.info() != Eigen::Success || lu_adjoint.info() != Eigen::Success) {
      throw NearSingularError(lambda, "sparse LU of i*lambda - A failed at lambda = " +
                                          io::format_double(lambda));
    }

    std::mt19937_64 rng(0x5eed);
    std::normal_distribution<double> normal;
    Eigen::MatrixXcd x(n, kBlock);
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      for (Eigen::Index i = 0; i < n; ++i) x(i, j) = Complex(normal(rng), normal(rng));
    }
    g_orthonormalize(x);

    double previous = 0.0;
    for (int it = 0; it < kMaxIterations; ++it) {
      const Eigen::MatrixXcd y = lu.solve(x);
      const Eigen::MatrixXcd gy = gram_ * y;
      // Rayleigh-Ritz in the G-inner product: H = Y^H G Y, X^H G X = I.
      const Eigen::MatrixXcd h = y.adjoint() * gy;
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ritz(0.5 * (h + h.adjoint()));
      const double top = ritz.eigenvalues().maxCoeff();
      x = gram_factor_.solve(Eigen::MatrixXcd(lu_adjoint.solve(gy)));
      x = x * ritz.eigenvectors();
      g_orthonormalize(x);
      if (it > 2 && std::abs(top - previous) <= kTolerance * top) {
        const double sigma_min = 1.0 / std::sqrt(top);
        detail::check_not_singular(sigma_min, lambda);
        return std::sqrt(top);
      }
      previous = top;
    }
    throw NumericalError("resolvent subspace iteration did not converge at lambda = " +
                         io::format_double(lambda));
  }

 private:
  using Lu = Eigen::SparseLU<Eigen::SparseMatrix<Complex>, Eigen::COLAMDOrdering<int>>;

  void g_orthonormalize(Eigen::MatrixXcd& x) const {
    const Eigen::MatrixXcd s = x.adjoint() * (gram_ * x);
    const Eigen::LLT<Eigen::MatrixXcd> llt(0.5 * (s + s.adjoint()));
    if (llt.info() != Eigen::Success) throw NumericalError("subspace basis collapsed");
    // x <- x * L^{-H}
    llt.matrixU().solveInPlace<Eigen::OnTheRight>(x);
  }

  const SemiDiscreteOperator* op_;
  Eigen::SparseMatrix<Complex> gram_;
  Eigen::SimplicialLLT<Eigen::SparseMatrix<Complex>> gram_factor_;
  Eigen::SparseMatrix<Complex> a_;
  Eigen::SparseMatrix<Complex> a_adjoint_;
};

/// ||(i lambda - A)^{-1}|| in the energy norm.
inline double resolvent_norm(const SemiDiscreteOperator& op, double lambda,
                             ResolventMethod method = ResolventMethod::Auto) {
  if (method == ResolventMethod::Auto) {
    method = op.dim() <= kDenseSvdLimit ? ResolventMethod::DenseSvd
                                        : ResolventMethod::InverseIteration;
  }
  if (method == ResolventMethod::DenseSvd) {
    if (op.dim() > kDenseSolverCap) throw NumericalError("dense SVD refused above the solver cap");
    return resolvent_norm_svd(energy_similarity(op), lambda);
  }
  return SparseResolvent(op).norm(lambda);
}

// ---------------------------------------------------------------------------
// Resolvent growth along the imaginary axis.

enum class SweepMode {
  /// Norms at count log-spaced frequencies.
  Sampled,
  /// count log-spaced bins; in each bin the largest norm taken at the
  /// imaginary parts of the eigenvalues inside it (the resonance peaks).
  /// Bins without eigenvalues contribute no sample.
  PeakEnvelope,
};

enum class SlopeFit { LeastSquares, MedianOfSlopes };

struct SweepOptions {
  double lambda_min = 10.0;
  /// 0 selects the resolved cutoff 0.3 * pi * c_min / h.
  double lambda_max = 0.0;
  int count = 60;
  SweepMode mode = SweepMode::PeakEnvelope;
  SlopeFit fit = SlopeFit::LeastSquares;
  ResolventMethod method = ResolventMethod::InverseIteration;
  unsigned threads = 1;
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y,
                        SlopeFit kind = SlopeFit::LeastSquares) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw NumericalError("line fit needs at least two points");
  LineFit f;
  if (kind == SlopeFit::LeastSquares) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
      mx += x[i];
      my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
      sxx += (x[i] - mx) * (x[i] - mx);
      sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw NumericalError("line fit abscissae are all equal");
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
  } else {
    std::vector<double> slopes;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (x[j] != x[i]) slopes.push_back((y[j] - y[i]) / (x[j] - x[i]));
      }
    }
    if (slopes.empty()) throw NumericalError("line fit abscissae are all equal");
    auto mid = slopes.begin() + slopes.size() / 2;
    std::nth_element(slopes.begin(), mid, slopes.end());
    f.slope = *mid;
    std::vector<double> offsets(n);
    for (std::size_t i = 0; i < n; ++i) offsets[i] = y[i] - f.slope * x[i];
    auto omid = offsets.begin() + n / 2;
    std::nth_element(offsets.begin(), omid, offsets.end());
    f.intercept = *omid;
  }
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ss += r * r;
  }
  f.rms_residual = std::sqrt(ss / n);
  return f;
}

struct ResolventSweep {
  std::vector<double> lambdas;
  std::vector<double> norms;
  double fitted_exponent = 0.0;
  double fit_intercept = 0.0;
  double window_min = 0.0;
  double window_max = 0.0;
  /// Frequencies dropped because i*lambda was numerically on the spectrum.
  std::vector<double> excluded;
  SweepMode mode = SweepMode::PeakEnvelope;
  SlopeFit fit = SlopeFit::LeastSquares;
};

namespace detail {

/// Evaluates f(k) for k in [0, n) on `threads` workers; results are stored by index.
template <typename F>
void parallel_for(std::size_t n, unsigned threads, F&& f) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (threads == 1) {
    for (std::size_t k = 0; k < n; ++k) f(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t k = next++; k < n; k = next++) f(k);
      } catch (...) {
        errors[w] = std::current_exception();
        next = n;
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

inline std::vector<double> log_space(double lo, double hi, int count) {
  std::vector<double> v(count);
  for (int k = 0; k < count; ++k) {
    const double t = count == 1 ? 0.0 : static_cast<double>(k) / (count - 1);
    v[k] = std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)));
  }
  v.front() = lo;
  v.back() = hi;
  return v;
}

}  // namespace detail

/// Samples ||(i lambda - A)^{-1}||_G on [lambda_min, lambda_max] and fits the
/// growth exponent of log norm against log lambda.
///
/// PeakEnvelope needs the spectrum; pass one to avoid recomputing it.
inline ResolventSweep resolvent_sweep(const SemiDiscreteOperator& op, SweepOptions opt,
                                      const SpectrumReport* spectrum = nullptr) {
  if (opt.lambda_max == 0.0) opt.lambda_max = resolved_cutoff(op);
  if (!(opt.lambda_min > 0.0 && opt.lambda_min < opt.lambda_max)) {
    throw ParameterError("lambda_min", "requires 0 < lambda_min < lambda_max");
  }
  if (opt.lambda_max > mesh_cutoff(op)) {
    throw ParameterError("lambda_max", "exceeds the mesh cutoff pi*c_min/h = " +
                                           io::format_double(mesh_cutoff(op)));
  }
  if (opt.count < 2) throw ParameterError("count", "needs at least two samples");

  // Candidate frequencies, grouped per output sample.
  std::vector<std::vector<double>> groups;
  if (opt.mode == SweepMode::Sampled) {
    for (double lam : detail::log_space(opt.lambda_min, opt.lambda_max, opt.count)) {
      groups.push_back({lam});
    }
  } else {
    SpectrumReport computed;
    if (spectrum == nullptr) {
      computed = eigenvalues(op);
      spectrum = &computed;
    }
    const auto edges = detail::log_space(opt.lambda_min, opt.lambda_max, opt.count + 1);
    groups.resize(opt.count);
    for (const Complex z : spectrum->eigenvalues) {
      const double im = z.imag();
      if (im <= opt.lambda_min || im >= opt.lambda_max) continue;
      const auto it = std::upper_bound(edges.begin(), edges.end(), im);
      const auto bin = static_cast<std::size_t>(it - edges.begin()) - 1;
      groups[std::min<std::size_t>(bin, groups.size() - 1)].push_back(im);
    }
    for (auto& g : groups) {
      std::sort(g.begin(), g.end());
      g.erase(std::unique(g.begin(), g.end()), g.end());
    }
  }

  std::vector<std::pair<std::size_t, double>> flat;
  for (std::size_t b = 0; b < groups.size(); ++b) {
    for (double lam : groups[b]) flat.emplace_back(b, lam);
  }
  std::vector<double> values(flat.size(), std::numeric_limits<double>::quiet_NaN());

  Eigen::MatrixXd similarity;
  std::unique_ptr<SparseResolvent> sparse;
  ResolventMethod method = opt.method;
  if (method == ResolventMethod::Auto) {
    method = op.dim() <= kDenseSvdLimit ? ResolventMethod::DenseSvd
                                        : ResolventMethod::InverseIteration;
  }
  if (method == ResolventMethod::DenseSvd) {
    similarity = energy_similarity(op);
  } else {
    sparse = std::make_unique<SparseResolvent>(op);
  }

  detail::parallel_for(flat.size(), opt.threads, [&](std::size_t k) {
    const double lam = flat[k].second;
    try {
      values[k] = method == ResolventMethod::DenseSvd ? resolvent_norm_svd(similarity, lam)
                                                      : sparse->norm(lam);
    } catch (const NearSingularError&) {
      values[k] = std::numeric_limits<double>::quiet_NaN();
    }
  });

  ResolventSweep sweep;
  sweep.mode = opt.mode;
  sweep.fit = opt.fit;
  sweep.window_min = opt.lambda_min;
  sweep.window_max = opt.lambda_max;
  std::size_t k = 0;
  for (std::size_t b = 0; b < groups.size(); ++b) {
    double best_lam = 0.0, best = -1.0;
    for (; k < flat.size() && flat[k].first == b; ++k) {
      if (std::isnan(values[k])) {
        sweep.excluded.push_back(flat[k].second);
      } else if (values[k] > best) {
        best = values[k];
        best_lam = flat[k].second;
      }
    }
    if (best > 0.0) {
      sweep.lambdas.push_back(best_lam);
      sweep.norms.push_back(best);
    }
  }
  if (sweep.lambdas.size() < 2) throw NumericalError("resolvent sweep kept fewer than two samples");

  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < sweep.lambdas.size(); ++i) {
    lx.push_back(std::log(sweep.lambdas[i]));
    ly.push_back(std::log(sweep.norms[i]));
  }
  const LineFit f = fit_line(lx, ly, opt.fit);
  sweep.fitted_exponent = f.slope;
  sweep.fit_intercept = f.intercept;
  return sweep;
}

/// "lambda,norm" rows.
inline std::string resolvent_csv(const ResolventSweep& s) {
  std::string out = "lambda,norm\n";
  for (std::size_t i = 0; i < s.lambdas.size(); ++i) {
    out += io::format_double(s.lambdas[i]) + ',' + io::format_double(s.norms[i]) + '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Unique continuation on the undamped interval (beta, L).

/// Coefficient matrix of V_x = A(lambda) V for V = (v1, v1_x, v3, v3_x, v5, v5_x)
/// on (beta, L), entered exactly as the first-order system of the eigenvalue
/// problem A U = i lambda U there.
struct TransferMatrix {
  double lambda = 0.0;
  Eigen::Matrix<double, 6, 6> A6;
  PhysicalParameters params;
};

inline TransferMatrix transfer_matrix(double lambda, const PhysicalParameters& p) {
  p.validate();
  const double lam2 = lambda * lambda;
  TransferMatrix tm;
  tm.lambda = lambda;
  tm.params = p;
  auto& m = tm.A6;
  m.setZero();
  m(0, 1) = 1.0;
  m(1, 3) = 1.0;
  m(1, 5) = p.l * (1.0 - p.k3 / p.k1);
  m(2, 3) = 1.0;
  m(3, 1) = -p.k1 / p.k2;
  m(3, 2) = (p.rho2 * lam2 - p.k1) / p.k2;
  m(3, 4) = -p.l * p.k1 / p.k2;
  m(4, 5) = 1.0;
  m(5, 1) = -p.l * (p.k1 / p.k3 + 1.0);
  m(5, 3) = -p.l * p.k1 / p.k3;
  m(5, 4) = (p.rho1 * lam2 - p.l * p.l * p.k1) / p.k3;
  return tm;
}

using Vector6 = Eigen::Matrix<double, 6, 1>;

/// exp(A6 * dx) * v by scaling and squaring with a Pade approximant.
inline Vector6 flow(const TransferMatrix& tm, const Vector6& v, double dx) {
  const Eigen::Matrix<double, 6, 6> scaled = tm.A6 * dx;
  const Eigen::Matrix<double, 6, 6> e = scaled.exp();
  return e * v;
}

/// V(x) = exp(A6 (x - beta)) V(beta) for beta <= x <= L.
inline Vector6 propagate(const TransferMatrix& tm, const Vector6& v_beta, double x) {
  if (!(x >= tm.params.beta && x <= tm.params.L)) {
    throw ParameterError("x", "must lie in [beta, L]");
  }
  return flow(tm, v_beta, x - tm.params.beta);
}

enum class ReducedCase { Linear, Exponential, Trigonometric };

inline std::string_view to_string(ReducedCase c) {
  switch (c) {
    case ReducedCase::Linear: return "linear";
    case ReducedCase::Exponential: return "exponential";
    case ReducedCase::Trigonometric: return "trigonometric";
  }
  return "?";
}

/// Closed-form solution of s v + v'' = 0 with s = (l^2 k3 - rho1 lambda^2) / k3:
///   s = 0: c1 x + c2,   s < 0: c1 e^{r x} + c2 e^{-r x} (r = sqrt(-s)),
///   s > 0: c1 cos(r x) + c2 sin(r x) (r = sqrt(s)).
struct ReducedSolution {
  ReducedCase kind = ReducedCase::Linear;
  double s = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;

  double operator()(double x) const {
    switch (kind) {
      case ReducedCase::Linear: return c1 * x + c2;
      case ReducedCase::Exponential: {
        const double r = std::sqrt(-s);
        return c1 * std::exp(r * x) + c2 * std::exp(-r * x);
      }
      case ReducedCase::Trigonometric: {
        const double r = std::sqrt(s);
        return c1 * std::cos(r * x) + c2 * std::sin(r * x);
      }
    }
    return 0.0;
  }

  std::vector<double> sample(const std::vector<double>& xs) const {
    std::vector<double> out;
    out.reserve(xs.size());
    for (double x : xs) out.push_back((*this)(x));
    return out;
  }
};

/// The case is decided by comparing rho1 lambda^2 with l^2 k3 directly, so the
/// branches switch exactly at lambda^2 = l^2 k3 / rho1.
inline ReducedSolution reduced_solution(double lambda, const PhysicalParameters& p, double c1,
                                        double c2) {
  p.validate();
  const double inertia = p.rho1 * lambda * lambda;
  const double axial = p.l * p.l * p.k3;
  ReducedSolution r;
  r.c1 = c1;
  r.c2 = c2;
  r.s = (axial - inertia) / p.k3;
  if (inertia == axial) {
    r.kind = ReducedCase::Linear;
    r.s = 0.0;
  } else if (inertia > axial) {
    r.kind = ReducedCase::Exponential;
  } else {
    r.kind = ReducedCase::Trigonometric;
  }
  return r;
}

/// Samples the reduced solution at the interior grid nodes lying in (0, beta).
inline std::vector<double> reduced_solution_on_grid(const ReducedSolution& r, const Grid& g,
                                                    double beta) {
  std::vector<double> xs;
  for (int i = 1; i <= g.N && g.x(i) < beta; ++i) xs.push_back(g.x(i));
  return r.sample(xs);
}

}  // namespace bresse
