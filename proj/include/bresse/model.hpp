#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "bresse/errors.hpp"

namespace bresse {

/// Coefficients of the damped Bresse beam on (0, L).
///
/// rho1, rho2 are mass densities, k1, k2, k3 the shear, bending and axial
/// stiffnesses, l the curvature. The longitudinal equation is damped by
/// a(x) = a0 on [0, beta) and 0 on [beta, L]. The defaults put all three
/// wave speeds equal.
struct PhysicalParameters {
  double rho1 = 1.0;
  double rho2 = 1.0;
  double k1 = 1.0;
  double k2 = 1.0;
  double k3 = 1.0;
  double l = 1.0;
  double L = 1.0;
  double a0 = 1.0;
  double beta = 0.5;

  /// Throws ParameterError naming the first offending field.
  /// a0 = 0 is accepted: it is the conservative reference system.
  void validate() const {
    const std::array<std::pair<std::string_view, double>, 7> positive{{
        {"rho1", rho1}, {"rho2", rho2}, {"k1", k1}, {"k2", k2},
        {"k3", k3}, {"l", l}, {"L", L}}};
    for (const auto& [key, value] : positive) {
      if (!(value > 0.0) || !std::isfinite(value)) {
        throw ParameterError(std::string(key), "must be a finite positive number");
      }
    }
    if (!(a0 >= 0.0) || !std::isfinite(a0)) {
      throw ParameterError("a0", "must be a finite nonnegative number");
    }
    if (!(beta > 0.0 && beta < L)) {
      throw ParameterError("beta", "requires 0 < beta < L");
    }
  }

  bool operator==(const PhysicalParameters&) const = default;
};

enum class RegimeKind { ExponentialEqualSpeeds, PolynomialT1, PolynomialTHalf };

/// Stability regime together with the resolvent growth exponent ell of
/// sup ||(i lambda - A)^-1|| = O(|lambda|^ell).
struct Regime {
  RegimeKind kind;
  int ell;

  bool operator==(const Regime&) const = default;
};

inline std::string_view to_string(RegimeKind kind) {
  switch (kind) {
    case RegimeKind::ExponentialEqualSpeeds: return "ExponentialEqualSpeeds";
    case RegimeKind::PolynomialT1: return "PolynomialT1";
    case RegimeKind::PolynomialTHalf: return "PolynomialTHalf";
  }
  return "?";
}

inline constexpr double kDefaultRegimeTolerance = 1e-9;

/// Equal speeds k1/rho1 = k2/rho2 and k1 = k3 give exponential decay;
/// only the first equality gives t^-1; otherwise t^-1/2.
/// Equalities are tested relative to k1/rho1 and k1 respectively.
inline Regime classify_regime(const PhysicalParameters& p,
                              double rel_tol = kDefaultRegimeTolerance) {
  p.validate();
  if (!(rel_tol >= 0.0)) throw ParameterError("rel_tol", "must be nonnegative");
  const double c1 = p.k1 / p.rho1;
  const double c2 = p.k2 / p.rho2;
  const bool shear_bending = std::abs(c1 - c2) <= rel_tol * c1;
  const bool shear_axial = std::abs(p.k1 - p.k3) <= rel_tol * p.k1;
  if (!shear_bending) return {RegimeKind::PolynomialTHalf, 4};
  if (!shear_axial) return {RegimeKind::PolynomialT1, 2};
  return {RegimeKind::ExponentialEqualSpeeds, 0};
}

/// Squared propagation speeds of the vertical, shear-angle and
/// longitudinal waves.
struct WaveSpeeds {
  double vertical;
  double shear;
  double longitudinal;

  double min_speed() const {
    return std::sqrt(std::min({vertical, shear, longitudinal}));
  }
};

inline WaveSpeeds wave_speeds(const PhysicalParameters& p) {
  p.validate();
  return {p.k1 / p.rho1, p.k2 / p.rho2, p.k3 / p.rho1};
}

/// Damping coefficient a(x); right-open convention a(beta) = 0.
inline double damping_at(double x, const PhysicalParameters& p) {
  if (!(x >= 0.0 && x <= p.L)) throw ParameterError("x", "must lie in [0, L]");
  return x < p.beta ? p.a0 : 0.0;
}

/// Uniform grid with N interior nodes x_i = i*h, i = 1..N, h = L/(N+1).
/// Boundary nodes x_0 = 0 and x_{N+1} = L carry homogeneous Dirichlet data.
struct Grid {
  int N = 0;
  double L = 1.0;
  double h = 0.0;

  static Grid uniform(int n, double length) {
    if (n < 2) throw ParameterError("N", "needs at least 2 interior nodes");
    if (!(length > 0.0)) throw ParameterError("L", "must be positive");
    return Grid{n, length, length / (n + 1)};
  }

  /// Position of interior node i (1-based).
  double x(int i) const { return i * h; }

  std::size_t dofs() const { return 6 * static_cast<std::size_t>(N); }
};

/// Component blocks of the first-order state U = (phi, phi_t, psi, psi_t, w, w_t).
enum class Field : int { Phi = 0, PhiT = 1, Psi = 2, PsiT = 3, W = 4, WT = 5 };

/// Semi-discrete state: six stacked blocks of N interior samples.
template <typename Scalar>
class BasicStateVector {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  BasicStateVector() = default;
  explicit BasicStateVector(int n) : n_(n), data_(Vector::Zero(6 * n)) {
    if (n < 0) throw ShapeError("negative grid size");
  }
  BasicStateVector(int n, Vector data) : n_(n), data_(std::move(data)) {
    if (data_.size() != 6 * static_cast<Eigen::Index>(n)) {
      throw ShapeError("state length " + std::to_string(data_.size()) +
                       " does not match 6*N = " + std::to_string(6 * n));
    }
  }

  int size() const { return n_; }

  auto block(Field f) { return data_.segment(static_cast<int>(f) * n_, n_); }
  auto block(Field f) const { return data_.segment(static_cast<int>(f) * n_, n_); }

  Vector& data() { return data_; }
  const Vector& data() const { return data_; }

  BasicStateVector& operator+=(const BasicStateVector& o) {
    check_same(o);
    data_ += o.data_;
    return *this;
  }
  friend BasicStateVector operator+(BasicStateVector a, const BasicStateVector& b) {
    return a += b;
  }
  friend BasicStateVector operator*(Scalar c, BasicStateVector a) {
    a.data_ *= c;
    return a;
  }

 private:
  void check_same(const BasicStateVector& o) const {
    if (o.n_ != n_) throw ShapeError("state grid sizes differ");
  }

  int n_ = 0;
  Vector data_;
};

using StateVector = BasicStateVector<double>;
using ComplexStateVector = BasicStateVector<std::complex<double>>;

namespace detail {

/// Strain measures on the N+1 cell edges j = 0..N, sampled with forward
/// differences (Du)_j = (u_{j+1} - u_j)/h and ghost zeros u_0 = u_{N+1} = 0.
/// The zeroth-order coupling terms take the value of the left node of
/// each edge, so edge 0 sees the boundary value 0.
template <typename Scalar>
struct Strains {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> shear;    // phi_x + psi + l w
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> bending;  // psi_x
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> axial;    // w_x - l phi
};

template <typename Scalar>
Strains<Scalar> strains(const BasicStateVector<Scalar>& u, double l, double h) {
  const int n = u.size();
  const auto phi = u.block(Field::Phi);
  const auto psi = u.block(Field::Psi);
  const auto w = u.block(Field::W);
  auto at = [n](const auto& v, int i) -> Scalar {  // i is 1-based, ghosts are zero
    return (i >= 1 && i <= n) ? v(i - 1) : Scalar(0);
  };
  Strains<Scalar> s;
  s.shear.resize(n + 1);
  s.bending.resize(n + 1);
  s.axial.resize(n + 1);
  for (int j = 0; j <= n; ++j) {
    s.shear(j) = (at(phi, j + 1) - at(phi, j)) / h + at(psi, j) + l * at(w, j);
    s.bending(j) = (at(psi, j + 1) - at(psi, j)) / h;
    s.axial(j) = (at(w, j + 1) - at(w, j)) / h - l * at(phi, j);
  }
  return s;
}

}  // namespace detail

/// Discrete energy
///   E_h = h/2 * sum [rho1|phi_t|^2 + rho2|psi_t|^2 + rho1|w_t|^2]
///       + h/2 * sum_edges [k1|shear|^2 + k2|bending|^2 + k3|axial|^2].
template <typename Scalar>
double energy(const BasicStateVector<Scalar>& u, const PhysicalParameters& p, double h) {
  if (!(h > 0.0)) throw ShapeError("grid spacing must be positive");
  const double expected_h = p.L / (u.size() + 1);
  if (u.size() < 1 || std::abs(h - expected_h) > 1e-12 * p.L) {
    throw ShapeError("state of size " + std::to_string(u.size()) +
                     " is inconsistent with spacing h = " + std::to_string(h));
  }
  const auto s = detail::strains(u, p.l, h);
  const double kinetic = p.rho1 * u.block(Field::PhiT).squaredNorm() +
                         p.rho2 * u.block(Field::PsiT).squaredNorm() +
                         p.rho1 * u.block(Field::WT).squaredNorm();
  const double potential = p.k1 * s.shear.squaredNorm() + p.k2 * s.bending.squaredNorm() +
                           p.k3 * s.axial.squaredNorm();
  return 0.5 * h * (kinetic + potential);
}

template <typename Scalar>
double energy(const BasicStateVector<Scalar>& u, const PhysicalParameters& p, const Grid& g) {
  if (u.size() != g.N) throw ShapeError("state does not live on this grid");
  return energy(u, p, g.h);
}

}  // namespace bresse
