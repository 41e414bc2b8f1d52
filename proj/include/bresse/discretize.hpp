#pragma once

#include <ostream>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "bresse/model.hpp"

namespace bresse {

/// Matrix realization of the damped Bresse generator on a uniform grid.
///
/// The displacements q = (phi, psi, w) are mapped to edge strains by
/// B = [D S lS; 0 D 0; -lS 0 D], where D is the forward difference with
/// Dirichlet ghosts and S copies the left node of each edge. With
/// C = diag(k1, k2, k3) and K = B^T C B the velocity rows read
/// M q_tt = -K q - diag(a) w_t, so the outer divergence is -D^T and the
/// energy Gram matrix is G = h * diag(K, M) in (q, q_t) coordinates.
/// Consequently U^T G A U = -h * sum_i a(x_i) |w_t,i|^2 exactly.
struct SemiDiscreteOperator {
  using SparseMatrix = Eigen::SparseMatrix<double>;

  SparseMatrix A;
  SparseMatrix G;
  Grid grid;
  PhysicalParameters params;
  /// Damping coefficient a(x_i) at each interior node.
  Eigen::VectorXd damping;

  int N() const { return grid.N; }
  Eigen::Index dim() const { return A.rows(); }

  /// -h * sum_i a(x_i) |v6_i|^2: the exact value of Re <A U, U>_G.
  template <typename Scalar>
  double dissipation(const BasicStateVector<Scalar>& u) const {
    return -grid.h * (damping.array() * u.block(Field::WT).array().abs2()).sum();
  }

  /// Energy via the Gram matrix, 1/2 U^T G U.
  template <typename Scalar>
  double gram_energy(const BasicStateVector<Scalar>& u) const {
    check(u);
    return 0.5 * std::real(u.data().dot(G * u.data()));
  }

  /// Re <A U, U>_G.
  template <typename Scalar>
  double energy_rate(const BasicStateVector<Scalar>& u) const {
    check(u);
    return std::real(u.data().dot(G * (A * u.data())));
  }

  template <typename Scalar>
  void check(const BasicStateVector<Scalar>& u) const {
    if (u.size() != grid.N) {
      throw ShapeError("state has N = " + std::to_string(u.size()) + ", operator has N = " +
                       std::to_string(grid.N));
    }
  }
};

namespace detail {

inline int block_offset(Field f, int n) { return static_cast<int>(f) * n; }

/// Appends coefficient * M at (row0, col0) to a triplet list.
inline void scatter(std::vector<Eigen::Triplet<double>>& out, const Eigen::SparseMatrix<double>& m,
                    int row0, int col0, double coefficient = 1.0) {
  for (int k = 0; k < m.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it) {
      out.emplace_back(row0 + static_cast<int>(it.row()), col0 + static_cast<int>(it.col()),
                       coefficient * it.value());
    }
  }
}

}  // namespace detail

inline SemiDiscreteOperator assemble(const PhysicalParameters& p, const Grid& grid) {
  p.validate();
  if (grid.N < 2 || !(grid.h > 0.0)) throw ParameterError("N", "invalid grid");
  if (std::abs(grid.L - p.L) > 1e-12 * p.L) throw ParameterError("L", "grid length differs from L");

  using Sp = Eigen::SparseMatrix<double>;
  using T = Eigen::Triplet<double>;
  const int n = grid.N;
  const int edges = n + 1;
  const double h = grid.h;

  // Edge j (0..N) joins node j and node j+1; node k (1..N) is column k-1.
  Sp diff(edges, n), left(edges, n);
  {
    std::vector<T> d, s;
    for (int j = 0; j < edges; ++j) {
      if (j >= 1) {
        d.emplace_back(j, j - 1, -1.0 / h);
        s.emplace_back(j, j - 1, 1.0);
      }
      if (j < n) d.emplace_back(j, j, 1.0 / h);
    }
    diff.setFromTriplets(d.begin(), d.end());
    left.setFromTriplets(s.begin(), s.end());
  }

  Sp strain(3 * edges, 3 * n);
  {
    std::vector<T> t;
    detail::scatter(t, diff, 0, 0);
    detail::scatter(t, left, 0, n);
    detail::scatter(t, left, 0, 2 * n, p.l);
    detail::scatter(t, diff, edges, n);
    detail::scatter(t, left, 2 * edges, 0, -p.l);
    detail::scatter(t, diff, 2 * edges, 2 * n);
    strain.setFromTriplets(t.begin(), t.end());
  }
  Eigen::VectorXd stiffness(3 * edges);
  stiffness << Eigen::VectorXd::Constant(edges, p.k1), Eigen::VectorXd::Constant(edges, p.k2),
      Eigen::VectorXd::Constant(edges, p.k3);
  const Sp K = Sp(strain.transpose() * stiffness.asDiagonal() * strain);

  const std::array<double, 3> mass{p.rho1, p.rho2, p.rho1};
  const std::array<Field, 3> position{Field::Phi, Field::Psi, Field::W};
  const std::array<Field, 3> velocity{Field::PhiT, Field::PsiT, Field::WT};

  SemiDiscreteOperator op;
  op.grid = grid;
  op.params = p;
  op.damping.resize(n);
  for (int i = 1; i <= n; ++i) op.damping(i - 1) = damping_at(grid.x(i), p);

  const int dim = 6 * n;
  std::vector<T> a, g;
  for (int b = 0; b < 3; ++b) {
    const int qrow = detail::block_offset(position[b], n);
    const int vrow = detail::block_offset(velocity[b], n);
    for (int i = 0; i < n; ++i) {
      a.emplace_back(qrow + i, vrow + i, 1.0);
      g.emplace_back(vrow + i, vrow + i, h * mass[b]);
    }
    for (int c = 0; c < 3; ++c) {
      const Sp kbc = K.block(b * n, c * n, n, n);
      detail::scatter(a, kbc, vrow, detail::block_offset(position[c], n), -1.0 / mass[b]);
      detail::scatter(g, kbc, qrow, detail::block_offset(position[c], n), h);
    }
  }
  const int wt = detail::block_offset(Field::WT, n);
  for (int i = 0; i < n; ++i) {
    if (op.damping(i) != 0.0) a.emplace_back(wt + i, wt + i, -op.damping(i) / p.rho1);
  }

  op.A.resize(dim, dim);
  op.A.setFromTriplets(a.begin(), a.end());
  op.G.resize(dim, dim);
  op.G.setFromTriplets(g.begin(), g.end());
  op.A.prune(0.0);
  op.G.prune(0.0);
  return op;
}

inline SemiDiscreteOperator assemble(const PhysicalParameters& p, int n) {
  return assemble(p, Grid::uniform(n, p.L));
}

/// A * U through the assembled matrix.
template <typename Scalar>
BasicStateVector<Scalar> apply(const SemiDiscreteOperator& op, const BasicStateVector<Scalar>& u) {
  op.check(u);
  return BasicStateVector<Scalar>(u.size(), op.A * u.data());
}

/// A * U evaluated node by node from the edge strains, without the matrix.
template <typename Scalar>
BasicStateVector<Scalar> apply_stencil(const SemiDiscreteOperator& op,
                                       const BasicStateVector<Scalar>& u) {
  op.check(u);
  const auto& p = op.params;
  const double h = op.grid.h;
  const int n = u.size();
  const auto s = detail::strains(u, p.l, h);

  BasicStateVector<Scalar> out(n);
  out.block(Field::Phi) = u.block(Field::PhiT);
  out.block(Field::Psi) = u.block(Field::PsiT);
  out.block(Field::W) = u.block(Field::WT);
  auto phi_tt = out.block(Field::PhiT);
  auto psi_tt = out.block(Field::PsiT);
  auto w_tt = out.block(Field::WT);
  const auto w_t = u.block(Field::WT);
  // Node i (array index i-1) has left edge i-1 and right edge i.
  for (int i = 1; i <= n; ++i) {
    const Scalar shear_div = (s.shear(i) - s.shear(i - 1)) / h;
    const Scalar bending_div = (s.bending(i) - s.bending(i - 1)) / h;
    const Scalar axial_div = (s.axial(i) - s.axial(i - 1)) / h;
    phi_tt(i - 1) = (p.k1 * shear_div + p.l * p.k3 * s.axial(i)) / p.rho1;
    psi_tt(i - 1) = (p.k2 * bending_div - p.k1 * s.shear(i)) / p.rho2;
    w_tt(i - 1) = (p.k3 * axial_div - p.l * p.k1 * s.shear(i) - op.damping(i - 1) * w_t(i - 1)) /
                  p.rho1;
  }
  return out;
}

/// Coordinate triplets "row col value" (0-based), one per line, full precision.
inline void write_triplets(std::ostream& os, const Eigen::SparseMatrix<double>& m) {
  const auto old = os.precision(17);
  for (int k = 0; k < m.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it) {
      os << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
    }
  }
  os.precision(old);
}

}  // namespace bresse
