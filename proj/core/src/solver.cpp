// Copyright 2026 The fermicorr Authors
// SPDX-License-Identifier: Apache-2.0

#include <fermicorr/errors.hpp>
#include <fermicorr/solver.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fermicorr {

Eigen::MatrixXd WaveFunction::gamma() const {
  const auto nu = static_cast<Eigen::Index>(basis->n_up_strings());
  const auto nd = static_cast<Eigen::Index>(basis->n_down_strings());
  return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      coeffs.data(), nu, nd);
}

WaveFunction normalized(WaveFunction wf) {
  if (!wf.basis || static_cast<std::size_t>(wf.coeffs.size()) != wf.basis->size())
    throw DomainError("wave function size does not match its basis");
  const double n = wf.coeffs.norm();
  if (!(n > 0.0)) throw DomainError("cannot normalize a zero wave function");
  wf.coeffs /= n;
  return wf;
}

namespace {

double shannon(const std::vector<double>& w) {
  double s = 0.0;
  for (double x : w)
    if (x > 0.0) s -= x * std::log2(x);
  return s;
}

}  // namespace

Ensemble make_mixture(std::vector<EnsembleMember> members) {
  if (members.empty()) throw DomainError("ensemble needs at least one member");
  double total = 0.0;
  for (const auto& m : members) {
    if (!(m.weight >= 0.0)) throw DomainError("ensemble weights must be non-negative");
    if (!m.state.basis || !m.state.basis->same_sector(*members.front().state.basis))
      throw DomainError("ensemble members must share one sector");
    if (static_cast<std::size_t>(m.state.coeffs.size()) != m.state.basis->size())
      throw DomainError("ensemble member size does not match its basis");
    total += m.weight;
  }
  if (!(total > 0.0)) throw DomainError("ensemble weights sum to zero");
  for (auto& m : members) m.weight /= total;
  std::stable_sort(members.begin(), members.end(),
                   [](const auto& a, const auto& b) { return a.weight > b.weight; });
  Ensemble e;
  e.members = std::move(members);
  std::vector<double> p;
  for (const auto& m : e.members) p.push_back(m.weight);
  e.shannon_p = shannon(p);
  return e;
}

Ensemble as_ensemble(const WaveFunction& wf) { return make_mixture({{1.0, wf}}); }

double hamiltonian_element(const Determinant& a, const Determinant& b, const IntegralTable& t) {
  const Excitation ex = excitation_info(b, a);
  if (ex.degree > 2) return 0.0;

  if (ex.degree == 0) {
    double e = 0.0;
    for (Bitstring s : {a.up, a.down})
      for (Bitstring x = s; x; x &= x - 1) e += t.h(__builtin_ctzll(x), __builtin_ctzll(x));
    for (Bitstring s : {a.up, a.down})
      for (Bitstring x = s; x; x &= x - 1) {
        const int i = __builtin_ctzll(x);
        for (Bitstring y = x & (x - 1); y; y &= y - 1) {
          const int j = __builtin_ctzll(y);
          e += t.eri(i, i, j, j) - t.eri(i, j, j, i);
        }
      }
    for (Bitstring x = a.up; x; x &= x - 1)
      for (Bitstring y = a.down; y; y &= y - 1)
        e += t.eri(__builtin_ctzll(x), __builtin_ctzll(x), __builtin_ctzll(y), __builtin_ctzll(y));
    return e;
  }

  if (ex.degree == 1) {
    const bool up = ex.up.count == 1;
    const SpinExcitation& s = up ? ex.up : ex.down;
    const int h = s.holes[0];
    const int p = s.particles[0];
    const Bitstring same = up ? b.up : b.down;
    const Bitstring other = up ? b.down : b.up;
    double v = t.h(p, h);
    for (Bitstring x = same; x; x &= x - 1) {
      const int k = __builtin_ctzll(x);
      v += t.eri(p, h, k, k) - t.eri(p, k, k, h);
    }
    for (Bitstring x = other; x; x &= x - 1) {
      const int k = __builtin_ctzll(x);
      v += t.eri(p, h, k, k);
    }
    return ex.phase * v;
  }

  // degree 2
  if (ex.up.count == 1) {
    return ex.phase *
           t.eri(ex.up.particles[0], ex.up.holes[0], ex.down.particles[0], ex.down.holes[0]);
  }
  const SpinExcitation& s = ex.up.count == 2 ? ex.up : ex.down;
  const int h1 = s.holes[0], h2 = s.holes[1], p1 = s.particles[0], p2 = s.particles[1];
  return ex.phase * (t.eri(p1, h1, p2, h2) - t.eri(p1, h2, p2, h1));
}

Eigen::MatrixXd build_hamiltonian(const SectorBasis& basis, const IntegralTable& t,
                                  std::size_t dense_limit) {
  if (basis.n_spatial() != t.n_spatial())
    throw DomainError("basis has " + std::to_string(basis.n_spatial()) +
                      " orbitals but the integral table has " + std::to_string(t.n_spatial()));
  const std::size_t dim = basis.size();
  if (dim > dense_limit) throw CapacityError("sector too large for a dense Hamiltonian", dim, dense_limit);
  const auto n = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXd h(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Determinant di = basis.determinant(static_cast<std::size_t>(i));
    h(i, i) = hamiltonian_element(di, di, t) + t.e_core();
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = hamiltonian_element(di, basis.determinant(static_cast<std::size_t>(j)), t);
      h(i, j) = v;
      h(j, i) = v;
    }
  }
  return h;
}

Eigenpairs eigensolve(const Eigen::MatrixXd& h) {
  if (h.rows() != h.cols()) throw DomainError("eigensolve needs a square matrix");
  if (!h.allFinite()) throw NumericalError("eigensolve: matrix has non-finite entries");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) throw NumericalError("eigensolve: diagonalization failed");
  Eigenpairs out{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index k = 0; k < out.vectors.cols(); ++k) {
    Eigen::Index arg = 0;
    out.vectors.col(k).cwiseAbs().maxCoeff(&arg);
    if (out.vectors(arg, k) < 0.0) out.vectors.col(k) *= -1.0;
  }
  return out;
}

WaveFunction eigenstate(const Eigenpairs& pairs, std::size_t k, BasisPtr basis) {
  const auto col = static_cast<Eigen::Index>(k);
  if (col >= pairs.vectors.cols()) throw DomainError("eigenstate index out of range");
  return WaveFunction{std::move(basis), pairs.vectors.col(col), pairs.values(col)};
}

Ensemble thermal_ensemble(const Eigenpairs& pairs, BasisPtr basis, double beta,
                          double weight_cutoff) {
  if (pairs.values.size() == 0) throw DomainError("thermal_ensemble: no eigenpairs");
  if (!(beta > 0.0)) throw DomainError("thermal_ensemble: beta must be positive");
  const double e0 = pairs.values(0);
  std::vector<double> q(static_cast<std::size_t>(pairs.values.size()));
  for (std::size_t n = 0; n < q.size(); ++n)
    q[n] = std::exp(-beta * (pairs.values(static_cast<Eigen::Index>(n)) - e0));
  const double z = std::accumulate(q.begin(), q.end(), 0.0);

  std::vector<EnsembleMember> kept;
  std::vector<double> kept_q;
  for (std::size_t n = 0; n < q.size(); ++n) {
    if (q[n] / z < weight_cutoff) continue;
    kept.push_back({q[n], eigenstate(pairs, n, basis)});
    kept_q.push_back(q[n]);
  }
  Ensemble e = make_mixture(std::move(kept));
  e.beta = beta;
  e.raw_weights = std::move(kept_q);
  e.shannon_q = shannon(e.raw_weights);
  return e;
}

}  // namespace fermicorr
