// Copyright 2026 The fermicorr Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file solver.hpp
 * @brief Sector Hamiltonian (Slater-Condon), dense diagonalization and
 *        fixed-sector thermal mixtures.
 */

#pragma once

#include <fermicorr/fock.hpp>
#include <fermicorr/integrals.hpp>

#include <Eigen/Dense>

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

namespace fermicorr {

using BasisPtr = std::shared_ptr<const SectorBasis>;

inline BasisPtr make_basis(int n_spatial, int n_up, int n_down) {
  return std::make_shared<const SectorBasis>(n_spatial, n_up, n_down);
}

/// Pure CI state. coeffs[alpha * n_down_strings + beta] = Gamma[alpha][beta].
struct WaveFunction {
  BasisPtr basis;
  Eigen::VectorXd coeffs;
  std::optional<double> energy;

  /// Gamma as an (n_up_strings x n_down_strings) matrix.
  Eigen::MatrixXd gamma() const;
  double norm() const { return coeffs.norm(); }
};

/// Throws DomainError on dimension mismatch or zero norm.
WaveFunction normalized(WaveFunction wf);

struct EnsembleMember {
  double weight;
  WaveFunction state;
};

/**
 * Convex mixture of pure states sharing one sector. Weights sum to one and
 * are sorted in descending order. Thermal ensembles also carry beta, the
 * unnormalized Boltzmann factors q_n of the kept members and the Shannon
 * entropies (base 2) of p and q.
 */
struct Ensemble {
  std::vector<EnsembleMember> members;
  std::optional<double> beta;
  std::vector<double> raw_weights;
  double shannon_p = 0.0;
  double shannon_q = 0.0;

  const BasisPtr& basis() const { return members.front().state.basis; }
};

/**
 * Mixture with the given (not necessarily normalized) weights. Validates the
 * shared sector, renormalizes and sorts. Throws DomainError on an empty list,
 * a negative weight or mismatched sectors.
 */
Ensemble make_mixture(std::vector<EnsembleMember> members);

/// Single-member ensemble.
Ensemble as_ensemble(const WaveFunction& wf);

/// <a|H|b> without the core energy. Throws DomainError on sector mismatch.
double hamiltonian_element(const Determinant& a, const Determinant& b, const IntegralTable& t);

inline constexpr std::size_t kDefaultDenseLimit = 20000;

/// Full sector matrix including e_core on the diagonal.
/// Throws CapacityError above `dense_limit` and DomainError when the basis
/// does not fit the table's orbital count.
Eigen::MatrixXd build_hamiltonian(const SectorBasis& basis, const IntegralTable& t,
                                  std::size_t dense_limit = kDefaultDenseLimit);

struct Eigenpairs {
  Eigen::VectorXd values;   ///< ascending
  Eigen::MatrixXd vectors;  ///< columns; largest-magnitude entry positive
};

/// Dense symmetric diagonalization. Throws NumericalError on non-finite input.
Eigenpairs eigensolve(const Eigen::MatrixXd& h);

/// Column `k` of the eigenpairs as a state with its energy.
WaveFunction eigenstate(const Eigenpairs& pairs, std::size_t k, BasisPtr basis);

inline constexpr double kDefaultWeightCutoff = 1e-12;

/**
 * p_n proportional to q_n = exp(-beta (E_n - E_0)); members with p_n below
 * `weight_cutoff` are dropped and the rest renormalized.
 * Throws DomainError for beta <= 0 or empty eigenpairs.
 */
Ensemble thermal_ensemble(const Eigenpairs& pairs, BasisPtr basis, double beta,
                          double weight_cutoff = kDefaultWeightCutoff);

}  // namespace fermicorr
