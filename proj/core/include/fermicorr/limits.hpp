// Copyright 2026 The fermicorr Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file limits.hpp
 * @brief Analytic dissociation-limit states of minimal-basis water and the
 *        exact reference spectra they produce.
 *
 * Orbital labels (7 spatial orbitals):
 *   0 O 1s, 1 O 2s, 2 O 2p_z, 3 O 2p_y, 4 H_A 1s, 5 H_B 1s, 6 O 2p_x.
 * The ground-state limit keeps 0, 1, 2 doubly occupied; the twelve-fold
 * degenerate band keeps only 0 and 1 doubly occupied.
 */

#pragma once

#include <fermicorr/fock.hpp>
#include <fermicorr/solver.hpp>

#include <Eigen/Dense>

#include <array>
#include <string_view>
#include <vector>

namespace fermicorr {

/// Product of operators with a coefficient; the last operator acts first.
struct OperatorTerm {
  double coeff = 1.0;
  std::vector<FermionOp> ops;
};
using OperatorSum = std::vector<OperatorTerm>;

/// c+ on each listed up orbital, in the listed order.
OperatorSum creators_up(std::initializer_list<int> orbitals);
/// c+ on each listed down orbital, in the listed order.
OperatorSum creators_down(std::initializer_list<int> orbitals);
/// c+_{i up} c+_{j down}.
OperatorSum pair_updown(int i, int j);
/// (c+_j c+_kbar + sign c+_k c+_jbar) / sqrt(2).
OperatorSum bell_pair(int j, int k, int sign);

/// Operator product a * b (b acts first).
OperatorSum operator*(const OperatorSum& a, const OperatorSum& b);
OperatorSum operator+(const OperatorSum& a, const OperatorSum& b);
OperatorSum operator*(double c, const OperatorSum& a);

/**
 * Coefficients of ops|0> in `basis`, built term by term with apply_ops.
 * Throws DomainError if a surviving term leaves the sector. The result is
 * not normalized.
 */
WaveFunction apply_to_vacuum(const OperatorSum& ops, BasisPtr basis);

/// Eigenvalue `num/den` repeated `count` times.
struct RationalEigenvalue {
  int num;
  int den;
  int count;
  double value() const { return static_cast<double>(num) / den; }
};
using ReferenceRow = std::vector<RationalEigenvalue>;

/// Ascending spectrum, zero padded to `dim`. Throws DomainError if the
/// row has more entries than `dim`.
Eigen::VectorXd expand(const ReferenceRow& row, std::size_t dim);
/// Sum of value * count.
double row_trace(const ReferenceRow& row);

struct ReferenceSpectra {
  ReferenceRow rho_up;
  ReferenceRow rdm1_up;
  ReferenceRow rdm2_upup;
  ReferenceRow rdm2_updown;
};

struct ReferenceScalars {
  double n_updown;
  double n2_updown;
  double n2_upup;
  double i_updown;
  double i2_updown;
  /// Negative eigenvalues of the total partial transpose.
  ReferenceRow pt_negative;
};

struct AsymptoticSpec {
  std::array<std::string_view, 7> orbital_roles;
  std::array<int, 3> gs_core;
  std::array<int, 2> band_core;
  ReferenceSpectra gs;
  ReferenceSpectra thermal;
  ReferenceScalars gs_scalars;
  ReferenceScalars thermal_scalars;
  ReferenceRow gs_schmidt_squared;      ///< Gamma_nu^2
  ReferenceRow gs_pair_sigma_squared;   ///< active sigma_nu^2 of the up-down block
};

/// Exact dissociation-limit reference data.
const AsymptoticSpec& dissociation_reference();

/// Ground-state limit in sector (7, 5, 5). Throws DomainError otherwise.
WaveFunction asymptotic_gs(BasisPtr basis);

/// The twelve band states |1>..|12> (index 0..11), normalized, in sector (7, 5, 5).
std::vector<WaveFunction> asymptotic_band(BasisPtr basis);

/// -(|1> + |4>)/sqrt(3) + (|7> - |10>)/sqrt(6) from the band states.
WaveFunction asymptotic_gs_from_band(BasisPtr basis);

/// Equal-weight mixture of the twelve band states (the beta -> infinity thermal state).
Ensemble asymptotic_thermal(BasisPtr basis);

}  // namespace fermicorr
