// Copyright 2026 The fermicorr Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file rdm.hpp
 * @brief Reduced density matrices of fixed-(N_up, N_down) states.
 *
 * Index conventions (n = number of spatial orbitals):
 *  - Rdm1: up(i, j) = <c+_{j,up} c_{i,up}>, likewise down.
 *  - Rdm2::upup / downdown: rows and columns run over ordered pairs i < j
 *    (see pair_index); element (ij, kl) = <c+_k c+_l c_j c_i>.
 *  - Rdm2::updown: rows and columns run over all n*n labels i*n + j with i
 *    an up orbital and j a down orbital; element (i jbar, k lbar) =
 *    <c+_k c+_{lbar} c_{jbar} c_i>.
 *
 * Every routine accepts a pure state or an ensemble; ensembles are
 * accumulated with their weights.
 */

#pragma once

#include <fermicorr/solver.hpp>

#include <Eigen/Dense>

#include <cstddef>

namespace fermicorr {

/// Total up and down reduced states over the up and down string spaces.
struct UpDownDensity {
  Eigen::MatrixXd rho_up;    ///< Gamma Gamma^T (summed over members)
  Eigen::MatrixXd rho_down;  ///< Gamma^T Gamma
};

struct Rdm1 {
  Eigen::MatrixXd up;
  Eigen::MatrixXd down;
};

struct Rdm2 {
  int n_spatial = 0;
  int n_up = 0;
  int n_down = 0;
  Eigen::MatrixXd upup;
  Eigen::MatrixXd downdown;
  Eigen::MatrixXd updown;
};

/// Position of the ordered pair i < j among n orbitals (row-major).
constexpr std::size_t pair_index(int i, int j, int n) noexcept {
  return static_cast<std::size_t>(i) * (2 * n - i - 1) / 2 + static_cast<std::size_t>(j - i - 1);
}

UpDownDensity updown_densities(const Ensemble& state);
UpDownDensity updown_densities(const WaveFunction& state);

Rdm1 one_body(const Ensemble& state);
Rdm1 one_body(const WaveFunction& state);

Rdm2 two_body(const Ensemble& state);
Rdm2 two_body(const WaveFunction& state);

/**
 * Expands a same-spin block over ordered pairs i < j to all n*n labels with
 * the antisymmetry M(ij,kl) = -M(ji,kl) = -M(ij,lk) and zero rows/columns
 * for i == j.
 */
Eigen::MatrixXd unrestricted_same_spin(const Eigen::MatrixXd& restricted, int n);

/**
 * Whole two-body matrix over 2n spin orbitals (up orbitals 0..n-1, down
 * orbitals n..2n-1) with unrestricted antisymmetrized labels.
 */
Eigen::MatrixXd unrestricted_full(const Rdm2& r2);

struct DensityAndTranspose {
  Eigen::MatrixXd rho;     ///< sum_n p_n |Psi_n><Psi_n| in the (alpha, beta) layout
  Eigen::MatrixXd rho_pt;  ///< rho_pt(a b, a' b') = rho(a b', a' b)
};

/// Throws CapacityError when the sector dimension exceeds `dense_limit`.
DensityAndTranspose full_density_and_pt(const Ensemble& state,
                                        std::size_t dense_limit = kDefaultDenseLimit);
DensityAndTranspose full_density_and_pt(const WaveFunction& state,
                                        std::size_t dense_limit = kDefaultDenseLimit);

}  // namespace fermicorr
