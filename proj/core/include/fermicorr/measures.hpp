// Copyright 2026 The fermicorr Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file measures.hpp
 * @brief Entanglement and correlation measures of fixed-(N_up, N_down)
 *        states. All logarithms are base 2.
 */

#pragma once

#include <fermicorr/rdm.hpp>
#include <fermicorr/solver.hpp>

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fermicorr {

/// Eigenvalues in [-kClampTolerance, 0) count as zero; below it they are an error.
inline constexpr double kClampTolerance = 1e-9;
/// Singular values at or below this are not counted in the Schmidt rank.
inline constexpr double kRankCutoff = 1e-8;

/// Ascending eigenvalues of a symmetric matrix.
Eigen::VectorXd spectrum(const Eigen::MatrixXd& m);

/// -sum l log2 l with 0 log 0 = 0. Values above 1 are allowed and
/// contribute negatively. Throws NumericalError for entries < -1e-9.
double entropy(std::span<const double> values);
double entropy(const Eigen::VectorXd& values);

/// Shannon entropy of a probability vector (base 2).
double shannon_entropy(std::span<const double> p);

struct SchmidtDecomposition {
  Eigen::VectorXd singular_values;  ///< descending, all of them
  Eigen::MatrixXd left;             ///< columns over up strings (kept ones)
  Eigen::MatrixXd right;            ///< columns over down strings (kept ones)
  int rank = 0;                     ///< singular values above kRankCutoff

  /// -sum Gamma_nu^2 log2 Gamma_nu^2.
  double entropy() const;
};

/// SVD of Gamma. Each kept left vector has its largest-magnitude entry
/// positive; the matching right vector carries the compensating sign.
SchmidtDecomposition schmidt(const WaveFunction& wf);

/// S(rho_up) + S(rho_down) - S(rho), with S(rho) supplied by the caller.
double mutual_information_total(const UpDownDensity& ud, double full_entropy);
/// Pure states: S(rho) = 0.
double mutual_information_total(const WaveFunction& wf, const UpDownDensity& ud);
/// Mixtures: S(rho) from the spectrum of the full sector density matrix.
double mutual_information_total(const Ensemble& state, const UpDownDensity& ud,
                                std::size_t dense_limit = kDefaultDenseLimit);

/// N_down S(rho1_up) + N_up S(rho1_down) - S(rho2_updown).
/// Throws DomainError when N_up * N_down == 0.
double mutual_information_2body(const Rdm1& r1, const Rdm2& r2);

/// (Tr|rho_pt| - Tr rho_pt) / 2, i.e. minus the sum of negative eigenvalues.
double negativity_total(const Eigen::MatrixXd& rho_pt);

/// Pure-state closed form ((sum Gamma_nu)^2 - 1) / 2.
double negativity_pure(const SchmidtDecomposition& sd);

/// (rho_t)(i jbar, k lbar) = rho(i lbar, k jbar) on the n^2 x n^2 up-down block.
Eigen::MatrixXd partial_transpose_updown(const Eigen::MatrixXd& r2_updown);

/// (Tr|rho2_updown^t| - N_up N_down) / 2.
double negativity_2body_updown(const Eigen::MatrixXd& r2_updown);

/**
 * Antisymmetrized partial transpose on unrestricted labels (d x d modes):
 * tp(ij, kl) = rho(il, kj) - rho(ik, lj).
 * Throws DomainError if the input is not antisymmetric within 1e-10.
 */
Eigen::MatrixXd antisym_partial_transpose(const Eigen::MatrixXd& r2_unrestricted);

/// (Tr|tp/2| - N(N-1)/2) / 2 for the two-body matrix of N fermions.
double negativity_2body_fermionic(const Eigen::MatrixXd& r2_unrestricted, int n_particles);

struct BlockSpectra {
  Eigen::VectorXd rho_up;
  Eigen::VectorXd rho_down;
  Eigen::VectorXd rdm1_up;
  Eigen::VectorXd rdm1_down;
  Eigen::VectorXd rdm2_upup;
  Eigen::VectorXd rdm2_downdown;
  Eigen::VectorXd rdm2_updown;
};

/// Entropies divided by their largest attainable values; empty when the
/// maximum is zero.
struct NormalizedEntropies {
  std::optional<double> rho_up;
  std::optional<double> rdm1_up;
  std::optional<double> rdm1_down;
  std::optional<double> rdm2_upup;
  std::optional<double> rdm2_downdown;
  std::optional<double> rdm2_updown;
};

struct MeasureReport {
  std::string tag;
  bool pure = true;
  int n_spatial = 0;
  int n_up = 0;
  int n_down = 0;

  double s_rho_up = 0.0;    ///< E_updown for pure states
  double s_rho_down = 0.0;
  double s_full = 0.0;      ///< S(rho); 0 for pure states
  double e_updown = 0.0;
  double i_updown = 0.0;

  double s_rdm1_up = 0.0;
  double s_rdm1_down = 0.0;
  double e1 = 0.0;

  double s_rdm2_upup = 0.0;
  double s_rdm2_downdown = 0.0;
  double s_rdm2_updown = 0.0;
  double e2 = 0.0;

  double i2_updown = 0.0;
  double n_updown = 0.0;
  double n2_updown = 0.0;
  double n2_upup = 0.0;
  double n2_downdown = 0.0;
  double lambda_max_r2ud = 0.0;

  std::optional<double> beta;
  std::optional<double> s_p;
  std::optional<double> s_q;
  std::vector<double> weights;

  std::vector<double> schmidt_values;  ///< pure states only, descending
  int schmidt_rank = 0;

  BlockSpectra spectra;
  NormalizedEntropies normalized;
};

/// Largest attainable entropies for d = 2 n_spatial spin orbitals.
NormalizedEntropies entropy_maxima(int d, int n_up, int n_down);

/// S/S_max for every block of the report.
NormalizedEntropies normalized_entropies(const MeasureReport& r, int d, int n_up, int n_down);

/// Every measure of one state. Blocks that do not exist in a sector (no
/// up-down pairs, fewer than two same-spin electrons) contribute zeros.
MeasureReport report(const WaveFunction& wf, const std::string& tag = {},
                     std::size_t dense_limit = kDefaultDenseLimit);
MeasureReport report(const Ensemble& state, const std::string& tag = {},
                     std::size_t dense_limit = kDefaultDenseLimit);

}  // namespace fermicorr
