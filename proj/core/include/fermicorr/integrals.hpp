// Copyright 2026 The fermicorr Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file integrals.hpp
 * @brief One- and two-electron integrals over spatial orbitals.
 *
 * Two-electron integrals are stored in chemists' notation (pq|rs) and the
 * Hamiltonian they define is
 *
 *   H = e_core + sum_{pq,s} h_pq c+_{ps} c_{qs}
 *             + 1/2 sum_{pqrs,st} (pq|rs) c+_{ps} c+_{rt} c_{st} c_{qs}
 *
 * with s,t running over both spin projections. Orbitals are assumed real,
 * so (pq|rs) carries the full 8-fold permutation symmetry and only the
 * canonical quadruple p>=q, r>=s, pq>=rs is stored.
 */

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace fermicorr {

class IntegralTable {
 public:
  IntegralTable() = default;
  /// Zero-initialized table. Throws DomainError on inconsistent counts.
  IntegralTable(int n_spatial, int n_electrons, int ms2);

  int n_spatial() const noexcept { return n_spatial_; }
  int n_electrons() const noexcept { return n_electrons_; }
  int ms2() const noexcept { return ms2_; }
  int n_up() const noexcept { return (n_electrons_ + ms2_) / 2; }
  int n_down() const noexcept { return (n_electrons_ - ms2_) / 2; }

  double e_core() const noexcept { return e_core_; }
  void set_e_core(double v) noexcept { e_core_ = v; }

  double h(int p, int q) const { return h_(p, q); }
  /// Sets h_pq and h_qp.
  void set_h(int p, int q, double v);
  const Eigen::MatrixXd& h_matrix() const noexcept { return h_; }

  /// (pq|rs) for any index order.
  double eri(int p, int q, int r, int s) const { return eri_[eri_index(p, q, r, s)]; }
  /// Sets (pq|rs) and all seven symmetry partners.
  void set_eri(int p, int q, int r, int s, double v);
  std::span<const double> eri_canonical() const noexcept { return eri_; }

  /// Compound index of the canonical representative of (pq|rs).
  static std::size_t eri_index(int p, int q, int r, int s) noexcept;
  static std::size_t eri_size(int n_spatial) noexcept;

  bool operator==(const IntegralTable&) const = default;

 private:
  int n_spatial_ = 0;
  int n_electrons_ = 0;
  int ms2_ = 0;
  double e_core_ = 0.0;
  Eigen::MatrixXd h_;
  std::vector<double> eri_;
};

/// Warnings collected while parsing (conflicting duplicate records).
struct ParseReport {
  std::vector<std::string> warnings;
};

/**
 * Parses FCIDUMP text: an `&FCI ... &END` (or `/`) namelist carrying NORB,
 * NELEC and MS2, followed by `value i j k l` records with 1-based spatial
 * indices. `i j 0 0` records are one-electron integrals, `0 0 0 0` is the
 * core energy, `i 0 0 0` orbital energies are skipped. Duplicate records
 * overwrite earlier ones; a warning is recorded when they differ by more
 * than 1e-10. ORBSYM/ISYM and unknown keys are ignored.
 *
 * Throws ParseError (with line number) on malformed input.
 */
IntegralTable parse_fcidump(std::istream& in, ParseReport* report = nullptr);
IntegralTable parse_fcidump_file(const std::filesystem::path& path,
                                 ParseReport* report = nullptr);

/// Writes every nonzero canonical integral with round-trip precision.
void write_fcidump(std::ostream& out, const IntegralTable& table);

enum class ModelKind { diagonal, hubbard_like, random_symmetric };

struct ModelParams {
  double hopping = 1.0;       ///< hubbard_like: h_{p,p+1} = -hopping
  double onsite = 4.0;        ///< hubbard_like: (pp|pp)
  int n_electrons = -1;       ///< default: n_spatial (half filling)
  int ms2 = -1;               ///< default: n_electrons % 2
};

/**
 * Synthetic tables for tests:
 *  - diagonal: h_pp = p, no two-electron part;
 *  - hubbard_like: open-chain nearest-neighbour hopping, on-site repulsion;
 *  - random_symmetric: h and eri uniform in [-1, 1], fully symmetrized,
 *    deterministic in `seed`.
 */
IntegralTable model_table(ModelKind kind, int n_spatial, std::uint64_t seed = 0,
                          const ModelParams& params = {});

}  // namespace fermicorr
