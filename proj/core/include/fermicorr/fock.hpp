// Copyright 2026 The fermicorr Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file fock.hpp
 * @brief Spin-resolved Slater determinants and fixed-(N_up, N_down) bases.
 *
 * Sign convention. A determinant with occupied up orbitals a1 < a2 < ...
 * and down orbitals b1 < b2 < ... is the state
 *
 *   c+_{a1,up} c+_{a2,up} ... c+_{b1,dn} c+_{b2,dn} ... |0>,
 *
 * i.e. the whole up block precedes the down block and each block is in
 * ascending orbital order. Acting with c or c+ on up orbital k therefore
 * picks up (-1)^(#occupied up orbitals below k); on down orbital k it picks
 * up (-1)^(N_up) * (-1)^(#occupied down orbitals below k), N_up being the
 * up count of the determinant at that moment.
 */

#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fermicorr {

using Bitstring = std::uint64_t;

/// Largest number of spatial orbitals representable in a Bitstring.
inline constexpr int kMaxSpatialOrbitals = 63;

enum class Spin : std::uint8_t { up, down };

struct Determinant {
  Bitstring up = 0;
  Bitstring down = 0;

  int n_up() const noexcept;
  int n_down() const noexcept;
  bool occupied(int orbital, Spin spin) const noexcept;

  auto operator<=>(const Determinant&) const = default;
};

/// "0101" style rendering, orbital 0 rightmost, as "up|down".
std::string to_string(const Determinant& det, int n_spatial);

enum class OpKind : std::uint8_t { create, annihilate };

struct FermionOp {
  OpKind kind;
  int orbital;
  Spin spin;
};

constexpr FermionOp cre(int orbital, Spin spin) { return {OpKind::create, orbital, spin}; }
constexpr FermionOp ann(int orbital, Spin spin) { return {OpKind::annihilate, orbital, spin}; }

struct SignedDeterminant {
  int phase;
  Determinant det;
};

/**
 * Applies an operator product to a determinant. `ops` is written as in the
 * product, so the LAST element acts first: {cre(k), ann(i)} is c+_k c_i.
 * Returns nullopt when the product annihilates the determinant.
 * Throws DomainError for orbital indices outside [0, n_spatial).
 */
std::optional<SignedDeterminant> apply_ops(const Determinant& det,
                                           std::span<const FermionOp> ops, int n_spatial);
std::optional<SignedDeterminant> apply_ops(const Determinant& det,
                                           std::initializer_list<FermionOp> ops, int n_spatial);

/// Binomial coefficient for n <= 64, 0 when k is outside [0, n].
std::uint64_t binomial(int n, int k) noexcept;

/**
 * All determinants with fixed (N_up, N_down) over n_spatial orbitals.
 *
 * Strings of each spin are listed in ascending order of their integer
 * value; the global index is up_index * n_down_strings + down_index, which
 * is the row-major layout of the coefficient matrix Gamma[alpha][beta].
 */
class SectorBasis {
 public:
  SectorBasis() = default;
  /// Throws DomainError when an occupancy exceeds n_spatial.
  SectorBasis(int n_spatial, int n_up, int n_down);

  int n_spatial() const noexcept { return n_spatial_; }
  int n_up() const noexcept { return n_up_; }
  int n_down() const noexcept { return n_down_; }

  std::size_t n_up_strings() const noexcept { return up_strings_.size(); }
  std::size_t n_down_strings() const noexcept { return down_strings_.size(); }
  std::size_t size() const noexcept { return up_strings_.size() * down_strings_.size(); }

  std::span<const Bitstring> up_strings() const noexcept { return up_strings_; }
  std::span<const Bitstring> down_strings() const noexcept { return down_strings_; }

  /// Position of a string in its list; the popcount must match the sector.
  std::size_t up_index(Bitstring s) const noexcept { return rank(s); }
  std::size_t down_index(Bitstring s) const noexcept { return rank(s); }

  Determinant determinant(std::size_t index) const noexcept {
    return {up_strings_[index / down_strings_.size()], down_strings_[index % down_strings_.size()]};
  }
  std::size_t index(const Determinant& det) const noexcept {
    return rank(det.up) * down_strings_.size() + rank(det.down);
  }
  bool contains(const Determinant& det) const noexcept;

  bool same_sector(const SectorBasis& other) const noexcept {
    return n_spatial_ == other.n_spatial_ && n_up_ == other.n_up_ && n_down_ == other.n_down_;
  }

 private:
  static std::size_t rank(Bitstring s) noexcept;

  int n_spatial_ = 0;
  int n_up_ = 0;
  int n_down_ = 0;
  std::vector<Bitstring> up_strings_{0};
  std::vector<Bitstring> down_strings_{0};
};

inline SectorBasis enumerate_sector(int n_spatial, int n_up, int n_down) {
  return SectorBasis(n_spatial, n_up, n_down);
}

/// All strings of `count` set bits among the lowest `n_bits`, ascending.
std::vector<Bitstring> combinations(int n_bits, int count);

/// Holes (occupied in the bra-side `from`, empty in `to`) and particles of one spin.
struct SpinExcitation {
  int count = 0;
  std::array<int, 2> holes{};
  std::array<int, 2> particles{};
};

/**
 * Difference between two determinants of one sector.
 *
 * `degree` is half the Hamming distance summed over spins. For degree <= 2
 * the hole/particle lists are filled (ascending within each spin) and
 *
 *   |to> = phase * c+_{P1} c+_{P2} c_{H2} c_{H1} |from>
 *
 * where H (P) lists up holes (particles) before down ones. For degree > 2
 * the lists are empty and phase is 0.
 */
struct Excitation {
  int degree = 0;
  SpinExcitation up;
  SpinExcitation down;
  int phase = 1;
};

/// Throws DomainError if the determinants have different (N_up, N_down).
Excitation excitation_info(const Determinant& from, const Determinant& to);

namespace detail {

inline int popcount(Bitstring s) noexcept { return __builtin_popcountll(s); }

/// Occupied orbitals strictly below `k`.
inline int count_below(Bitstring s, int k) noexcept {
  return popcount(s & ((Bitstring{1} << k) - 1));
}

/// c+_p c_h on a single string. Returns 0 if it vanishes, otherwise the
/// intra-string sign; `s` is updated in place.
inline int string_hop(Bitstring& s, int p, int h) noexcept {
  const Bitstring hb = Bitstring{1} << h;
  if (!(s & hb)) return 0;
  Bitstring t = s ^ hb;
  const Bitstring pb = Bitstring{1} << p;
  if (t & pb) return 0;
  const int sign = (count_below(s, h) + count_below(t, p)) & 1 ? -1 : 1;
  s = t | pb;
  return sign;
}

}  // namespace detail

}  // namespace fermicorr
