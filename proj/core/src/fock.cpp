// Copyright 2026 The fermicorr Authors
// SPDX-License-Identifier: Apache-2.0

#include <fermicorr/errors.hpp>
#include <fermicorr/fock.hpp>

#include <array>

namespace fermicorr {

namespace {

constexpr auto kBinomial = [] {
  std::array<std::array<std::uint64_t, 65>, 65> c{};
  for (int n = 0; n <= 64; ++n) {
    c[n][0] = 1;
    for (int k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0);
  }
  return c;
}();

}  // namespace

int Determinant::n_up() const noexcept { return detail::popcount(up); }
int Determinant::n_down() const noexcept { return detail::popcount(down); }

bool Determinant::occupied(int orbital, Spin spin) const noexcept {
  const Bitstring s = spin == Spin::up ? up : down;
  return (s >> orbital) & 1U;
}

std::string to_string(const Determinant& det, int n_spatial) {
  std::string out;
  out.reserve(2 * n_spatial + 1);
  for (int k = n_spatial - 1; k >= 0; --k) out += ((det.up >> k) & 1U) ? '1' : '0';
  out += '|';
  for (int k = n_spatial - 1; k >= 0; --k) out += ((det.down >> k) & 1U) ? '1' : '0';
  return out;
}

std::uint64_t binomial(int n, int k) noexcept {
  if (n < 0 || n > 64 || k < 0 || k > n) return 0;
  return kBinomial[n][k];
}

std::optional<SignedDeterminant> apply_ops(const Determinant& det,
                                           std::span<const FermionOp> ops, int n_spatial) {
  for (const auto& op : ops)
    if (op.orbital < 0 || op.orbital >= n_spatial)
      throw DomainError("orbital index " + std::to_string(op.orbital) + " outside [0, " +
                        std::to_string(n_spatial) + ")");
  Determinant cur = det;
  int phase = 1;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    Bitstring& block = it->spin == Spin::up ? cur.up : cur.down;
    const Bitstring bit = Bitstring{1} << it->orbital;
    const bool occ = block & bit;
    if (it->kind == OpKind::create ? occ : !occ) return std::nullopt;
    int parity = detail::count_below(block, it->orbital);
    if (it->spin == Spin::down) parity += detail::popcount(cur.up);
    if (parity & 1) phase = -phase;
    block ^= bit;
  }
  return SignedDeterminant{phase, cur};
}

std::optional<SignedDeterminant> apply_ops(const Determinant& det,
                                           std::initializer_list<FermionOp> ops, int n_spatial) {
  return apply_ops(det, std::span<const FermionOp>(ops.begin(), ops.size()), n_spatial);
}

std::vector<Bitstring> combinations(int n_bits, int count) {
  std::vector<Bitstring> out;
  if (count < 0 || count > n_bits) return out;
  out.reserve(binomial(n_bits, count));
  if (count == 0) {
    out.push_back(0);
    return out;
  }
  // Gosper's hack: next larger integer with the same popcount.
  Bitstring s = (Bitstring{1} << count) - 1;
  const Bitstring limit = Bitstring{1} << n_bits;
  while (s < limit) {
    out.push_back(s);
    const Bitstring c = s & (~s + 1);
    const Bitstring r = s + c;
    s = (((r ^ s) >> 2) / c) | r;
  }
  return out;
}

SectorBasis::SectorBasis(int n_spatial, int n_up, int n_down)
    : n_spatial_(n_spatial), n_up_(n_up), n_down_(n_down) {
  if (n_spatial < 0 || n_spatial > kMaxSpatialOrbitals)
    throw DomainError("n_spatial must lie in [0, " + std::to_string(kMaxSpatialOrbitals) + "]");
  if (n_up < 0 || n_down < 0 || n_up > n_spatial || n_down > n_spatial)
    throw DomainError("sector (" + std::to_string(n_spatial) + ", " + std::to_string(n_up) +
                      ", " + std::to_string(n_down) + ") has occupancy outside [0, n_spatial]");
  up_strings_ = combinations(n_spatial, n_up);
  down_strings_ = combinations(n_spatial, n_down);
}

// Combinatorial number system: the k-th lowest set bit at position p
// contributes C(p, k+1). This reproduces ascending integer order.
std::size_t SectorBasis::rank(Bitstring s) noexcept {
  std::size_t r = 0;
  int k = 1;
  while (s) {
    const int p = __builtin_ctzll(s);
    r += binomial(p, k++);
    s &= s - 1;
  }
  return r;
}

bool SectorBasis::contains(const Determinant& det) const noexcept {
  const Bitstring mask = n_spatial_ == 64 ? ~Bitstring{0} : (Bitstring{1} << n_spatial_) - 1;
  return (det.up & ~mask) == 0 && (det.down & ~mask) == 0 && det.n_up() == n_up_ &&
         det.n_down() == n_down_;
}

namespace {

void fill_spin(SpinExcitation& ex, Bitstring from, Bitstring to) {
  Bitstring holes = from & ~to;
  Bitstring parts = to & ~from;
  ex.count = detail::popcount(holes);
  for (int a = 0; holes; ++a, holes &= holes - 1) ex.holes[a] = __builtin_ctzll(holes);
  for (int a = 0; parts; ++a, parts &= parts - 1) ex.particles[a] = __builtin_ctzll(parts);
}

// Sign of c+_{p1} c+_{p2} c_{h2} c_{h1} (or c+_{p1} c_{h1}) on one string.
int string_sign(Bitstring s, const SpinExcitation& ex) {
  if (ex.count == 0) return 1;
  int parity = detail::count_below(s, ex.holes[0]);
  s ^= Bitstring{1} << ex.holes[0];
  if (ex.count == 2) {
    parity += detail::count_below(s, ex.holes[1]);
    s ^= Bitstring{1} << ex.holes[1];
    parity += detail::count_below(s, ex.particles[1]);
    s ^= Bitstring{1} << ex.particles[1];
  }
  parity += detail::count_below(s, ex.particles[0]);
  return parity & 1 ? -1 : 1;
}

}  // namespace

Excitation excitation_info(const Determinant& from, const Determinant& to) {
  if (from.n_up() != to.n_up() || from.n_down() != to.n_down())
    throw DomainError("excitation_info: determinants belong to different sectors");
  Excitation ex;
  const int du = detail::popcount(from.up & ~to.up);
  const int dd = detail::popcount(from.down & ~to.down);
  ex.degree = du + dd;
  if (ex.degree > 2) {
    ex.phase = 0;
    return ex;
  }
  fill_spin(ex.up, from.up, to.up);
  fill_spin(ex.down, from.down, to.down);
  // Down-block operators come in create/annihilate pairs, so their
  // (-1)^N_up cross factors cancel and the phase factorizes per spin.
  ex.phase = string_sign(from.up, ex.up) * string_sign(from.down, ex.down);
  return ex;
}

}  // namespace fermicorr
