// Copyright 2026 The fermicorr Authors
// SPDX-License-Identifier: Apache-2.0

#include <fermicorr/errors.hpp>
#include <fermicorr/rdm.hpp>

#include <vector>

namespace fermicorr {

namespace {

// c+_to c_from acting on string `src`, landing on string `dst`.
struct Hop {
  std::size_t src;
  std::size_t dst;
  int from;
  int to;
  int sign;
};

// c+_k c+_l c_j c_i with i < j, k < l.
struct PairHop {
  std::size_t src;
  std::size_t dst;
  std::size_t ann_pair;
  std::size_t cre_pair;
  int sign;
};

std::vector<Hop> single_hops(std::span<const Bitstring> strings, const SectorBasis& basis,
                             int n) {
  std::vector<Hop> hops;
  for (std::size_t a = 0; a < strings.size(); ++a) {
    for (int i = 0; i < n; ++i) {
      if (!((strings[a] >> i) & 1U)) continue;
      for (int k = 0; k < n; ++k) {
        Bitstring s = strings[a];
        const int sign = detail::string_hop(s, k, i);
        if (sign == 0) continue;
        hops.push_back({a, basis.up_index(s), i, k, sign});
      }
    }
  }
  return hops;
}

std::vector<PairHop> pair_hops(std::span<const Bitstring> strings, const SectorBasis& basis,
                               int n) {
  std::vector<PairHop> hops;
  for (std::size_t a = 0; a < strings.size(); ++a) {
    const Bitstring s0 = strings[a];
    for (int i = 0; i < n; ++i) {
      if (!((s0 >> i) & 1U)) continue;
      for (int j = i + 1; j < n; ++j) {
        if (!((s0 >> j) & 1U)) continue;
        // c_j c_i: c_i acts first.
        int parity = detail::count_below(s0, i);
        Bitstring s1 = s0 ^ (Bitstring{1} << i);
        parity += detail::count_below(s1, j);
        s1 ^= Bitstring{1} << j;
        for (int k = 0; k < n; ++k) {
          if ((s1 >> k) & 1U) continue;
          for (int l = k + 1; l < n; ++l) {
            if ((s1 >> l) & 1U) continue;
            // c+_k c+_l: c+_l acts first.
            int p = parity + detail::count_below(s1, l);
            const Bitstring s2 = s1 | (Bitstring{1} << l);
            p += detail::count_below(s2, k);
            const Bitstring s3 = s2 | (Bitstring{1} << k);
            hops.push_back({a, basis.up_index(s3), pair_index(i, j, n), pair_index(k, l, n),
                            p & 1 ? -1 : 1});
          }
        }
      }
    }
  }
  return hops;
}

Eigen::MatrixXd one_body_block(const Eigen::MatrixXd& rho, const std::vector<Hop>& hops, int n) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (const auto& h : hops)
    out(h.from, h.to) += h.sign * rho(static_cast<Eigen::Index>(h.dst), static_cast<Eigen::Index>(h.src));
  return out;
}

Eigen::MatrixXd two_body_block(const Eigen::MatrixXd& rho, const std::vector<PairHop>& hops,
                               int n) {
  const auto np = static_cast<Eigen::Index>(n * (n - 1) / 2);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(np, np);
  for (const auto& h : hops)
    out(static_cast<Eigen::Index>(h.ann_pair), static_cast<Eigen::Index>(h.cre_pair)) +=
        h.sign * rho(static_cast<Eigen::Index>(h.dst), static_cast<Eigen::Index>(h.src));
  return out;
}

void symmetrize(Eigen::MatrixXd& m) { m = 0.5 * (m + m.transpose()).eval(); }

}  // namespace

UpDownDensity updown_densities(const Ensemble& state) {
  const auto& basis = *state.basis();
  const auto nu = static_cast<Eigen::Index>(basis.n_up_strings());
  const auto nd = static_cast<Eigen::Index>(basis.n_down_strings());
  UpDownDensity out{Eigen::MatrixXd::Zero(nu, nu), Eigen::MatrixXd::Zero(nd, nd)};
  for (const auto& m : state.members) {
    const Eigen::MatrixXd g = m.state.gamma();
    out.rho_up.noalias() += m.weight * g * g.transpose();
    out.rho_down.noalias() += m.weight * g.transpose() * g;
  }
  symmetrize(out.rho_up);
  symmetrize(out.rho_down);
  return out;
}

UpDownDensity updown_densities(const WaveFunction& state) {
  return updown_densities(as_ensemble(state));
}

Rdm1 one_body(const Ensemble& state) {
  const auto& basis = *state.basis();
  const int n = basis.n_spatial();
  const UpDownDensity ud = updown_densities(state);
  Rdm1 out{one_body_block(ud.rho_up, single_hops(basis.up_strings(), basis, n), n),
           one_body_block(ud.rho_down, single_hops(basis.down_strings(), basis, n), n)};
  symmetrize(out.up);
  symmetrize(out.down);
  return out;
}

Rdm1 one_body(const WaveFunction& state) { return one_body(as_ensemble(state)); }

Rdm2 two_body(const Ensemble& state) {
  const auto& basis = *state.basis();
  const int n = basis.n_spatial();
  const UpDownDensity ud = updown_densities(state);
  Rdm2 out;
  out.n_spatial = n;
  out.n_up = basis.n_up();
  out.n_down = basis.n_down();
  out.upup = two_body_block(ud.rho_up, pair_hops(basis.up_strings(), basis, n), n);
  out.downdown = two_body_block(ud.rho_down, pair_hops(basis.down_strings(), basis, n), n);

  // <c+_k c+_lbar c_jbar c_i> = sum Gamma[a'][b'] Gamma[a][b] <a'|c+_k c_i|a> <b'|c+_l c_j|b>
  const auto up_hops = single_hops(basis.up_strings(), basis, n);
  const auto down_hops = single_hops(basis.down_strings(), basis, n);
  out.updown = Eigen::MatrixXd::Zero(n * n, n * n);
  for (const auto& m : state.members) {
    const Eigen::MatrixXd g = m.state.gamma();
    for (const auto& hu : up_hops) {
      const auto a = static_cast<Eigen::Index>(hu.src);
      const auto a2 = static_cast<Eigen::Index>(hu.dst);
      for (const auto& hd : down_hops) {
        const double v = g(a2, static_cast<Eigen::Index>(hd.dst)) * g(a, static_cast<Eigen::Index>(hd.src));
        if (v == 0.0) continue;
        out.updown(hu.from * n + hd.from, hu.to * n + hd.to) += m.weight * hu.sign * hd.sign * v;
      }
    }
  }
  symmetrize(out.upup);
  symmetrize(out.downdown);
  symmetrize(out.updown);
  return out;
}

Rdm2 two_body(const WaveFunction& state) { return two_body(as_ensemble(state)); }

Eigen::MatrixXd unrestricted_same_spin(const Eigen::MatrixXd& restricted, int n) {
  const auto np = static_cast<Eigen::Index>(n * (n - 1) / 2);
  if (restricted.rows() != np || restricted.cols() != np)
    throw DomainError("unrestricted_same_spin: block size does not match n");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const auto r = static_cast<Eigen::Index>(pair_index(i, j, n));
      for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          const double v = restricted(r, static_cast<Eigen::Index>(pair_index(k, l, n)));
          out(i * n + j, k * n + l) = v;
          out(j * n + i, k * n + l) = -v;
          out(i * n + j, l * n + k) = -v;
          out(j * n + i, l * n + k) = v;
        }
    }
  return out;
}

Eigen::MatrixXd unrestricted_full(const Rdm2& r2) {
  const int n = r2.n_spatial;
  const int m = 2 * n;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m * m, m * m);
  const Eigen::MatrixXd uu = unrestricted_same_spin(r2.upup, n);
  const Eigen::MatrixXd dd = unrestricted_same_spin(r2.downdown, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          out(i * m + j, k * m + l) = uu(i * n + j, k * n + l);
          out((n + i) * m + (n + j), (n + k) * m + (n + l)) = dd(i * n + j, k * n + l);
          // up i, down jbar -> up k, down lbar, and the antisymmetric partners
          const double v = r2.updown(i * n + j, k * n + l);
          const int ui = i, dj = n + j, uk = k, dl = n + l;
          out(ui * m + dj, uk * m + dl) = v;
          out(dj * m + ui, uk * m + dl) = -v;
          out(ui * m + dj, dl * m + uk) = -v;
          out(dj * m + ui, dl * m + uk) = v;
        }
  return out;
}

DensityAndTranspose full_density_and_pt(const Ensemble& state, std::size_t dense_limit) {
  const auto& basis = *state.basis();
  const std::size_t dim = basis.size();
  if (dim > dense_limit) throw CapacityError("sector too large for a dense density matrix", dim, dense_limit);
  const auto d = static_cast<Eigen::Index>(dim);
  DensityAndTranspose out{Eigen::MatrixXd::Zero(d, d), Eigen::MatrixXd(d, d)};
  for (const auto& m : state.members)
    out.rho.selfadjointView<Eigen::Lower>().rankUpdate(m.state.coeffs, m.weight);
  out.rho.triangularView<Eigen::StrictlyUpper>() = out.rho.transpose().eval();

  const auto nd = static_cast<Eigen::Index>(basis.n_down_strings());
  const auto nu = static_cast<Eigen::Index>(basis.n_up_strings());
  for (Eigen::Index a = 0; a < nu; ++a)
    for (Eigen::Index b = 0; b < nd; ++b)
      for (Eigen::Index a2 = 0; a2 < nu; ++a2)
        for (Eigen::Index b2 = 0; b2 < nd; ++b2)
          out.rho_pt(a * nd + b, a2 * nd + b2) = out.rho(a * nd + b2, a2 * nd + b);
  return out;
}

DensityAndTranspose full_density_and_pt(const WaveFunction& state, std::size_t dense_limit) {
  return full_density_and_pt(as_ensemble(state), dense_limit);
}

}  // namespace fermicorr
