// Copyright 2026 The fermicorr Authors
// SPDX-License-Identifier: Apache-2.0

#include <fermicorr/errors.hpp>
#include <fermicorr/limits.hpp>

#include <algorithm>
#include <cmath>

namespace fermicorr {

OperatorSum creators_up(std::initializer_list<int> orbitals) {
  OperatorTerm t;
  for (int o : orbitals) t.ops.push_back(cre(o, Spin::up));
  return {t};
}

OperatorSum creators_down(std::initializer_list<int> orbitals) {
  OperatorTerm t;
  for (int o : orbitals) t.ops.push_back(cre(o, Spin::down));
  return {t};
}

OperatorSum pair_updown(int i, int j) { return {{1.0, {cre(i, Spin::up), cre(j, Spin::down)}}}; }

OperatorSum bell_pair(int j, int k, int sign) {
  const double c = 1.0 / std::sqrt(2.0);
  return {{c, {cre(j, Spin::up), cre(k, Spin::down)}},
          {sign * c, {cre(k, Spin::up), cre(j, Spin::down)}}};
}

OperatorSum operator*(const OperatorSum& a, const OperatorSum& b) {
  OperatorSum out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) {
      OperatorTerm t{x.coeff * y.coeff, x.ops};
      t.ops.insert(t.ops.end(), y.ops.begin(), y.ops.end());
      out.push_back(std::move(t));
    }
  return out;
}

OperatorSum operator+(const OperatorSum& a, const OperatorSum& b) {
  OperatorSum out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

OperatorSum operator*(double c, const OperatorSum& a) {
  OperatorSum out = a;
  for (auto& t : out) t.coeff *= c;
  return out;
}

WaveFunction apply_to_vacuum(const OperatorSum& ops, BasisPtr basis) {
  if (!basis) throw DomainError("apply_to_vacuum: null basis");
  WaveFunction wf{basis, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis->size())), {}};
  for (const auto& t : ops) {
    const auto r = apply_ops(Determinant{}, t.ops, basis->n_spatial());
    if (!r) continue;
    if (!basis->contains(r->det))
      throw DomainError("operator term leaves the sector: " + to_string(r->det, basis->n_spatial()));
    wf.coeffs(static_cast<Eigen::Index>(basis->index(r->det))) += t.coeff * r->phase;
  }
  return wf;
}

Eigen::VectorXd expand(const ReferenceRow& row, std::size_t dim) {
  std::vector<double> v;
  for (const auto& e : row) v.insert(v.end(), static_cast<std::size_t>(e.count), e.value());
  if (v.size() > dim) throw DomainError("reference row longer than the matrix dimension");
  v.resize(dim, 0.0);
  std::sort(v.begin(), v.end());
  return Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

double row_trace(const ReferenceRow& row) {
  double s = 0.0;
  for (const auto& e : row) s += e.value() * e.count;
  return s;
}

const AsymptoticSpec& dissociation_reference() {
  static const AsymptoticSpec ref = [] {
    const double l3 = std::log2(3.0);
    AsymptoticSpec s;
    s.orbital_roles = {"O 1s", "O 2s", "O 2p_z", "O 2p_y", "H_A 1s", "H_B 1s", "O 2p_x"};
    s.gs_core = {0, 1, 2};
    s.band_core = {0, 1};
    s.gs.rho_up = {{1, 12, 4}, {1, 3, 2}};
    s.gs.rdm1_up = {{1, 2, 4}, {1, 1, 3}};
    s.gs.rdm2_upup = {{1, 12, 4}, {1, 3, 2}, {1, 2, 12}, {1, 1, 3}};
    s.gs.rdm2_updown = {{1, 12, 4}, {1, 3, 2}, {1, 2, 24}, {3, 4, 4}, {1, 1, 9}};
    s.thermal.rho_up = {{1, 12, 9}, {1, 4, 1}};
    s.thermal.rdm1_up = {{1, 2, 2}, {2, 3, 3}, {1, 1, 2}};
    s.thermal.rdm2_upup = {{1, 4, 7}, {5, 12, 3}, {1, 2, 4}, {2, 3, 6}, {1, 1, 1}};
    s.thermal.rdm2_updown = {{1, 4, 2}, {1, 3, 6}, {5, 12, 12}, {1, 2, 11}, {2, 3, 12}, {1, 1, 4}};
    s.gs_scalars = {13.0 / 6.0, 5.0 / 6.0, 0.0, 4.0 / 3.0 + 2.0 * l3, 4.0 / 3.0 + 2.0 * l3,
                    {{-1, 3, 1}, {-1, 6, 8}, {-1, 12, 6}}};
    s.thermal_scalars = {1.0 / 6.0, 0.0, 0.0, 2.0 + 0.5 * l3,
                         0.5 * (-37.0 + 10.0 * std::log2(15.0)), {{-1, 12, 2}}};
    s.gs_schmidt_squared = {{1, 3, 2}, {1, 12, 4}};
    s.gs_pair_sigma_squared = {{3, 4, 4}, {1, 3, 2}, {1, 12, 4}};
    return s;
  }();
  return ref;
}

namespace {

void require_water_sector(const BasisPtr& basis) {
  if (!basis || basis->n_spatial() != 7 || basis->n_up() != 5 || basis->n_down() != 5)
    throw DomainError("dissociation-limit states live in sector (7, 5, 5)");
}

}  // namespace

WaveFunction asymptotic_gs(BasisPtr basis) {
  require_water_sector(basis);
  const auto c = [](int i, int j) { return creators_up({i, j}); };
  const auto cb = [](int i, int j) { return creators_down({i, j}); };
  const OperatorSum core = creators_up({0, 1, 2}) * creators_down({0, 1, 2});
  const double a = std::sqrt(1.0 / 12.0);
  const double b = std::sqrt(1.0 / 3.0);
  const OperatorSum active = a * (c(3, 4) * cb(5, 6)) + a * (c(5, 6) * cb(3, 4)) +
                             (-a) * (c(3, 5) * cb(4, 6)) + (-a) * (c(4, 6) * cb(3, 5)) +
                             (-b) * (c(3, 6) * cb(4, 5)) + (-b) * (c(4, 5) * cb(3, 6));
  return normalized(apply_to_vacuum(active * core, std::move(basis)));
}

std::vector<WaveFunction> asymptotic_band(BasisPtr basis) {
  require_water_sector(basis);
  const OperatorSum core = creators_up({0, 1}) * creators_down({0, 1});
  // (i, j, k) with j < k the two remaining 2p orbitals.
  constexpr std::array<std::array<int, 3>, 3> p = {{{2, 3, 6}, {3, 2, 6}, {6, 2, 3}}};

  std::vector<WaveFunction> out;
  for (const auto& [i, j, k] : p)
    out.push_back(apply_to_vacuum(creators_down({4, 5}) * creators_up({2, 3, 6}) *
                                      creators_down({i}) * core,
                                  basis));
  for (const auto& [i, j, k] : p)
    out.push_back(apply_to_vacuum(creators_up({4, 5}) * creators_up({i}) *
                                      creators_down({2, 3, 6}) * core,
                                  basis));
  for (const auto& h : {pair_updown(4, 5), pair_updown(5, 4)})
    for (const auto& [i, j, k] : p)
      out.push_back(apply_to_vacuum(h * pair_updown(i, i) * bell_pair(j, k, -1) * core, basis));
  for (auto& wf : out) wf = normalized(std::move(wf));
  return out;
}

WaveFunction asymptotic_gs_from_band(BasisPtr basis) {
  const auto band = asymptotic_band(basis);
  WaveFunction wf{std::move(basis), {}, {}};
  wf.coeffs = -(band[0].coeffs + band[3].coeffs) / std::sqrt(3.0) +
              (band[6].coeffs - band[9].coeffs) / std::sqrt(6.0);
  return wf;
}

Ensemble asymptotic_thermal(BasisPtr basis) {
  std::vector<EnsembleMember> members;
  for (auto& wf : asymptotic_band(std::move(basis))) members.push_back({1.0, std::move(wf)});
  return make_mixture(std::move(members));
}

}  // namespace fermicorr
