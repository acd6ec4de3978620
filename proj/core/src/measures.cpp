// Copyright 2026 The fermicorr Authors
// SPDX-License-Identifier: Apache-2.0

#include <fermicorr/errors.hpp>
#include <fermicorr/measures.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace fermicorr {

Eigen::VectorXd spectrum(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw DomainError("spectrum needs a square matrix");
  if (m.size() == 0) return {};
  if (!m.allFinite()) throw NumericalError("spectrum: matrix has non-finite entries");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("spectrum: diagonalization failed");
  return solver.eigenvalues();
}

double entropy(std::span<const double> values) {
  double s = 0.0;
  for (double l : values) {
    if (l < -kClampTolerance)
      throw NumericalError("entropy: eigenvalue " + std::to_string(l) + " is negative");
    if (l > 0.0) s -= l * std::log2(l);
  }
  return s;
}

double entropy(const Eigen::VectorXd& values) {
  return entropy(std::span<const double>(values.data(), static_cast<std::size_t>(values.size())));
}

double shannon_entropy(std::span<const double> p) { return entropy(p); }

double SchmidtDecomposition::entropy() const {
  const Eigen::VectorXd sq = singular_values.array().square();
  return fermicorr::entropy(sq);
}

SchmidtDecomposition schmidt(const WaveFunction& wf) {
  const Eigen::MatrixXd g = wf.gamma();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtDecomposition out;
  out.singular_values = svd.singularValues();
  out.rank = static_cast<int>((out.singular_values.array() > kRankCutoff).count());
  out.left = svd.matrixU().leftCols(out.rank);
  out.right = svd.matrixV().leftCols(out.rank);
  for (int k = 0; k < out.rank; ++k) {
    Eigen::Index arg = 0;
    out.left.col(k).cwiseAbs().maxCoeff(&arg);
    if (out.left(arg, k) < 0.0) {
      out.left.col(k) *= -1.0;
      out.right.col(k) *= -1.0;
    }
  }
  return out;
}

double mutual_information_total(const UpDownDensity& ud, double full_entropy) {
  return entropy(spectrum(ud.rho_up)) + entropy(spectrum(ud.rho_down)) - full_entropy;
}

double mutual_information_total(const WaveFunction&, const UpDownDensity& ud) {
  return mutual_information_total(ud, 0.0);
}

double mutual_information_total(const Ensemble& state, const UpDownDensity& ud,
                                std::size_t dense_limit) {
  if (state.members.size() == 1) return mutual_information_total(ud, 0.0);
  const DensityAndTranspose d = full_density_and_pt(state, dense_limit);
  return mutual_information_total(ud, entropy(spectrum(d.rho)));
}

double mutual_information_2body(const Rdm1& r1, const Rdm2& r2) {
  if (r2.n_up * r2.n_down == 0)
    throw DomainError("two-body mutual information needs N_up * N_down > 0");
  return r2.n_down * entropy(spectrum(r1.up)) + r2.n_up * entropy(spectrum(r1.down)) -
         entropy(spectrum(r2.updown));
}

double negativity_total(const Eigen::MatrixXd& rho_pt) {
  const Eigen::VectorXd ev = spectrum(rho_pt);
  return 0.5 * (ev.cwiseAbs().sum() - ev.sum());
}

double negativity_pure(const SchmidtDecomposition& sd) {
  const double s = sd.singular_values.sum();
  return 0.5 * (s * s - 1.0);
}

Eigen::MatrixXd partial_transpose_updown(const Eigen::MatrixXd& r2_updown) {
  const auto nn = r2_updown.rows();
  const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(nn))));
  if (r2_updown.cols() != nn || n * n != nn)
    throw DomainError("up-down block must be n^2 x n^2");
  Eigen::MatrixXd out(nn, nn);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index l = 0; l < n; ++l) out(i * n + j, k * n + l) = r2_updown(i * n + l, k * n + j);
  return out;
}

double negativity_2body_updown(const Eigen::MatrixXd& r2_updown) {
  if (r2_updown.size() == 0) return 0.0;
  const Eigen::VectorXd ev = spectrum(partial_transpose_updown(r2_updown));
  return 0.5 * (ev.cwiseAbs().sum() - ev.sum());
}

Eigen::MatrixXd antisym_partial_transpose(const Eigen::MatrixXd& m) {
  const auto dd = m.rows();
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(dd))));
  if (m.cols() != dd || d * d != dd) throw DomainError("two-body matrix must be d^2 x d^2");
  constexpr double tol = 1e-10;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index c = 0; c < dd; ++c) {
        if (std::abs(m(i * d + j, c) + m(j * d + i, c)) > tol ||
            std::abs(m(c, i * d + j) + m(c, j * d + i)) > tol)
          throw DomainError("two-body matrix is not antisymmetrized");
      }
  Eigen::MatrixXd out(dd, dd);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index k = 0; k < d; ++k)
        for (Eigen::Index l = 0; l < d; ++l)
          out(i * d + j, k * d + l) = m(i * d + l, k * d + j) - m(i * d + k, l * d + j);
  return out;
}

double negativity_2body_fermionic(const Eigen::MatrixXd& r2_unrestricted, int n_particles) {
  if (n_particles < 0) throw DomainError("particle number must be non-negative");
  if (n_particles < 2) return 0.0;
  const Eigen::VectorXd ev = spectrum(antisym_partial_transpose(r2_unrestricted));
  return 0.5 * (0.5 * ev.cwiseAbs().sum() - 0.5 * n_particles * (n_particles - 1));
}

namespace {

double log2_binomial(int n, int k) {
  if (k < 0 || k > n) return -INFINITY;
  return (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) / std::log(2.0);
}

double binom(int n, int k) { return k < 0 || k > n ? 0.0 : std::exp2(log2_binomial(n, k)); }

std::optional<double> positive(double v) {
  if (!(v > 1e-14)) return std::nullopt;
  return v;
}

std::optional<double> ratio(double s, const std::optional<double>& smax) {
  if (!smax) return std::nullopt;
  return s / *smax;
}

}  // namespace

NormalizedEntropies entropy_maxima(int d, int n_up, int n_down) {
  if (d <= 0 || d % 2 != 0) throw DomainError("number of spin orbitals must be even and positive");
  const int n = d / 2;
  if (n_up < 0 || n_down < 0 || n_up > n || n_down > n)
    throw DomainError("particle numbers do not fit the orbital count");
  NormalizedEntropies m;
  // Schmidt rank is bounded by the smaller string space.
  m.rho_up = positive(std::min(log2_binomial(n, n_up), log2_binomial(n, n_down)));
  auto one = [n](int k) { return k == 0 ? 0.0 : k * std::log2(static_cast<double>(n) / k); };
  m.rdm1_up = positive(one(n_up));
  m.rdm1_down = positive(one(n_down));
  auto same = [n](int k) {
    const double pairs = binom(k, 2);
    return pairs == 0.0 ? 0.0 : pairs * std::log2(binom(n, 2) / pairs);
  };
  m.rdm2_upup = positive(same(n_up));
  m.rdm2_downdown = positive(same(n_down));
  const double nud = static_cast<double>(n_up) * n_down;
  m.rdm2_updown = positive(nud == 0.0 ? 0.0 : nud * std::log2(static_cast<double>(n) * n / nud));
  return m;
}

NormalizedEntropies normalized_entropies(const MeasureReport& r, int d, int n_up, int n_down) {
  const NormalizedEntropies m = entropy_maxima(d, n_up, n_down);
  return {ratio(r.s_rho_up, m.rho_up),       ratio(r.s_rdm1_up, m.rdm1_up),
          ratio(r.s_rdm1_down, m.rdm1_down), ratio(r.s_rdm2_upup, m.rdm2_upup),
          ratio(r.s_rdm2_downdown, m.rdm2_downdown), ratio(r.s_rdm2_updown, m.rdm2_updown)};
}

namespace {

MeasureReport common(const Ensemble& state, const std::string& tag) {
  const auto& basis = *state.basis();
  MeasureReport r;
  r.tag = tag;
  r.n_spatial = basis.n_spatial();
  r.n_up = basis.n_up();
  r.n_down = basis.n_down();
  r.pure = state.members.size() == 1;

  const UpDownDensity ud = updown_densities(state);
  r.spectra.rho_up = spectrum(ud.rho_up);
  r.spectra.rho_down = spectrum(ud.rho_down);
  r.s_rho_up = entropy(r.spectra.rho_up);
  r.s_rho_down = entropy(r.spectra.rho_down);
  r.e_updown = r.s_rho_up;

  const Rdm1 r1 = one_body(state);
  r.spectra.rdm1_up = spectrum(r1.up);
  r.spectra.rdm1_down = spectrum(r1.down);
  r.s_rdm1_up = entropy(r.spectra.rdm1_up);
  r.s_rdm1_down = entropy(r.spectra.rdm1_down);
  r.e1 = r.s_rdm1_up + r.s_rdm1_down;

  const Rdm2 r2 = two_body(state);
  r.spectra.rdm2_upup = spectrum(r2.upup);
  r.spectra.rdm2_downdown = spectrum(r2.downdown);
  r.spectra.rdm2_updown = spectrum(r2.updown);
  r.s_rdm2_upup = entropy(r.spectra.rdm2_upup);
  r.s_rdm2_downdown = entropy(r.spectra.rdm2_downdown);
  r.s_rdm2_updown = entropy(r.spectra.rdm2_updown);
  r.e2 = r.s_rdm2_upup + r.s_rdm2_downdown + r.s_rdm2_updown;
  r.lambda_max_r2ud = r.spectra.rdm2_updown.size() ? r.spectra.rdm2_updown.maxCoeff() : 0.0;

  // With no up-down pairs the block is empty and carries no correlation.
  r.i2_updown = r.n_up * r.n_down == 0
                    ? 0.0
                    : r.n_down * r.s_rdm1_up + r.n_up * r.s_rdm1_down - r.s_rdm2_updown;
  r.n2_updown = r.n_up * r.n_down == 0 ? 0.0 : negativity_2body_updown(r2.updown);
  const int n = r.n_spatial;
  r.n2_upup = negativity_2body_fermionic(unrestricted_same_spin(r2.upup, n), r.n_up);
  r.n2_downdown = negativity_2body_fermionic(unrestricted_same_spin(r2.downdown, n), r.n_down);

  for (const auto& m : state.members) r.weights.push_back(m.weight);
  r.normalized = normalized_entropies(r, 2 * n, r.n_up, r.n_down);
  return r;
}

}  // namespace

MeasureReport report(const WaveFunction& wf, const std::string& tag, std::size_t) {
  const WaveFunction psi = normalized(wf);
  MeasureReport r = common(as_ensemble(psi), tag);
  const SchmidtDecomposition sd = schmidt(psi);
  r.schmidt_values.assign(sd.singular_values.data(),
                          sd.singular_values.data() + sd.singular_values.size());
  r.schmidt_rank = sd.rank;
  r.s_full = 0.0;
  r.i_updown = r.s_rho_up + r.s_rho_down;
  r.n_updown = negativity_pure(sd);
  return r;
}

MeasureReport report(const Ensemble& state, const std::string& tag, std::size_t dense_limit) {
  if (state.members.size() == 1) {
    MeasureReport r = report(state.members.front().state, tag, dense_limit);
    r.beta = state.beta;
    if (state.beta) {
      r.s_p = state.shannon_p;
      r.s_q = state.shannon_q;
    }
    return r;
  }
  MeasureReport r = common(state, tag);
  const DensityAndTranspose d = full_density_and_pt(state, dense_limit);
  r.s_full = entropy(spectrum(d.rho));
  r.i_updown = r.s_rho_up + r.s_rho_down - r.s_full;
  r.n_updown = negativity_total(d.rho_pt);
  r.beta = state.beta;
  r.s_p = state.shannon_p;
  if (state.beta) r.s_q = state.shannon_q;
  return r;
}

}  // namespace fermicorr
