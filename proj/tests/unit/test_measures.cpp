// Copyright 2026 The fermicorr Authors
// SPDX-License-Identifier: Apache-2.0

#include <fermicorr/errors.hpp>
#include <fermicorr/integrals.hpp>
#include <fermicorr/limits.hpp>
#include <fermicorr/measures.hpp>
#include <fermicorr/rdm.hpp>

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

namespace fermicorr {
namespace {

using testing::max_abs_diff;

double h2(double p) { return -p * std::log2(p) - (1 - p) * std::log2(1 - p); }

using testing::state_creator;

double i2(const WaveFunction& wf) { return mutual_information_2body(one_body(wf), two_body(wf)); }

TEST(Entropy, Examples) {
  EXPECT_DOUBLE_EQ(entropy(std::vector<double>{0.5, 0.5}), 1.0);
  EXPECT_DOUBLE_EQ(entropy(std::vector<double>{1.0}), 0.0);
  EXPECT_DOUBLE_EQ(entropy(std::vector<double>{1.0, 0.0}), 0.0);
  const std::vector<double> gs{1.0 / 3, 1.0 / 3, 1.0 / 12, 1.0 / 12, 1.0 / 12, 1.0 / 12};
  EXPECT_NEAR(entropy(gs), 2.0 / 3 * std::log2(3.0) + std::log2(12.0) / 3, 1e-14);
  EXPECT_NEAR(entropy(gs), 2.2516291673878226, 1e-12);
  EXPECT_DOUBLE_EQ(entropy(std::vector<double>{2.0}), -2.0);
  EXPECT_DOUBLE_EQ(entropy(std::vector<double>{1.0, -5e-10}), 0.0);
  EXPECT_THROW(entropy(std::vector<double>{1.0, -1e-6}), NumericalError);
}

TEST(Schmidt, SlaterDeterminantHasRankOne) {
  const auto b = make_basis(4, 2, 1);
  const SchmidtDecomposition s = schmidt(testing::determinant_state(b, {0b0101, 0b1000}));
  EXPECT_EQ(s.rank, 1);
  EXPECT_NEAR(s.singular_values(0), 1.0, 1e-15);
  EXPECT_NEAR(s.entropy(), 0.0, 1e-15);
}

TEST(Schmidt, TwoTermState) {
  const auto b = make_basis(4, 1, 1);
  const double p = 0.3;
  WaveFunction wf = testing::determinant_state(b, {0b0001, 0b0001});
  wf.coeffs *= std::sqrt(p);
  wf.coeffs(static_cast<Eigen::Index>(b->index({0b0100, 0b1000}))) = std::sqrt(1 - p);
  const SchmidtDecomposition s = schmidt(wf);
  EXPECT_EQ(s.rank, 2);
  EXPECT_NEAR(s.singular_values(0), std::sqrt(1 - p), 1e-14);
  EXPECT_NEAR(s.singular_values(1), std::sqrt(p), 1e-14);
  EXPECT_NEAR(s.entropy(), h2(p), 1e-14);
}

TEST(Schmidt, OrthonormalFactorsAndGauge) {
  const auto b = make_basis(5, 2, 3);
  std::mt19937_64 rng(4);
  const WaveFunction wf = testing::random_state(b, rng);
  const SchmidtDecomposition s = schmidt(wf);
  const auto r = s.rank;
  EXPECT_NEAR(s.singular_values.squaredNorm(), 1.0, 1e-10);
  EXPECT_LT(max_abs_diff(s.left.transpose() * s.left, Eigen::MatrixXd::Identity(r, r)), 1e-10);
  EXPECT_LT(max_abs_diff(s.right.transpose() * s.right, Eigen::MatrixXd::Identity(r, r)), 1e-10);
  const Eigen::MatrixXd rebuilt = s.left * s.singular_values.head(r).asDiagonal() * s.right.transpose();
  EXPECT_LT(max_abs_diff(rebuilt, wf.gamma()), 1e-10);
  for (int k = 0; k < r; ++k) {
    Eigen::Index arg;
    s.left.col(k).cwiseAbs().maxCoeff(&arg);
    EXPECT_GT(s.left(arg, k), 0.0);
  }
}

TEST(MutualInformation, PureStateIdentityAndArakiLieb) {
  std::mt19937_64 rng(21);
  for (auto [n, nu, nd] : {std::array{3, 1, 1}, {4, 2, 2}, {5, 2, 3}, {5, 3, 3}}) {
    const auto b = make_basis(n, nu, nd);
    for (int k = 0; k < 5; ++k) {
      const WaveFunction wf = testing::random_state(b, rng);
      const MeasureReport r = report(wf);
      EXPECT_NEAR(r.i_updown, 2.0 * r.e_updown, 1e-10);
      const UpDownDensity ud = updown_densities(wf);
      EXPECT_NEAR(mutual_information_total(wf, ud), r.i_updown, 1e-10);
      EXPECT_NEAR(mutual_information_total(as_ensemble(wf), ud), r.i_updown, 1e-10);
      EXPECT_LE(r.i_updown, 2.0 * std::min(r.s_rho_up, r.s_rho_down) + 1e-10);
    }
    std::vector<EnsembleMember> m;
    for (int k = 0; k < 4; ++k) m.push_back({1.0 + k, testing::random_state(b, rng)});
    const Ensemble e = make_mixture(std::move(m));
    const MeasureReport r = report(e);
    EXPECT_NEAR(mutual_information_total(e, updown_densities(e)), r.i_updown, 1e-10);
    EXPECT_LE(r.i_updown, 2.0 * std::min(r.s_rho_up, r.s_rho_down) + 1e-10);
    EXPECT_GE(r.i_updown, -1e-10);
  }
}

TEST(MutualInformation, ProductStateIsUncorrelated) {
  const auto b = make_basis(4, 2, 2);
  std::mt19937_64 rng(2);
  const Eigen::VectorXd a = testing::gaussian(6, rng).normalized();
  const Eigen::VectorXd c = testing::gaussian(6, rng).normalized();
  WaveFunction wf{b, Eigen::VectorXd(36), {}};
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y) wf.coeffs(x * 6 + y) = a(x) * c(y);
  const MeasureReport r = report(wf);
  EXPECT_NEAR(r.i_updown, 0.0, 1e-10);
  EXPECT_NEAR(r.i2_updown, 0.0, 1e-9);  // property 1: product states
  EXPECT_NEAR(r.n_updown, 0.0, 1e-10);
  EXPECT_NEAR(r.n2_updown, 0.0, 1e-9);
  EXPECT_EQ(r.schmidt_rank, 1);
}

TEST(OneBodyEntanglement, VanishesExactlyForSlaterDeterminants) {
  std::mt19937_64 rng(31);
  const auto b = make_basis(5, 2, 3);
  for (int k = 0; k < 5; ++k) {
    const MeasureReport r = report(testing::random_sd(b, rng));
    EXPECT_NEAR(r.e1, 0.0, 1e-9);
    EXPECT_NEAR(r.e_updown, 0.0, 1e-9);
    EXPECT_NEAR(r.i2_updown, 0.0, 1e-9);
    EXPECT_NEAR(r.n_updown, 0.0, 1e-9);
    EXPECT_NEAR(r.n2_updown, 0.0, 1e-9);
    EXPECT_NEAR(r.n2_upup, 0.0, 1e-9);
    EXPECT_NEAR(r.n2_downdown, 0.0, 1e-9);
    EXPECT_NEAR(r.e2, 0.0, 1e-8);
  }
  // entangled states always carry one-body entanglement
  for (int k = 0; k < 20; ++k) {
    const MeasureReport r = report(testing::random_state(b, rng));
    ASSERT_GT(r.e_updown, 1e-6);
    EXPECT_GT(r.e1, 0.0);
  }
}

TEST(OneBodyEntanglement, WaterGroundStateIsNotASlaterDeterminant) {
  const auto t = parse_fcidump_file(testing::water_file(1.0));
  const auto basis = make_basis(7, 5, 5);
  const Eigenpairs e = eigensolve(build_hamiltonian(*basis, t));
  EXPECT_GT(report(eigenstate(e, 0, basis)).e1, 1e-3);
}

TEST(TwoBodyMutualInformation, PropertyOneNonNegative) {
  std::mt19937_64 rng(41);
  const auto b = make_basis(5, 2, 2);
  for (int k = 0; k < 20; ++k) EXPECT_GE(i2(testing::random_state(b, rng)), -1e-10);
  EXPECT_THROW(mutual_information_2body(one_body(testing::random_state(make_basis(3, 2, 0), rng)),
                                        two_body(testing::random_state(make_basis(3, 2, 0), rng))),
               DomainError);
}

TEST(TwoBodyMutualInformation, PropertyTwoCoreIndependence) {
  std::mt19937_64 rng(43);
  for (auto [n, nu, nd] : {std::array{3, 1, 1}, {4, 2, 1}, {4, 2, 2}}) {
    const auto small = make_basis(n, nu, nd);
    const WaveFunction wf = testing::random_state(small, rng);
    // core orbital 0, active orbitals shifted to 1..n
    const auto big = make_basis(n + 1, nu + 1, nd + 1);
    const WaveFunction padded = apply_to_vacuum(state_creator(wf, 1) * pair_updown(0, 0), big);
    EXPECT_NEAR(padded.norm(), 1.0, 1e-12);
    EXPECT_NEAR(i2(padded), i2(wf), 1e-9);
    // and a second core orbital on top
    const auto bigger = make_basis(n + 2, nu + 2, nd + 2);
    const WaveFunction twice = apply_to_vacuum(pair_updown(n + 1, n + 1) * state_creator(padded, 0), bigger);
    EXPECT_NEAR(i2(twice), i2(wf), 1e-9);
  }
}

TEST(TwoBodyMutualInformation, PropertyThreeAdditivity) {
  std::mt19937_64 rng(47);
  const WaveFunction a = testing::random_state(make_basis(3, 1, 1), rng);
  const WaveFunction b = testing::random_state(make_basis(3, 2, 1), rng);
  const WaveFunction ab = apply_to_vacuum(state_creator(a, 0) * state_creator(b, 3), make_basis(6, 3, 2));
  EXPECT_NEAR(ab.norm(), 1.0, 1e-12);
  EXPECT_NEAR(i2(ab), i2(a) + i2(b), 1e-9);
}

TEST(TwoBodyMutualInformation, PropertyFourClassicalCorrelation) {
  // sum_nu sqrt(p_nu) A+_nu B+_nu with disjoint supports {0,1,2} and {3,4,5}
  std::mt19937_64 rng(53);
  const auto small = make_basis(3, 2, 2);
  const auto big = make_basis(6, 2, 2);
  for (double p : {0.3, 0.5, 0.9}) {
    const WaveFunction x = testing::random_sd(small, rng);
    const WaveFunction y = testing::random_sd(small, rng);
    const WaveFunction wf =
        apply_to_vacuum(std::sqrt(p) * state_creator(x, 0) + std::sqrt(1 - p) * state_creator(y, 3), big);
    const MeasureReport r = report(wf);
    EXPECT_NEAR(r.i2_updown, 4.0 * h2(p), 1e-9);
    EXPECT_NEAR(r.n2_updown, 0.0, 1e-9);
    EXPECT_NEAR(r.e_updown, h2(p), 1e-9);
    EXPECT_NEAR(r.i_updown, 2.0 * h2(p), 1e-9);
  }
}

TEST(TwoFermionCollapse, IdentitiesForOneUpOneDown) {
  std::mt19937_64 rng(59);
  const auto b = make_basis(4, 1, 1);
  for (int k = 0; k < 10; ++k) {
    const WaveFunction wf = testing::random_state(b, rng);
    const MeasureReport r = report(wf);
    const Rdm2 r2 = two_body(wf);
    EXPECT_NEAR(negativity_2body_updown(r2.updown), r.n_updown, 1e-10);
    EXPECT_NEAR(r.i2_updown, r.i_updown, 1e-10);
    EXPECT_NEAR(r.i2_updown, r.e1, 1e-10);
  }
}

TEST(TwoFermionPairState, SingleEigenvalueAndNegativity) {
  const auto b = make_basis(2, 1, 1);
  const double s = 1.0 / std::sqrt(2.0);
  const WaveFunction wf =
      apply_to_vacuum(s * pair_updown(0, 0) + s * pair_updown(1, 1), b);
  const Rdm2 r2 = two_body(wf);
  const Eigen::VectorXd ev = spectrum(r2.updown);
  EXPECT_NEAR(ev(ev.size() - 1), 1.0, 1e-14);
  EXPECT_NEAR(ev.head(ev.size() - 1).cwiseAbs().maxCoeff(), 0.0, 1e-14);
  const Eigen::MatrixXd full = unrestricted_full(r2);
  EXPECT_NEAR(negativity_2body_fermionic(full, 2), 1.0, 1e-12);
  const Eigen::VectorXd tp = spectrum(antisym_partial_transpose(full));
  // unrestricted labels count each pair twice, so tp/2 carries -sigma_0 sigma_1
  EXPECT_NEAR(tp.minCoeff() / 2, -0.5, 1e-12);
  EXPECT_NEAR((tp.array() < 0).select(tp.array(), 0.0).sum() / 2, -1.0, 1e-12);
  EXPECT_NEAR(report(wf).e1, 2.0, 1e-12);
}

TEST(PartialTransposeTp, WickIdentityForRealSlaterDeterminants) {
  std::mt19937_64 rng(61);
  for (auto [n, nu, nd] : {std::array{3, 1, 1}, {4, 2, 1}, {4, 2, 2}}) {
    const auto b = make_basis(n, nu, nd);
    for (int k = 0; k < 3; ++k) {
      const Eigen::MatrixXd m = unrestricted_full(two_body(testing::random_sd(b, rng)));
      EXPECT_LT(max_abs_diff(antisym_partial_transpose(m), m), 1e-10);
    }
  }
}

TEST(PartialTransposeTp, MixturesOfSlaterDeterminantsArePositive) {
  std::mt19937_64 rng(67);
  const auto b = make_basis(4, 2, 2);
  std::vector<EnsembleMember> m;
  std::uniform_real_distribution<double> w(0.0, 1.0);
  for (int k = 0; k < 20; ++k) m.push_back({w(rng), testing::random_sd(b, rng)});
  const Ensemble e = make_mixture(std::move(m));
  const Rdm2 r2 = two_body(e);
  EXPECT_GT(spectrum(antisym_partial_transpose(unrestricted_full(r2))).minCoeff(), -1e-9);
  EXPECT_GT(spectrum(antisym_partial_transpose(unrestricted_same_spin(r2.upup, 4))).minCoeff(), -1e-9);
  EXPECT_NEAR(negativity_2body_updown(r2.updown), 0.0, 1e-9);
  EXPECT_NEAR(report(e).n2_upup, 0.0, 1e-9);
}

TEST(PartialTransposeTp, RotationInvariantSpectra) {
  std::mt19937_64 rng(71);
  const auto b = make_basis(4, 2, 2);
  const Eigen::MatrixXd m = unrestricted_full(two_body(testing::random_state(b, rng)));
  const Eigen::MatrixXd w = testing::random_orthogonal(8, rng);
  Eigen::MatrixXd ww(64, 64);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) ww.block(a * 8, b * 8, 8, 8) = w(a, b) * w;
  const Eigen::MatrixXd rotated = ww * m * ww.transpose();
  EXPECT_LT((spectrum(rotated) - spectrum(m)).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_LT((spectrum(antisym_partial_transpose(rotated)) - spectrum(antisym_partial_transpose(m)))
                .cwiseAbs()
                .maxCoeff(),
            1e-9);
}

TEST(PartialTransposeTp, PreservesTraceAndSymmetry) {
  std::mt19937_64 rng(73);
  const Eigen::MatrixXd m = unrestricted_full(two_body(testing::random_state(make_basis(3, 2, 1), rng)));
  const Eigen::MatrixXd tp = antisym_partial_transpose(m);
  EXPECT_NEAR(tp.trace(), m.trace(), 1e-12);
  EXPECT_LT(max_abs_diff(tp, tp.transpose()), 1e-12);
  Eigen::MatrixXd bad = m;
  bad(0, 0) += 1.0;  // breaks antisymmetry in the (i, i) label
  EXPECT_THROW(antisym_partial_transpose(bad), DomainError);
  EXPECT_THROW(antisym_partial_transpose(Eigen::MatrixXd::Zero(5, 5)), DomainError);
}

TEST(Negativity, PureStateClosedFormMatchesEigenvalues) {
  std::mt19937_64 rng(79);
  int count = 0;
  for (auto [n, nu, nd] : {std::array{3, 1, 1}, {4, 2, 2}, {5, 2, 3}, {4, 1, 3}, {5, 3, 3}}) {
    const auto b = make_basis(n, nu, nd);
    for (int k = 0; k < 10; ++k, ++count) {
      const WaveFunction wf = testing::random_state(b, rng);
      EXPECT_NEAR(negativity_pure(schmidt(wf)), negativity_total(full_density_and_pt(wf).rho_pt), 1e-9);
    }
  }
  EXPECT_EQ(count, 50);
}

TEST(Negativity, SeparableMixturesVanish) {
  std::mt19937_64 rng(83);
  const auto b = make_basis(4, 2, 2);
  std::vector<EnsembleMember> m;
  for (int k = 0; k < 6; ++k) m.push_back({1.0, testing::random_sd(b, rng)});
  const MeasureReport r = report(make_mixture(std::move(m)));
  EXPECT_NEAR(r.n_updown, 0.0, 1e-10);
  EXPECT_NEAR(r.n2_updown, 0.0, 1e-10);
  EXPECT_FALSE(r.pure);
}

TEST(NormalizedEntropies, MaximaAndRatios) {
  const NormalizedEntropies m = entropy_maxima(14, 5, 5);
  EXPECT_NEAR(*m.rdm1_up, 5.0 * std::log2(7.0 / 5.0), 1e-12);
  EXPECT_NEAR(*m.rho_up, std::log2(21.0), 1e-12);
  EXPECT_NEAR(*m.rdm2_upup, 10.0 * std::log2(21.0 / 10.0), 1e-12);
  EXPECT_NEAR(*m.rdm2_updown, 25.0 * std::log2(49.0 / 25.0), 1e-12);
  const NormalizedEntropies full = entropy_maxima(8, 4, 4);
  EXPECT_FALSE(full.rdm1_up);
  EXPECT_FALSE(full.rho_up);
  EXPECT_THROW(entropy_maxima(7, 1, 1), DomainError);
  MeasureReport zero;
  const NormalizedEntropies r = normalized_entropies(zero, 14, 5, 5);
  EXPECT_EQ(*r.rdm1_up, 0.0);
}

TEST(Report, VacuumAndFullSectorsAreZero) {
  for (auto [n, nu, nd] : {std::array{3, 0, 0}, {2, 2, 2}, {3, 1, 0}}) {
    const auto b = make_basis(n, nu, nd);
    const MeasureReport r = report(testing::determinant_state(b, b->determinant(0)));
    for (double v : {r.e_updown, r.i_updown, r.i2_updown, r.n_updown, r.n2_updown, r.n2_upup, r.e1, r.e2})
      EXPECT_NEAR(v, 0.0, 1e-12);
  }
}

}  // namespace
}  // namespace fermicorr
